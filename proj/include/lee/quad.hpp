#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lee/core.hpp"

namespace lee {

/// Controls for the composite Gauss-Legendre radial quadrature.
struct QuadSpec {
  int panels = 1;            ///< initial panels per graded segment
  int nodes_per_panel = 20;  ///< Gauss-Legendre order on each panel
  /// Upper momentum for non-compact form factors; defaults to 40 * cutoff.
  /// Ignored for Sharp, whose support ends exactly at sqrt(cutoff^2 - mu^2).
  std::optional<double> k_max;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 1 << 14;

  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Upper integration limit actually used for this model.
double integration_limit(const ModelParams& params, const QuadSpec& spec);

using RadialIntegrand = std::function<double(double omega)>;

/// 4 pi * int_0^K k^2 F(omega_k) dk, i.e. int d^3k F(omega_k).
///
/// The range is split into segments graded geometrically toward k = 0 down
/// to `resolve_scale` (default mu), then every segment is bisected until two
/// successive estimates agree to max(abs_tol, rel_tol * |value|).
/// Throws NoConvergence past spec.max_panels.
double radial_integrate(const RadialIntegrand& F, const ModelParams& params,
                        const QuadSpec& spec, double resolve_scale = 0.0);

/// int d^3k f^2/(2 omega) / (m - m_N - omega). Negative.
double integral_I1(double m, const ModelParams& params, const QuadSpec& spec);

/// int d^3k f^2/(2 omega) / (m - m_N - omega)^2. Positive, equals -dI1/dm.
double integral_I2(double m, const ModelParams& params, const QuadSpec& spec);

/// int d^3k |Phi(k)|^2 = g0^2/(2 pi)^3 * I2(m_V).
double norm_integral(const ModelParams& params, double g0, double m_V, const QuadSpec& spec);

}  // namespace lee
