#pragma once

#include <optional>
#include <variant>

#include "lee/core.hpp"
#include "lee/quad.hpp"

namespace lee {

inline constexpr double kDefaultRegimeTol = 1e-12;

/// Everything known about one dressed-V solution.
///
/// Bare fields are absent when the input was renormalized and lies in the
/// Critical or Ghost regime, where no real bare theory exists.
struct RenormReport {
  double m_V = 0.0;
  std::optional<double> m_V0;
  std::optional<double> delta_m;  ///< m_V - m_V0
  std::optional<double> g0_sq;
  double g_sq = 0.0;
  double x = 0.0;
  double z_standard = 1.0;     ///< 1 - x, negative in the ghost regime
  double z_regularized = 1.0;  ///< max(1 - x, 0)
  Regime regime = Regime::Normal;
};

/// Renormalized input with x >= 1: Z_V = 1 - x <= 0 has no real g0.
class GhostRegime : public Error {
 public:
  explicit GhostRegime(RenormReport report);
  const RenormReport& report() const { return report_; }

 private:
  RenormReport report_;
};

/// delta m_V = g0^2/(2 pi)^3 * I1(m_V) <= 0.
double mass_shift(const ModelParams& params, double g0, double m_V, const QuadSpec& spec);

struct RootOptions {
  double tol = 1e-13;          ///< absolute, in units of mu
  double threshold_gap = 1e-9; ///< upper bracket at m_N + mu - threshold_gap * mu
  int max_iterations = 400;
};

/// Physical mass: the root below threshold of
///   F(m) = m - m_V0 - g0^2/(2 pi)^3 * I1(m),
/// or nullopt when F stays negative up to the threshold (no bound state).
std::optional<double> solve_physical_mass(const ModelParams& params, const BareCoupling& bare,
                                          const QuadSpec& spec, const RootOptions& opts = {});

/// Z_V = 1 / (1 + g0^2/(2 pi)^3 * I2(m_V)), always in (0, 1].
double z_from_bare(const ModelParams& params, double g0, double m_V, const QuadSpec& spec);

/// g = sqrt(z) * g0.
double renormalize_coupling(double g0, double z);

/// x = g^2/(2 pi)^3 * I2(m_V).
double x_value(const ModelParams& params, double g, double m_V, const QuadSpec& spec);

/// Standard reading 1 - x. May be negative.
double z_from_renormalized(double x);

/// Regularized reading: Z^-1 = 1 + x + x^2 + ... diverges for x >= 1, so
/// Z = 0 there. Equals max(1 - x, 0).
double regularized_z(double x);

struct PartialSum {
  double value = 0.0;
  bool saturated = false;  ///< true when the sum overflowed to +inf
};

/// sum_{j=0}^{n} x^j.
PartialSum geometric_partial_sum(double x, long long n);

Regime classify_regime(double x, double regime_tol = kDefaultRegimeTol);

/// Coupling with x = 1: sqrt((2 pi)^3 / I2(m_V)).
double critical_coupling(const ModelParams& params, double m_V, const QuadSpec& spec);

/// Inverts the renormalization: g0^2 = g^2 / (1 - x) and
/// m_V0 = m_V - g0^2/(2 pi)^3 * I1(m_V). Throws GhostRegime unless Normal.
BareCoupling bare_from_renormalized(const ModelParams& params, const RenCoupling& ren,
                                    const QuadSpec& spec, double regime_tol = kDefaultRegimeTol);

using CouplingInput = std::variant<BareCoupling, RenCoupling>;

/// Bare input: throws NoBoundState when no sub-threshold mass exists.
/// Renormalized input: never throws GhostRegime; bare fields are left empty.
RenormReport full_report(const ModelParams& params, const CouplingInput& input,
                         const QuadSpec& spec, const RootOptions& opts = {},
                         double regime_tol = kDefaultRegimeTol);

}  // namespace lee
