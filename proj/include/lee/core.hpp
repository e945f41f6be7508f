#pragma once

#include <string_view>

#include "lee/errors.hpp"

namespace lee {

inline constexpr double kPi = 3.14159265358979323846;
/// (2 pi)^3, the phase-space factor multiplying every g^2 integral.
inline constexpr double kTwoPiCubed = 8.0 * kPi * kPi * kPi;

enum class FormFactorKind { Sharp, Exponential, Dipole };

/// Regulator f(omega) in the interaction vertex.
///
///   Sharp:       f = 1 for omega <= cutoff, 0 above
///   Exponential: f = exp(-omega / cutoff)
///   Dipole:      f = cutoff^2 / (cutoff^2 + k^2),  k^2 = omega^2 - mu^2
///
/// All three satisfy 0 <= f <= 1 on omega >= mu.
struct FormFactor {
  FormFactorKind kind = FormFactorKind::Sharp;
  double cutoff = 10.0;

  static FormFactor sharp(double cutoff) { return {FormFactorKind::Sharp, cutoff}; }
  static FormFactor exponential(double cutoff) { return {FormFactorKind::Exponential, cutoff}; }
  static FormFactor dipole(double cutoff) { return {FormFactorKind::Dipole, cutoff}; }
};

std::string_view to_string(FormFactorKind kind);
FormFactorKind form_factor_kind_from_string(std::string_view name);

/// One Lee-model instance. Energies in any consistent unit; mu = 1 is the
/// conventional scale.
struct ModelParams {
  double m_N = 1.0;
  double mu = 1.0;
  FormFactor form_factor{};

  /// Throws DomainError unless every field is finite, mu > 0, cutoff > 0,
  /// and (for Sharp) cutoff >= mu.
  void validate() const;

  /// Bottom of the N+theta continuum, m_N + mu.
  double threshold() const { return m_N + mu; }
};

struct BareCoupling {
  double m_V0 = 0.0;
  double g0 = 0.0;
};

struct RenCoupling {
  double m_V = 0.0;
  double g = 0.0;
};

enum class Regime { Normal, Critical, Ghost };

std::string_view to_string(Regime regime);

double omega(double k, double mu);

/// f(omega). Requires omega >= mu of the owning model (not checked here:
/// the form factor does not know mu, the Dipole branch takes it explicitly).
double form_factor_eval(const FormFactor& ff, double omega, double mu);

/// Largest momentum carrying a nonzero form factor, or +inf for the
/// non-compact families.
double support_k(const ModelParams& params);

/// g0 (2 pi)^{-3/2} f(omega) / sqrt(2 omega): the <N theta|H|V> matrix element.
double vertex_weight(double g0, const FormFactor& ff, double omega, double mu);

/// Throws StabilityViolation unless m - m_N < mu.
void require_stable(const ModelParams& params, double m);

/// Continuum amplitude Phi(k) of the N+theta component of the dressed V.
double phi_amplitude(const ModelParams& params, double m_V, double g0, double k);

}  // namespace lee
