#include "lee/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lee {

std::string_view to_string(FormFactorKind kind) {
  switch (kind) {
    case FormFactorKind::Sharp: return "sharp";
    case FormFactorKind::Exponential: return "exponential";
    case FormFactorKind::Dipole: return "dipole";
  }
  return "?";
}

FormFactorKind form_factor_kind_from_string(std::string_view name) {
  if (name == "sharp") return FormFactorKind::Sharp;
  if (name == "exponential") return FormFactorKind::Exponential;
  if (name == "dipole") return FormFactorKind::Dipole;
  throw DomainError("unknown form factor '" + std::string(name) + "'");
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Normal: return "Normal";
    case Regime::Critical: return "Critical";
    case Regime::Ghost: return "Ghost";
  }
  return "?";
}

void ModelParams::validate() const {
  if (!std::isfinite(m_N)) throw DomainError("m_N must be finite");
  if (!std::isfinite(mu) || mu <= 0.0) throw DomainError("mu must be finite and positive");
  const double cutoff = form_factor.cutoff;
  if (!std::isfinite(cutoff) || cutoff <= 0.0)
    throw DomainError("form factor cutoff must be finite and positive");
  if (form_factor.kind == FormFactorKind::Sharp && cutoff < mu)
    throw DomainError("sharp cutoff below mu leaves no physical support");
}

double omega(double k, double mu) {
  if (!(k >= 0.0)) throw DomainError("omega: k must be nonnegative");
  if (!(mu > 0.0)) throw DomainError("omega: mu must be positive");
  return std::hypot(k, mu);
}

double form_factor_eval(const FormFactor& ff, double w, double mu) {
  const double cutoff = ff.cutoff;
  switch (ff.kind) {
    case FormFactorKind::Sharp:
      return w <= cutoff ? 1.0 : 0.0;
    case FormFactorKind::Exponential:
      return std::exp(-w / cutoff);
    case FormFactorKind::Dipole: {
      // k^2 = (w - mu)(w + mu) keeps precision near threshold.
      const double k2 = std::max(0.0, (w - mu) * (w + mu));
      return cutoff * cutoff / (cutoff * cutoff + k2);
    }
  }
  return 0.0;
}

double support_k(const ModelParams& params) {
  const auto& ff = params.form_factor;
  if (ff.kind == FormFactorKind::Sharp) {
    const double c = ff.cutoff, mu = params.mu;
    return std::sqrt((c - mu) * (c + mu));
  }
  return std::numeric_limits<double>::infinity();
}

double vertex_weight(double g0, const FormFactor& ff, double w, double mu) {
  if (g0 == 0.0) return 0.0;
  const double f = form_factor_eval(ff, w, mu);
  if (f == 0.0) return 0.0;
  return g0 * f / (std::pow(2.0 * kPi, 1.5) * std::sqrt(2.0 * w));
}

void require_stable(const ModelParams& params, double m) {
  if (!(m - params.m_N < params.mu))
    throw StabilityViolation("mass " + std::to_string(m) +
                             " is not below the N+theta threshold " +
                             std::to_string(params.threshold()));
}

double phi_amplitude(const ModelParams& params, double m_V, double g0, double k) {
  require_stable(params, m_V);
  const double w = omega(k, params.mu);
  return vertex_weight(g0, params.form_factor, w, params.mu) / (m_V - params.m_N - w);
}

}  // namespace lee
