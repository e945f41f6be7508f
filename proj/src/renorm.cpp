#include "lee/renorm.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lee {

namespace {

std::string ghost_message(const RenormReport& r) {
  return "no real bare coupling: x = " + std::to_string(r.x) + " gives Z_V = " +
         std::to_string(r.z_standard) + " (" + std::string(to_string(r.regime)) + ")";
}

double prefactor(double coupling) { return coupling * coupling / kTwoPiCubed; }

}  // namespace

GhostRegime::GhostRegime(RenormReport report)
    : Error(ghost_message(report)), report_(std::move(report)) {}

double mass_shift(const ModelParams& params, double g0, double m_V, const QuadSpec& spec) {
  require_stable(params, m_V);
  if (g0 == 0.0) return 0.0;
  return prefactor(g0) * integral_I1(m_V, params, spec);
}

std::optional<double> solve_physical_mass(const ModelParams& params, const BareCoupling& bare,
                                          const QuadSpec& spec, const RootOptions& opts) {
  params.validate();
  if (!std::isfinite(bare.m_V0) || !std::isfinite(bare.g0))
    throw DomainError("bare coupling must be finite");
  const double mu = params.mu;
  const double a = prefactor(bare.g0);
  if (a == 0.0) {
    if (bare.m_V0 < params.threshold()) return bare.m_V0;
    return std::nullopt;
  }
  auto F = [&](double m) { return m - bare.m_V0 - a * integral_I1(m, params, spec); };

  double hi = params.threshold() - opts.threshold_gap * mu;
  double f_hi = F(hi);
  if (f_hi <= 0.0) return std::nullopt;

  // F(m) > m - m_V0, so the root lies below m_V0; walk down until F < 0.
  double step = mu;
  double lo = std::min(bare.m_V0, hi) - step;
  double f_lo = F(lo);
  for (int i = 0; f_lo >= 0.0; ++i) {
    if (i > 200) throw NoConvergence("solve_physical_mass: could not bracket the root");
    if (f_lo == 0.0) return lo;
    hi = lo;
    f_hi = f_lo;
    step *= 2.0;
    lo -= step;
    f_lo = F(lo);
  }

  // Illinois regula falsi with a bisection step whenever the bracket fails
  // to halve.
  int side = 0;
  bool bisect = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double width = hi - lo;
    if (width <= opts.tol * mu) return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    double m = bisect ? 0.5 * (lo + hi) : (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(m > lo && m < hi)) m = 0.5 * (lo + hi);
    if (m == lo || m == hi) return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    const double f = F(m);
    if (f == 0.0) return m;
    if (f < 0.0) {
      lo = m;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = m;
      f_hi = f;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    bisect = (hi - lo) > 0.5 * width;
  }
  throw NoConvergence("solve_physical_mass: iteration cap reached");
}

double z_from_bare(const ModelParams& params, double g0, double m_V, const QuadSpec& spec) {
  require_stable(params, m_V);
  if (g0 == 0.0) return 1.0;
  return 1.0 / (1.0 + prefactor(g0) * integral_I2(m_V, params, spec));
}

double renormalize_coupling(double g0, double z) {
  if (!(g0 >= 0.0)) throw DomainError("renormalize_coupling: g0 must be nonnegative");
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("renormalize_coupling: z must lie in (0, 1]");
  return std::sqrt(z) * g0;
}

double x_value(const ModelParams& params, double g, double m_V, const QuadSpec& spec) {
  require_stable(params, m_V);
  if (g == 0.0) return 0.0;
  return prefactor(g) * integral_I2(m_V, params, spec);
}

double z_from_renormalized(double x) {
  if (!(x >= 0.0)) throw DomainError("x must be nonnegative");
  return 1.0 - x;
}

double regularized_z(double x) {
  if (!(x >= 0.0)) throw DomainError("x must be nonnegative");
  return x < 1.0 ? 1.0 - x : 0.0;
}

PartialSum geometric_partial_sum(double x, long long n) {
  if (n < 0) throw DomainError("geometric_partial_sum: n must be nonnegative");
  constexpr double inf = std::numeric_limits<double>::infinity();
  double value = 0.0;
  if (std::abs(x - 1.0) > 1e-8) {
    value = (std::pow(x, static_cast<double>(n) + 1.0) - 1.0) / (x - 1.0);
  } else if (n <= 10'000'000) {
    double term = 1.0;
    for (long long j = 0; j <= n; ++j) {
      value += term;
      term *= x;
    }
  } else {
    value = x == 1.0 ? static_cast<double>(n) + 1.0
                     : std::expm1((static_cast<double>(n) + 1.0) * std::log1p(x - 1.0)) / (x - 1.0);
  }
  if (!std::isfinite(value)) return {value < 0.0 ? -inf : inf, true};
  return {value, false};
}

Regime classify_regime(double x, double regime_tol) {
  if (!(x >= 0.0)) throw DomainError("classify_regime: x must be nonnegative");
  if (std::abs(x - 1.0) <= regime_tol) return Regime::Critical;
  return x > 1.0 ? Regime::Ghost : Regime::Normal;
}

double critical_coupling(const ModelParams& params, double m_V, const QuadSpec& spec) {
  const double i2 = integral_I2(m_V, params, spec);
  if (!(i2 > 0.0)) throw DegenerateModel("form factor vanishes on the physical domain");
  return std::sqrt(kTwoPiCubed / i2);
}

BareCoupling bare_from_renormalized(const ModelParams& params, const RenCoupling& ren,
                                    const QuadSpec& spec, double regime_tol) {
  if (!(ren.g >= 0.0)) throw DomainError("renormalized coupling must be nonnegative");
  require_stable(params, ren.m_V);
  if (ren.g == 0.0) return {ren.m_V, 0.0};

  const double x = x_value(params, ren.g, ren.m_V, spec);
  const Regime regime = classify_regime(x, regime_tol);
  if (regime != Regime::Normal) {
    RenormReport r;
    r.m_V = ren.m_V;
    r.g_sq = ren.g * ren.g;
    r.x = x;
    r.z_standard = z_from_renormalized(x);
    r.z_regularized = regularized_z(x);
    r.regime = regime;
    throw GhostRegime(r);
  }
  const double g0_sq = ren.g * ren.g / (1.0 - x);
  const double m_V0 = ren.m_V - g0_sq / kTwoPiCubed * integral_I1(ren.m_V, params, spec);
  return {m_V0, std::sqrt(g0_sq)};
}

RenormReport full_report(const ModelParams& params, const CouplingInput& input,
                         const QuadSpec& spec, const RootOptions& opts, double regime_tol) {
  params.validate();
  RenormReport r;
  if (const auto* bare = std::get_if<BareCoupling>(&input)) {
    const BareCoupling b{bare->m_V0, std::abs(bare->g0)};
    const auto m_V = solve_physical_mass(params, b, spec, opts);
    if (!m_V)
      throw NoBoundState("no bound V state below the N+theta threshold for m_V0 = " +
                         std::to_string(b.m_V0));
    const double z = z_from_bare(params, b.g0, *m_V, spec);
    r.m_V = *m_V;
    r.m_V0 = b.m_V0;
    r.delta_m = *m_V - b.m_V0;
    r.g0_sq = b.g0 * b.g0;
    r.g_sq = z * b.g0 * b.g0;
    r.x = b.g0 == 0.0 ? 0.0 : x_value(params, std::sqrt(r.g_sq), *m_V, spec);
  } else {
    const auto& ren = std::get<RenCoupling>(input);
    const double g = std::abs(ren.g);
    r.m_V = ren.m_V;
    r.g_sq = g * g;
    r.x = x_value(params, g, ren.m_V, spec);
    if (classify_regime(r.x, regime_tol) == Regime::Normal) {
      const BareCoupling b = bare_from_renormalized(params, {ren.m_V, g}, spec, regime_tol);
      r.m_V0 = b.m_V0;
      r.delta_m = ren.m_V - b.m_V0;
      r.g0_sq = b.g0 * b.g0;
    }
  }
  r.z_standard = z_from_renormalized(r.x);
  r.z_regularized = regularized_z(r.x);
  r.regime = classify_regime(r.x, regime_tol);
  return r;
}

}  // namespace lee
