#include "lee/quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lee {

void QuadSpec::validate() const {
  if (panels < 1) throw DomainError("quad.panels must be >= 1");
  if (nodes_per_panel < 2) throw DomainError("quad.nodes_per_panel must be >= 2");
  if (k_max && !(std::isfinite(*k_max) && *k_max > 0.0))
    throw DomainError("quad.k_max must be finite and positive");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quad tolerances must be positive");
  if (max_panels < panels) throw DomainError("quad.max_panels below quad.panels");
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integration_limit(const ModelParams& params, const QuadSpec& spec) {
  if (params.form_factor.kind == FormFactorKind::Sharp) return support_k(params);
  return spec.k_max.value_or(40.0 * params.form_factor.cutoff);
}

namespace {

// Integrand of k alone (the 4 pi k^2 factor included by the caller).
template <class G>
double integrate_graded(const G& g, const ModelParams& params, const QuadSpec& spec,
                        double resolve_scale) {
  params.validate();
  spec.validate();
  const double upper = integration_limit(params, spec);
  if (upper <= 0.0) return 0.0;

  // Segment boundaries upper, upper/2, upper/4, ... down to resolve_scale/2,
  // then 0. Peaks at k = 0 of width ~resolve_scale get their own panels.
  const double floor_scale = 0.5 * std::min(resolve_scale, params.mu);
  std::vector<double> edges{upper};
  while (edges.back() > floor_scale && edges.size() < 200) edges.push_back(0.5 * edges.back());
  edges.push_back(0.0);
  std::reverse(edges.begin(), edges.end());
  const std::size_t segments = edges.size() - 1;

  const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
  auto estimate = [&](long per_segment) {
    double total = 0.0;
    for (std::size_t s = 0; s < segments; ++s) {
      const double a = edges[s];
      const double h = (edges[s + 1] - a) / static_cast<double>(per_segment);
      double seg = 0.0;
      for (long p = 0; p < per_segment; ++p) {
        const double mid = a + (p + 0.5) * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          panel += rule.weights[i] * g(mid + 0.5 * h * rule.nodes[i]);
        seg += 0.5 * h * panel;
      }
      total += seg;
    }
    return total;
  };

  long per_segment = spec.panels;
  double previous = estimate(per_segment);
  while (static_cast<long>(segments) * per_segment * 2 <= spec.max_panels) {
    per_segment *= 2;
    const double current = estimate(per_segment);
    if (!std::isfinite(current)) throw NoConvergence("radial quadrature produced a non-finite value");
    if (std::abs(current - previous) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(current)))
      return current;
    previous = current;
  }
  throw NoConvergence("radial quadrature did not reach tolerance within " +
                      std::to_string(spec.max_panels) + " panels");
}

// Width of the 1/(gap + k^2/2mu) peak at k = 0.
double peak_scale(const ModelParams& params, double m) {
  const double gap = params.threshold() - m;
  return std::sqrt(2.0 * params.mu * gap);
}

// (m - m_N - omega) written as -(gap + k^2/(omega + mu)), exact near k = 0.
struct Kinematics {
  const ModelParams& params;
  double gap;

  double omega_of(double k) const { return std::hypot(k, params.mu); }
  double denominator(double k, double w) const { return -(gap + k * k / (w + params.mu)); }
  double weight(double k, double w) const {
    const double f = form_factor_eval(params.form_factor, w, params.mu);
    return 4.0 * kPi * k * k * f * f / (2.0 * w);
  }
};

}  // namespace

double radial_integrate(const RadialIntegrand& F, const ModelParams& params, const QuadSpec& spec,
                        double resolve_scale) {
  if (resolve_scale <= 0.0) resolve_scale = params.mu;
  const double mu = params.mu;
  return integrate_graded([&](double k) { return 4.0 * kPi * k * k * F(std::hypot(k, mu)); },
                          params, spec, resolve_scale);
}

double integral_I1(double m, const ModelParams& params, const QuadSpec& spec) {
  require_stable(params, m);
  const Kinematics kin{params, params.threshold() - m};
  return integrate_graded(
      [&](double k) {
        const double w = kin.omega_of(k);
        return kin.weight(k, w) / kin.denominator(k, w);
      },
      params, spec, peak_scale(params, m));
}

double integral_I2(double m, const ModelParams& params, const QuadSpec& spec) {
  require_stable(params, m);
  const Kinematics kin{params, params.threshold() - m};
  return integrate_graded(
      [&](double k) {
        const double w = kin.omega_of(k);
        const double d = kin.denominator(k, w);
        return kin.weight(k, w) / (d * d);
      },
      params, spec, peak_scale(params, m));
}

double norm_integral(const ModelParams& params, double g0, double m_V, const QuadSpec& spec) {
  require_stable(params, m_V);
  if (g0 == 0.0) return 0.0;
  const Kinematics kin{params, params.threshold() - m_V};
  return integrate_graded(
      [&](double k) {
        const double w = kin.omega_of(k);
        const double phi = vertex_weight(g0, params.form_factor, w, params.mu) / kin.denominator(k, w);
        return 4.0 * kPi * k * k * phi * phi;
      },
      params, spec, peak_scale(params, m_V));
}

}  // namespace lee
