#include "lee/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lee/renorm.hpp"

namespace lee {

RadialGrid build_grid(double k_max, int n, GridScheme scheme) {
  if (n < 1) throw DomainError("build_grid: n must be >= 1");
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw DomainError("build_grid: k_max must be positive");
  RadialGrid grid;
  grid.scheme = scheme;
  grid.modes.reserve(static_cast<std::size_t>(n));
  if (scheme == GridScheme::UniformK) {
    const double dk = k_max / n;
    for (int i = 1; i <= n; ++i) {
      const double k = (i - 0.5) * dk;
      grid.modes.push_back({k, 4.0 * kPi * k * k * dk});
    }
  } else {
    const GaussRule rule = gauss_legendre(n);
    const double half = 0.5 * k_max;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double k = half * (1.0 + rule.nodes[i]);
      grid.modes.push_back({k, 4.0 * kPi * k * k * half * rule.weights[i]});
    }
  }
  return grid;
}

std::vector<double> ArrowheadMatrix::dense() const {
  const std::size_t dim = size() + 1;
  std::vector<double> m(dim * dim, 0.0);
  m[0] = apex;
  for (std::size_t i = 0; i < size(); ++i) {
    m[i + 1] = coupling[i];
    m[(i + 1) * dim] = coupling[i];
    m[(i + 1) * dim + i + 1] = diag[i];
  }
  return m;
}

ArrowheadMatrix build_arrowhead(const ModelParams& params, const BareCoupling& bare,
                                const RadialGrid& grid) {
  params.validate();
  ArrowheadMatrix A;
  A.apex = bare.m_V0;
  A.diag.reserve(grid.size());
  A.coupling.reserve(grid.size());
  for (const auto& mode : grid.modes) {
    const double w = omega(mode.k, params.mu);
    A.diag.push_back(params.m_N + w);
    A.coupling.push_back(vertex_weight(bare.g0, params.form_factor, w, params.mu) *
                         std::sqrt(mode.weight));
  }
  return A;
}

double secular_eval(const ArrowheadMatrix& A, double lambda) {
  double s = A.apex - lambda;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double c = A.coupling[i];
    if (c == 0.0) continue;
    const double d = lambda - A.diag[i];
    if (std::abs(d) <= 1e-14 * std::max(1.0, std::abs(A.diag[i])))
      throw PoleHit("secular function evaluated at pole d_" + std::to_string(i));
    s += c * c / d;
  }
  return s;
}

namespace {

struct Coupled {
  std::vector<double> poles;   // d_i with c_i != 0, ascending
  double radius = 0.0;         // sum |c_i|, a Gershgorin radius
};

Coupled coupled_poles(const ArrowheadMatrix& A) {
  if (A.coupling.size() != A.diag.size())
    throw DomainError("arrowhead: diagonal and coupling lengths differ");
  Coupled out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (i > 0 && !(A.diag[i] > A.diag[i - 1]))
      throw DomainError("arrowhead: diagonal must be strictly increasing");
    if (A.coupling[i] != 0.0) out.poles.push_back(A.diag[i]);
    out.radius += std::abs(A.coupling[i]);
  }
  return out;
}

// Unchecked s(lambda); callers keep lambda strictly inside an interlacing
// interval, where tiny denominators still carry the right sign.
double secular_inside(const ArrowheadMatrix& A, double lambda) {
  double s = A.apex - lambda;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double c = A.coupling[i];
    if (c != 0.0) s += c * c / (lambda - A.diag[i]);
  }
  return s;
}

// s is strictly decreasing on (lo, hi) with s(lo+) > 0 > s(hi-).
double bisect_secular(const ArrowheadMatrix& A, double lo, double hi, double tol) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (hi - lo <= tol * std::max(1.0, std::abs(mid))) return mid;
    if (secular_inside(A, mid) > 0.0) lo = mid;
    else hi = mid;
  }
  throw NoConvergence("secular bisection did not converge");
}

double apex_weight(const ArrowheadMatrix& A, double lambda) {
  double sum = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double c = A.coupling[i];
    if (c == 0.0) continue;
    const double r = c / (lambda - A.diag[i]);
    sum += r * r;
  }
  return 1.0 / (1.0 + sum);
}

}  // namespace

EigenPair lowest_eigenpair(const ArrowheadMatrix& A, double tol) {
  const Coupled cp = coupled_poles(A);
  if (cp.poles.empty()) {
    if (A.size() > 0 && !(A.apex < A.diag.front()))
      throw DomainError("lowest_eigenpair: decoupled apex is not the lowest level");
    return {A.apex, 1.0};
  }
  const double first = cp.poles.front();
  const double lo = std::min(A.apex, first) - cp.radius - 1.0;
  const double hi = std::nextafter(first, -INFINITY);
  const double lambda = bisect_secular(A, lo, hi, tol);
  return {lambda, apex_weight(A, lambda)};
}

std::vector<double> all_eigenvalues(const ArrowheadMatrix& A, double tol) {
  const Coupled cp = coupled_poles(A);
  std::vector<double> out;
  out.reserve(A.size() + 1);
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A.coupling[i] == 0.0) out.push_back(A.diag[i]);

  if (cp.poles.empty()) {
    out.push_back(A.apex);
  } else {
    const auto& p = cp.poles;
    const double below = std::min(A.apex, p.front()) - cp.radius - 1.0;
    const double above = std::max(A.apex, p.back()) + cp.radius + 1.0;
    out.push_back(bisect_secular(A, below, std::nextafter(p.front(), -INFINITY), tol));
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      out.push_back(bisect_secular(A, std::nextafter(p[j], INFINITY),
                                   std::nextafter(p[j + 1], -INFINITY), tol));
    out.push_back(bisect_secular(A, std::nextafter(p.back(), INFINITY), above, tol));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> jacobi_eigenvalues(std::span<const double> matrix, std::size_t n,
                                       int max_sweeps) {
  if (matrix.size() != n * n) throw DomainError("jacobi: matrix is not n x n");
  std::vector<double> a(matrix.begin(), matrix.end());
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(off) <= 1e-15 * scale || off == 0.0) {
      std::vector<double> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  throw NoConvergence("jacobi: off-diagonal norm did not vanish within " +
                      std::to_string(max_sweeps) + " sweeps");
}

std::vector<double> dense_cross_check(const ArrowheadMatrix& A) {
  if (A.size() > 256) throw DomainError("dense_cross_check: at most 256 modes");
  const auto m = A.dense();
  return jacobi_eigenvalues(m, A.size() + 1);
}

std::vector<ConvergenceRow> convergence_study(const ModelParams& params, const BareCoupling& bare,
                                              std::span<const int> n_list, double k_max,
                                              GridScheme scheme, const QuadSpec& spec) {
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
    throw DomainError("convergence_study: n_list must be strictly increasing");
  const auto m_V = solve_physical_mass(params, bare, spec);
  if (!m_V) throw NoBoundState("convergence_study: continuum model has no bound state");
  const double z = z_from_bare(params, bare.g0, *m_V, spec);

  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    const auto A = build_arrowhead(params, bare, build_grid(k_max, n, scheme));
    const EigenPair e = lowest_eigenpair(A);
    rows.push_back({n, e.lambda, e.apex_weight, std::abs(e.lambda - *m_V),
                    std::abs(e.apex_weight - z)});
  }
  return rows;
}

}  // namespace lee
