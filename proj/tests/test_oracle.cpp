#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lee/oracle.hpp"
#include "lee/renorm.hpp"

using namespace lee;

namespace {

const ModelParams kModel{};
const double kSharpK = std::sqrt(99.0);

ArrowheadMatrix two_by_two() { return {0.0, {2.0}, {1.0}}; }

ArrowheadMatrix random_arrowhead(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> gap(0.05, 1.0), c(0.05, 1.0), a(-3.0, 3.0);
  std::bernoulli_distribution sign(0.5);
  ArrowheadMatrix A;
  A.apex = a(rng);
  double d = a(rng);
  for (int i = 0; i < n; ++i) {
    d += gap(rng);
    A.diag.push_back(d);
    A.coupling.push_back(sign(rng) ? c(rng) : -c(rng));
  }
  return A;
}

}  // namespace

TEST_CASE("build_grid") {
  const RadialGrid g = build_grid(2.0, 2, GridScheme::UniformK);
  REQUIRE(g.size() == 2);
  CHECK(g.modes[0].k == 0.5);
  CHECK(g.modes[1].k == 1.5);
  CHECK(g.modes[0].weight == doctest::Approx(4 * kPi * 0.25).epsilon(1e-15));
  CHECK(g.modes[1].weight == doctest::Approx(4 * kPi * 2.25).epsilon(1e-15));

  const RadialGrid one = build_grid(2.0, 1, GridScheme::UniformK);
  CHECK(one.modes[0].k == 1.0);
  CHECK(one.modes[0].weight == doctest::Approx(8 * kPi).epsilon(1e-15));

  auto weight_sum = [](const RadialGrid& grid) {
    double s = 0.0;
    for (const auto& m : grid.modes) s += m.weight;
    return s;
  };
  const double ball = 4 * kPi * 8.0 / 3.0;
  const double e1 = std::abs(weight_sum(build_grid(2.0, 100, GridScheme::UniformK)) - ball);
  const double e2 = std::abs(weight_sum(build_grid(2.0, 1000, GridScheme::UniformK)) - ball);
  CHECK(e2 < e1 / 50.0);
  CHECK(weight_sum(build_grid(2.0, 8, GridScheme::GaussLegendreK)) ==
        doctest::Approx(ball).epsilon(1e-13));

  for (auto scheme : {GridScheme::UniformK, GridScheme::GaussLegendreK}) {
    const RadialGrid grid = build_grid(5.0, 33, scheme);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(grid.modes[i].k > 0.0);
      CHECK(grid.modes[i].weight > 0.0);
      if (i > 0) CHECK(grid.modes[i].k > grid.modes[i - 1].k);
    }
  }
  CHECK_THROWS_AS(build_grid(2.0, 0, GridScheme::UniformK), DomainError);
  CHECK_THROWS_AS(build_grid(-1.0, 3, GridScheme::UniformK), DomainError);
}

TEST_CASE("build_arrowhead entries") {
  const RadialGrid grid = build_grid(kSharpK, 64, GridScheme::GaussLegendreK);
  const ArrowheadMatrix A = build_arrowhead(kModel, {1.8, 1.3}, grid);
  REQUIRE(A.size() == 64);
  CHECK(A.apex == 1.8);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double k = grid.modes[i].k;
    const double w = std::sqrt(k * k + 1.0);
    const double expected =
        1.3 / std::pow(2 * kPi, 1.5) / std::sqrt(2 * w) * std::sqrt(grid.modes[i].weight);
    CHECK(A.diag[i] == doctest::Approx(1.0 + w).epsilon(1e-15));
    CHECK(std::abs(A.coupling[i] - expected) <= 1e-14 * std::abs(expected));
    if (i > 0) CHECK(A.diag[i] > A.diag[i - 1]);
  }

  const ArrowheadMatrix free = build_arrowhead(kModel, {1.8, 0.0}, grid);
  for (double c : free.coupling) CHECK(c == 0.0);
  const auto ev = all_eigenvalues(free);
  CHECK(ev.front() == std::min(1.8, free.diag.front()));
}

TEST_CASE("secular function") {
  const ArrowheadMatrix A = two_by_two();
  CHECK(std::abs(secular_eval(A, 1.0 - std::sqrt(2.0))) < 1e-12);
  CHECK_THROWS_AS(secular_eval(A, 2.0), PoleHit);

  const ArrowheadMatrix free{1.7, {2.0, 3.0}, {0.0, 0.0}};
  CHECK(secular_eval(free, 0.5) == 1.2);
  CHECK(secular_eval(free, 2.0) == doctest::Approx(-0.3).epsilon(1e-15));

  // Bracket of the lowest root for a physical model.
  const auto P = build_arrowhead(kModel, {1.8, 1.0},
                                 build_grid(kSharpK, 128, GridScheme::GaussLegendreK));
  CHECK(secular_eval(P, P.diag.front() - 1e-9) < 0.0);
  CHECK(secular_eval(P, -100.0) > 0.0);

  // Strictly decreasing between consecutive poles.
  std::mt19937_64 rng(11);
  const ArrowheadMatrix R = random_arrowhead(rng, 8);
  for (std::size_t i = 0; i + 1 < R.size(); ++i) {
    const double lo = R.diag[i], hi = R.diag[i + 1];
    double prev = INFINITY;
    for (int j = 1; j < 50; ++j) {
      const double s = secular_eval(R, lo + (hi - lo) * j / 50.0);
      CHECK(s < prev);
      prev = s;
    }
  }
}

TEST_CASE("lowest eigenpair") {
  const EigenPair e = lowest_eigenpair(two_by_two());
  CHECK(e.lambda == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(e.apex_weight == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-13));

  const ArrowheadMatrix free{1.2, {2.0, 3.0}, {0.0, 0.0}};
  const EigenPair f = lowest_eigenpair(free);
  CHECK(f.lambda == 1.2);
  CHECK(f.apex_weight == 1.0);
  CHECK_THROWS_AS(lowest_eigenpair(ArrowheadMatrix{2.5, {2.0, 3.0}, {0.0, 0.0}}), DomainError);

  const ArrowheadMatrix bad{0.0, {2.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(lowest_eigenpair(bad), DomainError);
}

TEST_CASE("discrete norm identity") {
  std::mt19937_64 rng(5);
  for (int seed = 0; seed < 20; ++seed) {
    const ArrowheadMatrix A = random_arrowhead(rng, 12);
    const EigenPair e = lowest_eigenpair(A);
    double sum = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i)
      sum += A.coupling[i] * A.coupling[i] / ((e.lambda - A.diag[i]) * (e.lambda - A.diag[i]));
    CHECK(std::abs(e.apex_weight * (1.0 + sum) - 1.0) < 1e-12);
    CHECK(e.apex_weight > 0.0);
    CHECK(e.apex_weight <= 1.0);
  }
}

TEST_CASE("all eigenvalues: closed forms, trace, interlacing") {
  const auto ev = all_eigenvalues(two_by_two());
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));

  const auto A = build_arrowhead(kModel, {1.8, 1.0},
                                 build_grid(kSharpK, 16, GridScheme::GaussLegendreK));
  const auto spec = all_eigenvalues(A);
  REQUIRE(spec.size() == 17);
  const double trace = A.apex + std::accumulate(A.diag.begin(), A.diag.end(), 0.0);
  CHECK(std::abs(std::accumulate(spec.begin(), spec.end(), 0.0) - trace) < 1e-9 * std::abs(trace));

  // Vanishing coupling: spectrum tends to {apex} U {d_i}.
  const auto weak = build_arrowhead(kModel, {1.8, 1e-7},
                                    build_grid(kSharpK, 16, GridScheme::GaussLegendreK));
  std::vector<double> expected(weak.diag);
  expected.push_back(1.8);
  std::sort(expected.begin(), expected.end());
  const auto wev = all_eigenvalues(weak);
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(wev[i] - expected[i]) < 1e-8);

  std::mt19937_64 rng(2024);
  for (int seed = 0; seed < 100; ++seed) {
    const ArrowheadMatrix R = random_arrowhead(rng, 1 + seed % 16);
    const auto e = all_eigenvalues(R);
    REQUIRE(e.size() == R.size() + 1);
    for (std::size_t i = 0; i < R.size(); ++i) {
      CHECK(e[i] < R.diag[i]);
      CHECK(R.diag[i] < e[i + 1]);
    }
  }
}

TEST_CASE("decoupled modes above a sharp cutoff") {
  // Modes with c_i = 0 are eigenvalues themselves; the rest interlace.
  const auto A = build_arrowhead(kModel, {1.8, 1.0}, build_grid(2 * kSharpK, 20, GridScheme::UniformK));
  const auto e = all_eigenvalues(A);
  REQUIRE(e.size() == 21);
  const auto dense = dense_cross_check(A);
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e[i] - dense[i]) < 1e-9);
}

TEST_CASE("dense cross check") {
  const auto ev = dense_cross_check(two_by_two());
  CHECK(ev[0] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));

  const ArrowheadMatrix diag{2.5, {1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}};
  const auto d = dense_cross_check(diag);
  CHECK(d == std::vector<double>{1.0, 2.0, 2.5, 3.0});

  const auto A = build_arrowhead(kModel, {1.8, 1.0},
                                 build_grid(kSharpK, 32, GridScheme::GaussLegendreK));
  const auto secular = all_eigenvalues(A);
  const auto jacobi = dense_cross_check(A);
  REQUIRE(secular.size() == jacobi.size());
  for (std::size_t i = 0; i < secular.size(); ++i) CHECK(std::abs(secular[i] - jacobi[i]) < 1e-9);

  ArrowheadMatrix big;
  big.diag.assign(257, 0.0);
  big.coupling.assign(257, 0.0);
  CHECK_THROWS_AS(dense_cross_check(big), DomainError);
}

TEST_CASE("jacobi on a general symmetric matrix") {
  // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
  const std::vector<double> m{2, 1, 0, 1, 2, 1, 0, 1, 2};
  const auto ev = jacobi_eigenvalues(m, 3);
  CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(jacobi_eigenvalues(m, 2), DomainError);
}

TEST_CASE("convergence study") {
  const std::vector<int> n_list{64, 256, 1024, 4096};
  const auto rows = convergence_study(kModel, {1.8, 1.0}, n_list, kSharpK, GridScheme::UniformK);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].lambda_error <= rows[i - 1].lambda_error);
    CHECK(rows[i].z_error <= rows[i - 1].z_error);
  }
  CHECK(rows.back().lambda_error < 1e-5);
  CHECK(rows.back().z_error < 1e-4);

  const auto free = convergence_study(kModel, {1.8, 0.0}, n_list, kSharpK);
  for (const auto& r : free) {
    CHECK(r.lambda_error == 0.0);
    CHECK(r.z_error == 0.0);
  }

  // Doubling k_max and n keeps the modes below the cutoff; the new ones decouple.
  const std::vector<int> small{64, 128}, doubled{128, 256};
  const auto a = convergence_study(kModel, {1.8, 1.0}, small, kSharpK, GridScheme::UniformK);
  const auto b = convergence_study(kModel, {1.8, 1.0}, doubled, 2 * kSharpK, GridScheme::UniformK);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].lambda - b[i].lambda) < 1e-12);

  const std::vector<int> unsorted{256, 64};
  CHECK_THROWS_AS(convergence_study(kModel, {1.8, 1.0}, unsorted, kSharpK), DomainError);
}
