#pragma once

#include <span>
#include <vector>

#include "lee/core.hpp"
#include "lee/quad.hpp"

namespace lee {

enum class GridScheme { UniformK, GaussLegendreK };

struct RadialMode {
  double k = 0.0;
  double weight = 0.0;  ///< includes the 4 pi k^2 measure
};

struct RadialGrid {
  std::vector<RadialMode> modes;
  GridScheme scheme = GridScheme::UniformK;

  std::size_t size() const { return modes.size(); }
};

RadialGrid build_grid(double k_max, int n, GridScheme scheme);

/// Truncated Hamiltonian on span{|V>, |N theta(k_i)>}:
///
///   [ apex  c_1  c_2  ... ]
///   [ c_1   d_1           ]
///   [ c_2        d_2      ]
///   [ ...             ... ]
struct ArrowheadMatrix {
  double apex = 0.0;
  std::vector<double> diag;
  std::vector<double> coupling;

  std::size_t size() const { return diag.size(); }
  /// Dense (n+1)x(n+1) row-major copy.
  std::vector<double> dense() const;
};

ArrowheadMatrix build_arrowhead(const ModelParams& params, const BareCoupling& bare,
                                const RadialGrid& grid);

/// s(lambda) = apex - lambda + sum_i c_i^2 / (lambda - d_i).
/// Throws PoleHit when lambda coincides with a d_i carrying nonzero coupling.
double secular_eval(const ArrowheadMatrix& A, double lambda);

struct EigenPair {
  double lambda = 0.0;
  double apex_weight = 1.0;  ///< |<V|psi>|^2 for the normalized eigenvector
};

/// Lowest eigenstate with nonzero apex component, by bisection of s below
/// its first coupled pole.
EigenPair lowest_eigenpair(const ArrowheadMatrix& A, double tol = 1e-14);

/// Full spectrum, ascending. Decoupled modes (c_i = 0) contribute d_i
/// directly; the rest are secular roots on each interlacing interval.
std::vector<double> all_eigenvalues(const ArrowheadMatrix& A, double tol = 1e-14);

/// Symmetric eigenvalues, ascending, by cyclic Jacobi rotations.
/// `matrix` is n x n row-major.
std::vector<double> jacobi_eigenvalues(std::span<const double> matrix, std::size_t n,
                                       int max_sweeps = 100);

/// Jacobi on the dense form of A. Requires A.size() <= 256.
std::vector<double> dense_cross_check(const ArrowheadMatrix& A);

struct ConvergenceRow {
  int n = 0;
  double lambda = 0.0;
  double z = 0.0;
  double lambda_error = 0.0;  ///< |lambda - continuum m_V|
  double z_error = 0.0;       ///< |z - continuum Z_V|
};

/// Discrete (lambda, apex weight) on successively finer grids, compared
/// with the continuum solution of the same bare theory.
std::vector<ConvergenceRow> convergence_study(const ModelParams& params, const BareCoupling& bare,
                                              std::span<const int> n_list, double k_max,
                                              GridScheme scheme = GridScheme::GaussLegendreK,
                                              const QuadSpec& spec = {});

}  // namespace lee
