#pragma once

#include <cstdint>

#include "gensmooth/libsvm.hpp"
#include "gensmooth/oracle.hpp"

namespace gensmooth {

/// f(x) = |x|^(2n) with constants (2n, 2n-1); minimizer 0.
OraclePtr make_power_norm(Eigen::Index d, int n);

/// f(x) = exp(a^T x) with constants (1e-12, |a|); no finite minimizer.
OraclePtr make_exp_inner(const Vector& a);

/// f(x) = (1/n) sum_i log(1 + exp(-y_i a_i^T x)) + (mu/2)|x|^2.
///
/// The per-component record holds L1 = max |a_i| and L = max |a_i|^2 (plus
/// mu). For mu > 0 the unique minimizer is computed by Newton's method and
/// attached as the optimum; for mu = 0 no optimum is attached.
OraclePtr make_logistic(const SparseDataset& data, double mu = 0.0);

/// f(x) = (mu/2)|x|^2 + |x|^4 with constants (mu + 12, 3, mu).
OraclePtr make_quartic_regularized(Eigen::Index d, double mu);

/// f_i(x) = (a_i^T x - a_i^T x*)^4 averaged over the rows of A. Every
/// component is minimized at x*, with shared constants
/// L0 = 12 max |a_i|^2 and L1 = 3 max |a_i|.
OraclePtr make_shared_min_quartic(const Matrix& A, const Vector& x_star);

/// Random shared-minimum instance: rows of A uniform on the unit sphere,
/// x* standard normal.
struct SharedMinInstance {
  Matrix A;
  Vector x_star;
};
SharedMinInstance random_shared_min_instance(Eigen::Index n, Eigen::Index d,
                                             std::uint64_t seed);

/// Toy logistic data: a_i = (1, 2, ..., d) + xi_i with xi_i standard
/// normal, i = 1..d; every label is +1 except row `flipped_index` (0-based).
SparseDataset make_toy_logistic_dataset(Eigen::Index d, std::uint64_t seed,
                                        std::size_t flipped_index);

}  // namespace gensmooth
