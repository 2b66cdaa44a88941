#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <utility>

#include "spincode/coupling.hpp"
#include "spincode/half_int.hpp"

namespace spincode {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

/// Complex matrix on a single spin-j irrep.  Rows and columns are indexed by
/// m in descending order (m = j first), matching the usual ket listings.
struct AmOperator {
  HalfInt j;
  Mat matrix;

  int dim() const { return j.dim(); }
  /// row/column index of projection m
  int index_of(HalfInt m) const { return (j - m).twice / 2; }
  HalfInt m_of(int idx) const { return HalfInt::from_twice(j.twice - 2 * idx); }
};

enum class Axis { x, y, z };

struct AmMatrices {
  AmOperator x, y, z, plus, minus;
};

/// J_z, J_x, J_y and the ladder operators on the spin-j irrep.
AmMatrices angular_momentum_matrices(HalfInt j);

/// exp(-i * angle * J_axis), computed through the Hermitian eigendecomposition
/// of the generator so the result is unitary to rounding.
AmOperator rotation(HalfInt j, Axis axis, double angle);

/// U_X = exp(-i pi J_x).  For half-integer j this equals the exact
/// antidiagonal form -i sum_m |j,m><j,-m|, which is what this returns;
/// integer j falls back to the eigendecomposition route.
AmOperator ux_operator(HalfInt j);

/// Spherical tensor operator
///   T^k_q(j) = sqrt((2k+1)/(2j+1)) sum_m <j,m+q|k,q;j,m> |j,m+q><j,m| ,
/// orthonormal in the Hilbert-Schmidt inner product.  Throws when k > 2j.
AmOperator spherical_tensor(HalfInt j, int k, int q);

/// T^k_q scaled so that rank-1 components are the spherical parts of J itself:
/// q=0 -> J_z, q=+1 -> -J_+/sqrt(2), q=-1 -> J_-/sqrt(2).  Ranks >= 2 are the
/// Hilbert-Schmidt-normalized tensors.
AmOperator j_scaled_tensor(HalfInt j, int k, int q);

/// U_X T^k_q U_X^dagger = phase * T^k_{q_out}; returns {(-1)^k, -q}.
std::pair<int, int> ux_conjugate(int k, int q);

/// Companion verifier: max entrywise deviation of U_X T^k_q U_X^dagger from
/// the predicted phase * T^k_{q_out}.
double ux_conjugate_residual(HalfInt j, int k, int q);

/// Largest entrywise deviation between T^k_q T^{k'}_{q'} and its expansion
/// sqrt((2k+1)(2k'+1)) sum c^{ktilde} T^{ktilde}_{q+q'}.
double product_expansion_residual(HalfInt j, int k, int q, int kp, int qp);

}  // namespace spincode
