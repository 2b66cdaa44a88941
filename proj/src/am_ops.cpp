#include "spincode/am_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace spincode {

AmMatrices angular_momentum_matrices(HalfInt j) {
  if (j.twice < 0) throw std::invalid_argument("negative spin");
  const int d = j.dim();
  Mat jz = Mat::Zero(d, d), jp = Mat::Zero(d, d), jm = Mat::Zero(d, d);
  const double jj = j.value() * (j.value() + 1.0);
  for (int i = 0; i < d; ++i) {
    double m = 0.5 * (j.twice - 2 * i);
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(jj - m * (m + 1.0));   // <m+1|J+|m>
    if (i < d - 1) jm(i + 1, i) = std::sqrt(jj - m * (m - 1.0));
  }
  Mat jx = 0.5 * (jp + jm);
  Mat jy = cplx(0, -0.5) * (jp - jm);
  return {{j, jx}, {j, jy}, {j, jz}, {j, jp}, {j, jm}};
}

AmOperator rotation(HalfInt j, Axis axis, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("non-finite angle");
  AmMatrices J = angular_momentum_matrices(j);
  const Mat& gen = axis == Axis::x ? J.x.matrix : axis == Axis::y ? J.y.matrix : J.z.matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es(gen);
  Vec phases = (cplx(0, -angle) * es.eigenvalues().cast<cplx>().array()).exp();
  Mat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return {j, u};
}

AmOperator ux_operator(HalfInt j) {
  if (j.is_integer()) return rotation(j, Axis::x, M_PI);
  // exp(-i pi Jx)|j,m> = -e^{i pi j}|j,-m>: the antidiagonal phase is -i for
  // j = 1/2 mod 2 and +i for j = 3/2 mod 2.
  const int d = j.dim();
  cplx phase = (((j.twice % 4) + 4) % 4 == 1) ? cplx(0, -1) : cplx(0, 1);
  Mat u = Mat::Zero(d, d);
  for (int col = 0; col < d; ++col) u(d - 1 - col, col) = phase;
  return {j, u};
}

AmOperator spherical_tensor(HalfInt j, int k, int q) {
  if (k < 0 || k > j.twice)
    throw std::invalid_argument("rank " + std::to_string(k) + " tensor does not exist on spin " + j.str());
  if (std::abs(q) > k) throw std::invalid_argument("|q| > k");
  const int d = j.dim();
  Mat t = Mat::Zero(d, d);
  const double norm = std::sqrt(double(2 * k + 1) / d);
  // System-first coupling order <j,m+q|j,m;k,q> (the polarization-operator
  // convention), which is the order the product-expansion coefficients assume
  // and which makes T^1_0 a positive multiple of J_z.
  for (int col = 0; col < d; ++col) {
    HalfInt m = HalfInt::from_twice(j.twice - 2 * col);
    HalfInt mq = m + HalfInt(q);
    if (abs(mq) > j) continue;
    CouplingValue cg = clebsch_gordan(j, m, HalfInt(k), HalfInt(q), j, mq);
    if (cg.is_zero()) continue;
    t((j - mq).twice / 2, col) = norm * cg.to_double();
  }
  return {j, t};
}

AmOperator j_scaled_tensor(HalfInt j, int k, int q) {
  if (k == 1) {
    AmMatrices J = angular_momentum_matrices(j);
    if (q == 0) return J.z;
    if (q == 1) return {j, (-1.0 / std::sqrt(2.0)) * J.plus.matrix};
    if (q == -1) return {j, (1.0 / std::sqrt(2.0)) * J.minus.matrix};
    throw std::invalid_argument("|q| > 1 for rank 1");
  }
  return spherical_tensor(j, k, q);
}

std::pair<int, int> ux_conjugate(int k, int q) { return {k % 2 == 0 ? 1 : -1, -q}; }

double ux_conjugate_residual(HalfInt j, int k, int q) {
  Mat ux = ux_operator(j).matrix;
  Mat lhs = ux * spherical_tensor(j, k, q).matrix * ux.adjoint();
  auto [phase, qo] = ux_conjugate(k, q);
  Mat rhs = double(phase) * spherical_tensor(j, k, qo).matrix;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double product_expansion_residual(HalfInt j, int k, int q, int kp, int qp) {
  Mat direct = spherical_tensor(j, k, q).matrix * spherical_tensor(j, kp, qp).matrix;
  Mat sum = Mat::Zero(j.dim(), j.dim());
  const double scale = std::sqrt(double(2 * k + 1) * (2 * kp + 1));
  for (auto& [kt, c] : tensor_product_expansion(j, k, q, kp, qp))
    sum += scale * c.to_double() * spherical_tensor(j, kt, q + qp).matrix;
  return (direct - sum).cwiseAbs().maxCoeff();
}

}  // namespace spincode
