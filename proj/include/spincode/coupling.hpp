#pragma once

#include <gmpxx.h>

#include <map>

#include "spincode/half_int.hpp"

namespace spincode {

/// Exact signed square root of a nonnegative rational: value = sign * sqrt(radicand).
/// Closed under products and squaring, which is all the coupling algebra needs.
/// The representation is unique (radicand == 0 iff sign == 0).
class CouplingValue {
 public:
  CouplingValue() = default;

  static CouplingValue signed_sqrt(int sign, mpq_class radicand);
  /// value = r (stored as sign(r) * sqrt(r^2))
  static CouplingValue from_rational(const mpq_class& r);
  static CouplingValue zero() { return CouplingValue(); }

  int sign() const { return sign_; }
  const mpq_class& radicand() const { return radicand_; }
  bool is_zero() const { return sign_ == 0; }

  /// Set only if the value could not be represented exactly.  Never happens
  /// for single Clebsch-Gordan or 6j evaluations, whose Racah forms are pure
  /// signed radicals; kept so downstream code can ask.
  bool approximate() const { return approximate_; }

  CouplingValue operator*(const CouplingValue& o) const;
  CouplingValue operator-() const;
  mpq_class squared() const { return radicand_; }

  double to_double() const;

  bool operator==(const CouplingValue& o) const {
    return sign_ == o.sign_ && radicand_ == o.radicand_;
  }

 private:
  int sign_ = 0;
  mpq_class radicand_ = 0;
  bool approximate_ = false;
};

/// Condon-Shortley Clebsch-Gordan coefficient <J,M|j1,m1;j2,m2>, exact.
/// Zero when M != m1+m2, when any |m| exceeds its j, or when the triangle
/// rule fails; total function otherwise.
CouplingValue clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                             HalfInt J, HalfInt M);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the exact Racah single sum.
/// Returns zero on any triad violation.
CouplingValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3,
                        HalfInt j4, HalfInt j5, HalfInt j6);

/// Coefficient c^{ktilde}_{qtilde} in the single-irrep product expansion
///   T^k_q T^{k'}_{q'} = sqrt((2k+1)(2k'+1)) sum_ktilde c^{ktilde}_{q+q'} T^{ktilde}_{q+q'} .
CouplingValue tensor_product_coeff(HalfInt j, int k, int q, int kp, int qp, int ktilde);

/// All nonzero coefficients, keyed by ktilde; range |k-k'| <= ktilde <= min(k+k', 2j).
std::map<int, CouplingValue> tensor_product_expansion(HalfInt j, int k, int q, int kp, int qp);

}  // namespace spincode
