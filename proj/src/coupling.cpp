#include "spincode/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace spincode {

namespace {

// factorial of a nonnegative HalfInt that must be a true integer
mpz_class fact(HalfInt h) {
  if (!h.is_integer() || h.twice < 0) throw std::logic_error("factorial of " + h.str());
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(h.twice / 2));
  return r;
}

bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  // |a-b| <= c <= a+b with integer perimeter
  if ((a + b + c).twice % 2 != 0) return false;
  return (a + b - c).twice >= 0 && (a - b + c).twice >= 0 && (-a + b + c).twice >= 0;
}

// Delta(a,b,c)^2 = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
mpq_class triangle_coeff_sq(HalfInt a, HalfInt b, HalfInt c) {
  mpq_class r(fact(a + b - c) * fact(a - b + c) * fact(-a + b + c), fact(a + b + c + 1));
  r.canonicalize();
  return r;
}

}  // namespace

CouplingValue CouplingValue::signed_sqrt(int sign, mpq_class radicand) {
  if (radicand < 0) throw std::invalid_argument("negative radicand");
  CouplingValue v;
  if (sign == 0 || radicand == 0) return v;
  radicand.canonicalize();
  v.sign_ = sign > 0 ? 1 : -1;
  v.radicand_ = radicand;
  return v;
}

CouplingValue CouplingValue::from_rational(const mpq_class& r) {
  int s = sgn(r);
  return signed_sqrt(s, r * r);
}

CouplingValue CouplingValue::operator*(const CouplingValue& o) const {
  CouplingValue v = signed_sqrt(sign_ * o.sign_, radicand_ * o.radicand_);
  v.approximate_ = approximate_ || o.approximate_;
  return v;
}

CouplingValue CouplingValue::operator-() const {
  CouplingValue v = *this;
  v.sign_ = -v.sign_;
  return v;
}

double CouplingValue::to_double() const {
  // mpq_get_d handles arbitrarily large numerator/denominator pairs
  return sign_ * std::sqrt(radicand_.get_d());
}

CouplingValue clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                             HalfInt J, HalfInt M) {
  if (M != m1 + m2) return CouplingValue::zero();
  if (abs(m1) > j1 || abs(m2) > j2 || abs(M) > J) return CouplingValue::zero();
  // m must differ from j by an integer
  if ((j1 - m1).twice % 2 != 0 || (j2 - m2).twice % 2 != 0 || (J - M).twice % 2 != 0)
    return CouplingValue::zero();
  if (!triangle_ok(j1, j2, J)) return CouplingValue::zero();

  // Racah's closed form: sqrt(prefactor) * sum over t of signed rationals.
  mpq_class pre = mpq_class(J.dim()) * triangle_coeff_sq(j1, j2, J);
  pre *= fact(J + M) * fact(J - M) * fact(j1 - m1) * fact(j1 + m1) * fact(j2 - m2) * fact(j2 + m2);

  // t ranges so that every factorial argument is nonnegative
  int t_min = std::max({0, -(J - j2 + m1).twice / 2, -(J - j1 - m2).twice / 2});
  int t_max = std::min({(j1 + j2 - J).twice / 2, (j1 - m1).twice / 2, (j2 + m2).twice / 2});

  mpq_class sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    mpz_class den = fact(t) * fact(j1 + j2 - J - t) * fact(j1 - m1 - t) * fact(j2 + m2 - t) *
                    fact(J - j2 + m1 + t) * fact(J - j1 - m2 + t);
    mpq_class term(t % 2 == 0 ? 1 : -1, den);
    term.canonicalize();
    sum += term;
  }
  if (sum == 0) return CouplingValue::zero();
  return CouplingValue::signed_sqrt(sgn(sum), pre * sum * sum);
}

CouplingValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3,
                        HalfInt j4, HalfInt j5, HalfInt j6) {
  if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) ||
      !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3))
    return CouplingValue::zero();

  mpq_class pre = triangle_coeff_sq(j1, j2, j3) * triangle_coeff_sq(j1, j5, j6) *
                  triangle_coeff_sq(j4, j2, j6) * triangle_coeff_sq(j4, j5, j3);

  HalfInt s123 = j1 + j2 + j3, s156 = j1 + j5 + j6, s426 = j4 + j2 + j6, s453 = j4 + j5 + j3;
  HalfInt p1245 = j1 + j2 + j4 + j5, p2356 = j2 + j3 + j5 + j6, p1346 = j1 + j3 + j4 + j6;

  int t_min = std::max({s123.twice, s156.twice, s426.twice, s453.twice}) / 2;
  int t_max = std::min({p1245.twice, p2356.twice, p1346.twice}) / 2;

  mpq_class sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(t + 1));
    mpz_class den = fact(HalfInt(t) - s123) * fact(HalfInt(t) - s156) *
                    fact(HalfInt(t) - s426) * fact(HalfInt(t) - s453) *
                    fact(p1245 - HalfInt(t)) * fact(p2356 - HalfInt(t)) *
                    fact(p1346 - HalfInt(t));
    mpq_class term(num, den);
    term.canonicalize();
    sum += (t % 2 == 0) ? term : -term;
  }
  if (sum == 0) return CouplingValue::zero();
  return CouplingValue::signed_sqrt(sgn(sum), pre * sum * sum);
}

CouplingValue tensor_product_coeff(HalfInt j, int k, int q, int kp, int qp, int ktilde) {
  CouplingValue six = wigner_6j(k, kp, ktilde, j, j, j);
  CouplingValue cg = clebsch_gordan(k, q, kp, qp, ktilde, q + qp);
  CouplingValue c = six * cg;
  int phase = ((j.twice + ktilde) % 2 == 0) ? 1 : -1;  // (-1)^(2j + ktilde)
  return phase > 0 ? c : -c;
}

std::map<int, CouplingValue> tensor_product_expansion(HalfInt j, int k, int q, int kp, int qp) {
  std::map<int, CouplingValue> out;
  int lo = std::abs(k - kp), hi = std::min(k + kp, j.twice);
  for (int kt = lo; kt <= hi; ++kt) {
    if (std::abs(q + qp) > kt) continue;
    CouplingValue c = tensor_product_coeff(j, k, q, kp, qp, kt);
    if (!c.is_zero()) out.emplace(kt, c);
  }
  return out;
}

}  // namespace spincode
