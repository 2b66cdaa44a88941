#include "spincode/clifford_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace spincode {

namespace {

// ((a1 + b1 sqrt2)/2) * ((a2 + b2 sqrt2)/2) as a numerator pair over 4
struct Num4 {
  long a = 0, b = 0;
  Num4& operator+=(const Num4& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Num4 operator-() const { return {-a, -b}; }
};

Num4 mul(QuatComp p, QuatComp q) {
  return {static_cast<long>(p.a) * q.a + 2L * p.b * q.b,
          static_cast<long>(p.a) * q.b + static_cast<long>(p.b) * q.a};
}

QuatComp reduce(Num4 n) {
  if (n.a % 2 != 0 || n.b % 2 != 0)
    throw std::logic_error("quaternion product left the (a + b sqrt2)/2 ring");
  return {static_cast<int>(n.a / 2), static_cast<int>(n.b / 2)};
}

}  // namespace

Quaternion Quaternion::operator*(const Quaternion& o) const {
  Num4 nw = mul(w, o.w);
  nw += -mul(x, o.x);
  nw += -mul(y, o.y);
  nw += -mul(z, o.z);
  Num4 nx = mul(w, o.x);
  nx += mul(x, o.w);
  nx += mul(y, o.z);
  nx += -mul(z, o.y);
  Num4 ny = mul(w, o.y);
  ny += -mul(x, o.z);
  ny += mul(y, o.w);
  ny += mul(z, o.x);
  Num4 nz = mul(w, o.z);
  nz += mul(x, o.y);
  nz += -mul(y, o.x);
  nz += mul(z, o.w);
  return {reduce(nw), reduce(nx), reduce(ny), reduce(nz)};
}

Quaternion Quaternion::conjugated() const {
  return {w, {-x.a, -x.b}, {-y.a, -y.b}, {-z.a, -z.b}};
}

bool Quaternion::is_unit() const {
  long s = 0, c = 0;
  for (auto comp : {w, x, y, z}) {
    s += static_cast<long>(comp.a) * comp.a + 2L * comp.b * comp.b;
    c += static_cast<long>(comp.a) * comp.b;
  }
  return s == 4 && c == 0;
}

double Quaternion::angle() const {
  double c = std::clamp(w.value(), -1.0, 1.0);
  return 2.0 * std::acos(c);
}

std::array<double, 3> Quaternion::axis() const {
  double vx = x.value(), vy = y.value(), vz = z.value();
  double n = std::sqrt(vx * vx + vy * vy + vz * vz);
  if (n < 1e-15) return {0.0, 0.0, 1.0};
  return {vx / n, vy / n, vz / n};
}

std::string Quaternion::str() const {
  auto comp = [](QuatComp c) {
    return "(" + std::to_string(c.a) + (c.b ? ("+" + std::to_string(c.b) + "r2") : "") + ")/2";
  };
  return comp(w) + " " + comp(x) + "i " + comp(y) + "j " + comp(z) + "k";
}

Group::Group(GroupKind kind) : kind_(kind) {
  const Quaternion hurwitz{{1, 0}, {1, 0}, {1, 0}, {1, 0}};  // (1+i+j+k)/2
  std::vector<Quaternion> gens;
  if (kind == GroupKind::octahedral_2O)
    gens = {Quaternion{{0, 1}, {0, 1}, {0, 0}, {0, 0}}, hurwitz};  // (1+i)/sqrt2, (1+i+j+k)/2
  else
    gens = {Quaternion{{0, 0}, {2, 0}, {0, 0}, {0, 0}}, hurwitz};  // i, (1+i+j+k)/2

  std::set<Quaternion> seen{Quaternion::one()};
  std::vector<Quaternion> frontier{Quaternion::one()};
  while (!frontier.empty()) {
    std::vector<Quaternion> next;
    for (const auto& q : frontier)
      for (const auto& g : gens) {
        Quaternion p = q * g;
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }

  for (const auto& q : seen) {
    if (!q.is_unit()) throw std::logic_error("non-unit quaternion in group closure");
    elements_.push_back({q, -1});
  }

  const int n = static_cast<int>(elements_.size());
  std::map<Quaternion, int> index;
  for (int i = 0; i < n; ++i) index[elements_[i].q] = i;

  table_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = index.find(elements_[i].q * elements_[j].q);
      if (it == index.end()) throw std::logic_error("group not closed");
      table_[i][j] = it->second;
    }

  for (int i = 0; i < n; ++i) {
    if (elements_[i].conj_class >= 0) continue;
    int cls = static_cast<int>(classes_.size());
    std::vector<int> orbit;
    for (int h = 0; h < n; ++h) {
      Quaternion c = elements_[h].q * elements_[i].q * elements_[h].q.conjugated();
      int ci = index.at(c);
      if (elements_[ci].conj_class < 0) {
        elements_[ci].conj_class = cls;
        orbit.push_back(ci);
      }
    }
    classes_.push_back(std::move(orbit));
  }
}

const Group& Group::get(GroupKind kind) {
  static const Group octa(GroupKind::octahedral_2O);
  static const Group tetra(GroupKind::tetrahedral_2T);
  return kind == GroupKind::octahedral_2O ? octa : tetra;
}

int Group::index_of(const Quaternion& q) const {
  for (int i = 0; i < order(); ++i)
    if (elements_[i].q == q) return i;
  return -1;
}

AmOperator representative(const Quaternion& g, HalfInt j) {
  bool no_axis = g.x == QuatComp{} && g.y == QuatComp{} && g.z == QuatComp{};
  if (no_axis) {
    double s = g.w.value() > 0 ? 1.0 : (j.is_integer() ? 1.0 : -1.0);  // exp(-i 2pi J)
    return {j, s * Mat::Identity(j.dim(), j.dim())};
  }
  auto J = angular_momentum_matrices(j);
  auto n = g.axis();
  Mat gen = n[0] * J.x.matrix + n[1] * J.y.matrix + n[2] * J.z.matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es(gen);
  Vec phases = (cplx(0, -g.angle()) * es.eigenvalues().cast<cplx>().array()).exp();
  return {j, es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

namespace {

bool in_quaternion_group_q8(const Quaternion& q) {
  int big = 0, zero = 0;
  for (auto c : {q.w, q.x, q.y, q.z}) {
    if (c.b != 0) return false;
    if (std::abs(c.a) == 2) ++big;
    if (c.a == 0) ++zero;
  }
  return big == 1 && zero == 3;
}

// index of the coset of g in 2T / Q8 = Z3, generated by (1+i+j+k)/2
int z3_coset(const Quaternion& g) {
  if (in_quaternion_group_q8(g)) return 0;
  const Quaternion tau{{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  if (in_quaternion_group_q8(g * tau.conjugated())) return 1;
  return 2;
}

}  // namespace

std::vector<IrrepLabel> two_dim_characters(GroupKind kind) {
  const Group& G = Group::get(kind);
  const int n = G.order();

  IrrepLabel rho4{kind, "rho4", 2, {}, true};
  rho4.character.resize(n);
  for (int i = 0; i < n; ++i) rho4.character[i] = 2.0 * G.elements()[i].q.w.value();

  std::vector<IrrepLabel> out;
  if (kind == GroupKind::octahedral_2O) {
    IrrepLabel rho5{kind, "rho5", 2, {}, true};
    rho5.character.resize(n);
    for (int i = 0; i < n; ++i) {
      double sgn = G.elements()[i].q.in_tetrahedral() ? 1.0 : -1.0;
      rho5.character[i] = sgn * rho4.character[i];
    }
    out = {rho4, rho5};
  } else {
    const cplx omega = std::exp(cplx(0, 2.0 * M_PI / 3.0));
    IrrepLabel a{kind, "rho4a", 2, {}, false}, b{kind, "rho4b", 2, {}, false};
    a.character.resize(n);
    b.character.resize(n);
    for (int i = 0; i < n; ++i) {
      int c = z3_coset(G.elements()[i].q);
      a.character[i] = rho4.character[i] * std::pow(omega, c);
      b.character[i] = rho4.character[i] * std::pow(std::conj(omega), c);
    }
    out = {rho4, a, b};
  }
  return out;
}

IrrepLabel find_irrep(GroupKind kind, const std::string& name) {
  for (auto& ir : two_dim_characters(kind))
    if (ir.name == name) return ir;
  throw std::invalid_argument("unknown irrep " + name + " for " + group_name(kind));
}

namespace {

// character of the spin-j representation at group element g
double spin_character(const Quaternion& g, HalfInt j) {
  bool no_axis = g.x == QuatComp{} && g.y == QuatComp{} && g.z == QuatComp{};
  if (no_axis) {
    double s = g.w.value() > 0 ? 1.0 : (j.is_integer() ? 1.0 : -1.0);
    return s * j.dim();
  }
  double half_theta = std::acos(std::clamp(g.w.value(), -1.0, 1.0));
  return std::sin(j.dim() * half_theta) / std::sin(half_theta);
}

}  // namespace

int multiplicity(HalfInt j, const IrrepLabel& irrep) {
  const Group& G = Group::get(irrep.group);
  cplx acc = 0;
  for (int i = 0; i < G.order(); ++i)
    acc += std::conj(irrep.chi(i)) * spin_character(G.elements()[i].q, j);
  acc /= static_cast<double>(G.order());
  double r = std::round(acc.real());
  if (std::abs(acc.real() - r) > 1e-9 || std::abs(acc.imag()) > 1e-9)
    throw std::runtime_error("non-integer irrep multiplicity: " + std::to_string(acc.real()));
  return static_cast<int>(r);
}

AmOperator projector(HalfInt j, const IrrepLabel& irrep) {
  const Group& G = Group::get(irrep.group);
  Mat p = Mat::Zero(j.dim(), j.dim());
  for (int i = 0; i < G.order(); ++i)
    p += std::conj(irrep.chi(i)) * representative(G.elements()[i].q, j).matrix;
  p *= static_cast<double>(irrep.dimension) / G.order();
  return {j, p};
}

int support_residue_of(const RVec& amps, HalfInt j, GroupKind kind, double tol) {
  const int mod = kind == GroupKind::octahedral_2O ? 8 : 4;
  double top = amps.cwiseAbs().maxCoeff();
  if (top <= 0) throw std::invalid_argument("zero amplitude vector");
  int residue = -1;
  for (int i = 0; i < amps.size(); ++i) {
    if (std::abs(amps(i)) <= tol * top) continue;
    int mt = j.twice - 2 * i;
    int r = ((mt % mod) + mod) % mod;
    if (residue < 0) residue = r;
    if (r != residue)
      throw std::invalid_argument("support rule violated: mixes residues " +
                                  std::to_string(residue) + " and " + std::to_string(r) +
                                  " (mod " + std::to_string(mod) + ")");
  }
  bool ok = kind == GroupKind::octahedral_2O ? (residue == 1 || residue == 5) : (residue == 1);
  if (!ok)
    throw std::invalid_argument("support rule violated: residue " + std::to_string(residue));
  return residue;
}

CodeBasis logical_codewords(HalfInt j, const IrrepLabel& irrep) {
  if (!irrep.real_character)
    throw std::invalid_argument("logical codewords require a real-character irrep");
  const int mult = multiplicity(j, irrep);
  if (mult == 0)
    throw std::invalid_argument("irrep " + irrep.name + " has no copy in spin " + j.str());

  const int d = j.dim();
  Mat pc = projector(j, irrep).matrix;
  if (pc.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::logic_error("projector not real for real-character irrep");
  RMat P = pc.real();

  // logical Z = P (i e^{-i pi Jz}) P; the sandwiched factor is diag(sin(pi m)) = +-1
  RVec dz(d);
  for (int i = 0; i < d; ++i) {
    int mt = j.twice - 2 * i;
    if (mt % 2 == 0) throw std::invalid_argument("logical Z needs half-integer spin");
    dz(i) = (((mt % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
  }
  RMat Z = P * dz.asDiagonal() * P;

  Eigen::SelfAdjointEigenSolver<RMat> es(Z);
  std::vector<int> plus;
  for (int i = 0; i < d; ++i)
    if (std::abs(es.eigenvalues()(i) - 1.0) < 1e-8) plus.push_back(i);
  if (static_cast<int>(plus.size()) != mult)
    throw std::logic_error("logical Z eigenspace dimension " + std::to_string(plus.size()) +
                           " != multiplicity " + std::to_string(mult));

  RMat V(d, mult);
  for (int c = 0; c < mult; ++c) V.col(c) = es.eigenvectors().col(plus[c]);

  RVec mz(d);
  for (int i = 0; i < d; ++i) mz(i) = 0.5 * (j.twice - 2 * i);
  if (mult > 1) {
    RMat B = V.transpose() * mz.asDiagonal() * V;
    Eigen::SelfAdjointEigenSolver<RMat> bs(B);
    RMat W(mult, mult);
    for (int c = 0; c < mult; ++c) W.col(c) = bs.eigenvectors().col(mult - 1 - c);  // descending
    V = V * W;
  }

  CodeBasis basis;
  basis.j = j;
  basis.irrep = irrep;
  basis.mult = mult;
  // i U_X = i exp(-i pi Jx) maps |j,m> to +-|j,-m>: + for j = 1/2 mod 2,
  // - for j = 3/2 mod 2.  The sign is shared by every copy at this j, but
  // matters relative to copies hosted at other j values.
  const double ux_sign = (((j.twice % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
  for (int c = 0; c < mult; ++c) {
    RVec zero = V.col(c);
    int best = 0;
    for (int i = 1; i < d; ++i)
      if (std::abs(zero(i)) > std::abs(zero(best))) best = i;
    if (zero(best) < 0) zero = -zero;
    RVec one = ux_sign * zero.reverse();
    basis.zeros.push_back(zero);
    basis.ones.push_back(one);
    basis.jz_expect.push_back(zero.dot(mz.asDiagonal() * zero));
    basis.support_residue.push_back(support_residue_of(zero, j, irrep.group));
  }
  return basis;
}

}  // namespace spincode
