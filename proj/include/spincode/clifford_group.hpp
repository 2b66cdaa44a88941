#pragma once

#include <complex>
#include <string>
#include <vector>

#include "spincode/am_ops.hpp"
#include "spincode/half_int.hpp"

namespace spincode {

enum class GroupKind { octahedral_2O, tetrahedral_2T };

inline const char* group_name(GroupKind k) {
  return k == GroupKind::octahedral_2O ? "2O" : "2T";
}

/// One quaternion component, exactly (a + b*sqrt(2)) / 2 with integer a, b.
/// Every element of the binary octahedral group lives in this ring.
struct QuatComp {
  int a = 0, b = 0;

  double value() const { return 0.5 * (a + b * std::sqrt(2.0)); }
  bool operator==(const QuatComp&) const = default;
  auto operator<=>(const QuatComp&) const = default;
};

struct Quaternion {
  QuatComp w, x, y, z;

  Quaternion operator*(const Quaternion& o) const;
  Quaternion conjugated() const;  // inverse for unit quaternions
  bool operator==(const Quaternion&) const = default;
  auto operator<=>(const Quaternion&) const = default;

  static Quaternion one() { return {{2, 0}, {}, {}, {}}; }
  static Quaternion minus_one() { return {{-2, 0}, {}, {}, {}}; }

  bool is_unit() const;
  /// true when all components are rational (b == 0), i.e. the element lies in 2T
  bool in_tetrahedral() const { return w.b == 0 && x.b == 0 && y.b == 0 && z.b == 0; }

  /// rotation angle in [0, 2pi] of exp(-i theta n.J)
  double angle() const;
  /// unit rotation axis; undefined direction for +-1 (returns z)
  std::array<double, 3> axis() const;

  std::string str() const;
};

struct GroupElement {
  Quaternion q;
  int conj_class = -1;  // index into Group::classes
};

/// A fully enumerated binary octahedral (48) or binary tetrahedral (24) group
/// with conjugacy classes.  Immutable after construction.
class Group {
 public:
  static const Group& get(GroupKind kind);  // built once, shared

  GroupKind kind() const { return kind_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int order() const { return static_cast<int>(elements_.size()); }

  int index_of(const Quaternion& q) const;  // -1 if absent
  int multiply(int i, int j) const { return table_[i][j]; }

 private:
  explicit Group(GroupKind kind);
  GroupKind kind_;
  std::vector<GroupElement> elements_;
  std::vector<std::vector<int>> classes_;
  std::vector<std::vector<int>> table_;
};

/// Spin-j representative D(g) = exp(-i theta n.J); an exact homomorphism of
/// the binary group (signs tracked through the quaternion double cover).
AmOperator representative(const Quaternion& g, HalfInt j);

/// A two-dimensional irrep, stored as its character over group elements.
struct IrrepLabel {
  GroupKind group;
  std::string name;          // "rho4", "rho5" (2O); "rho4", "rho4a", "rho4b" (2T)
  int dimension = 2;
  std::vector<std::complex<double>> character;  // indexed like Group::elements()
  bool real_character = true;

  std::complex<double> chi(int element_index) const { return character[element_index]; }
};

/// The faithful 2-dim irreps: {rho4, rho5} for 2O; {rho4, rho4a, rho4b} for 2T
/// (only rho4 has a real character there; codewords always live in
/// real-character irreps).
std::vector<IrrepLabel> two_dim_characters(GroupKind kind);

IrrepLabel find_irrep(GroupKind kind, const std::string& name);

/// Number of copies of the irrep inside the spin-j representation, via the
/// character inner product.  Throws if the projection is not integral.
int multiplicity(HalfInt j, const IrrepLabel& irrep);

/// P = (dim/|G|) sum_g chi(g)^* D_j(g).  Real symmetric for real characters.
AmOperator projector(HalfInt j, const IrrepLabel& irrep);

/// Logical codeword basis for one (j, irrep) host.
struct CodeBasis {
  HalfInt j;
  IrrepLabel irrep;
  int mult = 0;
  std::vector<RVec> zeros;          // +1 eigenvectors of logical Z, real
  std::vector<RVec> ones;           // i U_X |0>, real
  std::vector<double> jz_expect;    // <0|J_z|0> per copy, descending
  // support residue of each |0>: m.twice mod 8 for 2O (1 or 5), mod 4 for 2T (always 1)
  std::vector<int> support_residue;
};

/// Builds logical |0>/|1> pairs: P from the character, logical Z
/// = P (i e^{-i pi J_z}) P, zeros the +1 eigenvectors (degeneracy broken by
/// diagonalizing J_z on their span, ordered by descending <J_z>), ones via
/// i U_X with the global phase that keeps amplitudes real.
CodeBasis logical_codewords(HalfInt j, const IrrepLabel& irrep);

/// Support families: every 2O zero lives on m = 4Z + 1/2 or m = 4Z - 3/2
/// exclusively; 2T zeros on m = 2Z + 1/2.  Returns the residue of m.twice
/// (mod 8 for 2O, mod 4 for 2T) or throws if the vector mixes families.
int support_residue_of(const RVec& amps, HalfInt j, GroupKind kind, double tol = 1e-10);

}  // namespace spincode
