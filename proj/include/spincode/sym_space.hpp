#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spincode/am_ops.hpp"
#include "spincode/half_int.hpp"

namespace spincode {

/// dim of the symmetric subspace of n copies of a d-dim system, d = 2j+1:
/// binomial(d+n-1, n).
std::uint64_t sym_dim(int n, HalfInt j);

/// All non-increasing tuples of n_modes parts summing to n_bosons with each
/// part <= max_per_mode.
std::vector<std::vector<int>> restricted_partitions(int n_bosons, int n_modes, int max_per_mode);

struct IrrepDecomposition {
  int n = 0;
  HalfInt j;
  std::vector<std::pair<HalfInt, int>> entries;  // (J, multiplicity), J descending

  int multiplicity_of(HalfInt J) const;
  std::uint64_t total_dim() const;
};

/// SU(2) content of the symmetric subspace: mult(J) = p(nj - J) - p(nj - J - 1)
/// where p counts restricted partitions into n modes of at most 2j bosons.
IrrepDecomposition decompose_symmetric(int n, HalfInt j);

/// Orthonormal basis of the symmetric subspace of n spin-j systems, expressed
/// in the product basis and labeled (J, multiplicity copy, M).  Columns are
/// real; the collective lowering operator connects (J,M) to (J,M-1) columns
/// exactly (ladder built top-down, multiplicity fixed where each J is born by
/// diagonalizing the first-site J_z and ordering its eigenvalues descending).
class SymBasis {
 public:
  struct ColumnKey {
    HalfInt J;
    int mult;
    HalfInt M;
    auto operator<=>(const ColumnKey&) const = default;
  };

  static SymBasis build(int n, HalfInt j, int dense_limit = 4096);

  int n_sites() const { return n_; }
  HalfInt site_j() const { return j_; }
  int site_dim() const { return j_.dim(); }
  int product_dim() const { return prod_dim_; }
  int num_columns() const { return static_cast<int>(keys_.size()); }

  const std::vector<ColumnKey>& keys() const { return keys_; }
  const RVec& column(const ColumnKey& k) const;
  const RVec& column(int i) const { return cols_[i]; }
  const IrrepDecomposition& decomposition() const { return decomp_; }

  /// Embed collective-basis amplitudes (for one (J, mult) host) into the
  /// product space.  amps are indexed by M descending (M = J first).
  RVec embed(HalfInt J, int mult, const RVec& amps) const;

 private:
  int n_ = 0;
  HalfInt j_;
  int prod_dim_ = 0;
  IrrepDecomposition decomp_;
  std::vector<ColumnKey> keys_;
  std::vector<RVec> cols_;
  std::map<ColumnKey, int> index_;
};

/// Applies a one-site operator to a product-space vector.
Vec apply_site_operator(const Vec& v, const Mat& op, int site, int n, int site_dim);

/// <left| O_1 x ... x O_n |right> on product-space vectors; null entries mean
/// identity at that site.
cplx local_matrix_element(const Vec& left, const std::vector<const Mat*>& ops, const Vec& right,
                          int n, int site_dim);

/// Dicke-state label for N qubits: M is the collective J_z eigenvalue, the
/// excitation count is N/2 - M.
struct DickeLabel {
  int N = 0;
  HalfInt M;
  int excitations() const;
};

/// Amplitudes over Dicke levels, keyed by excitation count.
using DickeAmps = std::map<int, double>;

/// <left| product of single-site Paulis |right> on symmetric N-qubit states,
/// evaluated by exact combinatorics over excitation counts (no 2^N vectors).
/// pauli_sites maps distinct site indices to letters in {x,y,z,+,-}; weight
/// capped at 6.
cplx dicke_local_expectation(int N, const DickeAmps& left, const std::map<int, char>& pauli_sites,
                             const DickeAmps& right);

/// Dense 2^N embedding of a symmetric state (test oracle and brute-force
/// checks; N <= 13 so the vector fits comfortably).
Vec dicke_dense_vector(int N, const DickeAmps& amps);

}  // namespace spincode
