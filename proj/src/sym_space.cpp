#include "spincode/sym_space.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spincode {

std::uint64_t sym_dim(int n, HalfInt j) {
  if (n < 1) throw std::invalid_argument("need at least one spin");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), j.dim() + n - 1, n);
  if (!b.fits_ulong_p()) throw std::overflow_error("symmetric subspace dimension overflow");
  return b.get_ui();
}

namespace {

void partitions_rec(int remaining, int modes_left, int cap, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (modes_left == 0) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, cap); part >= 0; --part) {
    if (part * modes_left < remaining) break;  // cannot reach the sum non-increasingly
    cur.push_back(part);
    partitions_rec(remaining - part, modes_left - 1, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> restricted_partitions(int n_bosons, int n_modes, int max_per_mode) {
  if (n_bosons < 0 || n_modes < 0 || max_per_mode < 0)
    throw std::invalid_argument("negative partition parameters");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n_bosons, n_modes, max_per_mode, cur, out);
  return out;
}

int IrrepDecomposition::multiplicity_of(HalfInt J) const {
  for (auto& [Jv, m] : entries)
    if (Jv == J) return m;
  return 0;
}

std::uint64_t IrrepDecomposition::total_dim() const {
  std::uint64_t t = 0;
  for (auto& [J, m] : entries) t += static_cast<std::uint64_t>(m) * J.dim();
  return t;
}

IrrepDecomposition decompose_symmetric(int n, HalfInt j) {
  if (n < 1) throw std::invalid_argument("need at least one spin");
  IrrepDecomposition dec;
  dec.n = n;
  dec.j = j;
  HalfInt top = HalfInt::from_twice(n * j.twice);
  auto p = [&](HalfInt M) -> int {
    if (M > top) return 0;
    int bosons = (top - M).twice / 2;  // integer by parity
    return static_cast<int>(restricted_partitions(bosons, n, j.twice).size());
  };
  for (HalfInt J = top; J.twice >= 0; J = J - 1) {
    int m = p(J) - p(J + 1);
    if (m > 0) dec.entries.push_back({J, m});
  }
  if (dec.total_dim() != sym_dim(n, j))
    throw std::logic_error("symmetric-subspace dimension mismatch in decomposition");
  return dec;
}

namespace {

// real single-site operator application (basis construction stays real)
RVec apply_site_real(const RVec& v, const RMat& op, int site, int n, int d) {
  RVec out = RVec::Zero(v.size());
  long stride = 1;
  for (int s = n - 1; s > site; --s) stride *= d;
  long block = stride * d;
  for (long base = 0; base < v.size(); base += block)
    for (long off = 0; off < stride; ++off)
      for (int a = 0; a < d; ++a) {
        double acc = 0;
        for (int b = 0; b < d; ++b) acc += op(a, b) * v(base + b * stride + off);
        out(base + a * stride + off) = acc;
      }
  return out;
}

RVec collective_lower(const RVec& v, const RMat& jminus, int n, int d) {
  RVec out = RVec::Zero(v.size());
  for (int s = 0; s < n; ++s) out += apply_site_real(v, jminus, s, n, d);
  return out;
}

}  // namespace

SymBasis SymBasis::build(int n, HalfInt j, int dense_limit) {
  SymBasis sb;
  sb.n_ = n;
  sb.j_ = j;
  const int d = j.dim();
  double dim_check = std::pow(double(d), n);
  if (dim_check > dense_limit)
    throw std::invalid_argument(
        "product dimension " + std::to_string(static_cast<long>(dim_check)) + " exceeds the dense limit " +
        std::to_string(dense_limit) + "; use the Dicke fast path for qubits");
  int prod = 1;
  for (int s = 0; s < n; ++s) prod *= d;
  sb.prod_dim_ = prod;
  sb.decomp_ = decompose_symmetric(n, j);

  // product index -> total m (in twice units), and the symmetrized multiset states per sector
  std::vector<int> mtot(prod);
  for (int i = 0; i < prod; ++i) {
    int rem = i, t = 0;
    for (int s = n - 1; s >= 0; --s) {
      int idx = rem % d;
      rem /= d;
      t += j.twice - 2 * idx;
    }
    mtot[i] = t;
  }
  // multiset signature: sorted per-site indices
  auto signature = [&](int i) {
    std::vector<int> sig(n);
    int rem = i;
    for (int s = n - 1; s >= 0; --s) {
      sig[s] = rem % d;
      rem /= d;
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };

  RMat jminus = angular_momentum_matrices(j).minus.matrix.real();

  std::map<ColumnKey, RVec> built;
  const int top = n * j.twice;
  for (int Mt = top; Mt >= -top; Mt -= 2) {
    HalfInt M = HalfInt::from_twice(Mt);

    // symmetrized sector basis
    std::map<std::vector<int>, std::vector<int>> multisets;
    for (int i = 0; i < prod; ++i)
      if (mtot[i] == Mt) multisets[signature(i)].push_back(i);
    std::vector<RVec> sector;
    for (auto& [sig, idxs] : multisets) {
      RVec v = RVec::Zero(prod);
      double w = 1.0 / std::sqrt(double(idxs.size()));
      for (int i : idxs) v(i) = w;
      sector.push_back(std::move(v));
    }

    // ladder every irrep alive above this sector
    std::vector<ColumnKey> laddered_keys;
    for (auto& [J, mcount] : sb.decomp_.entries) {
      if (J.twice < Mt + 2) continue;  // born in this sector or not present at all
      if (Mt < -J.twice) continue;     // this ladder already ended
      for (int c = 0; c < mcount; ++c) {
        const RVec& above = built.at({J, c, M + 1});
        double fac = std::sqrt(J.value() * (J.value() + 1) - (M.value() + 1) * M.value());
        RVec v = collective_lower(above, jminus, n, d) / fac;
        // rounding cleanup only: exact arithmetic already makes the ladders
        // orthonormal across (J, copy) within a sector
        for (auto& k : laddered_keys) v -= built.at(k) * built.at(k).dot(v);
        v.normalize();
        built[{J, c, M}] = v;
        laddered_keys.push_back({J, c, M});
      }
    }

    // newborn irreps with J = M
    int newborn = Mt >= 0 ? sb.decomp_.multiplicity_of(M) : 0;
    if (newborn > 0) {
      std::vector<RVec> comp;
      for (auto& s : sector) {
        RVec v = s;
        for (auto& k : laddered_keys) v -= built.at(k) * built.at(k).dot(v);
        for (auto& c : comp) v -= c * c.dot(v);
        if (v.norm() > 1e-8) {
          v.normalize();
          comp.push_back(v);
        }
      }
      if (static_cast<int>(comp.size()) != newborn)
        throw std::logic_error("newborn irrep count mismatch at M = " + M.str());

      RMat V(prod, newborn);
      for (int c = 0; c < newborn; ++c) V.col(c) = comp[c];
      if (newborn > 1) {
        // multiplicity convention: diagonalize the first-site Jz here
        RMat site0 = RMat::Zero(newborn, newborn);
        RMat jz = RMat::Zero(d, d);
        for (int i = 0; i < d; ++i) jz(i, i) = 0.5 * (j.twice - 2 * i);
        std::vector<RVec> jz_cols;
        for (int c = 0; c < newborn; ++c) jz_cols.push_back(apply_site_real(V.col(c), jz, 0, n, d));
        for (int a = 0; a < newborn; ++a)
          for (int b = 0; b < newborn; ++b) site0(a, b) = V.col(a).dot(jz_cols[b]);
        Eigen::SelfAdjointEigenSolver<RMat> es(site0);
        RMat W(newborn, newborn);
        for (int c = 0; c < newborn; ++c) W.col(c) = es.eigenvectors().col(newborn - 1 - c);
        V = V * W;
      }
      for (int c = 0; c < newborn; ++c) {
        RVec v = V.col(c);
        double topabs = v.cwiseAbs().maxCoeff();
        for (int i = 0; i < prod; ++i)
          if (std::abs(v(i)) > 1e-8 * topabs) {
            if (v(i) < 0) v = -v;
            break;
          }
        built[{M, c, M}] = v;
      }
    }
  }

  for (auto& [k, v] : built) {
    sb.keys_.push_back(k);
    (void)v;
  }
  std::sort(sb.keys_.begin(), sb.keys_.end(), [](const ColumnKey& a, const ColumnKey& b) {
    if (a.J != b.J) return a.J > b.J;
    if (a.mult != b.mult) return a.mult < b.mult;
    return a.M > b.M;
  });
  for (auto& k : sb.keys_) {
    sb.index_[k] = static_cast<int>(sb.cols_.size());
    sb.cols_.push_back(built.at(k));
  }
  if (sb.cols_.size() != sym_dim(n, j)) throw std::logic_error("column count mismatch");
  return sb;
}

const RVec& SymBasis::column(const ColumnKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end())
    throw std::invalid_argument("no column (J=" + k.J.str() + ", mult=" + std::to_string(k.mult) +
                                ", M=" + k.M.str() + ")");
  return cols_[it->second];
}

RVec SymBasis::embed(HalfInt J, int mult, const RVec& amps) const {
  if (amps.size() != J.dim()) throw std::invalid_argument("amplitude vector has wrong length");
  RVec out = RVec::Zero(prod_dim_);
  for (int i = 0; i < amps.size(); ++i) {
    if (amps(i) == 0.0) continue;
    HalfInt M = HalfInt::from_twice(J.twice - 2 * i);
    out += amps(i) * column({J, mult, M});
  }
  return out;
}

Vec apply_site_operator(const Vec& v, const Mat& op, int site, int n, int site_dim) {
  const int d = site_dim;
  Vec out = Vec::Zero(v.size());
  long stride = 1;
  for (int s = n - 1; s > site; --s) stride *= d;
  long block = stride * d;
  for (long base = 0; base < v.size(); base += block)
    for (long off = 0; off < stride; ++off)
      for (int a = 0; a < d; ++a) {
        cplx acc = 0;
        for (int b = 0; b < d; ++b) acc += op(a, b) * v(base + b * stride + off);
        out(base + a * stride + off) = acc;
      }
  return out;
}

cplx local_matrix_element(const Vec& left, const std::vector<const Mat*>& ops, const Vec& right,
                          int n, int site_dim) {
  if (static_cast<int>(ops.size()) != n) throw std::invalid_argument("need one operator slot per site");
  Vec v = right;
  for (int s = 0; s < n; ++s) {
    if (!ops[s]) continue;
    if (ops[s]->rows() != site_dim) throw std::invalid_argument("operator dimension mismatch");
    v = apply_site_operator(v, *ops[s], s, n, site_dim);
  }
  return left.dot(v);  // Eigen's dot conjugates the left argument
}

int DickeLabel::excitations() const {
  int e2 = N - M.twice;
  if (e2 % 2 != 0 || e2 < 0 || e2 > 2 * N) throw std::invalid_argument("invalid Dicke label");
  return e2 / 2;
}

namespace {

mpz_class binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

cplx dicke_local_expectation(int N, const DickeAmps& left, const std::map<int, char>& pauli_sites,
                             const DickeAmps& right) {
  const int w = static_cast<int>(pauli_sites.size());
  if (w > 6) throw std::invalid_argument("pauli weight above supported bound (6)");
  std::vector<char> letters;
  for (auto& [site, l] : pauli_sites) {
    if (site < 0 || site >= N) throw std::invalid_argument("pauli site out of range");
    if (l != 'x' && l != 'y' && l != 'z' && l != '+' && l != '-')
      throw std::invalid_argument(std::string("unknown pauli letter ") + l);
    letters.push_back(l);
  }
  for (auto& [e, a] : left)
    if (e < 0 || e > N) throw std::invalid_argument("excitation count out of range");
  for (auto& [e, a] : right)
    if (e < 0 || e > N) throw std::invalid_argument("excitation count out of range");

  // expand x/y into +/- branches; z stays
  std::vector<std::pair<cplx, std::vector<char>>> branches{{1.0, {}}};
  for (char l : letters) {
    std::vector<std::pair<cplx, std::vector<char>>> next;
    for (auto& [coeff, fixed] : branches) {
      auto push = [&](cplx c, char sym) {
        auto f = fixed;
        f.push_back(sym);
        next.push_back({coeff * c, std::move(f)});
      };
      if (l == 'x') {
        push(1.0, '+');
        push(1.0, '-');
      } else if (l == 'y') {
        push(cplx(0, -1), '+');  // sigma_y = -i sigma_+ + i sigma_-
        push(cplx(0, 1), '-');
      } else {
        push(1.0, l);
      }
    }
    branches = std::move(next);
  }

  cplx total = 0;
  for (auto& [coeff, fixed] : branches) {
    int a = 0, b = 0, c = 0;
    for (char f : fixed) (f == '+' ? a : f == '-' ? b : c)++;
    for (auto& [e, ramp] : right) {
      int ep = e - a + b;
      auto lit = left.find(ep);
      if (lit == left.end()) continue;
      // sum over down-spin placements on the z sites
      mpz_class R = 0;
      for (int t = 0; t <= c; ++t) {
        mpz_class term = binom(c, t) * binom(N - w, e - a - t);
        R += (t % 2 == 0) ? term : -term;
      }
      if (R == 0) continue;
      mpq_class q(R * R, binom(N, e) * binom(N, ep));
      q.canonicalize();
      double val = (sgn(R) > 0 ? 1.0 : -1.0) * std::sqrt(q.get_d());
      total += coeff * lit->second * ramp * val;
    }
  }
  return total;
}

Vec dicke_dense_vector(int N, const DickeAmps& amps) {
  if (N > 24) throw std::invalid_argument("dense Dicke embedding limited to small N");
  Vec out = Vec::Zero(1L << N);
  std::vector<double> norm(N + 1);
  for (int e = 0; e <= N; ++e) norm[e] = std::sqrt(binom(N, e).get_d());
  for (long mask = 0; mask < (1L << N); ++mask) {
    int e = __builtin_popcountl(mask);
    auto it = amps.find(e);
    if (it != amps.end()) out(mask) = it->second / norm[e];
  }
  return out;
}

}  // namespace spincode
