#include "doctest.h"

#include <cmath>
#include <numeric>

#include "spincode/clifford_group.hpp"
#include "spincode/rng.hpp"
#include "spincode/sym_space.hpp"

using namespace spincode;

namespace {

HalfInt tw(int t) { return HalfInt::from_twice(t); }

// dense 2^N oracle for a Pauli string on a symmetric state
cplx dense_pauli_oracle(int N, const DickeAmps& left, const std::map<int, char>& sites,
                        const DickeAmps& right) {
  Vec l = dicke_dense_vector(N, left), r = dicke_dense_vector(N, right);
  Mat sp = Mat::Zero(2, 2), sm = Mat::Zero(2, 2), sz = Mat::Zero(2, 2), sx(2, 2), sy(2, 2);
  sp(0, 1) = 1;
  sm(1, 0) = 1;
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  std::vector<const Mat*> ops(N, nullptr);
  for (auto& [s, letter] : sites)
    ops[s] = letter == '+' ? &sp : letter == '-' ? &sm : letter == 'z' ? &sz : letter == 'x' ? &sx : &sy;
  return local_matrix_element(l, ops, r, N, 2);
}

DickeAmps random_dicke(int N, SplitMix64& rng) {
  DickeAmps amps;
  double norm = 0;
  for (int e = 0; e <= N; ++e) {
    double a = rng.symmetric();
    amps[e] = a;
    norm += a * a;
  }
  for (auto& [e, a] : amps) a /= std::sqrt(norm);
  return amps;
}

}  // namespace

TEST_CASE("symmetric subspace dimension formula") {
  CHECK(sym_dim(2, tw(1)) == 3);
  CHECK(sym_dim(3, tw(7)) == 120);  // 8*9*10/6
  CHECK(sym_dim(25, tw(1)) == 26);
  CHECK(sym_dim(3, tw(9)) == 220);
}

TEST_CASE("restricted partitions") {
  auto p1 = restricted_partitions(2, 2, 1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == std::vector<int>{1, 1});

  auto p2 = restricted_partitions(2, 2, 2);
  REQUIRE(p2.size() == 2);

  auto p3 = restricted_partitions(3, 3, 2);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0] == std::vector<int>{2, 1, 0});
  CHECK(p3[1] == std::vector<int>{1, 1, 1});
}

TEST_CASE("two-spin decomposition interleaves") {
  for (int jt = 1; jt <= 20; ++jt) {
    HalfInt j = tw(jt);
    auto dec = decompose_symmetric(2, j);
    // 2j, 2j-2, 2j-4, ... all with multiplicity 1
    std::vector<int> expect;
    for (int Jt = 2 * jt; Jt >= 0; Jt -= 4) expect.push_back(Jt);
    REQUIRE(dec.entries.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) {
      CHECK(dec.entries[i].first.twice == expect[i]);
      CHECK(dec.entries[i].second == 1);
    }
    // dimension counting identity: sum equals (2j+1)(2j+2)/2
    CHECK(dec.total_dim() == std::uint64_t(j.dim()) * (j.dim() + 1) / 2);
  }
}

TEST_CASE("three-spin decompositions") {
  auto dec32 = decompose_symmetric(3, tw(3));
  std::vector<std::pair<int, int>> expect32 = {{9, 1}, {5, 1}, {3, 1}};
  REQUIRE(dec32.entries.size() == expect32.size());
  for (size_t i = 0; i < expect32.size(); ++i) {
    CHECK(dec32.entries[i].first.twice == expect32[i].first);
    CHECK(dec32.entries[i].second == expect32[i].second);
  }

  auto dec52 = decompose_symmetric(3, tw(5));
  std::vector<std::pair<int, int>> expect52 = {{15, 1}, {11, 1}, {9, 1}, {7, 1}, {5, 1}, {3, 1}};
  REQUIRE(dec52.entries.size() == expect52.size());
  for (size_t i = 0; i < expect52.size(); ++i) {
    CHECK(dec52.entries[i].first.twice == expect52[i].first);
    CHECK(dec52.entries[i].second == expect52[i].second);
  }

  auto dec72 = decompose_symmetric(3, tw(7));
  std::vector<std::pair<int, int>> expect72 = {{21, 1}, {17, 1}, {15, 1}, {13, 1},
                                               {11, 1}, {9, 2},  {7, 1},  {5, 1},
                                               {3, 1}};
  REQUIRE(dec72.entries.size() == expect72.size());
  for (size_t i = 0; i < expect72.size(); ++i) {
    CHECK(dec72.entries[i].first.twice == expect72[i].first);
    CHECK(dec72.entries[i].second == expect72[i].second);
  }

  // The published block for three spin-9/2 omits the 5/2 entry; its listed
  // dimensions sum to 214 while dim S_3(10) = 220, so the 5/2 (dim 6) is
  // forced by the dimension identity and the restricted-partition counts.
  auto dec92 = decompose_symmetric(3, tw(9));
  std::vector<std::pair<int, int>> expect92 = {{27, 1}, {23, 1}, {21, 1}, {19, 1}, {17, 1},
                                               {15, 2}, {13, 1}, {11, 2}, {9, 2},  {7, 1},
                                               {5, 1},  {3, 1}};
  REQUIRE(dec92.entries.size() == expect92.size());
  for (size_t i = 0; i < expect92.size(); ++i) {
    CHECK(dec92.entries[i].first.twice == expect92[i].first);
    CHECK(dec92.entries[i].second == expect92[i].second);
  }
  CHECK(dec92.multiplicity_of(tw(5)) == 1);
  CHECK(dec92.total_dim() == 220);

  // integer-spin example: 3 qutrits decompose into spin 3 + spin 1
  auto dec1 = decompose_symmetric(3, HalfInt(1));
  REQUIRE(dec1.entries.size() == 2);
  CHECK(dec1.entries[0].first == HalfInt(3));
  CHECK(dec1.entries[1].first == HalfInt(1));
}

TEST_CASE("symmetric basis columns") {
  for (auto [n, jt] : {std::pair{2, 2}, {3, 3}, {3, 5}, {2, 5}}) {
    HalfInt j = tw(jt);
    SymBasis sb = SymBasis::build(n, j);
    const int prod = sb.product_dim();
    CHECK(sb.num_columns() == static_cast<int>(sym_dim(n, j)));

    // isometry
    for (int a = 0; a < sb.num_columns(); ++a)
      for (int b = a; b < sb.num_columns(); ++b) {
        double dot = sb.column(a).dot(sb.column(b));
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
      }

    auto J = angular_momentum_matrices(j);
    for (int cidx = 0; cidx < sb.num_columns(); ++cidx) {
      auto key = sb.keys()[cidx];
      Vec v = sb.column(cidx).cast<cplx>();

      // collective Jz and J^2 eigenvalues
      Vec jz = Vec::Zero(prod), jsq = Vec::Zero(prod);
      for (int s = 0; s < n; ++s) jz += apply_site_operator(v, J.z.matrix, s, n, j.dim());
      for (auto* comp : {&J.x.matrix, &J.y.matrix, &J.z.matrix}) {
        Vec first = Vec::Zero(prod);
        for (int s = 0; s < n; ++s) first += apply_site_operator(v, *comp, s, n, j.dim());
        for (int s = 0; s < n; ++s) jsq += apply_site_operator(first, *comp, s, n, j.dim());
      }
      CHECK((jz - key.M.value() * v).cwiseAbs().maxCoeff() < 1e-10);
      double jj = key.J.value() * (key.J.value() + 1);
      CHECK((jsq - jj * v).cwiseAbs().maxCoeff() < 1e-9);

      // permutation invariance under a site swap (sites 0 and n-1)
      RVec swapped(prod);
      for (int i = 0; i < prod; ++i) {
        std::vector<int> idx(n);
        int rem = i;
        for (int s = n - 1; s >= 0; --s) {
          idx[s] = rem % j.dim();
          rem /= j.dim();
        }
        std::swap(idx[0], idx[n - 1]);
        int k = 0;
        for (int s = 0; s < n; ++s) k = k * j.dim() + idx[s];
        swapped(k) = sb.column(cidx)(i);
      }
      CHECK((swapped - sb.column(cidx)).cwiseAbs().maxCoeff() < 1e-10);

      // ladder consistency
      if (key.M.twice - 2 >= -key.J.twice) {
        Vec lowered = Vec::Zero(prod);
        for (int s = 0; s < n; ++s) lowered += apply_site_operator(v, J.minus.matrix, s, n, j.dim());
        double fac = std::sqrt(jj - key.M.value() * (key.M.value() - 1));
        Vec expect = fac * sb.column({key.J, key.mult, key.M - 1}).cast<cplx>();
        CHECK((lowered - expect).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("two spin-1 systems: J=0 column content") {
  SymBasis sb = SymBasis::build(2, HalfInt(1));
  // |+1,-1> + |-1,+1> and |0,0> span the symmetric M=0 sector; the J=0 column
  // must be the combination orthogonal to the J=2 one, i.e. (|+1,-1> +
  // |-1,+1> - |0,0|*...) -- check J^2 annihilates it and it is unit norm.
  const RVec& v = sb.column({HalfInt(0), 0, HalfInt(0)});
  auto J = angular_momentum_matrices(HalfInt(1));
  Vec jsq = Vec::Zero(9);
  Vec vc = v.cast<cplx>();
  for (auto* comp : {&J.x.matrix, &J.y.matrix, &J.z.matrix}) {
    Vec first = Vec::Zero(9);
    for (int s = 0; s < 2; ++s) first += apply_site_operator(vc, *comp, s, 2, 3);
    for (int s = 0; s < 2; ++s) jsq += apply_site_operator(first, *comp, s, 2, 3);
  }
  CHECK(jsq.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(v.norm() == doctest::Approx(1.0));
  // 20-dim three spin-3/2 symmetric space splits 10 + 6 + 4
  SymBasis sb32 = SymBasis::build(3, tw(3));
  CHECK(sb32.num_columns() == 20);
}

TEST_CASE("local matrix elements reproduce the one-site Jz expectations") {
  SymBasis sb = SymBasis::build(3, tw(5));
  auto rho4 = find_irrep(GroupKind::octahedral_2O, "rho4");
  auto b11 = logical_codewords(tw(11), rho4);
  auto b9 = logical_codewords(tw(9), rho4);

  Vec z11 = sb.embed(tw(11), 0, b11.zeros[0]).cast<cplx>();
  Vec z9 = sb.embed(tw(9), 0, b9.zeros[0]).cast<cplx>();
  auto J = angular_momentum_matrices(tw(5));

  std::vector<const Mat*> ops(3, nullptr);
  ops[0] = &J.z.matrix;
  cplx e11 = local_matrix_element(z11, ops, z11, 3, 6);
  cplx e9 = local_matrix_element(z9, ops, z9, 3, 6);
  CHECK(std::abs(e11 - cplx(-11.0 / 18)) < 1e-12);
  CHECK(std::abs(e9 - cplx(11.0 / 18)) < 1e-12);

  // site placement must not matter
  std::vector<const Mat*> ops3(3, nullptr);
  ops3[2] = &J.z.matrix;
  CHECK(std::abs(local_matrix_element(z11, ops, z11, 3, 6) -
                 local_matrix_element(z11, ops3, z11, 3, 6)) < 1e-12);
}

TEST_CASE("dicke labels") {
  DickeLabel top{25, tw(25)};
  CHECK(top.excitations() == 0);
  DickeLabel mid{25, tw(-3)};
  CHECK(mid.excitations() == 14);
  CHECK_THROWS_AS((DickeLabel{4, tw(3)}.excitations()), std::invalid_argument);
}

TEST_CASE("dicke expectations: closed forms and dense oracle") {
  // <sigma_z,1> on |N/2, M> = 2M/N
  for (int N : {4, 7, 10}) {
    for (int e = 0; e <= N; ++e) {
      DickeAmps amps{{e, 1.0}};
      cplx v = dicke_local_expectation(N, amps, {{0, 'z'}}, amps);
      double M = 0.5 * N - e;
      CHECK(std::abs(v - cplx(2.0 * M / N)) < 1e-12);
    }
  }

  // weight-2 and weight-3 strings against the dense oracle
  SplitMix64 rng(2024);
  for (int N : {7, 9}) {
    for (int trial = 0; trial < 4; ++trial) {
      DickeAmps l = random_dicke(N, rng), r = random_dicke(N, rng);
      std::vector<std::map<int, char>> strings = {
          {{0, '+'}, {1, '-'}},
          {{2, 'z'}, {4, 'z'}},
          {{0, 'z'}, {1, 'z'}, {2, 'z'}},
          {{0, '+'}, {3, '-'}, (N > 7 ? std::pair<const int, char>{8, 'z'}
                                      : std::pair<const int, char>{6, 'z'})},
          {{1, 'x'}, {2, 'y'}, {5, 'z'}},
          {{0, 'x'}, {1, 'x'}},
      };
      for (auto& s : strings) {
        cplx fast = dicke_local_expectation(N, l, s, r);
        cplx dense = dense_pauli_oracle(N, l, s, r);
        CHECK(std::abs(fast - dense) < 1e-10);
      }
    }
  }
}

TEST_CASE("collective moments from local expectations") {
  // <J_k> = (N/2) <sigma_k,i> for every site i on random symmetric states
  SplitMix64 rng(5);
  for (int N : {6, 12}) {
    DickeAmps psi = random_dicke(N, rng);
    double jz = 0;
    for (auto& [e, a] : psi) jz += (0.5 * N - e) * a * a;
    for (int site : {0, N / 2, N - 1}) {
      cplx sz = dicke_local_expectation(N, psi, {{site, 'z'}}, psi);
      CHECK(std::abs(0.5 * N * sz - cplx(jz)) < 1e-10);
    }
    // x component via the dense oracle
    Vec dense = dicke_dense_vector(N, psi);
    Mat sx(2, 2);
    sx << 0, 1, 1, 0;
    Vec acc = Vec::Zero(dense.size());
    for (int s = 0; s < N; ++s) acc += apply_site_operator(dense, sx, s, N, 2);
    cplx jx = 0.5 * dense.dot(acc);
    cplx sx1 = dicke_local_expectation(N, psi, {{1, 'x'}}, psi);
    CHECK(std::abs(0.5 * double(N) * sx1 - jx) < 1e-10);
  }
}

TEST_CASE("Jz^3 expansion prefactors") {
  // J_z^3 = (1/8) [ (3N-2) sum_k sigma_z,k + sum_{i!=j!=k} sigma_z x 3 ], so
  //   <Jz^3> = ((3N-2)/4) <Jz> + (N(N-1)(N-2)/8) <sz sz sz>.
  // The simplified form <Jz^3> = <Jz> + N(N-1)(N-2) <sz sz sz> does not match
  // the dense oracle; the re-derived prefactors above do.
  SplitMix64 rng(77);
  int N = 7;
  for (int trial = 0; trial < 5; ++trial) {
    DickeAmps psi = random_dicke(N, rng);
    double jz = 0, jz3 = 0;
    for (auto& [e, a] : psi) {
      double M = 0.5 * N - e;
      jz += M * a * a;
      jz3 += M * M * M * a * a;
    }
    cplx zzz = dicke_local_expectation(N, psi, {{0, 'z'}, {1, 'z'}, {2, 'z'}}, psi);
    double derived = (3.0 * N - 2) / 4.0 * jz + N * (N - 1.0) * (N - 2.0) / 8.0 * zzz.real();
    CHECK(jz3 == doctest::Approx(derived).epsilon(1e-10));
    double simplified = jz + N * (N - 1.0) * (N - 2.0) * zzz.real();
    CHECK(std::abs(jz3 - simplified) > 1e-6);  // stated form fails off the code subspace
  }
}

TEST_CASE("three spin-9/2 basis fills the formula dimension") {
  SymBasis sb = SymBasis::build(3, tw(9));
  CHECK(sb.num_columns() == 220);
  CHECK(sb.product_dim() == 1000);
}

TEST_CASE("four-site systems") {
  // four qubits: the symmetric subspace is a single spin-2 ladder
  auto dq = decompose_symmetric(4, tw(1));
  REQUIRE(dq.entries.size() == 1);
  CHECK(dq.entries[0].first == HalfInt(2));
  SymBasis sb = SymBasis::build(4, tw(1));
  CHECK(sb.num_columns() == 5);

  // four spin-1 systems: 4 + 2 + 0
  auto d1 = decompose_symmetric(4, HalfInt(1));
  REQUIRE(d1.entries.size() == 3);
  CHECK(d1.entries[0].first == HalfInt(4));
  CHECK(d1.entries[1].first == HalfInt(2));
  CHECK(d1.entries[2].first == HalfInt(0));
  CHECK(d1.total_dim() == 15);
  SymBasis sb1 = SymBasis::build(4, HalfInt(1));
  CHECK(sb1.num_columns() == 15);
  // permutation invariance under a middle-site swap
  const RVec& col = sb1.column({HalfInt(2), 0, HalfInt(1)});
  RVec swapped(81);
  for (int i = 0; i < 81; ++i) {
    int idx[4], rem = i;
    for (int s = 3; s >= 0; --s) {
      idx[s] = rem % 3;
      rem /= 3;
    }
    std::swap(idx[1], idx[2]);
    int k = ((idx[0] * 3 + idx[1]) * 3 + idx[2]) * 3 + idx[3];
    swapped(k) = col(i);
  }
  CHECK((swapped - col).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dense limit refusal") {
  CHECK_THROWS_AS(SymBasis::build(5, tw(9)), std::invalid_argument);
  CHECK_THROWS_AS(dicke_local_expectation(10, {{0, 1.0}},
                                          {{0, 'z'}, {1, 'z'}, {2, 'z'}, {3, 'z'}, {4, 'z'},
                                           {5, 'z'}, {6, 'z'}},
                                          {{0, 1.0}}),
                  std::invalid_argument);
}
