#include "doctest.h"

#include <cmath>
#include <set>

#include "spincode/clifford_group.hpp"
#include "spincode/rng.hpp"

using namespace spincode;

namespace {
HalfInt tw(int t) { return HalfInt::from_twice(t); }
}

TEST_CASE("group enumeration") {
  const Group& O = Group::get(GroupKind::octahedral_2O);
  const Group& T = Group::get(GroupKind::tetrahedral_2T);
  CHECK(O.order() == 48);
  CHECK(T.order() == 24);
  CHECK(O.classes().size() == 8);
  CHECK(T.classes().size() == 7);

  // 2T is a subgroup of 2O
  for (auto& e : T.elements()) CHECK(O.index_of(e.q) >= 0);

  // every 2T element is exactly the rational-component subset
  int rational = 0;
  for (auto& e : O.elements())
    if (e.q.in_tetrahedral()) ++rational;
  CHECK(rational == 24);

  // -1 is central in both
  for (const Group* G : {&O, &T}) {
    int minus = G->index_of(Quaternion::minus_one());
    REQUIRE(minus >= 0);
    for (int i = 0; i < G->order(); ++i)
      CHECK(G->multiply(minus, i) == G->multiply(i, minus));
    // and forms its own conjugacy class
    CHECK(G->classes()[G->elements()[minus].conj_class].size() == 1);
  }

  // spot-check associativity through the table
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int a = rng.next() % 48, b = rng.next() % 48, c = rng.next() % 48;
    CHECK(O.multiply(O.multiply(a, b), c) == O.multiply(a, O.multiply(b, c)));
  }
}

TEST_CASE("representatives") {
  HalfInt j = tw(9);
  Mat id = representative(Quaternion::one(), j).matrix;
  CHECK((id - Mat::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-14);

  // pi rotation about z at j=1/2: traceless, unitary
  Quaternion k{{0, 0}, {0, 0}, {0, 0}, {2, 0}};
  Mat dz = representative(k, tw(1)).matrix;
  CHECK(std::abs(dz.trace()) < 1e-14);
  CHECK((dz * dz.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  // homomorphism at j=9/2 over random pairs
  const Group& O = Group::get(GroupKind::octahedral_2O);
  std::vector<Mat> reps;
  for (auto& e : O.elements()) reps.push_back(representative(e.q, j).matrix);
  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    int a = rng.next() % 48, b = rng.next() % 48;
    CHECK((reps[a] * reps[b] - reps[O.multiply(a, b)]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("characters and their orthonormality") {
  for (GroupKind kind : {GroupKind::octahedral_2O, GroupKind::tetrahedral_2T}) {
    const Group& G = Group::get(kind);
    auto irreps = two_dim_characters(kind);
    CHECK(irreps.size() == (kind == GroupKind::octahedral_2O ? 2u : 3u));

    int one = G.index_of(Quaternion::one());
    int minus = G.index_of(Quaternion::minus_one());
    for (auto& ir : irreps) {
      CHECK(std::abs(ir.chi(one) - 2.0) < 1e-14);
      CHECK(std::abs(ir.chi(minus) + 2.0) < 1e-14);
      // the defining restriction really is the spin-1/2 trace
      if (ir.name == "rho4")
        for (int i = 0; i < G.order(); ++i)
          CHECK(std::abs(representative(G.elements()[i].q, tw(1)).matrix.trace() - ir.chi(i)) <
                1e-12);
    }
    for (auto& a : irreps)
      for (auto& b : irreps) {
        cplx acc = 0;
        for (int i = 0; i < G.order(); ++i) acc += a.chi(i) * std::conj(b.chi(i));
        acc /= static_cast<double>(G.order());
        CHECK(std::abs(acc - (a.name == b.name ? 1.0 : 0.0)) < 1e-12);
      }
  }
  // rho4/rho5 of 2O and rho4 of 2T have real characters; the other 2T pair does not
  CHECK(find_irrep(GroupKind::octahedral_2O, "rho4").real_character);
  CHECK(find_irrep(GroupKind::octahedral_2O, "rho5").real_character);
  CHECK(find_irrep(GroupKind::tetrahedral_2T, "rho4").real_character);
  CHECK_FALSE(find_irrep(GroupKind::tetrahedral_2T, "rho4a").real_character);
}

TEST_CASE("multiplicity anchors") {
  auto rho4 = find_irrep(GroupKind::octahedral_2O, "rho4");
  auto rho5 = find_irrep(GroupKind::octahedral_2O, "rho5");
  CHECK(multiplicity(tw(1), rho4) == 1);   // defining representation
  CHECK(multiplicity(tw(9), rho4) == 1);
  CHECK(multiplicity(tw(5), rho5) == 1);
  CHECK(multiplicity(tw(17), rho4) == 2);
  CHECK(multiplicity(tw(13), rho5) >= 1);
  CHECK(multiplicity(tw(13), rho5) == 2);
  CHECK(multiplicity(tw(25), rho4) == 3);
  CHECK(multiplicity(tw(5), rho4) == 0);
  CHECK(multiplicity(HalfInt(3), rho4) == 0);  // integer spins host no faithful binary irrep

  auto trho4 = find_irrep(GroupKind::tetrahedral_2T, "rho4");
  CHECK(multiplicity(tw(9), trho4) == 1);
  CHECK(multiplicity(tw(5), trho4) == 1);
  CHECK(multiplicity(tw(7), trho4) == 2);
}

TEST_CASE("projectors") {
  auto rho4 = find_irrep(GroupKind::octahedral_2O, "rho4");

  for (int jt : {9, 17, 25}) {
    Mat p = projector(tw(jt), rho4).matrix;
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.imag().cwiseAbs().maxCoeff() < 1e-12);
    double rank = p.trace().real();
    CHECK(rank == doctest::Approx(2.0 * multiplicity(tw(jt), rho4)).epsilon(1e-10));
  }
}

TEST_CASE("logical codewords: tetrahedral j=9/2 host") {
  auto basis = logical_codewords(tw(9), find_irrep(GroupKind::tetrahedral_2T, "rho4"));
  REQUIRE(basis.mult == 1);
  HalfInt j = tw(9);
  auto at = [&](int mt) { return (j - tw(mt)).twice / 2; };
  RVec expect = RVec::Zero(10);
  expect(at(9)) = std::sqrt(6.0) / 4;
  expect(at(1)) = std::sqrt(21.0) / 6;
  expect(at(-7)) = std::sqrt(6.0) / 12;
  double diff = std::min((basis.zeros[0] - expect).cwiseAbs().maxCoeff(),
                         (basis.zeros[0] + expect).cwiseAbs().maxCoeff());
  CHECK(diff < 1e-10);
  CHECK(basis.jz_expect[0] == doctest::Approx(11.0 / 6).epsilon(1e-10));
}

TEST_CASE("logical codewords: octahedral j=11/2 host") {
  auto basis = logical_codewords(tw(11), find_irrep(GroupKind::octahedral_2O, "rho4"));
  REQUIRE(basis.mult == 1);
  HalfInt j = tw(11);
  auto at = [&](int mt) { return (j - tw(mt)).twice / 2; };
  RVec expect = RVec::Zero(12);
  expect(at(9)) = std::sqrt(21.0) / 12;
  expect(at(1)) = -std::sqrt(2.0) / 4;
  expect(at(-7)) = std::sqrt(105.0) / 12;
  double diff = std::min((basis.zeros[0] - expect).cwiseAbs().maxCoeff(),
                         (basis.zeros[0] + expect).cwiseAbs().maxCoeff());
  CHECK(diff < 1e-10);
}

TEST_CASE("logical codewords: multiplicity-two host at j=17/2") {
  auto basis = logical_codewords(tw(17), find_irrep(GroupKind::octahedral_2O, "rho4"));
  REQUIRE(basis.mult == 2);
  CHECK(basis.jz_expect[0] > basis.jz_expect[1]);  // descending order, distinct
  CHECK(std::abs(basis.jz_expect[0] - basis.jz_expect[1]) > 1e-6);

  // sum of <Jz> over copies equals the trace of Jz restricted to the zero span
  RVec mz(18);
  for (int i = 0; i < 18; ++i) mz(i) = 0.5 * (17 - 2 * i);
  RMat span(18, 2);
  span.col(0) = basis.zeros[0];
  span.col(1) = basis.zeros[1];
  double tr = (span.transpose() * mz.asDiagonal() * span).trace();
  CHECK(basis.jz_expect[0] + basis.jz_expect[1] == doctest::Approx(tr).epsilon(1e-12));

  // zeros orthonormal
  CHECK(std::abs(basis.zeros[0].dot(basis.zeros[1])) < 1e-10);
  CHECK(basis.zeros[0].norm() == doctest::Approx(1.0));
}

TEST_CASE("support rule and ones") {
  struct Case {
    int jt;
    GroupKind kind;
    const char* irrep;
  };
  for (auto c : {Case{9, GroupKind::octahedral_2O, "rho4"}, Case{13, GroupKind::octahedral_2O, "rho5"},
                 Case{17, GroupKind::octahedral_2O, "rho4"}, Case{25, GroupKind::octahedral_2O, "rho4"},
                 Case{9, GroupKind::tetrahedral_2T, "rho4"}, Case{7, GroupKind::tetrahedral_2T, "rho4"}}) {
    auto basis = logical_codewords(tw(c.jt), find_irrep(c.kind, c.irrep));
    for (int copy = 0; copy < basis.mult; ++copy) {
      int r = basis.support_residue[copy];
      if (c.kind == GroupKind::octahedral_2O)
        CHECK((r == 1 || r == 5));
      else
        CHECK(r == 1);
      // |1> support is the negated set: residues of m and -m sum to 0 mod the spacing
      const RVec& one = basis.ones[copy];
      const int mod = c.kind == GroupKind::octahedral_2O ? 8 : 4;
      for (int i = 0; i < one.size(); ++i) {
        if (std::abs(one(i)) < 1e-10) continue;
        int mt = c.jt - 2 * i;
        CHECK(((mt % mod) + mod) % mod == (mod - r) % mod);
      }
      // |1> = i exp(-i pi Jx) |0> with real amplitudes
      Vec one_from_ux = cplx(0, 1) * (ux_operator(tw(c.jt)).matrix * basis.zeros[copy].cast<cplx>());
      CHECK((one_from_ux - one.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("logical algebra on the codespace") {
  HalfInt j = tw(13);
  auto irrep = find_irrep(GroupKind::octahedral_2O, "rho5");
  auto basis = logical_codewords(j, irrep);
  Mat P = projector(j, irrep).matrix;
  const int d = j.dim();

  Vec dz(d);
  for (int i = 0; i < d; ++i) {
    int mt = j.twice - 2 * i;
    dz(i) = (((mt % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
  }
  Mat Z = P * dz.asDiagonal() * P;
  Mat X = P * ux_operator(j).matrix * P;

  // anticommutation and Z^2 = codespace projector, checked on the codespace
  Mat anti = Z * X + X * Z;
  Mat code = Mat::Zero(d, d);
  for (int c = 0; c < basis.mult; ++c) {
    Vec z0 = basis.zeros[c].cast<cplx>(), o1 = basis.ones[c].cast<cplx>();
    code += z0 * z0.adjoint() + o1 * o1.adjoint();
  }
  CHECK((anti * code).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(((Z * Z - code) * code).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("codewords refuse impossible hosts") {
  CHECK_THROWS_AS(logical_codewords(tw(5), find_irrep(GroupKind::octahedral_2O, "rho4")),
                  std::invalid_argument);
  CHECK_THROWS_AS(logical_codewords(tw(9), find_irrep(GroupKind::tetrahedral_2T, "rho4a")),
                  std::invalid_argument);
}
