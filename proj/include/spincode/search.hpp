#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spincode/kl_engine.hpp"

namespace spincode {

/// One Knill-Laflamme constraint as a quadratic form over real mixing
/// coefficients: f(c) = c^T form c (form symmetric).  Diagonal-family
/// constraints count toward the feasibility pre-filter.
struct QuadraticConstraint {
  std::string name;
  RMat form;
  bool diagonal_family = true;

  double eval(const RVec& c) const { return c.dot(form * c); }
  /// linear in c^2, i.e. no cross terms couple different copies
  bool linear_in_c2(double tol = 1e-12) const;
};

struct SearchProblem {
  std::vector<QuadraticConstraint> constraints;
  int n_copies = 0;
  std::uint64_t seed = 1;
  int restarts = 200;
  double tolerance = 1e-8;
  std::vector<RVec> warm_starts;

  int diagonal_count() const;
};

/// Sum of absolute constraint values at the normalized mixing vector.
double cost(const RVec& c, const SearchProblem& problem);

struct OptimizeResult {
  RVec c_opt;
  double cost_opt = 0;
  bool exact_closed_form = false;
  bool feasible = false;  // cost_opt <= tolerance
  int evaluations = 0;
};

/// Minimizes the cost over the unit sphere of mixing coefficients.  Two
/// copies with one c^2-linear constraint solve in closed form; otherwise a
/// Nelder-Mead simplex projected to the sphere, restarted `restarts` times
/// from a seeded stream (deterministic for a fixed problem and seed).
OptimizeResult optimize(const SearchProblem& problem);

/// Reduced collective conditions up to max_rank as quadratic forms over the
/// given copies at collective spin J (both families; diagonal ones flagged).
std::vector<QuadraticConstraint> collective_reduced_constraints(const std::vector<RVec>& zeros,
                                                                const std::vector<RVec>& ones,
                                                                HalfInt J, GroupKind group,
                                                                int max_rank);

/// Reduced local (per-site) second-order conditions over embedded copies:
/// single-site T1/T3, and the rank-(1,2) two-site family.
std::vector<QuadraticConstraint> local_reduced_constraints(const SymBasis& basis,
                                                           const std::vector<RVec>& zeros_prod,
                                                           const std::vector<RVec>& ones_prod,
                                                           GroupKind group, ErrorOrder order);

/// Number of diagonal-family reduced collective conditions up to max_rank.
int collective_diagonal_count(GroupKind group, int max_rank);

struct ScalingRow {
  int d = 0;
  GroupKind group;
  int N_min = -1;          // -1: scan bound exceeded
  std::string irrep;
  int copies = 0;
  int constraints = 0;
  double cost = 0;
  std::string certification;  // "anchored" or "derived"
  std::string note;
};

struct ScanOptions {
  int n_max = 201;
  std::uint64_t seed = 1;
  int restarts = 200;
  double tolerance = 1e-8;
};

/// Scans odd qubit counts upward and returns the first N whose spin-N/2
/// hosts enough irrep copies to zero every reduced condition up to rank d-1.
ScalingRow min_qubits_for_distance(int d, GroupKind group, const ScanOptions& opts = {});

struct QuadraticFit {
  double alpha = 0, beta = 0, gamma = 0;  // N = alpha d^2 + beta d + gamma
  double r_squared = 0;
};

QuadraticFit fit_quadratic(const std::vector<ScalingRow>& rows);

}  // namespace spincode
