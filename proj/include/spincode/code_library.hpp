#pragma once

#include <map>
#include <string>
#include <vector>

#include "spincode/search.hpp"

namespace spincode {

enum class Provenance { published_exact, published_approximate, derived };

const char* provenance_name(Provenance p);

/// Tolerance tiers: exactly constructed codes, published approximate
/// transcriptions, and re-optimized coefficients.
inline constexpr double kExactTol = 1e-10;
inline constexpr double kPublishedTol = 2e-3;
inline constexpr double kReoptimizedTol = 1e-8;

struct SystemDesc {
  enum class Kind { multi_spin, qubits } kind = Kind::multi_spin;
  int n = 0;   // number of spins / qubits
  HalfInt j;   // per-site spin (multi_spin only)
};

struct CodeComponent {
  HalfInt J;      // collective host spin
  int su2_mult;   // copy of J inside the symmetric subspace
  int copy;       // irrep copy inside spin J
  RVec zero;      // amplitudes over M (descending), real
  RVec one;
  double jz_expect = 0;
};

/// Published reference values for one registry entry, kept verbatim even
/// when they disagree with the reconstruction.
struct Transcription {
  std::vector<double> mixing;
  std::vector<std::vector<std::pair<int, double>>> amplitudes;  // (m_twice, value) per component
  std::vector<std::string> notes;
};

struct Codeword {
  std::string id;
  GroupKind group;
  std::string irrep;
  SystemDesc system;
  int distance = 0;            // certified distance for qubit codes, 0 otherwise
  ErrorOrder order = ErrorOrder::first;  // local error order for spin codes
  std::vector<CodeComponent> components;
  RVec mixing;                 // reconstructed mixing coefficients
  Provenance provenance;
  Transcription published;
  bool discrepant = false;     // published values disagree with reconstruction
  double agreement = 0;        // max per-component amplitude deviation (sign-aligned)
  // norm distance between the assembled published codeword and the
  // reconstruction (global sign optimized); gauge-free, so meaningful even
  // when degenerate multiplets are published in a rotated basis.  -1 when the
  // component vectors are not published.
  double assembled_agreement = -1;
  std::vector<std::string> notes;

  /// Collective (or Dicke) amplitudes of logical |0> / |1>: the mixed
  /// codeword per component host.
  RVec collective_zero(int component) const { return mixing(component) * components[component].zero; }

  /// For qubit codes (single host spin N/2): the full Dicke amplitude vector.
  RVec dicke_zero() const;
  RVec dicke_one() const;
};

std::vector<std::string> registry_ids();

/// Reconstructs the identified code through the projector pipeline, attaches
/// the published transcription and the agreement metric.  Results are cached;
/// the registry is immutable after load.
const Codeword& published_code(const std::string& id);

enum class VerifyLevel { reduced, full, collective };

/// Runs the appropriate checker for the code at its tier tolerance:
/// first/second-order full local checks for spin codes, dense Pauli brute
/// force for qubit codes up to 13 qubits, collective moments plus Dicke
/// weight-3 cross-checks for 25 qubits.
KLReport verify_code(const std::string& id, VerifyLevel level);

/// Same, but with the published mixing coefficients (sign/permutation aligned
/// to the reconstructed copies) at the published tolerance tier.
KLReport verify_published_mixing(const std::string& id, VerifyLevel level);

/// Weight-3 local Dicke cross-checks for a qubit code: representative
/// three-site Pauli strings evaluated combinatorially.
KLReport dicke_weight3_crosschecks(const Codeword& code, double tol, const std::string& tier);

/// Shared SymBasis cache (built once per (n, j)).
const SymBasis& shared_sym_basis(int n, HalfInt j);

}  // namespace spincode
