#pragma once

// Reality (conjugacy to the inverse) and strong reality in O(n), SO(n),
// SO_o(n,1) and M_o(n) = SO_o(n+1,1), with explicit reversers, plus an
// oracle that searches for reversers without using the deciders.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypiso/classify.hpp"

namespace hypiso {

enum class RealityGroup { O_n, SO_n, SO_o_n1, M_o_n };

std::string_view to_string(RealityGroup g);
RealityGroup parse_reality_group(std::string_view s);

struct RealityCertificate {
  RealityGroup group = RealityGroup::O_n;
  bool decision = false;
  std::string clause;
  std::optional<Matrix> reverser;
  bool involution = false;
};

/// Always real, with an involutory reverser. Throws NotOrthogonal.
RealityCertificate is_real_On(const Matrix& t, double delta = kDefaultDelta);
/// Throws NotOrthogonal, NotSpecialOrthogonal.
RealityCertificate is_real_SOn(const Matrix& t, double delta = kDefaultDelta);
RealityCertificate is_strongly_real_SOn(const Matrix& t, double delta = kDefaultDelta);
/// Throws NotInIdentityComponent.
RealityCertificate is_real_SOo_n1(const LorentzMatrix& t, const Tolerances& tol = {});
/// T acts on H^{n+1}, so T is (n+2) x (n+2).
RealityCertificate is_real_Mo(const LorentzMatrix& t, const Tolerances& tol = {});

/// One reverser per reachable component. For O(n) and SO(n) only the
/// determinant is meaningful and `sheet_preserving` is true.
struct ReverserWitness {
  int det = 1;
  bool sheet_preserving = true;
  Matrix reverser;
};

struct OracleModeA {
  bool applicable = false;
  std::string reason;  ///< why it was skipped
  std::vector<ReverserWitness> achievable;
  int candidates = 0;
};

struct OracleModeB {
  int samples = 0;
  int converged = 0;
  std::vector<ReverserWitness> found;
  int solution_dim = 0;
};

struct OracleReport {
  RealityGroup group = RealityGroup::O_n;
  OracleModeA exhaustive;
  OracleModeB randomized;
  /// Whether a reverser in the requested group was found by either mode.
  bool found_in_group = false;
};

struct OracleOptions {
  int budget = 200;  ///< mode (b) sample count
  std::uint64_t seed = 0;
  bool run_exhaustive = true;
  bool run_randomized = true;
  /// Stop mode (b) as soon as a witness in the requested group shows up.
  bool stop_when_found = false;
};

/// For O_n / SO_n the matrix is orthogonal; for SO_o_n1 / M_o_n it is a
/// Lorentz matrix of the matching size. Throws BudgetExhausted when mode (b)
/// runs and no sample converges.
OracleReport reverser_oracle(const Matrix& t, RealityGroup group, const OracleOptions& opts = {});

/// True when the witness lies in the component or group named by `group`.
bool in_group(const ReverserWitness& w, RealityGroup group);

}  // namespace hypiso
