#pragma once

// Conjugacy of sheet-preserving isometries in M(n) and in its identity
// component M_o(n), through invariant tuples and normal-form conjugators.

#include <optional>
#include <string>

#include "hypiso/classify.hpp"

namespace hypiso {

struct InvariantTuple {
  FixedPointClass cls = FixedPointClass::Elliptic;
  RotationAngles angles;
  int k = 0;
  std::optional<double> stretch;
};

/// Tuples compare equal when class, k and reflection flag agree and angles
/// and stretch agree to `tol` (relative for the stretch).
bool same_tuple(const InvariantTuple& a, const InvariantTuple& b, double tol = 1e-6);

InvariantTuple invariant_tuple(const LorentzMatrix& t, const Tolerances& tol = {});

enum class Relation { ConjugateInMo, ConjugateInMOnly, NotConjugate, Undecided };
std::string_view to_string(Relation r);

enum class ConjugacyGroup { Mn, Mon };

struct ConjugacyAnswer {
  Relation related = Relation::NotConjugate;
  /// S with S T1 S^{-1} = T2.
  std::optional<Matrix> conjugator;
  std::string method;
};

/// M(n) is the sheet-preserving half of O(n,1). When conjugate, `related` is
/// ConjugateInMo if the conjugator found has determinant +1 and
/// ConjugateInMOnly otherwise; conjugate_in_Mon settles the M_o(n) question.
ConjugacyAnswer conjugate_in_Mn(const LorentzMatrix& t1, const LorentzMatrix& t2,
                                const Tolerances& tol = {});

/// Both inputs in SO_o(n,1). Undecided for non-regular inputs whose
/// conjugator cannot be moved into M_o(n) by the available constructions.
ConjugacyAnswer conjugate_in_Mon(const LorentzMatrix& t1, const LorentzMatrix& t2,
                                 const Tolerances& tol = {});

/// Throws NotConjugate or Undecided.
Matrix find_conjugator(const LorentzMatrix& t1, const LorentzMatrix& t2, ConjugacyGroup group,
                       const Tolerances& tol = {});

}  // namespace hypiso
