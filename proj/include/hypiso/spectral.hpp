#pragma once

// Eigenstructure of orthogonal and Lorentz matrices: rotation angles in
// (0, pi], regularity, and invariant 2-plane decompositions.

#include <complex>
#include <optional>
#include <vector>

#include "hypiso/linalg.hpp"

namespace hypiso {

class LorentzMatrix;

inline constexpr double kDefaultDelta = 1e-7;

struct EigenCluster {
  std::complex<double> value;
  int algebraic = 0;
  int geometric = 0;
};

struct EigenStructure {
  /// Sorted by descending real part, then descending imaginary part.
  std::vector<EigenCluster> clusters;
};

/// Single-linkage clustering of the spectrum at radius delta. Throws
/// ClusterAmbiguity when two clusters sit at distance in [delta, 2 delta).
EigenStructure eigen_structure(const Matrix& m, double delta = kDefaultDelta);

/// No nontrivial Jordan block. Clusters are merged at radius sqrt(delta) so
/// that the O(eps^(1/m)) spread of a defective eigenvalue stays together.
bool is_semisimple(const Matrix& m, double delta = kDefaultDelta);

/// Multiset of angles in (0, pi], descending. An eigenvalue -1 of
/// multiplicity m contributes floor(m/2) copies of pi; odd m sets
/// `reflection` (only possible off SO(n)).
struct RotationAngles {
  std::vector<double> angles;
  bool reflection = false;

  int k() const noexcept { return static_cast<int>(angles.size()); }
  bool has_pi() const noexcept;
};

/// An invariant 2-plane: orthonormal columns (u, v) with A u = cos t u + sin t v.
struct Plane {
  Matrix frame;
  double angle = 0.0;
};

struct PlaneDecomposition {
  std::vector<Plane> planes;
  Matrix fixed_subspace;
  /// The odd -1 direction of an orientation-reversing input.
  std::optional<Vector> reflection_axis;

  int k() const noexcept { return static_cast<int>(planes.size()); }
  std::vector<double> angles() const;
};

/// Complete splitting of an orthogonal matrix into planes, an optional odd
/// -1 axis and the fixed subspace. Works for non-regular input; the planes
/// of a repeated angle are then one admissible (non-canonical) choice.
struct OrthogonalSplitting {
  std::vector<Plane> planes;
  Matrix minus_axis;  ///< d x 0 or d x 1
  Matrix fixed;       ///< d x (dim of +1 eigenspace)

  int dim() const noexcept { return static_cast<int>(fixed.rows()); }
  RotationAngles angles() const;
  /// Columns ordered planes, minus axis, fixed.
  Matrix basis() const;
  /// B(t_1) + ... + B(t_k) + [-1] + I in the ordering of basis().
  Matrix canonical_block() const;
};

/// Throws NotOrthogonal, ClusterAmbiguity.
OrthogonalSplitting split_orthogonal(const Matrix& a, double delta = kDefaultDelta);

/// B(t_1) + ... + B(t_k) + [-1 if reflection] + I, padded to `dim`.
Matrix canonical_orthogonal(const RotationAngles& angles, int dim);

RotationAngles rotation_angles(const Matrix& orthogonal, double delta = kDefaultDelta);
/// Angles of the orthogonal part T_o of a sheet-preserving Lorentz matrix.
RotationAngles rotation_angles(const LorentzMatrix& t, double delta = kDefaultDelta);

bool is_regular(const RotationAngles& angles, double delta = kDefaultDelta);
bool is_regular(const Matrix& orthogonal, double delta = kDefaultDelta);

/// Throws NotRegular for repeated angles.
PlaneDecomposition plane_decomposition(const Matrix& orthogonal, double delta = kDefaultDelta);

/// Assembles B(t_i) on each plane frame, identity on the fixed subspace and
/// -1 on the reflection axis.
Matrix reconstruct(const PlaneDecomposition& d);

/// Orthogonal projector onto the column span.
Matrix projector(const Matrix& frame);

/// Same column span, up to tol in the projector's inf-norm.
bool same_subspace(const Matrix& a, const Matrix& b, double tol = 1e-7);

}  // namespace hypiso
