#pragma once

// Sheet counts, dimensions and base points of the fibrations carried by the
// conjugacy classes of regular k-rotations and of isometries of H^{n+1}.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypiso/classify.hpp"

namespace hypiso {

/// 2^k k!, or 2^(k-1) k! when one angle is pi. Throws InvalidArg for
/// has_pi with k = 0 and OutOfRange for negative k.
long long d0(int k, bool has_pi);

/// dim of the ordered (and unordered) decomposition spaces of E^{2k}.
int dim_decomposition_space(int k);

enum class SpaceTag { Decomposition, Grassmann, AffineGrassmann, SphereSpace, Sphere, PairSpace, HyperbolicSpace };
std::string_view to_string(SpaceTag t);

/// Grassmann / AffineGrassmann / SphereSpace take (k, n); Decomposition takes
/// (k); Sphere, PairSpace and HyperbolicSpace take one dimension. Throws
/// OutOfRange.
int dim_spaces(SpaceTag tag, const std::vector<int>& params);

enum class FiberTag { FiniteSet, Ok, OkTimesPuncturedAffine, OkDisjointOk, OkTimesPositiveReals };
std::string_view to_string(FiberTag t);

/// Dimension of the space of regular k-rotations of E^m with fixed angles.
int dim_Ok(int k, int m);

struct SpaceRef {
  SpaceTag tag = SpaceTag::Sphere;
  std::vector<int> params;
  int dimension = 0;
};

/// Fiber parameters: FiniteSet (d0), the others (k, m) and the affine or
/// ray factor dimension where present.
struct FiberRef {
  FiberTag tag = FiberTag::FiniteSet;
  std::vector<int> params;
  int dimension = 0;
};

struct FibrationDescriptor {
  SpaceRef base;
  FiberRef fiber;
  std::optional<long long> sheet_count;
  int total_dimension = 0;
  bool has_pi = false;
};

enum class ClassKind { Rotation, Elliptic, Parabolic, Hyperbolic, HyperbolicAnyStretch };
std::string_view to_string(ClassKind c);
ClassKind parse_class_kind(std::string_view s);

/// Rotation: regular k-rotations of E^n. The other kinds are classes in
/// M(n), acting on H^{n+1}. Throws OutOfRange.
FibrationDescriptor class_descriptor(ClassKind kind, int k, int n, bool has_pi = false);
/// Throws NotRegular.
FibrationDescriptor class_descriptor(const ClassificationReport& report, int n);

/// The decomposition class of a regular 2k-rotation of E^{2k}. Throws NotRegular.
PlaneDecomposition alpha(const Matrix& t, double delta = kDefaultDelta);
/// Same unordered set of planes.
bool same_decomposition(const PlaneDecomposition& a, const PlaneDecomposition& b, double tol = 1e-7);

/// Every orthogonal matrix with angles Θ and decomposition class [D].
/// Throws AngleMultiplicity, InvalidArg.
std::vector<Matrix> enumerate_fiber(const PlaneDecomposition& d, const std::vector<double>& angles,
                                    bool has_pi);

/// Unordered pair of distinct boundary points given as null rays.
class BoundaryPair {
 public:
  /// Throws InvalidArg when the rays coincide.
  BoundaryPair(Vector a, Vector b, double tol = 1e-9);
  const Vector& first() const noexcept { return first_; }
  const Vector& second() const noexcept { return second_; }
  bool equals(const BoundaryPair& other, double tol = 1e-7) const;

 private:
  Vector first_, second_;
};

bool same_ray(const Vector& a, const Vector& b, double tol = 1e-7);

struct BasePoint {
  /// epsilon: frame of the fixed linear subspace, whose null rays form the sphere.
  struct FixedSphere {
    Matrix frame;
    int sphere_dim = 0;
  };
  /// psi: the fixed point of a full rotation.
  struct FixedPoint {
    Vector point;
  };
  /// zeta: the fixed boundary point.
  struct FixedBoundaryPoint {
    Vector ray;
  };
  /// mu: fixed subspace of a Euclidean rotation.
  struct FixedSubspace {
    Matrix frame;
  };
  std::variant<FixedSphere, FixedPoint, BoundaryPair, FixedBoundaryPoint, FixedSubspace> value;
};

/// epsilon, psi, rho or zeta, from the fixed data. Throws NotRegular.
BasePoint projection(const LorentzMatrix& t, const Tolerances& tol = {});
/// mu for an orthogonal matrix. Throws NotRegular.
BasePoint projection(const Matrix& orthogonal, double delta = kDefaultDelta);

}  // namespace hypiso
