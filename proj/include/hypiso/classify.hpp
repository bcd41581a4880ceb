#pragma once

// Fixed-point classification of hyperbolic isometries in the hyperboloid
// model, normal forms, and the Poincare extension of boundary maps.
//
// Conventions (spatial dimension N, boundary dimension n = N - 1):
//  * A boundary point y in E^n is the null ray (2y, |y|^2 - 1, |y|^2 + 1),
//    scaled so that the time coordinate is 1. The point at infinity of the
//    upper half-space is the ray (0, ..., 0, 1, 1); the origin is
//    (0, ..., 0, -1, 1).
//  * Half-space to ball is the Cayley map
//      (y, t) -> (2y, |y|^2 + t^2 - 1) / (|y|^2 + (t + 1)^2),
//    ball to hyperboloid is q -> (2q, 1 + |q|^2) / (1 - |q|^2).

#include <optional>
#include <string_view>
#include <variant>

#include "hypiso/quadspace.hpp"
#include "hypiso/spectral.hpp"

namespace hypiso {

enum class FixedPointClass { Elliptic, Parabolic, Hyperbolic };

std::string_view to_string(FixedPointClass c);

struct Tolerances {
  double eps = kDefaultEps;      ///< membership / form tests
  double delta = kDefaultDelta;  ///< eigenvalue clustering and numerical rank
};

namespace models {

/// (y, t) with t > 0, packed as a vector of length n + 1.
Vector half_space_to_ball(const Vector& point);
Vector ball_to_half_space(const Vector& point);
Vector ball_to_hyperboloid(const Vector& point);
Vector hyperboloid_to_ball(const Vector& point);
Vector half_space_to_hyperboloid(const Vector& point);
Vector hyperboloid_to_half_space(const Vector& point);

/// Null ray of a finite boundary point, normalized to time coordinate 1.
Vector boundary_to_null_ray(const Vector& y);
/// The ray (0, ..., 0, 1, 1) of a boundary of dimension n.
Vector infinity_ray(int n);
Vector origin_ray(int n);
/// Scales a null vector to time coordinate 1.
Vector normalize_ray(const Vector& v);
/// Finite boundary point of a null ray, or nullopt for the infinity ray.
std::optional<Vector> null_ray_to_boundary(const Vector& ray, double tol = 1e-9);

}  // namespace models

/// x -> r A x + b on E^n.
struct BoundaryMap {
  double r = 1.0;
  Matrix a;
  Vector b;

  Vector apply(const Vector& y) const { return r * (a * y) + b; }
  /// Half-space action (y, t) -> (r A y + b, r t).
  Vector apply_half_space(const Vector& point) const;
};

struct PoincareExtension {
  BoundaryMap map;
  LorentzMatrix lorentz;
};

/// Throws NotOrthogonal, NonpositiveScale, DimensionMismatch.
PoincareExtension poincare_extend(double r, const Matrix& a, const Vector& b);
PoincareExtension poincare_extend(const BoundaryMap& f);

struct FixedPointData {
  /// Two boundary rays, lexicographically ordered; semantically unordered.
  struct HyperbolicPair {
    Vector first;
    Vector second;
  };
  struct ParabolicPoint {
    Vector ray;
  };
  /// Euclidean orthonormal frame of ker(T - I); its null rays form a sphere
  /// of dimension `sphere_dim` on the boundary.
  struct EllipticSphere {
    Matrix frame;
    int sphere_dim = 0;
  };
  /// Unique fixed point on the hyperboloid (Q(p) = -1, p_n > 0).
  struct EllipticPoint {
    Vector point;
  };

  std::variant<HyperbolicPair, ParabolicPoint, EllipticSphere, EllipticPoint> value;
};

struct ClassificationReport {
  FixedPointClass cls = FixedPointClass::Elliptic;
  RotationAngles angles;
  bool regular = true;
  std::optional<double> stretch;
  FixedPointData fixed_data;

  int k() const noexcept { return angles.k(); }
};

/// An adapted basis: `frame` is a sheet-preserving Lorentz matrix with
/// frame^{-1} T frame = standard. The standard matrix depends only on the
/// class, the angles (with reflection flag) and the stretch.
struct StandardFrame {
  FixedPointClass cls = FixedPointClass::Elliptic;
  RotationAngles angles;
  double stretch = 1.0;
  Matrix frame;
  Matrix standard;
  /// Column indices of frame whose sign can flip without changing the
  /// standard matrix (space-like eigenvectors for +-1).
  std::vector<int> flippable;
  /// Column counts of the orthogonal part and where it starts.
  int orthogonal_offset = 0;
  int orthogonal_dim = 0;
};

FixedPointClass fixed_point_class(const LorentzMatrix& t, const Tolerances& tol = {});
StandardFrame standard_frame(const LorentzMatrix& t, const Tolerances& tol = {});
Matrix standard_matrix(FixedPointClass cls, const RotationAngles& angles, double stretch, int n);

ClassificationReport classify(const LorentzMatrix& t, const Tolerances& tol = {});
double stretch_factor(const LorentzMatrix& t, const Tolerances& tol = {});
FixedPointData boundary_fixed_points(const LorentzMatrix& t, const Tolerances& tol = {});

struct NormalForm {
  /// Elliptic: T is conjugate to diag(rotation, 1).
  struct KRotation {
    RotationAngles angles;
    Matrix rotation;
  };
  /// Parabolic: boundary action x -> A x + b with b along ker(A - I).
  struct KRotatoryTranslation {
    Matrix a;
    Vector b;
  };
  /// Hyperbolic: boundary action x -> r A x, r > 1, fixed points 0 and infinity.
  struct KRotatoryStretch {
    double r = 1.0;
    Matrix a;
  };

  std::variant<KRotation, KRotatoryTranslation, KRotatoryStretch> boundary;
  /// W with W T W^{-1} = standard. In SO_o whenever the standard matrix has
  /// a space-like +-1 direction to absorb the orientation.
  LorentzMatrix conjugator;
  Matrix standard;
};

NormalForm normal_form(const LorentzMatrix& t, const Tolerances& tol = {});

/// Extends the boundary parameters and conjugates back with W^{-1}.
Matrix reconstruct(const NormalForm& nf);

}  // namespace hypiso
