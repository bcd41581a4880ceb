#include "hypiso/classgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypiso/errors.hpp"

namespace hypiso {

long long d0(int k, bool has_pi) {
  if (k < 0) throw Error(ErrorKind::OutOfRange, "k must be non-negative");
  if (has_pi && k == 0) throw Error(ErrorKind::InvalidArg, "an angle pi needs k >= 1");
  long long v = 1;
  for (int i = 2; i <= k; ++i) v *= i;
  return v << (has_pi ? k - 1 : k);
}

int dim_decomposition_space(int k) { return 2 * k * (k - 1); }

std::string_view to_string(SpaceTag t) {
  switch (t) {
    case SpaceTag::Decomposition: return "D(2;k)";
    case SpaceTag::Grassmann: return "Grassmann";
    case SpaceTag::AffineGrassmann: return "AffineGrassmann";
    case SpaceTag::SphereSpace: return "SphereSpace";
    case SpaceTag::Sphere: return "Sphere";
    case SpaceTag::PairSpace: return "B";
    case SpaceTag::HyperbolicSpace: return "HyperbolicSpace";
  }
  return "?";
}

std::string_view to_string(FiberTag t) {
  switch (t) {
    case FiberTag::FiniteSet: return "FiniteSet";
    case FiberTag::Ok: return "O_k";
    case FiberTag::OkTimesPuncturedAffine: return "O_k x PuncturedAffine";
    case FiberTag::OkDisjointOk: return "O_k + O_k";
    case FiberTag::OkTimesPositiveReals: return "O_k x PositiveRealsMinusOne";
  }
  return "?";
}

std::string_view to_string(ClassKind c) {
  switch (c) {
    case ClassKind::Rotation: return "rotation";
    case ClassKind::Elliptic: return "elliptic";
    case ClassKind::Parabolic: return "parabolic";
    case ClassKind::Hyperbolic: return "hyperbolic";
    case ClassKind::HyperbolicAnyStretch: return "hyperbolic-any-stretch";
  }
  return "?";
}

ClassKind parse_class_kind(std::string_view s) {
  for (auto c : {ClassKind::Rotation, ClassKind::Elliptic, ClassKind::Parabolic, ClassKind::Hyperbolic,
                 ClassKind::HyperbolicAnyStretch})
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::InvalidArg, "unknown class '" + std::string(s) + "'");
}

namespace {

void expect_params(const std::vector<int>& p, std::size_t count) {
  if (p.size() != count) throw Error(ErrorKind::OutOfRange, "wrong number of space parameters");
  for (int v : p)
    if (v < 0) throw Error(ErrorKind::OutOfRange, "space parameters must be non-negative");
}

SpaceRef space(SpaceTag tag, std::vector<int> params) {
  const int dim = dim_spaces(tag, params);
  return {tag, std::move(params), dim};
}

FiberRef ok_fiber(FiberTag tag, int k, int m, int extra = 0) {
  FiberRef f{tag, {k, m}, dim_Ok(k, m)};
  if (tag == FiberTag::OkTimesPuncturedAffine) {
    f.params.push_back(extra);
    f.dimension += extra;
  } else if (tag == FiberTag::OkTimesPositiveReals) {
    f.dimension += 1;
  }
  return f;
}

FibrationDescriptor assemble(SpaceRef base, FiberRef fiber, bool has_pi, int k) {
  FibrationDescriptor out;
  out.has_pi = has_pi;
  if (fiber.dimension == 0) {
    long long count = d0(k, has_pi);
    if (fiber.tag == FiberTag::OkDisjointOk) count *= 2;
    out.sheet_count = count;
  }
  out.total_dimension = base.dimension + fiber.dimension;
  out.base = std::move(base);
  out.fiber = std::move(fiber);
  return out;
}

}  // namespace

int dim_spaces(SpaceTag tag, const std::vector<int>& p) {
  switch (tag) {
    case SpaceTag::Decomposition:
      expect_params(p, 1);
      return dim_decomposition_space(p[0]);
    case SpaceTag::Grassmann:
    case SpaceTag::AffineGrassmann:
    case SpaceTag::SphereSpace: {
      expect_params(p, 2);
      const int k = p[0], n = p[1];
      if (k > n) throw Error(ErrorKind::OutOfRange, "need k <= n");
      if (tag == SpaceTag::Grassmann) return k * (n - k);
      if (tag == SpaceTag::AffineGrassmann) return (k + 1) * (n - k);
      return (k + 2) * (n - k);
    }
    case SpaceTag::Sphere:
    case SpaceTag::HyperbolicSpace:
      expect_params(p, 1);
      return p[0];
    case SpaceTag::PairSpace:
      expect_params(p, 1);
      return 2 * p[0];
  }
  throw Error(ErrorKind::OutOfRange, "unknown space");
}

int dim_Ok(int k, int m) {
  if (k < 0 || 2 * k > m) throw Error(ErrorKind::OutOfRange, "need 0 <= 2k <= m");
  return dim_spaces(SpaceTag::Grassmann, {m - 2 * k, m}) + dim_decomposition_space(k);
}

FibrationDescriptor class_descriptor(ClassKind kind, int k, int n, bool has_pi) {
  if (k < 0 || n < 0) throw Error(ErrorKind::OutOfRange, "k and n must be non-negative");
  if (has_pi && k == 0) throw Error(ErrorKind::InvalidArg, "an angle pi needs k >= 1");
  switch (kind) {
    case ClassKind::Rotation:
      if (2 * k > n) throw Error(ErrorKind::OutOfRange, "need 2k <= n");
      if (2 * k == n) {
        FiberRef f{FiberTag::FiniteSet, {static_cast<int>(d0(k, has_pi))}, 0};
        return assemble(space(SpaceTag::Decomposition, {k}), f, has_pi, k);
      }
      return assemble(space(SpaceTag::Grassmann, {n - 2 * k, n}), ok_fiber(FiberTag::Ok, k, 2 * k), has_pi, k);
    case ClassKind::Elliptic:
      if (2 * k <= n)
        return assemble(space(SpaceTag::SphereSpace, {n - 2 * k, n}), ok_fiber(FiberTag::Ok, k, 2 * k),
                        has_pi, k);
      if (n % 2 == 1 && 2 * k == n + 1)
        return assemble(space(SpaceTag::HyperbolicSpace, {n + 1}), ok_fiber(FiberTag::Ok, k, n + 1), has_pi, k);
      throw Error(ErrorKind::OutOfRange, "too many rotation angles for an elliptic");
    case ClassKind::Parabolic:
      if (2 * k > n) throw Error(ErrorKind::OutOfRange, "need 2k <= n");
      return assemble(space(SpaceTag::Sphere, {n}), ok_fiber(FiberTag::OkTimesPuncturedAffine, k, n, n), has_pi, k);
    case ClassKind::Hyperbolic:
      if (2 * k > n) throw Error(ErrorKind::OutOfRange, "need 2k <= n");
      return assemble(space(SpaceTag::PairSpace, {n}), ok_fiber(FiberTag::OkDisjointOk, k, n), has_pi, k);
    case ClassKind::HyperbolicAnyStretch:
      if (2 * k > n) throw Error(ErrorKind::OutOfRange, "need 2k <= n");
      return assemble(space(SpaceTag::PairSpace, {n}), ok_fiber(FiberTag::OkTimesPositiveReals, k, n), has_pi, k);
  }
  throw Error(ErrorKind::OutOfRange, "unknown class kind");
}

FibrationDescriptor class_descriptor(const ClassificationReport& report, int n) {
  if (!report.regular) throw Error(ErrorKind::NotRegular, "descriptor needs distinct rotation angles");
  ClassKind kind = ClassKind::Elliptic;
  if (report.cls == FixedPointClass::Parabolic) kind = ClassKind::Parabolic;
  if (report.cls == FixedPointClass::Hyperbolic) kind = ClassKind::Hyperbolic;
  return class_descriptor(kind, report.k(), n, report.angles.has_pi());
}

PlaneDecomposition alpha(const Matrix& t, double delta) {
  if (t.rows() % 2 != 0) throw Error(ErrorKind::InvalidArg, "alpha needs an even dimension");
  PlaneDecomposition d = plane_decomposition(t, delta);
  if (2 * d.k() != t.rows()) throw Error(ErrorKind::InvalidArg, "alpha needs a full rotation of E^{2k}");
  return d;
}

bool same_decomposition(const PlaneDecomposition& a, const PlaneDecomposition& b, double tol) {
  if (a.k() != b.k()) return false;
  std::vector<bool> taken(b.planes.size(), false);
  for (const auto& p : a.planes) {
    bool found = false;
    for (std::size_t j = 0; j < b.planes.size() && !found; ++j)
      if (!taken[j] && same_subspace(p.frame, b.planes[j].frame, tol)) taken[j] = found = true;
    if (!found) return false;
  }
  return true;
}

std::vector<Matrix> enumerate_fiber(const PlaneDecomposition& d, const std::vector<double>& angles,
                                    bool has_pi) {
  const int k = d.k();
  if (static_cast<int>(angles.size()) != k)
    throw Error(ErrorKind::InvalidArg, "need one angle per plane");
  for (double a : angles)
    if (!(a > 0.0 && a <= std::numbers::pi))
      throw Error(ErrorKind::InvalidArg, "angles must lie in (0, pi]");
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 1; i < k; ++i)
    if (sorted[i] - sorted[i - 1] <= kDefaultDelta)
      throw Error(ErrorKind::AngleMultiplicity, "fiber enumeration needs distinct angles");
  const bool pi_present = k > 0 && std::abs(sorted.back() - std::numbers::pi) <= kDefaultDelta;
  if (pi_present != has_pi) throw Error(ErrorKind::InvalidArg, "has_pi disagrees with the angles");

  const int dim = k > 0 ? static_cast<int>(d.planes[0].frame.rows()) : static_cast<int>(d.fixed_subspace.rows());
  Matrix base = Matrix::Zero(dim, dim);
  if (d.fixed_subspace.cols() > 0) base += d.fixed_subspace * d.fixed_subspace.transpose();
  if (d.reflection_axis) base -= *d.reflection_axis * d.reflection_axis->transpose();

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matrix> out;
  do {
    for (long mask = 0; mask < (1L << k); ++mask) {
      Matrix m = base;
      bool duplicate = false;
      for (int i = 0; i < k; ++i) {
        const double theta = sorted[perm[i]];
        const bool flip = mask & (1L << i);
        // B(pi) = B(-pi): a single orientation.
        if (flip && std::abs(theta - std::numbers::pi) <= kDefaultDelta) duplicate = true;
        const Matrix& f = d.planes[i].frame;
        m += f * rotation2(flip ? -theta : theta) * f.transpose();
      }
      if (!duplicate) out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool same_ray(const Vector& a, const Vector& b, double tol) {
  return (models::normalize_ray(a) - models::normalize_ray(b)).lpNorm<Eigen::Infinity>() <= tol;
}

BoundaryPair::BoundaryPair(Vector a, Vector b, double tol) : first_(std::move(a)), second_(std::move(b)) {
  if (same_ray(first_, second_, tol)) throw Error(ErrorKind::InvalidArg, "boundary pair points coincide");
}

bool BoundaryPair::equals(const BoundaryPair& o, double tol) const {
  return (same_ray(first_, o.first_, tol) && same_ray(second_, o.second_, tol)) ||
         (same_ray(first_, o.second_, tol) && same_ray(second_, o.first_, tol));
}

BasePoint projection(const LorentzMatrix& t, const Tolerances& tol) {
  const ClassificationReport r = classify(t, tol);
  if (!r.regular) throw Error(ErrorKind::NotRegular, "projection needs distinct rotation angles");
  return std::visit(
      [](const auto& v) -> BasePoint {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FixedPointData::HyperbolicPair>)
          return BasePoint{BoundaryPair(v.first, v.second)};
        else if constexpr (std::is_same_v<V, FixedPointData::ParabolicPoint>)
          return BasePoint{BasePoint::FixedBoundaryPoint{v.ray}};
        else if constexpr (std::is_same_v<V, FixedPointData::EllipticSphere>)
          return BasePoint{BasePoint::FixedSphere{v.frame, v.sphere_dim}};
        else
          return BasePoint{BasePoint::FixedPoint{v.point}};
      },
      r.fixed_data.value);
}

BasePoint projection(const Matrix& orthogonal, double delta) {
  const PlaneDecomposition d = plane_decomposition(orthogonal, delta);
  return BasePoint{BasePoint::FixedSubspace{d.fixed_subspace}};
}

}  // namespace hypiso
