#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypiso/classify.hpp"
#include "hypiso/errors.hpp"
#include "hypiso/sampling.hpp"

using namespace hypiso;
using std::numbers::pi;

namespace {

Matrix boost(int n, double s) {
  Matrix m = Matrix::Identity(n + 1, n + 1);
  m(n - 1, n - 1) = std::cosh(s);
  m(n, n) = std::cosh(s);
  m(n - 1, n) = std::sinh(s);
  m(n, n - 1) = std::sinh(s);
  return m;
}

LorentzMatrix lorentz(const Matrix& m) { return classify_membership(m); }

Matrix unit_translation(int dim) {
  Vector b = Vector::Zero(dim);
  b(0) = 1.0;
  return poincare_extend(1.0, Matrix::Identity(dim, dim), b).lorentz.entries();
}

double ray_distance(const Vector& a, const Vector& b) {
  return (models::normalize_ray(a) - models::normalize_ray(b)).lpNorm<Eigen::Infinity>();
}

}  // namespace

TEST_CASE("model chain round trips") {
  Rng rng(1);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Vector p(n + 1);
      for (int i = 0; i < n; ++i) p(i) = g(rng);
      p(n) = std::exp(g(rng));
      const Vector x = models::half_space_to_hyperboloid(p);
      CHECK(QuadraticSpace(n + 1).q_value(x) == doctest::Approx(-1.0).epsilon(1e-10));
      CHECK(x(n + 1) > 0);
      CHECK((models::hyperboloid_to_half_space(x) - p).norm() < 1e-9 * (1 + p.norm()));
      // Boundary points as null rays, and back.
      const Vector y = p.head(n);
      const Vector ray = models::boundary_to_null_ray(y);
      CHECK(std::abs(QuadraticSpace(n + 1).q_value(ray)) < 1e-12);
      CHECK(ray(n + 1) == doctest::Approx(1.0));
      const auto back = models::null_ray_to_boundary(ray);
      REQUIRE(back.has_value());
      CHECK((*back - y).norm() < 1e-10 * (1 + y.norm()));
    }
  }
  CHECK_FALSE(models::null_ray_to_boundary(models::infinity_ray(3)).has_value());
  const auto origin = models::null_ray_to_boundary(models::origin_ray(3));
  REQUIRE(origin.has_value());
  CHECK(origin->norm() < 1e-15);
}

TEST_CASE("poincare extension examples") {
  const int n = 3;
  const Matrix id = Matrix::Identity(n, n);
  CHECK(inf_norm(poincare_extend(1.0, id, Vector::Zero(n)).lorentz.entries() - Matrix::Identity(n + 2, n + 2)) < 1e-15);

  for (double r : {0.25, 3.0}) {
    const LorentzMatrix t = poincare_extend(r, id, Vector::Zero(n)).lorentz;
    const ClassificationReport rep = classify(t);
    CHECK(rep.cls == FixedPointClass::Hyperbolic);
    CHECK(rep.k() == 0);
    CHECK(*rep.stretch == doctest::Approx(std::max(r, 1.0 / r)).epsilon(1e-12));
  }
  const LorentzMatrix t = lorentz(unit_translation(n));
  CHECK(classify(t).cls == FixedPointClass::Parabolic);
  CHECK(classify(t).k() == 0);

  try {
    poincare_extend(-1.0, id, Vector::Zero(n));
    FAIL("expected NonpositiveScale");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveScale);
  }
  Matrix bad = id;
  bad(0, 1) = 0.5;
  try {
    poincare_extend(1.0, bad, Vector::Zero(n));
    FAIL("expected NotOrthogonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrthogonal);
  }
}

TEST_CASE("poincare extension transfers the half-space action") {
  Rng rng(2);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      BoundaryMap f;
      f.r = std::exp(g(rng));
      f.a = random_orthogonal(n, rng);
      f.b = Vector(n);
      for (int i = 0; i < n; ++i) f.b(i) = g(rng);
      const PoincareExtension ext = poincare_extend(f);
      CHECK(ext.lorentz.sheet_preserving());
      for (int s = 0; s < 5; ++s) {
        Vector p(n + 1);
        for (int i = 0; i < n; ++i) p(i) = g(rng);
        p(n) = std::exp(g(rng));
        const Vector image = ext.lorentz.entries() * models::half_space_to_hyperboloid(p);
        const Vector expected = models::half_space_to_hyperboloid(f.apply_half_space(p));
        CHECK((image - expected).norm() < 1e-8 * expected.norm());
        // Boundary restriction.
        const Vector y = p.head(n);
        const Vector ray = ext.lorentz.entries() * models::boundary_to_null_ray(y);
        CHECK(ray_distance(ray, models::boundary_to_null_ray(f.apply(y))) < 1e-8);
      }
    }
  }
}

TEST_CASE("fixed point class examples") {
  for (int n = 2; n <= 5; ++n) {
    Rng rng(n);
    const Matrix e = block_diag(random_special_orthogonal(n, rng), Matrix::Identity(1, 1));
    CHECK(fixed_point_class(lorentz(e)) == FixedPointClass::Elliptic);
    CHECK(fixed_point_class(lorentz(boost(n, 0.7))) == FixedPointClass::Hyperbolic);
    CHECK(fixed_point_class(lorentz(boost(n, -0.7))) == FixedPointClass::Hyperbolic);
  }
  // x -> x + e_1 on E^n, through the hyperboloid transfer.
  for (int n = 1; n <= 5; ++n) {
    const Matrix t = unit_translation(n);
    const Matrix nil = t - Matrix::Identity(n + 2, n + 2);
    CHECK(numerical_rank(nil, 1e-9) == 2);
    CHECK(numerical_rank(nil * nil, 1e-9) == 1);
    CHECK(fixed_point_class(lorentz(t)) == FixedPointClass::Parabolic);
  }
  Matrix swap = Matrix::Identity(3, 3);
  swap(2, 2) = -1.0;
  swap(1, 1) = -1.0;
  try {
    fixed_point_class(lorentz(swap));
    FAIL("expected NotSheetPreserving");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSheetPreserving);
  }
}

TEST_CASE("classification examples") {
  {
    // Elliptic of H^5 with angles pi/3, pi/2 and a fixed 0-sphere.
    Matrix t = block_diag(block_diag(rotation2(pi / 3), rotation2(pi / 2)), Matrix::Identity(2, 2));
    const ClassificationReport r = classify(lorentz(t));
    CHECK(r.cls == FixedPointClass::Elliptic);
    CHECK(r.k() == 2);
    CHECK(r.regular);
    CHECK(r.angles.angles[0] == doctest::Approx(pi / 2));
    CHECK(r.angles.angles[1] == doctest::Approx(pi / 3));
    const auto* s = std::get_if<FixedPointData::EllipticSphere>(&r.fixed_data.value);
    REQUIRE(s != nullptr);
    CHECK(s->sphere_dim == 0);
    CHECK(s->frame.cols() == 2);
    CHECK_FALSE(r.stretch.has_value());
  }
  {
    Matrix t = boost(4, 0.9);
    t.topLeftCorner(2, 2) = rotation2(1.2);
    const ClassificationReport r = classify(lorentz(t));
    CHECK(r.cls == FixedPointClass::Hyperbolic);
    CHECK(r.k() == 1);
    CHECK(*r.stretch == doctest::Approx(std::exp(0.9)).epsilon(1e-12));
    CHECK(r.angles.angles[0] == doctest::Approx(1.2));
    CHECK(stretch_factor(lorentz(t)) == doctest::Approx(std::exp(0.9)).epsilon(1e-12));
  }
  {
    const ClassificationReport r = classify(lorentz(unit_translation(3)));
    CHECK(r.cls == FixedPointClass::Parabolic);
    CHECK(r.k() == 0);
    const auto* p = std::get_if<FixedPointData::ParabolicPoint>(&r.fixed_data.value);
    REQUIRE(p != nullptr);
    CHECK(ray_distance(p->ray, models::infinity_ray(3)) < 1e-9);
    try {
      stretch_factor(lorentz(unit_translation(3)));
      FAIL("expected NotHyperbolic");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotHyperbolic);
    }
  }
  {
    // Full rotation of H^2: a unique fixed point on the hyperboloid.
    const ClassificationReport r = classify(lorentz(block_diag(rotation2(1.0), Matrix::Identity(1, 1))));
    const auto* p = std::get_if<FixedPointData::EllipticPoint>(&r.fixed_data.value);
    REQUIRE(p != nullptr);
    CHECK(QuadraticSpace(2).q_value(p->point) == doctest::Approx(-1.0));
    CHECK(p->point(2) > 0);
  }
}

TEST_CASE("boundary fixed points") {
  const FixedPointData d = boundary_fixed_points(lorentz(boost(3, 0.5)));
  const auto* pair = std::get_if<FixedPointData::HyperbolicPair>(&d.value);
  REQUIRE(pair != nullptr);
  const bool direct = ray_distance(pair->first, models::origin_ray(2)) < 1e-12 &&
                      ray_distance(pair->second, models::infinity_ray(2)) < 1e-12;
  const bool swapped = ray_distance(pair->second, models::origin_ray(2)) < 1e-12 &&
                       ray_distance(pair->first, models::infinity_ray(2)) < 1e-12;
  CHECK((direct || swapped));

  const Matrix e = block_diag(rotation2(0.8), Matrix::Identity(2, 2));
  const FixedPointData fd = boundary_fixed_points(lorentz(e));
  const auto* s = std::get_if<FixedPointData::EllipticSphere>(&fd.value);
  REQUIRE(s != nullptr);
  Matrix expected = Matrix::Zero(4, 2);
  expected(2, 0) = 1.0;
  expected(3, 1) = 1.0;
  CHECK(same_subspace(s->frame, expected));
}

TEST_CASE("fixed data are eigenvectors on random conjugates") {
  Rng rng(12);
  for (int trial = 0; trial < 90; ++trial) {
    const int n = 2 + trial % 5;
    const auto cls = static_cast<FixedPointClass>(trial % 3);
    const LorentzSample s = random_isometry(cls, n, -1, rng);
    const LorentzMatrix t = lorentz(s.matrix);
    const ClassificationReport r = classify(t);
    REQUIRE(r.cls == cls);
    const Matrix& m = t.entries();
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, FixedPointData::HyperbolicPair>) {
            for (const Vector* ray : {&v.first, &v.second}) {
              const double lambda = (m * *ray)(n) / (*ray)(n);
              CHECK((std::abs(lambda - s.stretch) < 1e-7 * s.stretch || std::abs(lambda - 1 / s.stretch) < 1e-7));
              CHECK((m * *ray - lambda * *ray).norm() <= 1e-8 * std::max(1.0, inf_norm(m)) * ray->norm());
            }
          } else if constexpr (std::is_same_v<V, FixedPointData::ParabolicPoint>) {
            CHECK((m * v.ray - v.ray).norm() <= 1e-8 * std::max(1.0, inf_norm(m)) * v.ray.norm());
          } else if constexpr (std::is_same_v<V, FixedPointData::EllipticSphere>) {
            CHECK(inf_norm(m * v.frame - v.frame) <= 1e-8 * std::max(1.0, inf_norm(m)));
            CHECK(v.sphere_dim == n - 1 - 2 * s.angles.k());
          } else {
            CHECK((m * v.point - v.point).norm() <= 1e-8 * std::max(1.0, inf_norm(m)) * v.point.norm());
          }
        },
        r.fixed_data.value);
  }
}

TEST_CASE("classification is conjugation and inverse invariant") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const auto cls = static_cast<FixedPointClass>(trial % 3);
    const LorentzMatrix t = lorentz(random_isometry(cls, n, -1, rng).matrix);
    const Matrix w = random_lorentz(n, rng);
    const ClassificationReport a = classify(t);
    const ClassificationReport b = classify(lorentz(w * t.entries() * lorentz_inverse(w)));
    const ClassificationReport c = classify(lorentz(t.inverse()));
    for (const auto* other : {&b, &c}) {
      CHECK(other->cls == a.cls);
      REQUIRE(other->k() == a.k());
      for (int i = 0; i < a.k(); ++i) CHECK(std::abs(other->angles.angles[i] - a.angles.angles[i]) < 1e-7);
      CHECK(other->stretch.has_value() == a.stretch.has_value());
      if (a.stretch) CHECK(*other->stretch == doctest::Approx(*a.stretch).epsilon(1e-8));
    }
  }
}

TEST_CASE("translation part decides between parabolic and elliptic") {
  Rng rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    // A rotates the first two coordinates and fixes the rest.
    const Matrix q = random_orthogonal(n, rng);
    Matrix a = Matrix::Identity(n, n);
    a.topLeftCorner(2, 2) = rotation2(0.5 + 0.1 * (trial % 10));
    a = q * a * q.transpose();
    const Matrix ker = q.rightCols(n - 2);
    Vector orth = q.leftCols(2) * Vector::Random(2);
    Vector along = ker * Vector::Random(n - 2);
    along *= (0.5 + 0.1 * (trial % 5)) / along.norm();
    CHECK(fixed_point_class(poincare_extend(1.0, a, orth).lorentz) == FixedPointClass::Elliptic);
    CHECK(fixed_point_class(poincare_extend(1.0, a, orth + along).lorentz) == FixedPointClass::Parabolic);
  }
}

TEST_CASE("normal forms reproduce the input") {
  Rng rng(40);
  for (int trial = 0; trial < 90; ++trial) {
    const int n = 1 + trial % 6;
    auto cls = static_cast<FixedPointClass>(trial % 3);
    if (cls == FixedPointClass::Parabolic && n < 2) cls = FixedPointClass::Elliptic;
    const LorentzSample s = random_isometry(cls, n, -1, rng);
    const LorentzMatrix t = lorentz(s.matrix);
    const NormalForm nf = normal_form(t);
    CHECK(nf.conjugator.sheet_preserving());
    CHECK(inf_norm(reconstruct(nf) - t.entries()) <= 1e-8);
    const Matrix& w = nf.conjugator.entries();
    CHECK(inf_norm(w * t.entries() * lorentz_inverse(w) - nf.standard) <= 1e-8);
  }
  SUBCASE("standard position and identity") {
    const NormalForm id = normal_form(lorentz(Matrix::Identity(4, 4)));
    const auto* rot = std::get_if<NormalForm::KRotation>(&id.boundary);
    REQUIRE(rot != nullptr);
    CHECK(rot->angles.k() == 0);
    Matrix t = boost(3, 0.6);
    t.topLeftCorner(2, 2) = rotation2(0.4);
    const NormalForm nf = normal_form(lorentz(t));
    const auto* st = std::get_if<NormalForm::KRotatoryStretch>(&nf.boundary);
    REQUIRE(st != nullptr);
    CHECK(st->r == doctest::Approx(std::exp(0.6)));
    CHECK(inf_norm(nf.standard - t) < 1e-9);
  }
}
