#include <random>

#include "doctest.h"
#include "hypiso/errors.hpp"
#include "hypiso/quadspace.hpp"
#include "hypiso/sampling.hpp"

using namespace hypiso;

namespace {

Vector basis_vector(int size, int i) {
  Vector v = Vector::Zero(size);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("form values on coordinate vectors") {
  const QuadraticSpace s(3);
  CHECK(s.ambient() == 4);
  CHECK(s.form() == Matrix(Vector((Vector(4) << 1, 1, 1, -1).finished()).asDiagonal()));
  CHECK(s.q_value(basis_vector(4, 3)) == -1.0);
  CHECK(s.q_value(basis_vector(4, 0)) == 1.0);
  CHECK(s.q_value(basis_vector(4, 0) + basis_vector(4, 3)) == 0.0);
  CHECK_THROWS_AS(s.q_value(Vector::Zero(3)), Error);
}

TEST_CASE("form matches the sum of squares") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 6; ++n) {
    const QuadraticSpace s(n);
    for (int trial = 0; trial < 20; ++trial) {
      Vector v(n + 1);
      for (int i = 0; i <= n; ++i) v(i) = g(rng);
      double expected = -v(n) * v(n);
      for (int i = 0; i < n; ++i) expected += v(i) * v(i);
      CHECK(s.q_value(v) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("causal types") {
  const QuadraticSpace s(2);
  CHECK(causal_type(s, basis_vector(3, 2)) == CausalType::TimeLike);
  CHECK(causal_type(s, basis_vector(3, 0)) == CausalType::SpaceLike);
  CHECK(causal_type(s, basis_vector(3, 0) + basis_vector(3, 2)) == CausalType::LightLike);
  try {
    causal_type(s, Vector::Zero(3));
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
}

TEST_CASE("subspace types") {
  const QuadraticSpace s(3);
  const Vector e0 = basis_vector(4, 0), e1 = basis_vector(4, 1), e3 = basis_vector(4, 3);
  {
    const std::vector<Vector> b{e0, e3};
    CHECK(subspace_type(s, b) == SubspaceType::TimeLike);
  }
  {
    const std::vector<Vector> b{e0, e1};
    CHECK(subspace_type(s, b) == SubspaceType::SpaceLike);
  }
  {
    const std::vector<Vector> b{e0 + e3};
    CHECK(subspace_type(s, b) == SubspaceType::LightLike);
  }
  {
    // Tangent plane to the light cone: degenerate but not null.
    const std::vector<Vector> b{e0 + e3, e1};
    CHECK(subspace_type(s, b) == SubspaceType::Degenerate);
  }
  {
    const std::vector<Vector> b{e0, 2.0 * e0};
    try {
      subspace_type(s, b);
      FAIL("expected DependentBasis");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DependentBasis);
    }
  }
}

TEST_CASE("membership and components") {
  for (int n = 1; n <= 5; ++n) {
    const QuadraticSpace s(n);
    const int d = n + 1;
    CHECK(classify_membership(s, Matrix::Identity(d, d)).component() == Component::SO_o);
    CHECK(classify_membership(s, s.form()).component() == Component::O_minus_swapping);
    Matrix m = Matrix::Identity(d, d);
    m(d - 1, d - 1) = -1.0;
    m(d - 2, d - 2) = -1.0;
    CHECK(classify_membership(s, m).component() == Component::SO_swap);
    m(d - 1, d - 1) = 1.0;
    CHECK(classify_membership(s, m).component() == Component::O_minus_preserving);
  }
  SUBCASE("rejections") {
    const QuadraticSpace s(2);
    Matrix m = Matrix::Identity(3, 3);
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(classify_membership(s, m), Error);
    try {
      classify_membership(s, Matrix::Identity(4, 4));
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
    try {
      classify_membership(s, m);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAnIsometry);
    }
  }
}

TEST_CASE("component labels multiply as a Klein four-group") {
  Rng rng(5);
  const int n = 3;
  const QuadraticSpace s(n);
  std::vector<Matrix> reps;
  Matrix flip_space = Matrix::Identity(n + 1, n + 1);
  flip_space(0, 0) = -1.0;
  reps = {Matrix::Identity(n + 1, n + 1), -Matrix::Identity(n + 1, n + 1), flip_space, s.form()};
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_lorentz(n, rng) * reps[trial % 4];
    const Matrix b = random_lorentz(n, rng) * reps[(trial / 4) % 4];
    const LorentzMatrix la = classify_membership(s, a), lb = classify_membership(s, b);
    const LorentzMatrix lab = classify_membership(s, a * b);
    CHECK(lab.component() == component_product(la.component(), lb.component()));
  }
}

TEST_CASE("isometries preserve Q and causal type") {
  Rng rng(9);
  std::normal_distribution<double> g;
  const int n = 4;
  const QuadraticSpace s(n);
  for (int trial = 0; trial < 50; ++trial) {
    const LorentzMatrix t = classify_membership(s, random_lorentz(n, rng));
    Vector v(n + 1);
    for (int i = 0; i <= n; ++i) v(i) = g(rng);
    const Vector tv = t.entries() * v;
    const double scale = std::max(1.0, inf_norm(t.entries()) * inf_norm(t.entries()));
    CHECK(std::abs(s.q_value(tv) - s.q_value(v)) <= 100 * kDefaultEps * scale * v.squaredNorm());
    if (std::abs(s.q_value(v)) > 0.1 * v.squaredNorm())
      CHECK(causal_type(s, tv) == causal_type(s, v));
    CHECK(inf_norm(t.inverse() * t.entries() - Matrix::Identity(n + 1, n + 1)) < 1e-10);
  }
}
