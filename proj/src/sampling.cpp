#include "hypiso/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "hypiso/errors.hpp"

namespace hypiso {

namespace {

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

}  // namespace

Matrix random_orthogonal(int n, Rng& rng) {
  if (n == 0) return Matrix(0, 0);
  const Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Matrix random_special_orthogonal(int n, Rng& rng) {
  Matrix q = random_orthogonal(n, rng);
  if (n > 0 && q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Matrix random_lorentz(int n, Rng& rng, double boost_scale) {
  const Matrix g = gaussian(n + 1, n + 1, rng);
  Matrix lie = Matrix::Zero(n + 1, n + 1);
  lie.topLeftCorner(n, n) = 0.5 * (g.topLeftCorner(n, n) - g.topLeftCorner(n, n).transpose());
  for (int i = 0; i < n; ++i) {
    lie(i, n) = boost_scale * g(n, i);
    lie(n, i) = boost_scale * g(n, i);
  }
  return lie.exp();
}

RotationAngles random_angles(int k, Rng& rng, const AngleOptions& opts) {
  RotationAngles out;
  if (k <= 0) return out;
  const bool with_pi = uniform(rng, 0.0, 1.0) < opts.pi_probability;
  const bool repeat = k >= 2 && uniform(rng, 0.0, 1.0) < opts.repeat_probability;
  const int free = k - (with_pi ? 1 : 0) - (repeat ? 1 : 0);
  std::vector<double> a;
  while (true) {
    a.clear();
    for (int i = 0; i < free; ++i) a.push_back(uniform(rng, opts.margin, std::numbers::pi - opts.margin));
    std::sort(a.begin(), a.end());
    bool ok = true;
    for (std::size_t i = 1; i < a.size(); ++i) ok = ok && a[i] - a[i - 1] >= opts.min_gap;
    if (ok) break;
  }
  if (repeat) {
    if (a.empty()) a.push_back(std::numbers::pi);
    else a.push_back(a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)]);
  }
  if (with_pi) a.push_back(std::numbers::pi);
  std::sort(a.begin(), a.end(), std::greater<>());
  out.angles = a;
  return out;
}

int max_rotation_count(FixedPointClass cls, int n) {
  switch (cls) {
    case FixedPointClass::Elliptic: return n / 2;
    case FixedPointClass::Hyperbolic: return std::max(0, (n - 1) / 2);
    case FixedPointClass::Parabolic: return std::max(0, (n - 2) / 2);
  }
  return 0;
}

LorentzSample random_isometry(FixedPointClass cls, int n, int k, Rng& rng, const AngleOptions& opts) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "n must be at least 1");
  if (cls == FixedPointClass::Parabolic && n < 2) throw Error(ErrorKind::OutOfRange, "parabolics need n >= 2");
  const int kmax = max_rotation_count(cls, n);
  if (k > kmax) throw Error(ErrorKind::OutOfRange, "too many rotation angles for this class");
  if (k < 0) k = std::uniform_int_distribution<int>(0, kmax)(rng);
  LorentzSample s;
  s.cls = cls;
  s.angles = random_angles(k, rng, opts);
  if (cls == FixedPointClass::Hyperbolic) s.stretch = std::exp(uniform(rng, 0.2, 1.5));
  const Matrix std_m = standard_matrix(cls, s.angles, s.stretch, n);
  const Matrix w = random_lorentz(n, rng);
  s.matrix = w * std_m * lorentz_inverse(w);
  return s;
}

Matrix random_rotation(int n, int k, Rng& rng, bool reflect, const AngleOptions& opts) {
  if (k < 0 || 2 * k + (reflect ? 1 : 0) > n) throw Error(ErrorKind::OutOfRange, "too many rotation angles");
  RotationAngles a = random_angles(k, rng, opts);
  a.reflection = reflect;
  const Matrix q = random_orthogonal(n, rng);
  return q * canonical_orthogonal(a, n) * q.transpose();
}

}  // namespace hypiso
