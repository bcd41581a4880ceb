#include "hypiso/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypiso/errors.hpp"

namespace hypiso {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::vector<int>> single_linkage(const CVector& values, double radius) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) < radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

std::vector<EigenCluster> clusters_at(const Matrix& m, double radius, double delta,
                                      bool check_ambiguity) {
  const int d = static_cast<int>(m.rows());
  if (d == 0) return {};
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArg, "non-finite matrix");
  Eigen::EigenSolver<Matrix> es(m, false);
  const CVector values = es.eigenvalues();
  auto groups = single_linkage(values, radius);
  if (check_ambiguity) {
    for (size_t a = 0; a < groups.size(); ++a)
      for (size_t b = a + 1; b < groups.size(); ++b)
        for (int i : groups[a])
          for (int j : groups[b]) {
            const double dist = std::abs(values(i) - values(j));
            if (dist >= delta && dist < 2 * delta)
              throw Error(ErrorKind::ClusterAmbiguity, "eigenvalue clusters too close; refine delta");
          }
  }
  const double threshold = delta * std::max(1.0, spectral_norm(m));
  const CMatrix mc = m.cast<std::complex<double>>();
  std::vector<EigenCluster> out;
  for (const auto& g : groups) {
    std::complex<double> mean = 0.0;
    for (int i : g) mean += values(i);
    mean /= static_cast<double>(g.size());
    if (std::abs(mean.imag()) < radius) mean.imag(0.0);
    CMatrix shifted = mc - mean * CMatrix::Identity(d, d);
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > threshold) ++rank;
    out.push_back({mean, static_cast<int>(g.size()), d - rank});
  }
  std::sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

// Deterministic frame for an invariant plane: u is the normalized projection of
// the standard basis vector with the largest projection, v completes the
// rotation so that A u = cos t u + sin t v.
Plane canonical_plane(const Matrix& a, const Matrix& span, double angle) {
  const Matrix p = span * span.transpose();
  int best = 0;
  for (int j = 1; j < p.cols(); ++j)
    if (p(j, j) > p(best, best) + 1e-12) best = j;
  Vector u = p.col(best).normalized();
  Vector v;
  if (angle < kPi) {
    v = (a * u - std::cos(angle) * u) / std::sin(angle);
    v -= u.dot(v) * u;
    v.normalize();
  } else {
    // -I on the plane: any orthonormal completion works; fix its sign.
    Vector w = span.col(0) - u.dot(span.col(0)) * u;
    if (w.norm() < 0.5) w = span.col(1) - u.dot(span.col(1)) * u;
    v = w.normalized();
    Eigen::Index idx;
    v.cwiseAbs().maxCoeff(&idx);
    if (v(idx) < 0) v = -v;
  }
  Plane out;
  out.frame.resize(a.rows(), 2);
  out.frame.col(0) = u;
  out.frame.col(1) = v;
  out.angle = angle;
  return out;
}

void check_orthogonal(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  if (!a.allFinite()) throw Error(ErrorKind::NotOrthogonal, "non-finite entries");
  const double residual = inf_norm(a.transpose() * a - Matrix::Identity(a.rows(), a.cols()));
  if (residual > 1e-8) throw Error(ErrorKind::NotOrthogonal, "A^t A differs from I");
}

}  // namespace

EigenStructure eigen_structure(const Matrix& m, double delta) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  return {clusters_at(m, delta, delta, true)};
}

bool is_semisimple(const Matrix& m, double delta) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  for (const auto& c : clusters_at(m, std::sqrt(delta), delta, false))
    if (c.geometric != c.algebraic) return false;
  return true;
}

bool RotationAngles::has_pi() const noexcept {
  return std::any_of(angles.begin(), angles.end(), [](double t) { return t == kPi; });
}

std::vector<double> PlaneDecomposition::angles() const {
  std::vector<double> out;
  for (const auto& p : planes) out.push_back(p.angle);
  return out;
}

RotationAngles OrthogonalSplitting::angles() const {
  RotationAngles out;
  for (const auto& p : planes) out.angles.push_back(p.angle);
  out.reflection = minus_axis.cols() > 0;
  return out;
}

Matrix OrthogonalSplitting::basis() const {
  const int d = dim();
  Matrix b(d, d);
  int col = 0;
  for (const auto& p : planes) {
    b.middleCols(col, 2) = p.frame;
    col += 2;
  }
  if (minus_axis.cols() > 0) b.col(col++) = minus_axis.col(0);
  if (fixed.cols() > 0) b.rightCols(fixed.cols()) = fixed;
  return b;
}

Matrix OrthogonalSplitting::canonical_block() const { return canonical_orthogonal(angles(), dim()); }

Matrix canonical_orthogonal(const RotationAngles& angles, int dim) {
  Matrix out = Matrix::Identity(dim, dim);
  int col = 0;
  for (double t : angles.angles) {
    if (col + 2 > dim) throw Error(ErrorKind::InvalidArg, "too many angles for dimension");
    out.block(col, col, 2, 2) = rotation2(t);
    col += 2;
  }
  if (angles.reflection) {
    if (col >= dim) throw Error(ErrorKind::InvalidArg, "no room for reflection axis");
    out(col, col) = -1.0;
  }
  return out;
}

OrthogonalSplitting split_orthogonal(const Matrix& a, double delta) {
  check_orthogonal(a);
  const int d = static_cast<int>(a.rows());
  OrthogonalSplitting out;
  out.fixed = Matrix(d, 0);
  out.minus_axis = Matrix(d, 0);
  if (d == 0) return out;

  Eigen::RealSchur<Matrix> schur(a);
  const Matrix& s = schur.matrixT();
  const Matrix& u = schur.matrixU();

  std::vector<int> plus_cols, minus_cols;
  std::vector<std::pair<Matrix, double>> rotations;
  for (int i = 0; i < d;) {
    if (i + 1 < d && s(i + 1, i) != 0.0) {
      const double c = 0.5 * (s(i, i) + s(i + 1, i + 1));
      const double det = s(i, i) * s(i + 1, i + 1) - s(i, i + 1) * s(i + 1, i);
      const double t = std::atan2(std::sqrt(std::max(0.0, det - c * c)), c);
      if ((t >= delta && t < 2 * delta) || (t > kPi - 2 * delta && t <= kPi - delta))
        throw Error(ErrorKind::ClusterAmbiguity, "rotation angle too close to 0 or pi");
      if (t < delta) {
        plus_cols.push_back(i);
        plus_cols.push_back(i + 1);
      } else if (t > kPi - delta) {
        minus_cols.push_back(i);
        minus_cols.push_back(i + 1);
      } else {
        rotations.emplace_back(u.middleCols(i, 2), t);
      }
      i += 2;
    } else {
      (s(i, i) > 0 ? plus_cols : minus_cols).push_back(i);
      i += 1;
    }
  }

  for (const auto& [span, t] : rotations) out.planes.push_back(canonical_plane(a, span, t));
  for (size_t i = 0; i + 1 < minus_cols.size(); i += 2) {
    Matrix span(d, 2);
    span.col(0) = u.col(minus_cols[i]);
    span.col(1) = u.col(minus_cols[i + 1]);
    out.planes.push_back(canonical_plane(a, span, kPi));
  }
  if (minus_cols.size() % 2 == 1) {
    out.minus_axis = Matrix(d, 1);
    Vector axis = u.col(minus_cols.back());
    Eigen::Index idx;
    axis.cwiseAbs().maxCoeff(&idx);
    out.minus_axis.col(0) = axis(idx) < 0 ? Vector(-axis) : axis;
  }
  out.fixed = Matrix(d, plus_cols.size());
  for (size_t i = 0; i < plus_cols.size(); ++i) out.fixed.col(i) = u.col(plus_cols[i]);

  std::sort(out.planes.begin(), out.planes.end(), [delta](const Plane& x, const Plane& y) {
    if (std::abs(x.angle - y.angle) > delta) return x.angle > y.angle;
    const Vector a0 = x.frame.col(0), b0 = y.frame.col(0);
    return std::lexicographical_compare(a0.data(), a0.data() + a0.size(), b0.data(),
                                        b0.data() + b0.size());
  });
  for (size_t i = 0; i + 1 < out.planes.size(); ++i) {
    const double gap = out.planes[i].angle - out.planes[i + 1].angle;
    if (gap >= delta && gap < 2 * delta)
      throw Error(ErrorKind::ClusterAmbiguity, "rotation angles too close; refine delta");
  }
  return out;
}

RotationAngles rotation_angles(const Matrix& orthogonal, double delta) {
  return split_orthogonal(orthogonal, delta).angles();
}

bool is_regular(const RotationAngles& angles, double delta) {
  for (size_t i = 0; i + 1 < angles.angles.size(); ++i)
    if (std::abs(angles.angles[i] - angles.angles[i + 1]) <= delta) return false;
  return true;
}

bool is_regular(const Matrix& orthogonal, double delta) {
  return is_regular(rotation_angles(orthogonal, delta), delta);
}

PlaneDecomposition plane_decomposition(const Matrix& orthogonal, double delta) {
  auto split = split_orthogonal(orthogonal, delta);
  if (!is_regular(split.angles(), delta))
    throw Error(ErrorKind::NotRegular, "repeated rotation angle: invariant planes are not unique");
  PlaneDecomposition out;
  out.planes = std::move(split.planes);
  out.fixed_subspace = std::move(split.fixed);
  if (split.minus_axis.cols() > 0) out.reflection_axis = Vector(split.minus_axis.col(0));
  return out;
}

Matrix reconstruct(const PlaneDecomposition& d) {
  const int dim = static_cast<int>(d.fixed_subspace.rows());
  Matrix out = d.fixed_subspace * d.fixed_subspace.transpose();
  for (const auto& p : d.planes) out += p.frame * rotation2(p.angle) * p.frame.transpose();
  if (d.reflection_axis) out -= (*d.reflection_axis) * d.reflection_axis->transpose();
  (void)dim;
  return out;
}

Matrix projector(const Matrix& frame) {
  if (frame.cols() == 0) return Matrix::Zero(frame.rows(), frame.rows());
  Eigen::HouseholderQR<Matrix> qr(frame);
  const Matrix q = qr.householderQ() * Matrix::Identity(frame.rows(), frame.cols());
  return q * q.transpose();
}

bool same_subspace(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return inf_norm(projector(a) - projector(b)) <= tol;
}

}  // namespace hypiso
