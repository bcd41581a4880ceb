#include "hypiso/quadspace.hpp"

#include <cmath>

#include "hypiso/errors.hpp"

namespace hypiso {

QuadraticSpace::QuadraticSpace(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArg, "spatial dimension must be positive");
  form_ = Matrix::Identity(n + 1, n + 1);
  form_(n, n) = -1.0;
}

double QuadraticSpace::q_value(const Vector& v) const { return bilinear(v, v); }

double QuadraticSpace::bilinear(const Vector& a, const Vector& b) const {
  if (a.size() != ambient() || b.size() != ambient())
    throw Error(ErrorKind::DimensionMismatch, "vector length must be n + 1");
  return a.head(n_).dot(b.head(n_)) - a(n_) * b(n_);
}

std::string_view to_string(CausalType t) {
  switch (t) {
    case CausalType::TimeLike: return "time-like";
    case CausalType::SpaceLike: return "space-like";
    case CausalType::LightLike: return "light-like";
  }
  return "?";
}

std::string_view to_string(SubspaceType t) {
  switch (t) {
    case SubspaceType::TimeLike: return "time-like";
    case SubspaceType::SpaceLike: return "space-like";
    case SubspaceType::LightLike: return "light-like";
    case SubspaceType::Degenerate: return "degenerate";
  }
  return "?";
}

CausalType causal_type(const QuadraticSpace& space, const Vector& v, double eps) {
  const double q = space.q_value(v);
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw Error(ErrorKind::ZeroVector, "causal type of the zero vector");
  if (q < -eps * norm2) return CausalType::TimeLike;
  if (q > eps * norm2) return CausalType::SpaceLike;
  return CausalType::LightLike;
}

SubspaceType subspace_type(const QuadraticSpace& space, std::span<const Vector> basis, double eps) {
  const int dim = static_cast<int>(basis.size());
  if (dim == 0) throw Error(ErrorKind::DependentBasis, "empty basis");
  Matrix b(space.ambient(), dim);
  for (int i = 0; i < dim; ++i) {
    if (basis[i].size() != space.ambient())
      throw Error(ErrorKind::DimensionMismatch, "basis vector length must be n + 1");
    b.col(i) = basis[i];
  }
  // Work in a Euclidean orthonormal basis of the span so eigenvalues of the
  // Gram matrix are comparable with eps.
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(dim - 1) <= eps * std::max(1.0, sv(0)))
    throw Error(ErrorKind::DependentBasis, "basis vectors are linearly dependent");
  const Matrix u = svd.matrixU();
  Matrix gram = u.transpose() * space.form() * u;
  gram = 0.5 * (gram + gram.transpose());
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(gram).eigenvalues();
  int pos = 0, neg = 0, zero = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > eps) ++pos;
    else if (ev(i) < -eps) ++neg;
    else ++zero;
  }
  if (zero == dim) return SubspaceType::LightLike;
  if (zero > 0) return SubspaceType::Degenerate;
  if (neg == 0) return SubspaceType::SpaceLike;
  return SubspaceType::TimeLike;
}

std::string_view to_string(Component c) {
  switch (c) {
    case Component::SO_o: return "SO_o";
    case Component::SO_swap: return "SO_swap";
    case Component::O_minus_preserving: return "O_minus_preserving";
    case Component::O_minus_swapping: return "O_minus_swapping";
  }
  return "?";
}

int det_sign(Component c) {
  return (c == Component::SO_o || c == Component::SO_swap) ? 1 : -1;
}

bool preserves_sheet(Component c) {
  return c == Component::SO_o || c == Component::O_minus_preserving;
}

Component make_component(int det, bool sheet) {
  if (det > 0) return sheet ? Component::SO_o : Component::SO_swap;
  return sheet ? Component::O_minus_preserving : Component::O_minus_swapping;
}

Component component_product(Component a, Component b) {
  return make_component(det_sign(a) * det_sign(b), preserves_sheet(a) == preserves_sheet(b));
}

Matrix LorentzMatrix::inverse() const { return lorentz_inverse(entries_); }

Matrix lorentz_inverse(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  Matrix out = m.transpose();
  // J X^t J flips the sign of the last row and last column (corner twice).
  out.row(d - 1) *= -1.0;
  out.col(d - 1) *= -1.0;
  return out;
}

double form_residual(const QuadraticSpace& space, const Matrix& m) {
  return inf_norm(m.transpose() * space.form() * m - space.form());
}

LorentzMatrix classify_membership(const QuadraticSpace& space, const Matrix& m, double eps) {
  if (m.rows() != space.ambient() || m.cols() != space.ambient())
    throw Error(ErrorKind::DimensionMismatch, "matrix must be (n+1)x(n+1)");
  if (!m.allFinite()) throw Error(ErrorKind::NotAnIsometry, "non-finite entries");
  const double scale = std::max(1.0, inf_norm(m) * inf_norm(m));
  const double residual = form_residual(space, m);
  if (residual > eps * scale)
    throw Error(ErrorKind::NotAnIsometry,
                "form residual " + std::to_string(residual) + " exceeds tolerance");
  const int n = space.n();
  const double corner = m(n, n);
  if (std::abs(corner) <= eps) throw Error(ErrorKind::AmbiguousComponent, "(T e_n)_n is zero");
  const double det = m.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-6)
    throw Error(ErrorKind::NotAnIsometry, "determinant is not +-1");
  return LorentzMatrix(m, make_component(det > 0 ? 1 : -1, corner > 0), eps);
}

LorentzMatrix classify_membership(const Matrix& m, double eps) {
  if (m.rows() < 2 || m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix must be square of size >= 2");
  return classify_membership(QuadraticSpace(static_cast<int>(m.rows()) - 1), m, eps);
}

}  // namespace hypiso
