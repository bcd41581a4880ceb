#include "hypiso/linalg.hpp"

#include <cmath>
#include <vector>

#include "hypiso/errors.hpp"

namespace hypiso {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::AmbiguousComponent: return "AmbiguousComponent";
    case ErrorKind::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::Borderline: return "Borderline";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::NotInIdentityComponent: return "NotInIdentityComponent";
    case ErrorKind::NotSheetPreserving: return "NotSheetPreserving";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::InvalidArg: return "InvalidArg";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::AngleMultiplicity: return "AngleMultiplicity";
    case ErrorKind::NotConjugate: return "NotConjugate";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix null_space(const Matrix& m, double threshold) {
  const int cols = static_cast<int>(m.cols());
  if (cols == 0) return Matrix(0, 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Matrix smallest_right_singular(const Matrix& m, int dim) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

int numerical_rank(const Matrix& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return rank;
}

Matrix form_complement(const Matrix& form, const Matrix& basis) {
  const int d = static_cast<int>(form.rows());
  if (basis.cols() == 0) return Matrix::Identity(d, d);
  Matrix constraints = (form * basis).transpose();
  Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(d - basis.cols());
}

Matrix form_orthonormalize(const Matrix& form, const Matrix& basis) {
  if (basis.cols() == 0) return basis;
  Matrix gram = basis.transpose() * form * basis;
  gram = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const auto& values = es.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::vector<int> positive, negative;
  for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i) {
    if (std::abs(values(i)) <= 1e-12 * scale)
      throw Error(ErrorKind::DependentBasis, "restricted form is singular");
    (values(i) > 0 ? positive : negative).push_back(i);
  }
  Matrix out(basis.rows(), basis.cols());
  int col = 0;
  for (int i : positive) out.col(col++) = basis * es.eigenvectors().col(i) / std::sqrt(values(i));
  for (int i : negative) out.col(col++) = basis * es.eigenvectors().col(i) / std::sqrt(-values(i));
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace hypiso
