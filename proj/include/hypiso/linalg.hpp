#pragma once

// Small dense helpers shared by all modules. Everything here is Euclidean
// unless the name says otherwise; Lorentzian variants take the form matrix.

#include <Eigen/Dense>

namespace hypiso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

double inf_norm(const Matrix& m);
double spectral_norm(const Matrix& m);

/// Orthonormal basis (columns) of the numerical kernel: right singular
/// vectors whose singular value is <= threshold.
Matrix null_space(const Matrix& m, double threshold);

/// Orthonormal basis of the last `dim` right singular vectors, regardless of
/// their size. Used where the kernel dimension is known structurally.
Matrix smallest_right_singular(const Matrix& m, int dim);

/// Number of singular values > threshold.
int numerical_rank(const Matrix& m, double threshold);

/// Euclidean basis of {x : basis^T form x = 0}.
Matrix form_complement(const Matrix& form, const Matrix& basis);

/// Rebase the columns of `basis` so that basis^T form basis is diagonal with
/// entries +-1. Columns with positive norm come first, negative ones last.
/// Throws DependentBasis when the restricted form is singular.
Matrix form_orthonormalize(const Matrix& form, const Matrix& basis);

/// Block diagonal assembly of two square blocks.
Matrix block_diag(const Matrix& a, const Matrix& b);

/// 2x2 rotation by theta.
Matrix rotation2(double theta);

}  // namespace hypiso
