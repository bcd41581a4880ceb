#pragma once

// Lorentzian linear algebra on R^{n+1} with Q(x) = x_0^2 + ... + x_{n-1}^2 - x_n^2.
// The time coordinate is always the last one.

#include <span>
#include <string_view>
#include <vector>

#include "hypiso/linalg.hpp"

namespace hypiso {

inline constexpr double kDefaultEps = 1e-9;

class QuadraticSpace {
 public:
  /// n is the spatial dimension; vectors have n + 1 coordinates.
  explicit QuadraticSpace(int n);

  int n() const noexcept { return n_; }
  int ambient() const noexcept { return n_ + 1; }

  /// diag(1, ..., 1, -1)
  const Matrix& form() const noexcept { return form_; }

  double q_value(const Vector& v) const;
  double bilinear(const Vector& a, const Vector& b) const;

 private:
  int n_;
  Matrix form_;
};

enum class CausalType { TimeLike, SpaceLike, LightLike };
enum class SubspaceType { TimeLike, SpaceLike, LightLike, Degenerate };

std::string_view to_string(CausalType t);
std::string_view to_string(SubspaceType t);

/// Relative test: |Q(v)| <= eps * |v|^2 is light-like. Throws ZeroVector.
CausalType causal_type(const QuadraticSpace& space, const Vector& v, double eps = kDefaultEps);

/// Classifies span(basis) by the signature of the restricted Gram matrix.
SubspaceType subspace_type(const QuadraticSpace& space, std::span<const Vector> basis,
                           double eps = kDefaultEps);

/// The four components of O(n,1), labelled by (sign det, sign of (T e_n)_n).
enum class Component { SO_o, SO_swap, O_minus_preserving, O_minus_swapping };

std::string_view to_string(Component c);
int det_sign(Component c);
bool preserves_sheet(Component c);
Component make_component(int det_sign, bool preserves_sheet);
/// Klein four-group product of component labels.
Component component_product(Component a, Component b);

/// A matrix validated to lie in O(n,1) together with its component label.
/// Only classify_membership constructs these.
class LorentzMatrix {
 public:
  const Matrix& entries() const noexcept { return entries_; }
  Component component() const noexcept { return component_; }
  double tolerance() const noexcept { return tolerance_; }
  int n() const noexcept { return static_cast<int>(entries_.rows()) - 1; }
  QuadraticSpace space() const { return QuadraticSpace(n()); }

  bool sheet_preserving() const noexcept { return preserves_sheet(component_); }

  /// J T^t J, the exact inverse for members of O(n,1).
  Matrix inverse() const;

 private:
  friend LorentzMatrix classify_membership(const QuadraticSpace&, const Matrix&, double);
  LorentzMatrix(Matrix m, Component c, double tol)
      : entries_(std::move(m)), component_(c), tolerance_(tol) {}

  Matrix entries_;
  Component component_;
  double tolerance_;
};

/// Validates |M^t J M - J|_inf <= eps * max(1, |M|_inf^2) and labels the
/// component. Throws DimensionMismatch, NotAnIsometry or AmbiguousComponent.
LorentzMatrix classify_membership(const QuadraticSpace& space, const Matrix& m,
                                  double eps = kDefaultEps);

/// Convenience overload inferring n from the matrix size.
LorentzMatrix classify_membership(const Matrix& m, double eps = kDefaultEps);

/// J X^t J for any square matrix of the right size.
Matrix lorentz_inverse(const Matrix& m);

/// Form residual |M^t J M - J|_inf.
double form_residual(const QuadraticSpace& space, const Matrix& m);

}  // namespace hypiso
