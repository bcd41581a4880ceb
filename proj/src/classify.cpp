#include "hypiso/classify.hpp"

#include <algorithm>
#include <cmath>

#include "hypiso/errors.hpp"

namespace hypiso {

std::string_view to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::Elliptic: return "elliptic";
    case FixedPointClass::Parabolic: return "parabolic";
    case FixedPointClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

namespace models {

Vector half_space_to_ball(const Vector& point) {
  const int n = static_cast<int>(point.size()) - 1;
  const double t = point(n);
  if (!(t > 0)) throw Error(ErrorKind::InvalidArg, "half-space point needs t > 0");
  const Vector y = point.head(n);
  const double s = y.squaredNorm() + t * t;
  const double denom = y.squaredNorm() + (t + 1) * (t + 1);
  Vector q(n + 1);
  q.head(n) = 2.0 * y / denom;
  q(n) = (s - 1.0) / denom;
  return q;
}

Vector ball_to_half_space(const Vector& point) {
  // Inverse Cayley map: p = c + 2 R (q - e) / |q - e|^2 with c = -e and R the
  // reflection of the last coordinate.
  const int n = static_cast<int>(point.size()) - 1;
  Vector qe = point;
  qe(n) -= 1.0;
  const double norm2 = qe.squaredNorm();
  if (norm2 == 0.0) throw Error(ErrorKind::InvalidArg, "ball point maps to infinity");
  Vector p = 2.0 * qe / norm2;
  p(n) = -p(n) - 1.0;
  return p;
}

Vector ball_to_hyperboloid(const Vector& point) {
  const double r2 = point.squaredNorm();
  if (!(r2 < 1.0)) throw Error(ErrorKind::InvalidArg, "point outside the unit ball");
  Vector x(point.size() + 1);
  x.head(point.size()) = 2.0 * point / (1.0 - r2);
  x(point.size()) = (1.0 + r2) / (1.0 - r2);
  return x;
}

Vector hyperboloid_to_ball(const Vector& point) {
  const int last = static_cast<int>(point.size()) - 1;
  return point.head(last) / (1.0 + point(last));
}

Vector half_space_to_hyperboloid(const Vector& point) {
  return ball_to_hyperboloid(half_space_to_ball(point));
}

Vector hyperboloid_to_half_space(const Vector& point) {
  return ball_to_half_space(hyperboloid_to_ball(point));
}

Vector boundary_to_null_ray(const Vector& y) {
  const int n = static_cast<int>(y.size());
  const double y2 = y.squaredNorm();
  Vector v(n + 2);
  v.head(n) = 2.0 * y;
  v(n) = y2 - 1.0;
  v(n + 1) = y2 + 1.0;
  return v / (y2 + 1.0);
}

Vector infinity_ray(int n) {
  Vector v = Vector::Zero(n + 2);
  v(n) = 1.0;
  v(n + 1) = 1.0;
  return v;
}

Vector origin_ray(int n) {
  Vector v = Vector::Zero(n + 2);
  v(n) = -1.0;
  v(n + 1) = 1.0;
  return v;
}

Vector normalize_ray(const Vector& v) {
  const double t = v(v.size() - 1);
  if (t == 0.0) throw Error(ErrorKind::ZeroVector, "null ray with zero time coordinate");
  return v / t;
}

std::optional<Vector> null_ray_to_boundary(const Vector& ray, double tol) {
  const Vector v = normalize_ray(ray);
  const int n = static_cast<int>(v.size()) - 2;
  const double u = v(n + 1) - v(n);
  if (std::abs(u) <= tol) return std::nullopt;
  return Vector(v.head(n) / u);
}

}  // namespace models

Vector BoundaryMap::apply_half_space(const Vector& point) const {
  const int n = static_cast<int>(point.size()) - 1;
  Vector out(n + 1);
  out.head(n) = apply(point.head(n));
  out(n) = r * point(n);
  return out;
}

PoincareExtension poincare_extend(double r, const Matrix& a, const Vector& b) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "A must be n x n and b of length n");
  if (!(r > 0)) throw Error(ErrorKind::NonpositiveScale, "stretch must be positive");
  if (inf_norm(a.transpose() * a - Matrix::Identity(n, n)) > 1e-9)
    throw Error(ErrorKind::NotOrthogonal, "A is not orthogonal");

  // Light-cone coordinates (z, u, w) with u = x_{n+1} - x_n, w = x_{n+1} + x_n
  // and Q = |z|^2 - u w. A boundary point y is the ray (y, 1, |y|^2).
  const int d = n + 2;
  Matrix lc = Matrix::Zero(d, d);
  lc.topLeftCorner(n, n) = a;
  lc.block(0, n, n, 1) = b / r;
  lc(n, n) = 1.0 / r;
  lc.block(n + 1, 0, 1, n) = 2.0 * (b.transpose() * a);
  lc(n + 1, n) = b.squaredNorm() / r;
  lc(n + 1, n + 1) = r;

  Matrix to_lc = Matrix::Identity(d, d);
  to_lc(n, n) = -1.0;
  to_lc(n, n + 1) = 1.0;
  to_lc(n + 1, n) = 1.0;
  to_lc(n + 1, n + 1) = 1.0;
  Matrix from_lc = Matrix::Identity(d, d);
  from_lc(n, n) = -0.5;
  from_lc(n, n + 1) = 0.5;
  from_lc(n + 1, n) = 0.5;
  from_lc(n + 1, n + 1) = 0.5;

  const Matrix m = from_lc * lc * to_lc;
  return {BoundaryMap{r, a, b}, classify_membership(QuadraticSpace(n + 1), m)};
}

PoincareExtension poincare_extend(const BoundaryMap& f) { return poincare_extend(f.r, f.a, f.b); }

namespace {

struct Context {
  const Matrix& t;
  QuadraticSpace space;
  double delta;
  double threshold;
};

void require_sheet_preserving(const LorentzMatrix& t) {
  if (!t.sheet_preserving())
    throw Error(ErrorKind::NotSheetPreserving, "isometry swaps the sheets of the hyperboloid");
}

Matrix polar(const Matrix& a) {
  if (a.size() == 0) return a;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Fills columns [0, dim) of frame from a Q-orthonormal space-like basis.
void fill_orthogonal_part(const Context& ctx, const Matrix& basis, StandardFrame& out) {
  const int dim = static_cast<int>(basis.cols());
  out.orthogonal_offset = 0;
  out.orthogonal_dim = dim;
  if (dim == 0) return;
  const Matrix& form = ctx.space.form();
  const Matrix a = polar(basis.transpose() * form * ctx.t * basis);
  const OrthogonalSplitting split = split_orthogonal(a, ctx.delta);
  out.angles = split.angles();
  const Matrix local = split.basis();
  out.frame.leftCols(dim) = basis * local;
  int col = 0;
  for (const auto& p : split.planes) {
    if (p.angle == std::numbers::pi) out.flippable.push_back(col + 1);
    col += 2;
  }
  for (int i = col; i < dim; ++i) out.flippable.push_back(i);
}

Vector future(Vector v, int time_index) {
  if (v(time_index) < 0) v = -v;
  return v;
}

struct KernelInfo {
  Matrix kernel;
  int dim1 = 0;
  int dim2 = 0;
};

KernelInfo kernel_info(const Context& ctx) {
  const int d = static_cast<int>(ctx.t.rows());
  const Matrix n1 = ctx.t - Matrix::Identity(d, d);
  const Matrix n2 = n1 * n1;
  const double scale1 = std::max(1.0, spectral_norm(n1));
  Eigen::JacobiSVD<Matrix> svd1(n1, Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> svd2(n2);
  const double thr1 = ctx.delta * std::max(1.0, spectral_norm(ctx.t));
  const double thr2 = ctx.delta * scale1 * scale1;
  KernelInfo info;
  for (int i = 0; i < d; ++i) {
    const double s1 = svd1.singularValues()(i), s2 = svd2.singularValues()(i);
    if (s1 <= thr1) ++info.dim1;
    else if (s1 <= 100 * thr1) throw Error(ErrorKind::Borderline, "T - I is nearly rank deficient");
    if (s2 <= thr2) ++info.dim2;
    else if (s2 <= 10 * thr2) throw Error(ErrorKind::Borderline, "(T - I)^2 is nearly rank deficient");
  }
  info.kernel = svd1.matrixV().rightCols(info.dim1);
  return info;
}

FixedPointClass decide_class(const Context& ctx, const KernelInfo& info) {
  if (info.dim2 > info.dim1) return FixedPointClass::Parabolic;
  if (info.dim1 > 0) {
    Matrix gram = info.kernel.transpose() * ctx.space.form() * info.kernel;
    gram = 0.5 * (gram + gram.transpose());
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(gram).eigenvalues();
    if (ev(0) < -ctx.delta) return FixedPointClass::Elliptic;
    if (ev(0) < ctx.delta)
      throw Error(ErrorKind::Borderline, "fixed subspace is nearly light-like but T is semisimple");
  }
  const Eigen::VectorXcd values = Eigen::EigenSolver<Matrix>(ctx.t, false).eigenvalues();
  double radius = 0.0;
  for (int i = 0; i < values.size(); ++i) radius = std::max(radius, std::abs(values(i)));
  if (radius <= 1.0 + ctx.delta)
    throw Error(ErrorKind::Borderline, "no elliptic fixed point and no eigenvalue off the unit circle");
  return FixedPointClass::Hyperbolic;
}

void elliptic_frame(const Context& ctx, const KernelInfo& info, StandardFrame& out) {
  const int n = ctx.space.n();
  const Matrix& form = ctx.space.form();
  const Matrix ker = form_orthonormalize(form, info.kernel);
  const Vector v = future(ker.col(ker.cols() - 1), n);
  const Matrix spatial = form_orthonormalize(form, form_complement(form, v));
  out.frame = Matrix(n + 1, n + 1);
  fill_orthogonal_part(ctx, spatial, out);
  out.frame.col(n) = v;
  out.standard = standard_matrix(FixedPointClass::Elliptic, out.angles, 1.0, n);
}

void hyperbolic_frame(const Context& ctx, StandardFrame& out) {
  const int n = ctx.space.n();
  const int d = n + 1;
  const Matrix& form = ctx.space.form();
  const Eigen::VectorXcd values = Eigen::EigenSolver<Matrix>(ctx.t, false).eigenvalues();
  double r = 0.0;
  for (int i = 0; i < values.size(); ++i)
    if (std::abs(values(i).imag()) <= ctx.delta * std::abs(values(i)))
      r = std::max(r, values(i).real());
  if (!(r > 1.0 + ctx.delta)) throw Error(ErrorKind::Borderline, "no real eigenvalue above one");

  const Matrix id = Matrix::Identity(d, d);
  Vector p_inf = future(smallest_right_singular(ctx.t - r * id, 1).col(0), n);
  Vector p_zero = future(smallest_right_singular(ctx.t - (1.0 / r) * id, 1).col(0), n);
  const double pair = ctx.space.bilinear(p_inf, p_zero);
  if (!(pair < 0)) throw Error(ErrorKind::Borderline, "eigen-rays of the stretch are not independent");
  const double scale = std::sqrt(-2.0 / pair);
  p_inf *= scale;
  p_zero *= scale;

  Matrix rays(d, 2);
  rays.col(0) = p_inf;
  rays.col(1) = p_zero;
  const Matrix spatial = form_orthonormalize(form, form_complement(form, rays));
  out.frame = Matrix(d, d);
  fill_orthogonal_part(ctx, spatial, out);
  out.frame.col(n - 1) = 0.5 * (p_inf - p_zero);
  out.frame.col(n) = 0.5 * (p_inf + p_zero);
  out.stretch = r;
  out.standard = standard_matrix(FixedPointClass::Hyperbolic, out.angles, r, n);
}

void parabolic_frame(const Context& ctx, const KernelInfo& info, StandardFrame& out) {
  const int n = ctx.space.n();
  const int d = n + 1;
  const Matrix& form = ctx.space.form();
  if (n < 2) throw Error(ErrorKind::InvalidArg, "no parabolics in dimension one");

  // ker(T - I) = <p> + F with p the radical of Q restricted to the kernel.
  Matrix gram = info.kernel.transpose() * form * info.kernel;
  gram = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  int radical = 0;
  for (int i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(radical))) radical = i;
  Matrix fixed(d, info.dim1 - 1);
  for (int i = 0, c = 0; i < info.dim1; ++i) {
    if (i == radical) continue;
    if (!(es.eigenvalues()(i) > ctx.delta))
      throw Error(ErrorKind::Borderline, "parabolic kernel has a second non-positive direction");
    fixed.col(c++) = info.kernel * es.eigenvectors().col(i);
  }

  // Inside M = F^perp the eigenvalue 1 carries a single 3x3 Jordan block U.
  const Matrix m_basis = form_complement(form, fixed);
  const Matrix t_m = m_basis.transpose() * ctx.t * m_basis;
  const Matrix n_m = t_m - Matrix::Identity(t_m.rows(), t_m.cols());
  const Matrix u_basis = m_basis * smallest_right_singular(n_m * n_m * n_m, 3);
  const Matrix t_u = u_basis.transpose() * ctx.t * u_basis;
  const Matrix n_u = t_u - Matrix::Identity(3, 3);
  const Matrix log_u = n_u - 0.5 * n_u * n_u;

  // Chain x, Lx, L^2 x for the nilpotent logarithm L, which is Q-skew.
  Eigen::JacobiSVD<Matrix> svd(log_u * log_u, Eigen::ComputeFullV);
  Vector x = u_basis * svd.matrixV().col(0);
  Vector y = u_basis * (log_u * svd.matrixV().col(0));
  Vector z = u_basis * (log_u * log_u * svd.matrixV().col(0));
  if (z(n) < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
  const double qyy = ctx.space.q_value(y);
  const double qxz = ctx.space.bilinear(x, z);
  if (!(qyy > 0) || qxz == 0.0) throw Error(ErrorKind::Borderline, "degenerate unipotent chain");
  const double a = 1.0 / std::sqrt(qyy);
  const double c = -a * ctx.space.q_value(x) / (2.0 * qxz);
  const Vector origin = a * x + c * z;
  const Vector translation = a * y;
  const Vector infinity = 0.5 * a * z;

  const Matrix spatial = form_orthonormalize(form, form_complement(form, u_basis));
  out.frame = Matrix(d, d);
  fill_orthogonal_part(ctx, spatial, out);
  out.frame.col(n - 2) = translation;
  out.frame.col(n - 1) = infinity - origin;
  out.frame.col(n) = infinity + origin;
  out.standard = standard_matrix(FixedPointClass::Parabolic, out.angles, 1.0, n);
}

}  // namespace

Matrix standard_matrix(FixedPointClass cls, const RotationAngles& angles, double stretch, int n) {
  switch (cls) {
    case FixedPointClass::Elliptic:
      return block_diag(canonical_orthogonal(angles, n), Matrix::Identity(1, 1));
    case FixedPointClass::Hyperbolic: {
      const Matrix a = canonical_orthogonal(angles, n - 1);
      return poincare_extend(stretch, a, Vector::Zero(n - 1)).lorentz.entries();
    }
    case FixedPointClass::Parabolic: {
      const Matrix a = block_diag(canonical_orthogonal(angles, n - 2), Matrix::Identity(1, 1));
      Vector b = Vector::Zero(n - 1);
      b(n - 2) = 1.0;
      return poincare_extend(1.0, a, b).lorentz.entries();
    }
  }
  throw Error(ErrorKind::InvalidArg, "unknown class");
}

FixedPointClass fixed_point_class(const LorentzMatrix& t, const Tolerances& tol) {
  require_sheet_preserving(t);
  const Context ctx{t.entries(), t.space(), tol.delta,
                    tol.delta * std::max(1.0, spectral_norm(t.entries()))};
  return decide_class(ctx, kernel_info(ctx));
}

StandardFrame standard_frame(const LorentzMatrix& t, const Tolerances& tol) {
  require_sheet_preserving(t);
  const Context ctx{t.entries(), t.space(), tol.delta,
                    tol.delta * std::max(1.0, spectral_norm(t.entries()))};
  const KernelInfo info = kernel_info(ctx);
  StandardFrame out;
  out.cls = decide_class(ctx, info);
  switch (out.cls) {
    case FixedPointClass::Elliptic: elliptic_frame(ctx, info, out); break;
    case FixedPointClass::Hyperbolic: hyperbolic_frame(ctx, out); break;
    case FixedPointClass::Parabolic: parabolic_frame(ctx, info, out); break;
  }
  return out;
}

RotationAngles rotation_angles(const LorentzMatrix& t, double delta) {
  Tolerances tol;
  tol.delta = delta;
  return standard_frame(t, tol).angles;
}

ClassificationReport classify(const LorentzMatrix& t, const Tolerances& tol) {
  const StandardFrame sf = standard_frame(t, tol);
  const int n = t.n();
  ClassificationReport report;
  report.cls = sf.cls;
  report.angles = sf.angles;
  report.regular = is_regular(sf.angles, tol.delta);
  switch (sf.cls) {
    case FixedPointClass::Hyperbolic: {
      report.stretch = sf.stretch;
      Vector a = models::normalize_ray(sf.frame.col(n) + sf.frame.col(n - 1));
      Vector b = models::normalize_ray(sf.frame.col(n) - sf.frame.col(n - 1));
      if (std::lexicographical_compare(b.data(), b.data() + b.size(), a.data(), a.data() + a.size()))
        std::swap(a, b);
      report.fixed_data.value = FixedPointData::HyperbolicPair{a, b};
      break;
    }
    case FixedPointClass::Parabolic:
      report.fixed_data.value =
          FixedPointData::ParabolicPoint{models::normalize_ray(sf.frame.col(n) + sf.frame.col(n - 1))};
      break;
    case FixedPointClass::Elliptic: {
      const int fixed_dims = static_cast<int>(sf.orthogonal_dim - 2 * sf.angles.k() -
                                              (sf.angles.reflection ? 1 : 0));
      if (fixed_dims == 0) {
        report.fixed_data.value = FixedPointData::EllipticPoint{sf.frame.col(n)};
      } else {
        Matrix ker(n + 1, fixed_dims + 1);
        ker.leftCols(fixed_dims) = sf.frame.middleCols(sf.orthogonal_dim - fixed_dims, fixed_dims);
        ker.col(fixed_dims) = sf.frame.col(n);
        Eigen::HouseholderQR<Matrix> qr(ker);
        const Matrix q = qr.householderQ() * Matrix::Identity(n + 1, fixed_dims + 1);
        report.fixed_data.value = FixedPointData::EllipticSphere{q, fixed_dims - 1};
      }
      break;
    }
  }
  return report;
}

double stretch_factor(const LorentzMatrix& t, const Tolerances& tol) {
  const StandardFrame sf = standard_frame(t, tol);
  if (sf.cls != FixedPointClass::Hyperbolic)
    throw Error(ErrorKind::NotHyperbolic, "stretch factor is defined for hyperbolics only");
  return sf.stretch;
}

FixedPointData boundary_fixed_points(const LorentzMatrix& t, const Tolerances& tol) {
  return classify(t, tol).fixed_data;
}

NormalForm normal_form(const LorentzMatrix& t, const Tolerances& tol) {
  StandardFrame sf = standard_frame(t, tol);
  const int n = t.n();
  if (sf.frame.determinant() < 0 && !sf.flippable.empty()) sf.frame.col(sf.flippable.front()) *= -1.0;
  const Matrix w = lorentz_inverse(sf.frame);
  LorentzMatrix conj = classify_membership(t.space(), w, std::max(tol.eps, 1e-8));

  NormalForm::KRotation rot;
  switch (sf.cls) {
    case FixedPointClass::Elliptic:
      rot.angles = sf.angles;
      rot.rotation = canonical_orthogonal(sf.angles, n);
      return {rot, conj, sf.standard};
    case FixedPointClass::Parabolic: {
      NormalForm::KRotatoryTranslation tr;
      tr.a = block_diag(canonical_orthogonal(sf.angles, n - 2), Matrix::Identity(1, 1));
      tr.b = Vector::Zero(n - 1);
      tr.b(n - 2) = 1.0;
      return {tr, conj, sf.standard};
    }
    case FixedPointClass::Hyperbolic: {
      NormalForm::KRotatoryStretch st;
      st.r = sf.stretch;
      st.a = canonical_orthogonal(sf.angles, n - 1);
      return {st, conj, sf.standard};
    }
  }
  throw Error(ErrorKind::InvalidArg, "unknown class");
}

Matrix reconstruct(const NormalForm& nf) {
  const Matrix& w = nf.conjugator.entries();
  Matrix standard;
  if (const auto* rot = std::get_if<NormalForm::KRotation>(&nf.boundary)) {
    standard = block_diag(rot->rotation, Matrix::Identity(1, 1));
  } else if (const auto* tr = std::get_if<NormalForm::KRotatoryTranslation>(&nf.boundary)) {
    standard = poincare_extend(1.0, tr->a, tr->b).lorentz.entries();
  } else {
    const auto& st = std::get<NormalForm::KRotatoryStretch>(nf.boundary);
    standard = poincare_extend(st.r, st.a, Vector::Zero(st.a.rows())).lorentz.entries();
  }
  return lorentz_inverse(w) * standard * w;
}

}  // namespace hypiso
