#include "hypiso/conjugacy.hpp"

#include <cmath>

#include "hypiso/errors.hpp"

namespace hypiso {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::ConjugateInMo: return "ConjugateInMo";
    case Relation::ConjugateInMOnly: return "ConjugateInMOnly";
    case Relation::NotConjugate: return "NotConjugate";
    case Relation::Undecided: return "Undecided";
  }
  return "?";
}

bool same_tuple(const InvariantTuple& a, const InvariantTuple& b, double tol) {
  if (a.cls != b.cls || a.k != b.k || a.angles.reflection != b.angles.reflection) return false;
  if (a.angles.angles.size() != b.angles.angles.size()) return false;
  for (std::size_t i = 0; i < a.angles.angles.size(); ++i)
    if (std::abs(a.angles.angles[i] - b.angles.angles[i]) > tol) return false;
  if (a.stretch.has_value() != b.stretch.has_value()) return false;
  if (a.stretch && std::abs(*a.stretch - *b.stretch) > tol * std::max(1.0, *a.stretch)) return false;
  return true;
}

InvariantTuple invariant_tuple(const LorentzMatrix& t, const Tolerances& tol) {
  const ClassificationReport r = classify(t, tol);
  return {r.cls, r.angles, r.k(), r.stretch};
}

namespace {

constexpr double kPolyTol = 1e-7;

// Real characteristic polynomial coefficients from the computed spectrum.
Vector char_poly(const Matrix& m) {
  const CVector ev = Eigen::EigenSolver<Matrix>(m, false).eigenvalues();
  std::vector<std::complex<double>> c{1.0};
  for (int i = 0; i < ev.size(); ++i) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= ev(i) * c[j];
    }
    c = std::move(next);
  }
  Vector out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out(j) = c[j].real();
  return out;
}

bool same_char_poly(const Matrix& a, const Matrix& b) {
  const Vector pa = char_poly(a), pb = char_poly(b);
  for (int i = 0; i < pa.size(); ++i) {
    const double scale = std::max({1.0, std::abs(pa(i)), std::abs(pb(i))});
    if (std::abs(pa(i) - pb(i)) > kPolyTol * scale) return false;
  }
  return true;
}

// Kernel dimensions of (T - I)^j, j = 1, 2, which carry the only possible
// Jordan block of a sheet-preserving Lorentz matrix.
std::pair<int, int> unipotent_ranks(const Matrix& t, double delta) {
  const int d = static_cast<int>(t.rows());
  const Matrix n1 = t - Matrix::Identity(d, d);
  const double s = std::max(1.0, spectral_norm(n1));
  const int r1 = numerical_rank(n1, delta * std::max(1.0, spectral_norm(t)));
  const int r2 = numerical_rank(n1 * n1, delta * s * s);
  return {r1, r2};
}

struct Matched {
  bool conjugate = false;
  StandardFrame f1, f2;
  Matrix s;
};

Matched match(const LorentzMatrix& t1, const LorentzMatrix& t2, const Tolerances& tol) {
  if (!t1.sheet_preserving() || !t2.sheet_preserving())
    throw Error(ErrorKind::NotSheetPreserving, "conjugacy in M(n) needs sheet-preserving input");
  if (t1.n() != t2.n()) throw Error(ErrorKind::DimensionMismatch, "matrices of different size");
  Matched m;
  if (!same_char_poly(t1.entries(), t2.entries())) return m;
  if (unipotent_ranks(t1.entries(), tol.delta) != unipotent_ranks(t2.entries(), tol.delta)) return m;
  m.f1 = standard_frame(t1, tol);
  m.f2 = standard_frame(t2, tol);
  const InvariantTuple a{m.f1.cls, m.f1.angles, m.f1.angles.k(),
                         m.f1.cls == FixedPointClass::Hyperbolic ? std::optional(m.f1.stretch) : std::nullopt};
  const InvariantTuple b{m.f2.cls, m.f2.angles, m.f2.angles.k(),
                         m.f2.cls == FixedPointClass::Hyperbolic ? std::optional(m.f2.stretch) : std::nullopt};
  if (!same_tuple(a, b))
    throw Error(ErrorKind::Borderline, "equal spectra but different normal forms");
  m.conjugate = true;
  m.s = m.f2.frame * lorentz_inverse(m.f1.frame);
  return m;
}

bool det_positive(const Matrix& m) { return m.determinant() > 0; }

// Sheet-preserving, determinant -1 element of the centralizer of a regular
// standard matrix without space-like +-1 directions, found by trying the
// sign patterns that represent every component of the block centralizers.
std::optional<Matrix> centralizer_flip(const StandardFrame& f) {
  const Matrix& std_m = f.standard;
  const int d = static_cast<int>(std_m.rows());
  const int planes = f.angles.k();
  const int tail = d - 2 * planes;
  const Matrix form = QuadraticSpace(d - 1).form();
  for (long mask = 0; mask < (1L << (planes + 1)); ++mask) {
    Matrix z = Matrix::Identity(d, d);
    for (int i = 0; i < planes; ++i)
      if (mask & (1L << i)) z(2 * i + 1, 2 * i + 1) = -1.0;
    if (mask & (1L << planes)) z.bottomRightCorner(tail, tail) *= -1.0;
    if (inf_norm(z * std_m - std_m * z) > 1e-9) continue;
    if (inf_norm(z.transpose() * form * z - form) > 1e-12) continue;
    if (z(d - 1, d - 1) > 0 && z.determinant() < 0) return z;
  }
  return std::nullopt;
}

}  // namespace

ConjugacyAnswer conjugate_in_Mn(const LorentzMatrix& t1, const LorentzMatrix& t2, const Tolerances& tol) {
  const Matched m = match(t1, t2, tol);
  ConjugacyAnswer ans;
  if (!m.conjugate) {
    ans.related = Relation::NotConjugate;
    ans.method = "kg-thm1.2";
    return ans;
  }
  ans.conjugator = m.s;
  ans.method = "normalform";
  ans.related = det_positive(m.s) ? Relation::ConjugateInMo : Relation::ConjugateInMOnly;
  return ans;
}

ConjugacyAnswer conjugate_in_Mon(const LorentzMatrix& t1, const LorentzMatrix& t2, const Tolerances& tol) {
  if (t1.component() != Component::SO_o || t2.component() != Component::SO_o)
    throw Error(ErrorKind::NotInIdentityComponent, "conjugacy in M_o(n) needs SO_o(n,1) input");
  const Matched m = match(t1, t2, tol);
  ConjugacyAnswer ans;
  if (!m.conjugate) {
    ans.related = Relation::NotConjugate;
    ans.method = "kg-thm1.2";
    return ans;
  }
  ans.conjugator = m.s;
  if (det_positive(m.s)) {
    ans.related = Relation::ConjugateInMo;
    ans.method = "normalform";
    return ans;
  }
  // A flip on a space-like +-1 direction commutes with the standard matrix.
  if (!m.f2.flippable.empty()) {
    Matrix c = Matrix::Identity(m.s.rows(), m.s.cols());
    c(m.f2.flippable.front(), m.f2.flippable.front()) = -1.0;
    ans.conjugator = m.f2.frame * c * lorentz_inverse(m.f1.frame);
    ans.related = Relation::ConjugateInMo;
    ans.method = "reality-clause";
    return ans;
  }
  if (is_regular(m.f2.angles, tol.delta)) {
    ans.method = "centralizer-enum";
    if (const auto z = centralizer_flip(m.f2)) {
      ans.conjugator = m.f2.frame * *z * lorentz_inverse(m.f1.frame);
      ans.related = Relation::ConjugateInMo;
    } else {
      ans.related = Relation::ConjugateInMOnly;
    }
    return ans;
  }
  ans.related = Relation::Undecided;
  ans.method = "normalform";
  return ans;
}

Matrix find_conjugator(const LorentzMatrix& t1, const LorentzMatrix& t2, ConjugacyGroup group,
                       const Tolerances& tol) {
  const ConjugacyAnswer ans =
      group == ConjugacyGroup::Mn ? conjugate_in_Mn(t1, t2, tol) : conjugate_in_Mon(t1, t2, tol);
  switch (ans.related) {
    case Relation::NotConjugate: throw Error(ErrorKind::NotConjugate, "matrices are not conjugate");
    case Relation::Undecided:
      throw Error(ErrorKind::Undecided, "M_o(n) conjugacy is undecided for this non-regular pair");
    case Relation::ConjugateInMOnly:
      if (group == ConjugacyGroup::Mon)
        throw Error(ErrorKind::NotConjugate, "conjugate in M(n) but not in M_o(n)");
      break;
    case Relation::ConjugateInMo: break;
  }
  return *ans.conjugator;
}

}  // namespace hypiso
