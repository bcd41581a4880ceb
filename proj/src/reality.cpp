#include "hypiso/reality.hpp"

#include <cmath>
#include <random>

#include "hypiso/errors.hpp"

namespace hypiso {

std::string_view to_string(RealityGroup g) {
  switch (g) {
    case RealityGroup::O_n: return "O_n";
    case RealityGroup::SO_n: return "SO_n";
    case RealityGroup::SO_o_n1: return "SO_o_n1";
    case RealityGroup::M_o_n: return "M_o_n";
  }
  return "?";
}

RealityGroup parse_reality_group(std::string_view s) {
  if (s == "O_n" || s == "O") return RealityGroup::O_n;
  if (s == "SO_n" || s == "SO") return RealityGroup::SO_n;
  if (s == "SO_o_n1" || s == "SOo") return RealityGroup::SO_o_n1;
  if (s == "M_o_n" || s == "Mo") return RealityGroup::M_o_n;
  throw Error(ErrorKind::InvalidArg, "unknown group '" + std::string(s) + "'");
}

bool in_group(const ReverserWitness& w, RealityGroup group) {
  switch (group) {
    case RealityGroup::O_n: return true;
    case RealityGroup::SO_n: return w.det == 1;
    case RealityGroup::SO_o_n1:
    case RealityGroup::M_o_n: return w.det == 1 && w.sheet_preserving;
  }
  return false;
}

namespace {

constexpr double kOrthogonalEps = 1e-9;

void require_orthogonal(const Matrix& t) {
  if (t.rows() != t.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const int n = static_cast<int>(t.rows());
  if (!t.allFinite() || inf_norm(t.transpose() * t - Matrix::Identity(n, n)) > kOrthogonalEps)
    throw Error(ErrorKind::NotOrthogonal, "matrix is not orthogonal");
}

void require_special(const Matrix& t) {
  require_orthogonal(t);
  if (t.rows() > 0 && t.determinant() < 0)
    throw Error(ErrorKind::NotSpecialOrthogonal, "determinant is -1");
}

bool has_eigenvalue(const Matrix& t, double lambda, double delta) {
  const int n = static_cast<int>(t.rows());
  const double thr = delta * std::max(1.0, spectral_norm(t));
  return numerical_rank(t - lambda * Matrix::Identity(n, n), thr) < n;
}

// Per-plane reflections diag(1, -1) on the leading `planes` pairs, then `sign`
// fixes the determinant through one flippable coordinate if needed.
// Returns nullopt when the determinant target is unreachable.
std::optional<Matrix> orthogonal_reverser(int dim, int planes, const std::vector<int>& flippable,
                                          int target_det) {
  Matrix r = Matrix::Identity(dim, dim);
  for (int i = 0; i < planes; ++i) r(2 * i + 1, 2 * i + 1) = -1.0;
  const int det = planes % 2 == 0 ? 1 : -1;
  if (det != target_det) {
    if (flippable.empty()) return std::nullopt;
    r(flippable.front(), flippable.front()) *= -1.0;
  }
  return r;
}

std::vector<int> flippable_of(const OrthogonalSplitting& split) {
  std::vector<int> out;
  int col = 0;
  for (const auto& p : split.planes) {
    if (p.angle == std::numbers::pi) out.push_back(col + 1);
    col += 2;
  }
  for (int i = col; i < split.dim(); ++i) out.push_back(i);
  return out;
}

bool check_involution(const Matrix& s) {
  const int d = static_cast<int>(s.rows());
  return inf_norm(s * s - Matrix::Identity(d, d)) <= 1e-8;
}

std::optional<Matrix> constructive_SOn(const Matrix& t, double delta) {
  const OrthogonalSplitting split = split_orthogonal(t, delta);
  const auto r = orthogonal_reverser(split.dim(), static_cast<int>(split.planes.size()),
                                     flippable_of(split), 1);
  if (!r) return std::nullopt;
  const Matrix b = split.basis();
  return Matrix(b * *r * b.transpose());
}

}  // namespace

RealityCertificate is_real_On(const Matrix& t, double delta) {
  require_orthogonal(t);
  const OrthogonalSplitting split = split_orthogonal(t, delta);
  const int d = split.dim();
  Matrix r = Matrix::Identity(d, d);
  for (std::size_t i = 0; i < split.planes.size(); ++i) r(2 * i + 1, 2 * i + 1) = -1.0;
  const Matrix b = split.basis();
  RealityCertificate cert;
  cert.group = RealityGroup::O_n;
  cert.decision = true;
  cert.clause = "W";
  cert.reverser = b * r * b.transpose();
  cert.involution = check_involution(*cert.reverser);
  return cert;
}

RealityCertificate is_real_SOn(const Matrix& t, double delta) {
  require_special(t);
  const int n = static_cast<int>(t.rows());
  RealityCertificate cert;
  cert.group = RealityGroup::SO_n;
  if (n % 4 != 2) {
    cert.decision = true;
    cert.clause = "Thm3.5-mod4";
  } else {
    cert.decision = has_eigenvalue(t, 1.0, delta) || has_eigenvalue(t, -1.0, delta);
    cert.clause = "Thm3.5-pm1";
  }
  const auto s = constructive_SOn(t, delta);
  if (s.has_value() != cert.decision)
    throw Error(ErrorKind::Borderline, "reality decision and reverser construction disagree");
  if (s) {
    cert.reverser = *s;
    cert.involution = check_involution(*s);
  }
  return cert;
}

RealityCertificate is_strongly_real_SOn(const Matrix& t, double delta) {
  require_special(t);
  const int n = static_cast<int>(t.rows());
  // Orthogonally indecomposable summands are planes and lines; a line comes
  // from an eigenvalue +-1, including each half of a pi-plane.
  const OrthogonalSplitting split = split_orthogonal(t, delta);
  bool odd_summand = split.fixed.cols() > 0 || split.minus_axis.cols() > 0;
  for (const auto& p : split.planes) odd_summand = odd_summand || p.angle == std::numbers::pi;
  RealityCertificate cert = is_real_SOn(t, delta);
  const bool strong = n % 4 != 2 || odd_summand;
  if (strong != cert.decision)
    throw Error(ErrorKind::Borderline, "strong reality and reality disagree");
  if (cert.reverser && !cert.involution)
    throw Error(ErrorKind::Borderline, "constructed reverser is not an involution");
  cert.clause = "KN";
  return cert;
}

RealityCertificate is_real_SOo_n1(const LorentzMatrix& t, const Tolerances& tol) {
  if (t.component() != Component::SO_o)
    throw Error(ErrorKind::NotInIdentityComponent, "matrix is not in SO_o(n,1)");
  const int n = t.n();
  const int d = n + 1;
  const Matrix& m = t.entries();
  const FixedPointClass cls = fixed_point_class(t, tol);

  const bool minus_one = has_eigenvalue(m, -1.0, tol.delta);
  const Matrix ker = null_space(m - Matrix::Identity(d, d), tol.delta * std::max(1.0, spectral_norm(m)));
  bool spacelike_one = false;
  if (ker.cols() > 0) {
    Matrix gram = ker.transpose() * t.space().form() * ker;
    gram = 0.5 * (gram + gram.transpose());
    spacelike_one = Eigen::SelfAdjointEigenSolver<Matrix>(gram).eigenvalues().maxCoeff() > tol.delta;
  }

  RealityCertificate cert;
  cert.group = RealityGroup::SO_o_n1;
  switch (n % 4) {
    case 0:
    case 3:
      cert.decision = true;
      cert.clause = "Thm1.1-1";
      break;
    case 1:
      cert.decision = cls != FixedPointClass::Hyperbolic || minus_one || spacelike_one;
      cert.clause = "Thm1.1-2";
      break;
    default:
      if (cls == FixedPointClass::Hyperbolic) {
        cert.decision = true;
        cert.clause = "Thm1.1-3i";
      } else if (minus_one) {
        cert.decision = true;
        cert.clause = "Thm1.1-3ii";
      } else {
        cert.decision = spacelike_one;
        cert.clause = "Thm1.1-3iii";
      }
  }

  // Reverser in the standard frame: per-plane reflections on the orthogonal
  // part, compensated on a +-1 direction, and a fixed flip on the
  // translation or stretch axis.
  const StandardFrame sf = standard_frame(t, tol);
  const int odim = sf.orthogonal_dim;
  const int target = cls == FixedPointClass::Elliptic ? 1 : -1;
  const auto r_o = orthogonal_reverser(odim, sf.angles.k(), sf.flippable, target);
  if (r_o.has_value() != cert.decision)
    throw Error(ErrorKind::Borderline, "reality decision and reverser construction disagree");
  if (!r_o) return cert;

  Matrix r = Matrix::Identity(d, d);
  r.topLeftCorner(odim, odim) = *r_o;
  if (cls != FixedPointClass::Elliptic) r(odim, odim) = -1.0;
  const Matrix s = sf.frame * r * lorentz_inverse(sf.frame);
  const LorentzMatrix sl = classify_membership(t.space(), s, std::max(tol.eps, 1e-8));
  if (sl.component() != Component::SO_o)
    throw Error(ErrorKind::Borderline, "constructed reverser left the identity component");
  cert.reverser = s;
  cert.involution = check_involution(s);
  return cert;
}

RealityCertificate is_real_Mo(const LorentzMatrix& t, const Tolerances& tol) {
  RealityCertificate cert = is_real_SOo_n1(t, tol);
  cert.group = RealityGroup::M_o_n;
  return cert;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

struct Block {
  Matrix basis;                  // ambient columns
  std::vector<Matrix> choices;   // reverser candidates in block coordinates
};

ReverserWitness witness_of(const Matrix& s, bool lorentz) {
  ReverserWitness w;
  w.det = s.determinant() > 0 ? 1 : -1;
  w.sheet_preserving = !lorentz || s(s.rows() - 1, s.cols() - 1) > 0;
  w.reverser = s;
  return w;
}

bool verify_reverser(const Matrix& s, const Matrix& t, const Matrix& t_inv, const Matrix& form) {
  if (!s.allFinite()) return false;
  const Eigen::FullPivLU<Matrix> lu(s);
  if (!lu.isInvertible()) return false;
  if (inf_norm(s.transpose() * form * s - form) > 1e-8) return false;
  return inf_norm(s * t * lu.inverse() - t_inv) <= 1e-8;
}

void record(std::vector<ReverserWitness>& set, ReverserWitness w) {
  for (const auto& e : set)
    if (e.det == w.det && e.sheet_preserving == w.sheet_preserving) return;
  set.push_back(std::move(w));
}

Matrix flip_choice(int dim, int index) {
  Matrix d = Matrix::Identity(dim, dim);
  if (index >= 0) d(index, index) = -1.0;
  return d;
}

// Choices on a block where T acts trivially or as -I: one flip per sign
// class of the form covers every component of its isometry group.
std::vector<Matrix> scalar_block_choices(const Matrix& form, const Matrix& basis) {
  const int dim = static_cast<int>(basis.cols());
  const Matrix gram = basis.transpose() * form * basis;
  int pos = -1, neg = -1;
  for (int i = 0; i < dim; ++i) {
    if (gram(i, i) > 0 && pos < 0) pos = i;
    if (gram(i, i) < 0 && neg < 0) neg = i;
  }
  std::vector<Matrix> out{Matrix::Identity(dim, dim)};
  if (pos >= 0) out.push_back(flip_choice(dim, pos));
  if (neg >= 0) out.push_back(flip_choice(dim, neg));
  if (pos >= 0 && neg >= 0) {
    Matrix both = flip_choice(dim, pos);
    both(neg, neg) = -1.0;
    out.push_back(both);
  }
  return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() > 0 ? a.rows() : b.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

OracleModeA run_exhaustive(const Matrix& t, const Matrix& t_inv, const Matrix& form, bool lorentz) {
  constexpr double kSep = 1e-4;
  OracleModeA out;
  const int d = static_cast<int>(t.rows());
  const Eigen::EigenSolver<Matrix> es(t, true);
  const CVector values = es.eigenvalues();

  std::vector<int> planes;
  double stretch = 0.0;
  for (int i = 0; i < d; ++i) {
    const auto l = values(i);
    if (std::abs(l - 1.0) <= 1e-3) continue;
    if (l.imag() > kSep) planes.push_back(i);
    else if (std::abs(l.imag()) <= kSep && l.real() > 1.0 + kSep) stretch = std::max(stretch, l.real());
  }
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j)
      if (std::abs(values(planes[i]) - values(planes[j])) <= kSep) {
        out.reason = "repeated rotation angle";
        return out;
      }

  std::vector<Block> blocks;
  Matrix used(d, 0);
  for (int idx : planes) {
    const CVector v = es.eigenvectors().col(idx);
    Matrix pair(d, 2);
    pair.col(0) = v.real();
    pair.col(1) = v.imag();
    Block b{form_orthonormalize(form, pair), {}};
    b.choices.push_back(flip_choice(2, 1));
    b.choices.push_back(flip_choice(2, 0));
    used = hcat(used, b.basis);
    blocks.push_back(std::move(b));
  }

  const double thr = 1e-7 * std::max(1.0, spectral_norm(t));
  const Matrix minus = null_space(t + Matrix::Identity(d, d), thr);
  if (minus.cols() > 0) {
    Block b{form_orthonormalize(form, minus), {}};
    b.choices = scalar_block_choices(form, b.basis);
    used = hcat(used, b.basis);
    blocks.push_back(std::move(b));
  }

  if (stretch > 0.0) {
    Matrix h(d, 2);
    h.col(0) = smallest_right_singular(t - stretch * Matrix::Identity(d, d), 1);
    h.col(1) = smallest_right_singular(t - (1.0 / stretch) * Matrix::Identity(d, d), 1);
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    // Scale so that Q(p, p') is the same in both slots of the swap.
    const double pq = (h.col(0).transpose() * form * h.col(1))(0, 0);
    if (std::abs(pq) < 1e-12) {
      out.reason = "degenerate stretch plane";
      return out;
    }
    Block b{h, {swap, -swap}};
    used = hcat(used, b.basis);
    blocks.push_back(std::move(b));
  }

  const Matrix g1 = used.cols() > 0 ? form_complement(form, used) : Matrix(Matrix::Identity(d, d));
  if (g1.cols() > 0) {
    const Matrix c = g1.colPivHouseholderQr().solve(t * g1);
    const int m = static_cast<int>(g1.cols());
    if (inf_norm(c - Matrix::Identity(m, m)) <= 1e-6) {
      Block b{form_orthonormalize(form, g1), {}};
      b.choices = scalar_block_choices(form, b.basis);
      blocks.push_back(std::move(b));
    } else {
      const Matrix nil = c - Matrix::Identity(m, m);
      const Matrix log_u = nil - 0.5 * nil * nil;
      Eigen::JacobiSVD<Matrix> svd(log_u * log_u, Eigen::ComputeFullV);
      const Vector x = svd.matrixV().col(0);
      Matrix chain(d, 3);
      chain.col(0) = g1 * x;
      chain.col(1) = g1 * (log_u * x);
      chain.col(2) = g1 * (log_u * log_u * x);
      Matrix xu = Matrix::Identity(3, 3);
      xu(1, 1) = -1.0;
      Block u{chain, {xu, -xu}};
      const Matrix rest = form_complement(form, hcat(used, chain));
      if (rest.cols() > 0) {
        Block f{form_orthonormalize(form, rest), {}};
        f.choices = scalar_block_choices(form, f.basis);
        blocks.push_back(std::move(f));
      }
      blocks.push_back(std::move(u));
    }
  }

  Matrix basis(d, 0);
  for (const auto& b : blocks) basis = hcat(basis, b.basis);
  if (basis.cols() != d) {
    out.reason = "adapted basis is incomplete";
    return out;
  }
  const Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible()) {
    out.reason = "adapted basis is singular";
    return out;
  }
  const Matrix basis_inv = lu.inverse();
  out.applicable = true;

  std::vector<std::size_t> digit(blocks.size(), 0);
  while (true) {
    Matrix dmat = Matrix::Zero(d, d);
    int off = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const Matrix& c = blocks[i].choices[digit[i]];
      dmat.block(off, off, c.rows(), c.cols()) = c;
      off += static_cast<int>(c.rows());
    }
    const Matrix s = basis * dmat * basis_inv;
    ++out.candidates;
    if (verify_reverser(s, t, t_inv, form)) record(out.achievable, witness_of(s, lorentz));
    std::size_t pos = 0;
    while (pos < blocks.size() && ++digit[pos] == blocks[pos].choices.size()) digit[pos++] = 0;
    if (pos == blocks.size()) break;
  }
  return out;
}

OracleModeB run_randomized(const Matrix& t, const Matrix& t_inv, const Matrix& form, bool lorentz,
                           const OracleOptions& opts, RealityGroup group) {
  OracleModeB out;
  const int d = static_cast<int>(t.rows());
  const Matrix id = Matrix::Identity(d, d);
  // vec(X T - T^{-1} X) = (T^t (x) I - I (x) T^{-1}) vec(X), column-major vec.
  Matrix system(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      system.block(i * d, j * d, d, d) = t(j, i) * id - (i == j ? t_inv : Matrix::Zero(d, d));
  const Matrix kernel = null_space(system, 1e-8 * std::max(1.0, spectral_norm(system)));
  out.solution_dim = static_cast<int>(kernel.cols());
  if (kernel.cols() == 0) throw Error(ErrorKind::BudgetExhausted, "reverser equation has no solution");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  for (int sample = 0; sample < opts.budget; ++sample) {
    ++out.samples;
    Vector coeff(kernel.cols());
    for (int i = 0; i < coeff.size(); ++i) coeff(i) = gauss(rng);
    const Vector flat = kernel * coeff;
    Matrix x = Eigen::Map<const Matrix>(flat.data(), d, d);
    bool ok = true;
    for (int it = 0; it < 100; ++it) {
      const Eigen::FullPivLU<Matrix> lu(x);
      if (!lu.isInvertible()) {
        ok = false;
        break;
      }
      const Matrix next = 0.5 * (x + form * lu.inverse().transpose() * form);
      const double step = inf_norm(next - x);
      x = next;
      if (!x.allFinite()) {
        ok = false;
        break;
      }
      if (step <= 1e-14 * std::max(1.0, inf_norm(x))) break;
    }
    if (!ok || !verify_reverser(x, t, t_inv, form)) continue;
    ++out.converged;
    ReverserWitness w = witness_of(x, lorentz);
    const bool hit = in_group(w, group);
    record(out.found, std::move(w));
    if (hit && opts.stop_when_found) break;
  }
  if (out.converged == 0) throw Error(ErrorKind::BudgetExhausted, "no sample converged to a reverser");
  return out;
}

}  // namespace

OracleReport reverser_oracle(const Matrix& t, RealityGroup group, const OracleOptions& opts) {
  const bool lorentz = group == RealityGroup::SO_o_n1 || group == RealityGroup::M_o_n;
  const int d = static_cast<int>(t.rows());
  Matrix form;
  Matrix t_inv;
  if (lorentz) {
    const LorentzMatrix lm = classify_membership(t);
    if (lm.component() != Component::SO_o)
      throw Error(ErrorKind::NotInIdentityComponent, "matrix is not in SO_o(n,1)");
    form = lm.space().form();
    t_inv = lm.inverse();
  } else {
    if (group == RealityGroup::SO_n) require_special(t);
    else require_orthogonal(t);
    form = Matrix::Identity(d, d);
    t_inv = t.transpose();
  }

  OracleReport report;
  report.group = group;
  if (opts.run_exhaustive) {
    report.exhaustive = run_exhaustive(t, t_inv, form, lorentz);
    for (const auto& w : report.exhaustive.achievable) report.found_in_group |= in_group(w, group);
  } else {
    report.exhaustive.reason = "not requested";
  }
  if (opts.run_randomized) {
    report.randomized = run_randomized(t, t_inv, form, lorentz, opts, group);
    for (const auto& w : report.randomized.found) report.found_in_group |= in_group(w, group);
  }
  return report;
}

}  // namespace hypiso
