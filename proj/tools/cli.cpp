#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "hypiso/errors.hpp"
#include "hypiso/io.hpp"
#include "hypiso/sampling.hpp"

namespace hypiso {

namespace {

struct Options {
  std::string input = "-";
  std::string second;
  std::string group;
  std::string cls;
  int k = -1;
  int n = -1;
  bool has_pi = false;
  std::vector<double> angles;
  std::uint64_t seed = 0;
  int count = 1;
  int budget = 200;
  double eps = kDefaultEps;
  double delta = kDefaultDelta;
  std::string output;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidArg: return 1;
    case ErrorKind::Borderline:
    case ErrorKind::Undecided:
    case ErrorKind::ClusterAmbiguity:
    case ErrorKind::AmbiguousComponent: return 3;
    default: return 2;
  }
}

std::vector<Matrix> read_input(const std::string& path) {
  if (path == "-") return io::read_matrix_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return io::read_matrix_stream(in);
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) { tol_ = {o.eps, o.delta}; }

  int classify_cmd() {
    for (const Matrix& m : read_input(o_.input)) emit(io::to_json(classify(classify_membership(m, o_.eps), tol_)));
    return 0;
  }

  int reality_cmd() {
    const RealityGroup g = parse_reality_group(o_.group.empty() ? "SO_o_n1" : o_.group);
    for (const Matrix& m : read_input(o_.input)) {
      switch (g) {
        case RealityGroup::O_n: emit(io::to_json(is_real_On(m, o_.delta))); break;
        case RealityGroup::SO_n: emit(io::to_json(is_real_SOn(m, o_.delta))); break;
        case RealityGroup::SO_o_n1: emit(io::to_json(is_real_SOo_n1(classify_membership(m, o_.eps), tol_))); break;
        case RealityGroup::M_o_n: emit(io::to_json(is_real_Mo(classify_membership(m, o_.eps), tol_))); break;
      }
    }
    return 0;
  }

  int conjugacy_cmd() {
    const auto first = read_input(o_.input);
    const auto second = read_input(o_.second);
    if (first.size() != second.size()) throw Error(ErrorKind::ParseError, "inputs have different lengths");
    const bool full = o_.group == "M" || o_.group == "Mn";
    if (!full && !o_.group.empty() && o_.group != "Mo" && o_.group != "Mon")
      throw Error(ErrorKind::InvalidArg, "conjugacy group must be M or Mo");
    int code = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      const LorentzMatrix a = classify_membership(first[i], o_.eps);
      const LorentzMatrix b = classify_membership(second[i], o_.eps);
      const ConjugacyAnswer ans = full ? conjugate_in_Mn(a, b, tol_) : conjugate_in_Mon(a, b, tol_);
      if (ans.related == Relation::Undecided) code = 3;
      emit(io::to_json(ans));
    }
    return code;
  }

  int decompose_cmd() {
    for (const Matrix& m : read_input(o_.input)) {
      const int d = static_cast<int>(m.rows());
      if (m.rows() == m.cols() && inf_norm(m.transpose() * m - Matrix::Identity(d, d)) <= o_.eps) {
        emit(io::to_json(split_orthogonal(m, o_.delta)));
      } else {
        const StandardFrame sf = standard_frame(classify_membership(m, o_.eps), tol_);
        io::Json j = io::to_json(split_orthogonal(sf.standard.topLeftCorner(sf.orthogonal_dim, sf.orthogonal_dim), o_.delta));
        j["class"] = std::string(to_string(sf.cls));
        j["frame"] = io::matrix_doc(sf.frame);
        emit(j);
      }
    }
    return 0;
  }

  int dims_cmd() {
    if (o_.cls.empty() || o_.k < 0 || o_.n < 0) throw Error(ErrorKind::InvalidArg, "dims needs --class, --k and --n");
    emit(io::to_json(class_descriptor(parse_class_kind(o_.cls), o_.k, o_.n, o_.has_pi)));
    return 0;
  }

  int enumerate_cmd() {
    const int k = o_.k >= 0 ? o_.k : static_cast<int>(o_.angles.size());
    if (static_cast<int>(o_.angles.size()) != k) throw Error(ErrorKind::InvalidArg, "--angles must list k angles");
    PlaneDecomposition d;
    for (int i = 0; i < k; ++i) {
      Plane p;
      p.frame = Matrix::Zero(2 * k, 2);
      p.frame(2 * i, 0) = 1.0;
      p.frame(2 * i + 1, 1) = 1.0;
      p.angle = o_.angles[i];
      d.planes.push_back(p);
    }
    d.fixed_subspace = Matrix(2 * k, 0);
    const auto fiber = enumerate_fiber(d, o_.angles, o_.has_pi);
    io::Json elems = io::Json::array();
    for (const auto& m : fiber) elems.push_back(io::matrix_doc(m));
    emit({{"k", k}, {"angles", o_.angles}, {"has_pi", o_.has_pi}, {"count", fiber.size()}, {"elements", elems}});
    return 0;
  }

  int random_cmd() {
    if (o_.n < 0) throw Error(ErrorKind::InvalidArg, "random needs --n");
    Rng rng(o_.seed);
    const std::string g = o_.group.empty() ? "SOo" : o_.group;
    for (int i = 0; i < o_.count; ++i) {
      if (g == "O" || g == "O_n" || g == "SO" || g == "SO_n") {
        const bool special = g == "SO" || g == "SO_n";
        const bool reflect = !special && std::bernoulli_distribution(0.5)(rng) && o_.n > 2 * std::max(o_.k, 0);
        const int room = (o_.n - (reflect ? 1 : 0)) / 2;
        const int k = o_.k >= 0 ? o_.k : std::uniform_int_distribution<int>(0, room)(rng);
        emit(io::matrix_doc(random_rotation(o_.n, k, rng, reflect)));
      } else {
        // M_o(n) acts on H^{n+1}.
        const int n = (g == "Mo" || g == "M_o_n") ? o_.n + 1 : o_.n;
        if (g != "SOo" && g != "SO_o_n1" && g != "Mo" && g != "M_o_n")
          throw Error(ErrorKind::InvalidArg, "unknown group '" + g + "'");
        FixedPointClass cls;
        if (!o_.cls.empty()) {
          cls = parse_class(o_.cls);
        } else {
          std::vector<FixedPointClass> options{FixedPointClass::Elliptic, FixedPointClass::Hyperbolic};
          if (n >= 2) options.push_back(FixedPointClass::Parabolic);
          cls = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        }
        emit(io::matrix_doc(random_isometry(cls, n, o_.k, rng).matrix));
      }
    }
    return 0;
  }

  int oracle_cmd() {
    const RealityGroup g = parse_reality_group(o_.group.empty() ? "SO_o_n1" : o_.group);
    OracleOptions opts;
    opts.budget = o_.budget;
    opts.seed = o_.seed;
    for (const Matrix& m : read_input(o_.input)) emit(io::to_json(reverser_oracle(m, g, opts)));
    return 0;
  }

  void flush(std::ostream& where) const { where << buffer_.str(); }

 private:
  static FixedPointClass parse_class(const std::string& s) {
    if (s == "elliptic") return FixedPointClass::Elliptic;
    if (s == "parabolic") return FixedPointClass::Parabolic;
    if (s == "hyperbolic") return FixedPointClass::Hyperbolic;
    throw Error(ErrorKind::InvalidArg, "unknown class '" + s + "'");
  }

  void emit(const io::Json& j) { buffer_ << io::dump(j) << '\n'; }

  const Options& o_;
  Tolerances tol_;
  std::ostringstream buffer_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Classification, reality and conjugacy of hyperbolic isometries"};
  app.require_subcommand(1);
  auto tolerances = [&](CLI::App* c) {
    c->add_option("--eps", o.eps, "membership tolerance");
    c->add_option("--delta", o.delta, "eigenvalue clustering tolerance");
    c->add_option("--output", o.output, "output file (default stdout)");
  };
  auto* classify_c = app.add_subcommand("classify", "classification report per matrix");
  classify_c->add_option("input", o.input, "matrix documents, - for stdin");
  auto* reality_c = app.add_subcommand("reality", "reality certificate per matrix");
  reality_c->add_option("input", o.input);
  reality_c->add_option("--group", o.group, "O, SO, SOo or Mo");
  auto* conj_c = app.add_subcommand("conjugacy", "conjugacy answer per pair of matrices");
  conj_c->add_option("first", o.input)->required();
  conj_c->add_option("second", o.second)->required();
  conj_c->add_option("--group", o.group, "M or Mo");
  auto* decompose_c = app.add_subcommand("decompose", "plane decomposition per matrix");
  decompose_c->add_option("input", o.input);
  auto* dims_c = app.add_subcommand("dims", "fibration descriptor of a class");
  dims_c->add_option("--class", o.cls, "rotation, elliptic, parabolic, hyperbolic, hyperbolic-any-stretch");
  dims_c->add_option("--k", o.k);
  dims_c->add_option("--n", o.n);
  dims_c->add_flag("--has-pi", o.has_pi);
  auto* enum_c = app.add_subcommand("enumerate", "fiber over the standard decomposition");
  enum_c->add_option("--k", o.k);
  enum_c->add_option("--angles", o.angles)->delimiter(',');
  enum_c->add_flag("--has-pi", o.has_pi);
  auto* random_c = app.add_subcommand("random", "random matrices in standard position composed with a random conjugator");
  random_c->add_option("--group", o.group, "O, SO, SOo or Mo");
  random_c->add_option("--class", o.cls);
  random_c->add_option("--n", o.n);
  random_c->add_option("--k", o.k);
  random_c->add_option("--seed", o.seed);
  random_c->add_option("--count", o.count);
  auto* oracle_c = app.add_subcommand("oracle", "reverser search independent of the deciders");
  oracle_c->add_option("input", o.input);
  oracle_c->add_option("--group", o.group);
  oracle_c->add_option("--budget", o.budget);
  oracle_c->add_option("--seed", o.seed);
  for (auto* c : {classify_c, reality_c, conj_c, decompose_c, dims_c, enum_c, random_c, oracle_c}) tolerances(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  Runner runner(o);
  int code = 0;
  try {
    if (*classify_c) code = runner.classify_cmd();
    else if (*reality_c) code = runner.reality_cmd();
    else if (*conj_c) code = runner.conjugacy_cmd();
    else if (*decompose_c) code = runner.decompose_cmd();
    else if (*dims_c) code = runner.dims_cmd();
    else if (*enum_c) code = runner.enumerate_cmd();
    else if (*random_c) code = runner.random_cmd();
    else if (*oracle_c) code = runner.oracle_cmd();
  } catch (const Error& e) {
    code = exit_code(e.kind());
    err << "error: " << e.what() << '\n';
  }
  if (o.output.empty()) {
    runner.flush(out);
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "error: cannot open '" << o.output << "'\n";
      return 1;
    }
    runner.flush(f);
  }
  return code;
}

}  // namespace hypiso
