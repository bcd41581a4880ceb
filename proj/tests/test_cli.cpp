#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "hypiso/classify.hpp"
#include "hypiso/io.hpp"
#include "json.hpp"

using namespace hypiso;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypiso");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = hypiso::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> docs;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) docs.push_back(nlohmann::json::parse(line));
  return docs;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hypiso_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("dims example") {
  const Result r = run({"dims", "--class", "elliptic", "--k", "2", "--n", "5"});
  REQUIRE(r.code == 0);
  const auto docs = lines(r.out);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0]["base"]["tag"] == "SphereSpace");
  CHECK(docs[0]["base"]["params"] == nlohmann::json::array({1, 5}));
  CHECK(docs[0]["fiber"]["tag"] == "O_k");
  CHECK(docs[0]["fiber"]["params"] == nlohmann::json::array({2, 4}));
  CHECK(docs[0]["total_dimension"] == 16);
}

TEST_CASE("classify on the identity") {
  const std::string f = write_temp("id.jsonl", R"({"n": 2, "matrix": [1,0,0,0,1,0,0,0,1]})" "\n");
  const Result r = run({"classify", f});
  REQUIRE(r.code == 0);
  const auto docs = lines(r.out);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0]["class"] == "elliptic");
  CHECK(docs[0]["k"] == 0);
}

TEST_CASE("random then reality: 100 decisions true in SO_o(4,1)") {
  const Result g = run({"random", "--group", "SOo", "--n", "4", "--count", "100", "--seed", "7"});
  REQUIRE(g.code == 0);
  CHECK(lines(g.out).size() == 100);
  const std::string f = write_temp("rand.jsonl", g.out);
  const Result r = run({"reality", f, "--group", "SOo"});
  REQUIRE(r.code == 0);
  const auto docs = lines(r.out);
  REQUIRE(docs.size() == 100);
  for (const auto& d : docs) CHECK(d["decision"] == true);
}

TEST_CASE("fixed seed gives byte-identical output") {
  for (const char* group : {"SOo", "Mo", "SO", "O"}) {
    const Result a = run({"random", "--group", group, "--n", "3", "--count", "20", "--seed", "42"});
    const Result b = run({"random", "--group", group, "--n", "3", "--count", "20", "--seed", "42"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
  const Result g = run({"random", "--group", "SOo", "--n", "2", "--count", "3", "--seed", "5"});
  const std::string f = write_temp("oracle.jsonl", g.out);
  const Result a = run({"oracle", f, "--budget", "30", "--seed", "9"});
  const Result b = run({"oracle", f, "--budget", "30", "--seed", "9"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 3);
}

TEST_CASE("enumerate and decompose") {
  const Result e = run({"enumerate", "--angles", "1.0,2.0"});
  REQUIRE(e.code == 0);
  CHECK(lines(e.out)[0]["count"] == 8);
  const std::string f = write_temp("rot.jsonl", R"({"n": 1, "matrix": [0,-1,1,0]})" "\n");
  const Result d = run({"decompose", f});
  REQUIRE(d.code == 0);
  CHECK(lines(d.out).size() == 1);
}

TEST_CASE("conjugacy subcommand") {
  Vector b(1);
  b << 1.0;
  const Matrix u = poincare_extend(1.0, Matrix::Identity(1, 1), b).lorentz.entries();
  const std::string uf = write_temp("u.jsonl", io::dump(io::matrix_doc(u)) + "\n");
  const std::string uif = write_temp("ui.jsonl", io::dump(io::matrix_doc(lorentz_inverse(u))) + "\n");
  const Result r = run({"conjugacy", uf, uif, "--group", "Mo"});
  REQUIRE(r.code == 0);
  const auto docs = lines(r.out);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0]["related"] == "ConjugateInMOnly");
}

TEST_CASE("exit codes") {
  const std::string garbage = write_temp("garbage.jsonl", "not json\n");
  const Result p = run({"classify", garbage});
  CHECK(p.code == 1);
  CHECK(p.err.rfind("error: ", 0) == 0);
  CHECK(std::count(p.err.begin(), p.err.end(), '\n') == 1);

  CHECK(run({"no-such-command"}).code == 1);
  CHECK(run({"dims", "--class", "bogus", "--k", "1", "--n", "2"}).code == 1);

  const std::string bad = write_temp("bad.jsonl", R"({"n": 1, "matrix": [2,0,0,1]})" "\n");
  CHECK(run({"classify", bad}).code == 2);

  const std::string refl = write_temp("refl.jsonl", R"({"n": 2, "matrix": [-1,0,0,0,1,0,0,0,1]})" "\n");
  CHECK(run({"reality", refl, "--group", "SOo"}).code == 2);
}
