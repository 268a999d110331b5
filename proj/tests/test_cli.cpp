#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "centra/serialize.hpp"

using namespace centra;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("centra_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(CENTRA_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string problem(const char* name) {
  return std::string(CENTRA_PROBLEMS_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("centralizer report for one diagonal generator") {
  const auto r = run("centralizer " + problem("diag12.json"));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["command"] == "centralizer");
  CHECK(j["max_degree"] == 4);
  CHECK(j["constant_dimension"] == 0);
  std::vector<int> dims;
  for (const auto& d : j["degrees"]) dims.push_back(d["dimension"].get<int>());
  CHECK(dims == std::vector<int>{2, 1, 0, 0});
  // the lone quadratic equivariant round-trips to x1^2 e2
  CHECK(field_from_json(j["degrees"][1]["basis"][0], 2) ==
        VectorField::monomial_field(2, Monomial({2, 0}), 1));
}

TEST_CASE("centralizer of the zero algebra notes the constants") {
  const auto r = run("centralizer " + problem("zero_algebra.json"));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["constant_dimension"] == 2);
  CHECK(j["degrees"][0]["dimension"] == 4);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string cmd = "finiteness " + problem("pair3d.json");
  const auto a = run(cmd);
  const auto b = run(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("--output writes the same bytes to a file") {
  const fs::path target = scratch_dir() / "report.json";
  const auto piped = run("invariants " + problem("rotation.json"));
  const auto filed = run("invariants " + problem("rotation.json") +
                         " --output " + target.string());
  REQUIRE(piped.code == 0);
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(target) == piped.out);
}

TEST_CASE("invariants finds the rotation invariant") {
  const auto r = run("invariants " + problem("rotation.json"));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["alpha"].is_null());
  CHECK(j["degrees"][0]["dimension"] == 0);
  CHECK(j["degrees"][1]["dimension"] == 1);
  CHECK(j["degrees"][1]["basis"][0]["text"] == "x1^2 + x2^2");
}

TEST_CASE("relative invariants respond to the weight") {
  const auto none = run("invariants " + problem("diag12.json"));
  REQUIRE(none.code == 0);
  for (const auto& d : Json::parse(none.out)["degrees"])
    CHECK(d["dimension"] == 0);

  const auto r = run("invariants " + problem("diag12.json") + " --alpha 1");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["alpha"] == Json::parse(R"(["1"])"));
  CHECK(j["degrees"][0]["dimension"] == 1);
  CHECK(j["degrees"][0]["basis"][0]["text"] == "x1");
  CHECK(j["degrees"][1]["dimension"] == 0);

  const auto bad = run("invariants " + problem("diag12.json") + " --alpha 1 2");
  CHECK(bad.code == 2);
}

TEST_CASE("finiteness verdicts across the three branches") {
  const auto fin = run("finiteness " + problem("pair3d.json"));
  REQUIRE(fin.code == 0);
  const Json jf = Json::parse(fin.out);
  CHECK(jf["verdict"] == "FiniteCertified");
  CHECK(jf["max_degree"] == 4);
  CHECK(jf["certificate"]["combination"] == Json::parse(R"(["1","-2"])"));
  CHECK(jf["certificate"]["spectrum"] == Json::parse(R"(["1","4","3"])"));

  const auto inf = run("finiteness " + problem("rotation.json"));
  REQUIRE(inf.code == 0);
  const Json ji = Json::parse(inf.out);
  CHECK(ji["verdict"] == "InfiniteCertified");
  CHECK(ji["certificate"]["witness"]["text"] == "x1^2 + x2^2");
  CHECK(ji["certificate"]["passed"] == true);
  CHECK(ji["certificate"]["checks"].size() == 3);

  const auto und = run("finiteness " + problem("mixed_signs.json"));
  REQUIRE(und.code == 0);
  const Json ju = Json::parse(und.out);
  CHECK(ju["verdict"] == "Undetermined");
  CHECK(ju["searched_bound"] == 6);
}

TEST_CASE("solve integrates an elementary system") {
  const auto r = run("solve " + problem("elementary.json") + " --y0 1 0");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["mode"] == "elementary");
  CHECK(j["residual_zero"] == true);
  CHECK(exppoly_from_json(j["solution"][0]) == ExpPoly::constant(1));
  CHECK(exppoly_from_json(j["solution"][1]) == ExpPoly::term(0, 1, 1));
}

TEST_CASE("solve reduces and verifies an autonomous field") {
  const auto r = run("solve " + problem("resonant_flow.json") +
                     " --y0 1 1 --verify 1 1000");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["mode"] == "autonomous");
  CHECK(matrix_from_json(j["linear_part"]) ==
        QMatrix(2, 2, {1, 0, 0, 2}));
  // x(t) = (e^t, e^(2t) + t e^(2t))
  CHECK(exppoly_from_json(j["solution"][0]) == ExpPoly::term(1, 0, 1));
  ExpPoly x2 = ExpPoly::term(2, 0, 1);
  x2.add_term(2, 1, 1);
  CHECK(exppoly_from_json(j["solution"][1]) == x2);
  CHECK(j["verify"]["pass"] == true);
  CHECK(j["verify"]["max_error"].get<double>() <= 1e-8);
}

TEST_CASE("solve rejects a shifted base point for autonomous problems") {
  const auto r =
      run("solve " + problem("resonant_flow.json") + " --y0 1 1 --t0 1/2");
  CHECK(r.code == 4);
  CHECK(Json::parse(r.err)["error"]["type"] == "unsupported");
}

TEST_CASE("solve validates the initial value length") {
  const auto r = run("solve " + problem("elementary.json") + " --y0 1");
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["error"]["type"] == "parse");
}

TEST_CASE("verify passes within tolerance and fails below it") {
  const auto ok = run("verify " + problem("resonant_flow.json") + " --y0 1 1");
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["command"] == "verify");
  CHECK(j["verify"]["pass"] == true);

  const auto fail = run("verify " + problem("resonant_flow.json") +
                        " --y0 1 1 --tol 1e-20");
  CHECK(fail.code == 1);
  CHECK(Json::parse(fail.out)["verify"]["pass"] == false);
}

TEST_CASE("normal-form respects the recorded symmetry") {
  const auto r =
      run("normal-form " + problem("normal_form3d.json") + " --symmetry");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["convention"] == "new f_k = f_k + [u_k, Bx]");
  REQUIRE(j["normal_form"]["nonlinear"].size() == 1);
  CHECK(j["normal_form"]["nonlinear"][0]["degree"] == 2);
  CHECK(field_from_json(j["normal_form"]["nonlinear"][0]["part"], 3) ==
        VectorField::monomial_field(3, Monomial({1, 0, 1}), 1, Rational(3, 2)));
  // degree-3 padding leaves through the generator with eigenvalue -3
  CHECK(field_from_json(j["steps"][1]["generator"], 3) ==
        VectorField::monomial_field(3, Monomial({1, 2, 0}), 2, Rational(-1, 3)));
  CHECK(j["steps"][0]["resonant_basis"].size() == 1);

  // without the symmetry the degree-2 resonant term still survives
  const auto plain = run("normal-form " + problem("normal_form3d.json"));
  REQUIRE(plain.code == 0);
  const Json p = Json::parse(plain.out);
  CHECK(p["symmetry"].is_null());
  CHECK(field_from_json(p["normal_form"]["nonlinear"][0]["part"], 3) ==
        VectorField::monomial_field(3, Monomial({1, 0, 1}), 1, Rational(3, 2)));
}

TEST_CASE("cap overflow exits with the resource code") {
  const auto r = run("finiteness " + problem("pair3d.json") + " --cap 1");
  CHECK(r.code == 3);
  CHECK(Json::parse(r.err)["error"]["type"] == "cap");
}

TEST_CASE("argument and file errors exit with the parse code") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate x.json").code == 2);
  CHECK(run("centralizer /nonexistent/missing.json").code == 2);

  const fs::path bad = scratch_dir() / "bad.json";
  std::ofstream(bad) << "{ not json";
  const auto r = run("centralizer " + bad.string());
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["error"]["type"] == "parse");

  CHECK(run("--help").code == 0);
}
