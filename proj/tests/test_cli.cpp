#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "fraclap/cli.hpp"
#include "fraclap/domain.hpp"
#include "json.hpp"
#include "test_support.hpp"

using fraclap::testing::q1_closed;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fraclap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) v.push_back(c);
  if (!line.empty() && line.back() == ',') v.emplace_back();
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fraclap_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("kernel command") {
  const auto r = run({"kernel", "--dim", "1", "--alpha", "1", "--offsets", "1,2,3"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "v0,q_time,q_fourier,abs_diff");
  for (int m = 1; m <= 3; ++m) {
    const auto c = cells(ls[static_cast<std::size_t>(m)]);
    CHECK(std::stoi(c[0]) == m);
    CHECK(std::abs(std::stod(c[1]) - q1_closed(m)) <= 1e-10);
    CHECK(std::abs(std::stod(c[2]) - q1_closed(m)) <= 1e-10);
  }

  const auto r2 = run({"kernel", "--dim", "2", "--alpha", "0.5", "--offsets", "1,0", "--format", "json"});
  REQUIRE(r2.code == 0);
  const auto doc = nlohmann::json::parse(r2.out);
  REQUIRE(doc.size() == 1);
  const double qt = doc[0]["q_time"], qf = doc[0]["q_fourier"], diff = doc[0]["abs_diff"];
  CHECK(std::abs(qt - qf) == doctest::Approx(diff));
  CHECK(diff <= 1e-8 * qt);
}

TEST_CASE("parse errors exit with 2") {
  const auto r = run({"kernel", "--dim", "1", "--offsets", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--alpha") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"kernel", "--dim", "1", "--alpha", "2.5", "--offsets", "1"}).code == 2);
  CHECK(run({"kernel", "--dim", "2", "--alpha", "1", "--offsets", "1,0,1"}).code == 2);
  CHECK(run({"kernel", "--dim", "1", "--alpha", "1", "--offsets", "0"}).code == 2);
  CHECK(run({"spectrum", "--alpha", "1", "--domain", "hexagon:3"}).code == 2);
  CHECK(run({"spectrum", "--alpha", "1"}).code == 2);
  CHECK(run({"bounds", "--alpha", "1", "--domain", "path:x"}).code == 2);
  CHECK(run({"sweep", "--family", "tree", "--sizes", "5", "--alpha", "1"}).code == 2);
  CHECK(run({"sweep", "--family", "path", "--sizes", "9:3:1", "--alpha", "1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("unreachable quadrature tolerance exits with 3") {
  const auto r = run({"kernel", "--dim", "1", "--alpha", "0.7", "--offsets", "3", "--rel-tol", "1e-19", "--abs-tol",
                      "1e-300"});
  CHECK(r.code == 3);
  CHECK(r.err.find("achieved") != std::string::npos);
}

TEST_CASE("spectrum command") {
  const auto r = run({"spectrum", "--domain", "path:2", "--alpha", "1"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "k,lambda_k");
  CHECK(std::stod(cells(ls[1])[1]) == doctest::Approx(8.0 / (3.0 * fraclap::testing::kPi)).epsilon(1e-10));

  const auto vec = temp_path("vectors.csv"), mat = temp_path("matrix.csv");
  const auto r2 = run({"spectrum", "--domain", "lshape:2", "--alpha", "0.5", "--format", "json", "--eigenvectors",
                       vec.string(), "--matrix", mat.string()});
  REQUIRE(r2.code == 0);
  const auto doc = nlohmann::json::parse(r2.out);
  CHECK(doc["omega_size"] == 12);
  CHECK(doc["eigenvalues"].size() == 12);
  CHECK(doc["validation"]["passed"] == true);
  CHECK(lines(slurp(vec)).size() == 13);
  CHECK(lines(slurp(mat)).size() == 12);
  std::filesystem::remove(vec);
  std::filesystem::remove(mat);
}

TEST_CASE("size guard") {
  CHECK(run({"spectrum", "--domain", "path:30", "--alpha", "1", "--max-size", "20"}).code == 2);
  CHECK(run({"spectrum", "--domain", "box:70x70", "--alpha", "1"}).code == 2);
  CHECK(run({"spectrum", "--domain", "path:30", "--alpha", "1", "--max-size", "30"}).code == 0);
}

TEST_CASE("bounds command") {
  const auto r = run({"bounds", "--domain", "path:50", "--alpha", "1"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls.size() == 51);
  CHECK(ls[0].rfind("k,avg_k,upper_avg,lower_avg,lambda_next,upper_next,", 0) == 0);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto c = cells(ls[i]);
    CHECK(c.size() == 13);
    if (!c[9].empty()) CHECK(std::stod(c[9]) >= 0.0);
  }
  CHECK(run({"bounds", "--domain", "box:8x8", "--alpha", "1.5"}).code == 0);
  const auto svg = temp_path("bounds.svg");
  const auto r3 = run({"bounds", "--domain", "lshape:4", "--alpha", "0.5", "--format", "json", "--plot", svg.string()});
  CHECK(r3.code == 0);
  CHECK(nlohmann::json::parse(r3.out)["passed"] == true);
  const auto text = slurp(svg);
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(text.find("lshape:4") != std::string::npos);
  std::filesystem::remove(svg);
}

TEST_CASE("plot command") {
  const auto r = run({"plot", "--domain", "box:6x6", "--alpha", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("</svg>") != std::string::npos);
  CHECK(r.out.find("href") == std::string::npos);
}

TEST_CASE("verify command") {
  const auto r = run({"verify"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["passed"] == true);
  bool has_lemma = false, has_form = false;
  for (const auto& c : doc["checks"]) {
    const std::string name = c["name"];
    has_lemma = has_lemma || name.find("lshape:3/alpha=1.5/bounds/lemma5") != std::string::npos;
    has_form = has_form || name.find("box:6x6/alpha=0.5/fourier/form") != std::string::npos;
  }
  CHECK(has_lemma);
  CHECK(has_form);

  // Loose tolerances break the dual-method agreement; the failing check is named.
  const auto loose = run({"verify", "--domain", "path:6", "--alpha", "1", "--grid", "64", "--rel-tol", "1e-2",
                          "--abs-tol", "1e-2"});
  CHECK(loose.code == 4);
  CHECK(loose.err.find("kernel/dual_method") != std::string::npos);
}

TEST_CASE("verify with domain files") {
  const auto bad = temp_path("corrupt.json");
  {
    std::ofstream f(bad);
    f << R"({"dim": 2, "vertices": [[0, 0], [1)";
  }
  CHECK(run({"verify", "--domain-file", bad.string()}).code == 2);
  std::filesystem::remove(bad);
  CHECK(run({"verify", "--domain-file", temp_path("missing.json").string()}).code == 2);

  const auto split = temp_path("disconnected.json");
  fraclap::write_domain(fraclap::Domain(2, {{0, 0}, {1, 0}, {6, 6}, {6, 7}}), split);
  const auto plain = run({"verify", "--domain-file", split.string(), "--alpha", "1"});
  CHECK(plain.code == 0);
  const auto skipped = run({"verify", "--domain-file", split.string(), "--alpha", "1", "--skip-ground-state"});
  CHECK(skipped.code == 0);
  int n_skipped = 0;
  const auto doc = nlohmann::json::parse(skipped.out);
  for (const auto& c : doc["checks"]) n_skipped += c["skipped"].get<bool>();
  CHECK(n_skipped == 2);
  std::filesystem::remove(split);
}

TEST_CASE("sweep command") {
  const std::vector<std::string> args = {"sweep", "--family", "box", "--dim", "1", "--sizes", "10:100:10", "--alpha", "1"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 11);
  CHECK(ls[0] == "family,param,dim,alpha,size,lambda_1,gap_upper_avg,gap_upper_next,gap_lower,boundary");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto c = cells(ls[i]);
    CHECK(std::stoi(c[4]) == static_cast<int>(10 * i));
    for (int col : {6, 7, 8}) CHECK(std::stod(c[static_cast<std::size_t>(col)]) >= 0.0);
  }
  CHECK(run(args).out == a.out);

  const std::vector<std::string> rnd = {"sweep", "--family", "random", "--sizes", "8,16,24", "--alpha", "0.5,1.5",
                                        "--seed", "42"};
  const auto r1 = run(rnd);
  REQUIRE(r1.code == 0);
  CHECK(lines(r1.out).size() == 7);
  ::setenv("FRACLAP_THREADS", "1", 1);
  const auto r2 = run(rnd);
  ::unsetenv("FRACLAP_THREADS");
  CHECK(r2.out == r1.out);

  const auto timed = run({"sweep", "--family", "lshape", "--sizes", "2,3", "--alpha", "1", "--timing"});
  CHECK(timed.code == 0);
  CHECK(lines(timed.out)[0].find(",runtime_s") != std::string::npos);
}

TEST_CASE("output files and help") {
  const auto out = temp_path("kernel.csv");
  CHECK(run({"kernel", "--dim", "1", "--alpha", "1", "--offsets", "4", "-o", out.string()}).code == 0);
  CHECK(lines(slurp(out)).size() == 2);
  std::filesystem::remove(out);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("sweep") != std::string::npos);
}

#ifdef FRACLAP_BINARY
TEST_CASE("installed executable wires main to the same entry point") {
  const std::string cmd = std::string(FRACLAP_BINARY) + " kernel --dim 1 --alpha 1 --offsets 2 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(FRACLAP_BINARY) + " kernel --dim 1 --offsets 2 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
#endif
