#include <doctest/doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using argstrength::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// A quality corpus whose score depends on a storytelling probability and a
// hedge word, plus ten-model prediction files for three features.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / "argstrength_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir / "pred");
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::ofstream corpus(dir / "corpus.jsonl");
    std::vector<std::string> ids;
    std::vector<double> story(150);
    for (int i = 0; i < 150; ++i) {
      const std::string id = "q" + std::to_string(i);
      ids.push_back(id);
      story[static_cast<std::size_t>(i)] = u(rng);
      const bool hedge = u(rng) < 0.4;
      std::string text = hedge ? "I think the policy might help people. " : "The policy helps people. ";
      text += "It is a matter of record.";
      const double score =
          std::clamp(0.5 + 0.3 * story[static_cast<std::size_t>(i)] - (hedge ? 0.1 : 0.0) + 0.1 * (u(rng) - 0.5),
                     0.0, 1.0);
      nlohmann::json rec{{"id", id}, {"text", text}, {"score", score}};
      corpus << rec.dump() << '\n';
    }
    for (const std::string feature : {"storytelling", "fear", "sadness"}) {
      for (int m = 0; m < 10; ++m) {
        std::ofstream f(dir / "pred" / (feature + ".m" + std::to_string(m) + ".csv"));
        f << "id,probability\n";
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const double base = feature == "storytelling" ? story[i] : u(rng);
          const double p = std::clamp(base + 0.05 * (u(rng) - 0.5), 0.0, 1.0);
          f << ids[i] << ',' << p << '\n';
        }
      }
    }
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("full pipeline") {
  const Workspace ws;
  const auto corpus = ws.path("corpus.jsonl");

  auto r = invoke({"annotate-hedges", "--corpus", corpus, "--kind", "quality", "--out", ws.path("hedges.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(count_lines(slurp(ws.path("hedges.jsonl"))) == 150);
  CHECK(r.err.find("builtin") != std::string::npos);
  CHECK(r.err.find("hedge_abs_all=") != std::string::npos);

  r = invoke({"aggregate", "--predictions", ws.path("pred"), "--corpus", corpus, "--kind", "quality", "--out",
              ws.path("agg.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(count_lines(slurp(ws.path("agg.jsonl"))) == 450);

  r = invoke({"build-features", "--corpus", corpus, "--kind", "quality", "--aggregated", ws.path("agg.jsonl"),
              "--hedges", ws.path("hedges.jsonl"), "--ivs",
              "storytelling,fear,sadness,hedge_abs_first,hedge_abs_final,hedge_abs_all,hedge_ratio_first,"
              "hedge_ratio_final,hedge_ratio_all",
              "--out", ws.path("features.csv")});
  REQUIRE(r.code == 0);
  const auto features = ws.path("features.csv");
  CHECK(count_lines(slurp(features)) == 151);

  r = invoke({"regress-single", "--features", features, "--kind", "quality"});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("IV\tadj_r2\tp\tsign\tcoef\n"));
  CHECK(r.out.find("\nstorytelling\t") != std::string::npos);
  CHECK(r.out.find("score\tsent\tadj_r2\tcoef\tp\tsign\n") != std::string::npos);
  CHECK(r.out.find("\nratio\tall\t") != std::string::npos);
  CHECK(r.out.find("\nabsolute\tfirst\t") != std::string::npos);

  r = invoke({"regress-single", "--features", features, "--kind", "quality", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 9);
  CHECK(j[0]["iv"] == "storytelling");
  CHECK(j[0]["coef"].get<double>() > 0.0);

  r = invoke({"stepwise", "--features", features, "--kind", "quality", "--ivs", "storytelling,fear,hedge_abs_all"});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("IVs\tadjusted_r2_pct\tsign\nstorytelling\t"));
  CHECK(r.out.find("# final model") != std::string::npos);

  r = invoke({"stepwise", "--features", features, "--kind", "quality", "--ivs", "storytelling,fear,hedge_abs_all",
              "--alpha", "0"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, seed, next;
  std::getline(lines, header);
  std::getline(lines, seed);
  std::getline(lines, next);
  CHECK(seed.ends_with("\tx"));
  CHECK(next.empty());

  r = invoke({"stepwise", "--features", features, "--kind", "quality", "--format", "json", "--pool", "fear"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["steps"].size() == 1);

  r = invoke({"plot-data", "--features", features, "--kind", "quality", "--terms", "storytelling", "--x",
              "storytelling", "--points", "1"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.starts_with("storytelling,fitted,lower,upper\n"));

  r = invoke({"plot-data", "--features", features, "--kind", "quality", "--terms", "fear,sadness,fear:sadness",
              "--x", "fear", "--series", "sadness", "--points", "5"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 16);
  CHECK(r.out.find(",-1,") != std::string::npos);
  CHECK(r.out.find(",1,") != std::string::npos);

  r = invoke({"distribution", "--corpus", corpus, "--kind", "quality", "--aggregated", ws.path("agg.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("feature\t#\t%\tmean_p\n"));
  CHECK(count_lines(r.out) == 4);
  r = invoke({"distribution", "--corpus", corpus, "--kind", "quality", "--aggregated", ws.path("agg.jsonl"),
              "--ivs", "fear"});
  CHECK(count_lines(r.out) == 2);
  r = invoke({"distribution", "--corpus", corpus, "--kind", "quality", "--aggregated", ws.path("agg.jsonl"),
              "--ivs", "none"});
  CHECK(r.out == "feature\t#\t%\tmean_p\n");
}

TEST_CASE("identical inputs give byte-identical reports") {
  const Workspace ws;
  const auto corpus = ws.path("corpus.jsonl");
  REQUIRE(invoke({"annotate-hedges", "--corpus", corpus, "--kind", "quality", "--out", ws.path("a.jsonl")}).code == 0);
  REQUIRE(invoke({"annotate-hedges", "--corpus", corpus, "--kind", "quality", "--serial", "--out",
                  ws.path("b.jsonl")}).code == 0);
  CHECK(slurp(ws.path("a.jsonl")) == slurp(ws.path("b.jsonl")));

  REQUIRE(invoke({"aggregate", "--predictions", ws.path("pred"), "--out", ws.path("agg.jsonl")}).code == 0);
  REQUIRE(invoke({"build-features", "--corpus", corpus, "--kind", "quality", "--aggregated", ws.path("agg.jsonl"),
                  "--hedges", ws.path("a.jsonl"), "--ivs", "storytelling,fear,sadness,hedge_abs_all", "--out",
                  ws.path("f.csv")}).code == 0);
  const std::vector<std::string> step{"stepwise", "--features", ws.path("f.csv"), "--kind", "quality"};
  const auto first = invoke(step);
  auto serial = step;
  serial.push_back("--serial");
  CHECK(invoke(step).out == first.out);
  CHECK(invoke(serial).out == first.out);
}

TEST_CASE("output into an existing directory uses a default name") {
  const Workspace ws;
  fs::create_directories(ws.dir / "out");
  REQUIRE(invoke({"annotate-hedges", "--corpus", ws.path("corpus.jsonl"), "--kind", "quality", "--out",
                  ws.path("out")}).code == 0);
  CHECK(fs::exists(ws.dir / "out" / "hedges.jsonl"));
}

TEST_CASE("exit codes") {
  const Workspace ws;
  std::ofstream(ws.path("empty.jsonl")).close();
  auto r = invoke({"annotate-hedges", "--corpus", ws.path("empty.jsonl"), "--kind", "quality"});
  CHECK(r.code == 1);
  CHECK(r.err.find("empty") != std::string::npos);

  CHECK(invoke({}).code == 1);
  CHECK(invoke({"bogus"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"annotate-hedges", "--corpus", ws.path("missing.jsonl"), "--kind", "quality"}).code == 1);
  CHECK(invoke({"annotate-hedges", "--corpus", ws.path("corpus.jsonl"), "--kind", "nope"}).code == 1);

  std::ofstream(ws.path("sep.csv")) << "id,x,dv\na,0,0\nb,0.1,0\nc,0.2,0\nd,0.8,1\ne,0.9,1\nf,1,1\n";
  r = invoke({"plot-data", "--features", ws.path("sep.csv"), "--kind", "persuasion", "--terms", "x", "--x", "x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("separation") != std::string::npos);
  CHECK(invoke({"regress-single", "--features", ws.path("sep.csv"), "--kind", "persuasion", "--family", "linear"})
            .code == 1);
  CHECK(invoke({"regress-single", "--features", ws.path("sep.csv"), "--kind", "persuasion", "--format", "xml"})
            .code == 1);

  std::ofstream(ws.path("lin.csv")) << "id,x,z,dv\na,0,1,0.1\nb,1,1,0.3\nc,2,1,0.2\nd,3,1,0.6\ne,4,1,0.5\n";
  r = invoke({"plot-data", "--features", ws.path("lin.csv"), "--kind", "quality", "--terms", "x", "--x", "w"});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown term") != std::string::npos);
  CHECK(invoke({"plot-data", "--features", ws.path("lin.csv"), "--kind", "quality", "--terms", "w", "--x", "w"})
            .code == 1);
  r = invoke({"regress-single", "--features", ws.path("lin.csv"), "--kind", "quality"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nx\t") != std::string::npos);
  CHECK(r.out.find("\nz\terror") != std::string::npos);
}
