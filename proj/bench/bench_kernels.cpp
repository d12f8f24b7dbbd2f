#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "argstrength/features.hpp"
#include "argstrength/hedging.hpp"
#include "argstrength/lexicon.hpp"
#include "argstrength/stepwise.hpp"

using namespace argstrength;

namespace {

Corpus synthetic_corpus(int n) {
  const std::vector<std::string> sentences{
      "I believe the evidence is pretty strong, but we should wait.",
      "The new policy will probably reduce costs by about $5 per household.",
      "I get the impression that most people do not necessarily agree.",
      "There are around ten reasons to reject this claim outright.",
      "She has a really pretty cat and it left a lasting impression.",
      "Prices rose sharply last year and wages did not keep up.",
  };
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, sentences.size() - 1);
  std::vector<Argument> args;
  for (int i = 0; i < n; ++i) {
    std::string text;
    for (int s = 0; s < 8; ++s) text += (s ? " " : "") + sentences[pick(rng)];
    args.push_back({"a" + std::to_string(i), text, {}, {}, {}, StrengthLabel::quality(0.5)});
  }
  return Corpus("bench", CorpusKind::quality, std::move(args));
}

FeatureTable synthetic_table(int n, int p) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, p);
  for (auto& v : x.reshaped()) v = z(rng);
  Eigen::VectorXd y = 0.3 * x.col(0) - 0.2 * x.col(1);
  for (auto& v : y) v += z(rng);
  std::vector<std::string> ids, names;
  for (int i = 0; i < n; ++i) ids.push_back("r" + std::to_string(i));
  for (int j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
  return FeatureTable(ids, names, x, y, CorpusKind::quality);
}

void annotate(benchmark::State& state, Execution exec) {
  const auto corpus = synthetic_corpus(static_cast<int>(state.range(0)));
  const auto lex = default_lexicon();
  const auto source = ParseSource::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(annotate_corpus(corpus, lex, source, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void select(benchmark::State& state, Execution exec) {
  const auto table = synthetic_table(static_cast<int>(state.range(0)), 12);
  const auto pool = candidate_pool(table);
  StepwiseOptions opt;
  opt.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(stepwise(table, pool, Family::linear, opt));
}

}  // namespace

BENCHMARK_CAPTURE(annotate, serial, Execution::serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(annotate, parallel, Execution::parallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(select, serial, Execution::serial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(select, parallel, Execution::parallel)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
