#include "commands.hpp"

#include <CLI/CLI.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "argstrength/corpus.hpp"
#include "argstrength/ensemble.hpp"
#include "argstrength/errors.hpp"
#include "argstrength/features.hpp"
#include "argstrength/hedging.hpp"
#include "argstrength/lexicon.hpp"
#include "argstrength/parse.hpp"
#include "argstrength/regression.hpp"
#include "argstrength/report.hpp"
#include "argstrength/stepwise.hpp"

namespace argstrength::cli {
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string corpus;
  std::string kind;
  std::string family;
  std::string predictions;
  std::string lexicon;
  std::string conllu;
  std::string aggregated;
  std::string hedges;
  std::string features;
  std::string ivs;
  std::string exclude = "surprise";
  double alpha = 0.05;
  std::string gate;
  std::string out;
  std::string format = "tsv";
  bool serial = false;
  bool standardize = false;
  bool interactions = false;
  std::string pool;
  std::string terms;
  std::string x;
  std::string series;
  int points = 100;
  double level = 0.95;
  double threshold = 0.5;
  std::string half_rule = "mean_or";
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    items.push_back(item);
  }
  return items;
}

std::ifstream open_in(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing --") + what);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

// Writes to `out` unless --out names a file or an existing directory.
class Sink {
 public:
  Sink(const std::string& target, const std::string& default_name, std::ostream& fallback)
      : stream_(&fallback) {
    if (target.empty()) return;
    fs::path path(target);
    if (fs::is_directory(path)) path /= default_name;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot write " + path.string());
    path_ = path;
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw InputError("write failed: " + path_.string());
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  fs::path path_;
};

CorpusKind require_kind(const RunConfig& c) {
  if (c.kind.empty()) throw InputError("missing --kind (quality|persuasion)");
  return parse_corpus_kind(c.kind);
}

Family family_for(const RunConfig& c, CorpusKind kind) {
  const Family natural = kind == CorpusKind::quality ? Family::linear : Family::logistic;
  if (c.family.empty()) return natural;
  Family f;
  if (c.family == "linear") f = Family::linear;
  else if (c.family == "logistic") f = Family::logistic;
  else throw InputError("unknown --family '" + c.family + "'");
  if (f != natural) {
    throw InputError("--family " + c.family + " is inconsistent with --kind " + c.kind);
  }
  return f;
}

void check_format(const RunConfig& c) {
  if (c.format != "tsv" && c.format != "json") {
    throw InputError("unknown --format '" + c.format + "' (tsv|json)");
  }
}

Execution exec_of(const RunConfig& c) { return c.serial ? Execution::serial : Execution::parallel; }

HedgeLexicon lexicon_of(const RunConfig& c) {
  return c.lexicon.empty() ? default_lexicon() : load_lexicon(c.lexicon);
}

FeatureTable load_features(const RunConfig& c, CorpusKind kind) {
  auto in = open_in(c.features, "features");
  auto table = read_feature_csv(in, kind);
  if (!c.ivs.empty()) table = table.select(split_list(c.ivs));
  return c.standardize ? table.standardized() : table;
}

int cmd_annotate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto kind = require_kind(c);
  if (c.corpus.empty()) throw InputError("missing --corpus");
  const auto corpus = load_corpus(c.corpus, kind);
  const auto lexicon = lexicon_of(c);
  ParseSource source = ParseSource::builtin();
  if (c.conllu.empty()) {
    err << "parse source: builtin tokenizer/tagger (no --conllu given)\n";
  } else {
    source = ParseSource::conllu(read_conllu_file(c.conllu));
    err << "parse source: " << c.conllu << '\n';
  }
  const auto annotations = annotate_corpus(corpus, lexicon, source, exec_of(c));

  Sink sink(c.out, "hedges.jsonl", out);
  for (const auto& a : annotations) write_annotation_jsonl(sink.stream(), a);
  sink.close();

  std::array<double, 6> sums{};
  for (const auto& a : annotations) {
    const auto v = a.features.values();
    for (std::size_t i = 0; i < v.size(); ++i) sums[i] += v[i];
  }
  err << "annotated " << annotations.size() << " arguments; means:";
  for (std::size_t i = 0; i < sums.size(); ++i) {
    err << ' ' << HedgeFeatures::column_names[i] << '='
        << format_fixed(sums[i] / static_cast<double>(annotations.size()), 4);
  }
  err << '\n';
  return ok;
}

int cmd_aggregate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.predictions.empty()) throw InputError("missing --predictions");
  EnsembleOptions options;
  options.threshold = c.threshold;
  options.half_rule = parse_half_rule(c.half_rule);
  const auto groups = read_prediction_dir(c.predictions);
  std::optional<Corpus> corpus;
  if (!c.corpus.empty()) corpus = load_corpus(c.corpus, require_kind(c));

  Sink sink(c.out, "aggregated.jsonl", out);
  std::size_t ties = 0;
  for (const auto& [feature, sets] : groups) {
    const auto agg = aggregate_ensemble(sets, options);
    if (corpus) {
      for (const auto& arg : corpus->arguments()) {
        if (!agg.rows.contains(arg.id)) {
          throw InputError("feature '" + feature + "' has no predictions for id '" + arg.id + "'");
        }
      }
    }
    for (const auto& [id, row] : agg.rows) ties += row.tie ? 1 : 0;
    write_aggregated_jsonl(sink.stream(), agg);
  }
  sink.close();
  err << "aggregated " << groups.size() << " features; " << ties << " tied votes labelled 0\n";
  return ok;
}

int cmd_build_features(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto kind = require_kind(c);
  if (c.corpus.empty()) throw InputError("missing --corpus");
  const auto corpus = load_corpus(c.corpus, kind);
  std::vector<AggregatedFeature> aggregated;
  if (!c.aggregated.empty()) {
    auto in = open_in(c.aggregated, "aggregated");
    aggregated = read_aggregated_jsonl(in);
  }
  std::vector<HedgeAnnotation> hedges;
  if (!c.hedges.empty()) {
    auto in = open_in(c.hedges, "hedges");
    hedges = read_annotations_jsonl(in);
  }
  FeatureOptions options;
  options.excluded.clear();
  for (auto& e : split_list(c.exclude)) options.excluded.insert(e);
  options.standardize = c.standardize;
  const auto ivs = c.ivs.empty() ? default_iv_selection() : split_list(c.ivs);
  const auto table = build_feature_table(corpus, aggregated, hedges, ivs, options);

  Sink sink(c.out, "features.csv", out);
  write_feature_csv(sink.stream(), table);
  sink.close();
  err << "feature table: " << table.rows() << " rows x " << table.names().size() << " IVs\n";
  return ok;
}

int cmd_regress_single(const RunConfig& c, std::ostream& out, std::ostream&) {
  check_format(c);
  const auto kind = require_kind(c);
  const auto family = family_for(c, kind);
  const auto table = load_features(c, kind);
  const auto rows = single_regressions(table, table.names(), family);

  Sink sink(c.out, c.format == "json" ? "single.json" : "single.tsv", out);
  if (c.format == "json") {
    sink.stream() << to_json(rows, family).dump(2) << '\n';
  } else {
    write_single_tsv(sink.stream(), rows, family);
    if (std::any_of(rows.begin(), rows.end(), [](const auto& r) { return is_hedge_column(r.iv); })) {
      sink.stream() << '\n';
      write_hedge_variant_tsv(sink.stream(), rows, family);
    }
  }
  sink.close();
  return ok;
}

int cmd_stepwise(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  const auto kind = require_kind(c);
  const auto family = family_for(c, kind);
  const auto table = load_features(c, kind);
  std::vector<TermSpec> pool;
  if (c.pool.empty()) {
    pool = candidate_pool(table, c.interactions);
  } else {
    for (const auto& t : split_list(c.pool)) pool.push_back(TermSpec::parse(t));
  }
  StepwiseOptions options;
  options.alpha = c.alpha;
  if (!c.gate.empty()) options.gate = parse_gate_kind(c.gate);
  options.exec = exec_of(c);
  const auto trace = stepwise(table, pool, family, options);
  for (const auto& w : trace.warnings) err << "warning: " << w << '\n';

  Sink sink(c.out, c.format == "json" ? "stepwise.json" : "stepwise.tsv", out);
  if (c.format == "json") {
    sink.stream() << to_json(trace).dump(2) << '\n';
  } else {
    write_stepwise_tsv(sink.stream(), trace);
  }
  sink.close();
  return ok;
}

int cmd_plot_data(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto kind = require_kind(c);
  const auto family = family_for(c, kind);
  const auto table = load_features(c, kind);
  if (c.terms.empty()) throw InputError("missing --terms");
  if (c.x.empty()) throw InputError("missing --x");
  if (c.points < 1) throw InputError("--points must be >= 1");

  std::vector<TermSpec> terms;
  for (const auto& t : split_list(c.terms)) terms.push_back(TermSpec::parse(t));
  const auto dm = materialize_terms(table, terms, true);
  const auto model = fit(family, dm.x, table.dv(), dm.column_names);

  auto uses = [&](const std::string& name) {
    return std::any_of(terms.begin(), terms.end(), [&](const TermSpec& t) {
      return std::find(t.names.begin(), t.names.end(), name) != t.names.end();
    });
  };
  if (!uses(c.x)) throw InputError("unknown term: --x '" + c.x + "' is not in --terms");
  if (!c.series.empty() && !uses(c.series)) {
    throw InputError("unknown term: --series '" + c.series + "' is not in --terms");
  }

  // Other IVs held at their sample means.
  const auto& names = table.names();
  Eigen::RowVectorXd base = table.values().colwise().mean();
  const std::size_t xi = table.column_index(c.x);
  const double lo = table.values().col(static_cast<Eigen::Index>(xi)).minCoeff();
  const double hi = table.values().col(static_cast<Eigen::Index>(xi)).maxCoeff();

  std::vector<double> offsets{0.0};
  std::size_t si = 0;
  double s_mean = 0.0, s_sd = 0.0;
  if (!c.series.empty()) {
    offsets = {-1.0, 0.0, 1.0};
    si = table.column_index(c.series);
    const auto col = table.values().col(static_cast<Eigen::Index>(si));
    s_mean = col.mean();
    s_sd = std::sqrt((col.array() - s_mean).square().sum() / static_cast<double>(col.size() - 1));
  }

  Sink sink(c.out, "plot.csv", out);
  auto& os = sink.stream();
  os << c.x << ",fitted,lower,upper";
  if (!c.series.empty()) os << ",series_sd," << c.series;
  os << '\n';
  for (double off : offsets) {
    Eigen::MatrixXd grid(c.points, dm.x.cols());
    std::vector<double> xs(static_cast<std::size_t>(c.points));
    for (int g = 0; g < c.points; ++g) {
      const double xv = c.points == 1 ? (lo + hi) / 2.0 : lo + (hi - lo) * g / (c.points - 1);
      xs[static_cast<std::size_t>(g)] = xv;
      Eigen::RowVectorXd row = base;
      row(static_cast<Eigen::Index>(xi)) = xv;
      if (!c.series.empty()) row(static_cast<Eigen::Index>(si)) = s_mean + off * s_sd;
      grid.row(g) = design_row(terms, names, row, true);
    }
    const auto preds = predict_with_ci(model, grid, c.level);
    for (std::size_t g = 0; g < preds.size(); ++g) {
      os << format_fixed(xs[g], 6) << ',' << format_fixed(preds[g].fitted, 6) << ','
         << format_fixed(preds[g].lower, 6) << ',' << format_fixed(preds[g].upper, 6);
      if (!c.series.empty()) os << ',' << format_fixed(off, 0) << ',' << format_fixed(s_mean + off * s_sd, 6);
      os << '\n';
    }
  }
  sink.close();
  return ok;
}

int cmd_distribution(const RunConfig& c, std::ostream& out, std::ostream&) {
  check_format(c);
  const auto kind = require_kind(c);
  if (c.corpus.empty()) throw InputError("missing --corpus");
  const auto corpus = load_corpus(c.corpus, kind);
  auto in = open_in(c.aggregated, "aggregated");
  auto aggregated = read_aggregated_jsonl(in);
  if (!c.ivs.empty()) {
    const auto keep = split_list(c.ivs);
    std::erase_if(aggregated, [&](const AggregatedFeature& f) {
      return std::find(keep.begin(), keep.end(), f.feature) == keep.end();
    });
  }
  const auto rows = feature_distribution(aggregated, corpus);

  Sink sink(c.out, c.format == "json" ? "distribution.json" : "distribution.tsv", out);
  if (c.format == "json") {
    sink.stream() << to_json(rows).dump(2) << '\n';
  } else {
    write_distribution_tsv(sink.stream(), rows);
  }
  sink.close();
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature extraction and regression analysis of argument strength", "argstrength"};
  app.require_subcommand(1);
  RunConfig c;

  auto* annotate = app.add_subcommand("annotate-hedges", "Detect hedges and write per-argument JSONL");
  auto* aggregate = app.add_subcommand("aggregate", "Aggregate ensemble predictions per feature");
  auto* build = app.add_subcommand("build-features", "Join labels, ensemble features and hedges into a CSV table");
  auto* single = app.add_subcommand("regress-single", "One regression per IV");
  auto* step = app.add_subcommand("stepwise", "Forward stepwise selection by AIC with a nested-model gate");
  auto* plot = app.add_subcommand("plot-data", "Fitted values with confidence bands over a grid");
  auto* dist = app.add_subcommand("distribution", "Positive counts and mean probability per feature");

  auto corpus_opts = [&](CLI::App* s) {
    s->add_option("--corpus", c.corpus, "Corpus file (.jsonl or .csv)");
    s->add_option("--kind", c.kind, "quality | persuasion");
  };
  auto out_opts = [&](CLI::App* s) {
    s->add_option("--out", c.out, "Output file or existing directory (default: stdout)");
  };
  auto model_opts = [&](CLI::App* s) {
    s->add_option("--kind", c.kind, "quality (linear) | persuasion (logistic)");
    s->add_option("--family", c.family, "linear | logistic; must match --kind");
    s->add_option("--features", c.features, "Feature CSV from build-features");
    s->add_option("--ivs", c.ivs, "Comma-separated IV subset");
    s->add_flag("--standardize", c.standardize, "Z-score IV columns before fitting");
  };
  auto format_opt = [&](CLI::App* s) {
    s->add_option("--format", c.format, "tsv | json");
  };

  corpus_opts(annotate);
  annotate->add_option("--lexicon", c.lexicon, "Hedge lexicon (default: bundled)");
  annotate->add_option("--conllu", c.conllu, "Pre-parsed CoNLL-U keyed by '# newdoc id'");
  annotate->add_flag("--serial", c.serial, "Disable the parallel kernel");
  out_opts(annotate);

  aggregate->add_option("--predictions", c.predictions, "Directory of <feature>.<model>[.<segment>].csv");
  corpus_opts(aggregate);
  aggregate->add_option("--threshold", c.threshold, "Vote threshold");
  aggregate->add_option("--half-rule", c.half_rule, "mean_or | mean_mean | max_max");
  out_opts(aggregate);

  corpus_opts(build);
  build->add_option("--aggregated", c.aggregated, "Aggregated JSONL from aggregate");
  build->add_option("--hedges", c.hedges, "Annotation JSONL from annotate-hedges");
  build->add_option("--ivs", c.ivs, "Comma-separated IVs (default selection otherwise)");
  build->add_option("--exclude", c.exclude, "Comma-separated excluded columns");
  build->add_flag("--standardize", c.standardize, "Z-score IV columns");
  out_opts(build);

  model_opts(single);
  format_opt(single);
  out_opts(single);

  model_opts(step);
  step->add_option("--alpha", c.alpha, "Gate significance level");
  step->add_option("--gate", c.gate, "partial_f | likelihood_ratio | wald_f");
  step->add_flag("--interactions", c.interactions, "Add pairwise interactions to the pool");
  step->add_option("--pool", c.pool, "Explicit comma-separated pool (terms like a or a:b)");
  step->add_flag("--serial", c.serial, "Disable the parallel kernel");
  format_opt(step);
  out_opts(step);

  model_opts(plot);
  plot->add_option("--terms", c.terms, "Model terms, e.g. fear,sadness,fear:sadness");
  plot->add_option("--x", c.x, "IV spanned by the grid");
  plot->add_option("--series", c.series, "Second IV drawn at mean -1/0/+1 SD");
  plot->add_option("--points", c.points, "Grid size");
  plot->add_option("--level", c.level, "Confidence level");
  out_opts(plot);

  corpus_opts(dist);
  dist->add_option("--aggregated", c.aggregated, "Aggregated JSONL from aggregate");
  dist->add_option("--ivs", c.ivs, "Comma-separated feature subset");
  format_opt(dist);
  out_opts(dist);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? ok : input_error;
  }

  try {
    if (annotate->parsed()) return cmd_annotate(c, out, err);
    if (aggregate->parsed()) return cmd_aggregate(c, out, err);
    if (build->parsed()) return cmd_build_features(c, out, err);
    if (single->parsed()) return cmd_regress_single(c, out, err);
    if (step->parsed()) return cmd_stepwise(c, out, err);
    if (plot->parsed()) return cmd_plot_data(c, out, err);
    if (dist->parsed()) return cmd_distribution(c, out, err);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return numerical_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }
  return input_error;
}

}  // namespace argstrength::cli
