#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argstrength/corpus.hpp"

namespace argstrength {

enum class Segment { whole, first_half, second_half };

std::string_view to_string(Segment s);
Segment parse_segment(std::string_view text);

/// Probabilities of one classifier (model_id) for one feature.
/// A long instance may carry first_half/second_half rows instead of a whole
/// row; at most one probability per (id, segment).
struct PredictionSet {
  std::string feature;
  std::string model_id;
  std::map<std::string, std::map<Segment, double>> rows;

  void add(const std::string& id, Segment segment, double probability);
};

/// How the two halves of a split instance combine into one per-model
/// probability and vote.
enum class HalfRule {
  mean_or,   // probability = mean of halves, vote = either half >= threshold
  mean_mean, // probability = mean of halves, vote = mean >= threshold
  max_max,   // probability = max of halves,  vote = max >= threshold
};

HalfRule parse_half_rule(std::string_view text);

struct EnsembleOptions {
  double threshold = 0.5;
  HalfRule half_rule = HalfRule::mean_or;
};

struct AggregatedRow {
  int label = 0;
  double probability = 0.0;
  int votes = 0;
  int k = 0;
  bool tie = false;  // votes == k/2 with even k; label forced to 0

  friend bool operator==(const AggregatedRow&, const AggregatedRow&) = default;
};

struct AggregatedFeature {
  std::string feature;
  std::map<std::string, AggregatedRow> rows;
};

/// Majority vote (strict, ties negative) and mean probability across models.
/// All sets must share the feature and cover the same ids.
AggregatedFeature aggregate_ensemble(const std::vector<PredictionSet>& predictions,
                                     const EnsembleOptions& options = {});

struct DistributionRow {
  std::string feature;
  std::size_t positives = 0;
  double percent = 0.0;
  double mean_probability = 0.0;
};

/// Counts over exactly the corpus ids (every id must be covered).
std::vector<DistributionRow> feature_distribution(
    const std::vector<AggregatedFeature>& features, const Corpus& corpus);

/// Reads one prediction CSV (id,probability[,segment]). The file name
/// must follow `<feature>.<model_id>[.<segment>].csv`.
PredictionSet read_prediction_file(const std::filesystem::path& path);

/// Every `*.csv` in a directory, grouped by feature (sorted by name).
std::map<std::string, std::vector<PredictionSet>> read_prediction_dir(
    const std::filesystem::path& dir);

void write_aggregated_jsonl(std::ostream& out, const AggregatedFeature& feature);
/// Groups rows by their "feature" field.
std::vector<AggregatedFeature> read_aggregated_jsonl(std::istream& in);

}  // namespace argstrength
