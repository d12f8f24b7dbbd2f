#include "argstrength/ensemble.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "argstrength/csv.hpp"
#include "argstrength/errors.hpp"

namespace argstrength {

std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::whole: return "whole";
    case Segment::first_half: return "first_half";
    case Segment::second_half: return "second_half";
  }
  return "whole";
}

Segment parse_segment(std::string_view text) {
  if (text.empty() || text == "whole") return Segment::whole;
  if (text == "first_half") return Segment::first_half;
  if (text == "second_half") return Segment::second_half;
  throw InputError("unknown segment '" + std::string(text) + "'");
}

HalfRule parse_half_rule(std::string_view text) {
  if (text == "mean_or") return HalfRule::mean_or;
  if (text == "mean_mean") return HalfRule::mean_mean;
  if (text == "max_max") return HalfRule::max_max;
  throw InputError("unknown half rule '" + std::string(text) + "' (mean_or|mean_mean|max_max)");
}

void PredictionSet::add(const std::string& id, Segment segment, double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InputError(feature + "." + model_id + ": probability for '" + id +
                     "' outside [0,1]");
  }
  auto& segs = rows[id];
  const bool whole = segment == Segment::whole;
  if (!segs.empty() && (segs.contains(Segment::whole) || whole)) {
    if (!segs.contains(segment)) {
      throw InputError(feature + "." + model_id + ": '" + id +
                       "' mixes whole and half-segment probabilities");
    }
  }
  if (!segs.emplace(segment, probability).second) {
    throw InputError(feature + "." + model_id + ": duplicate probability for '" + id + "' (" +
                     std::string(to_string(segment)) + ")");
  }
}

namespace {

struct ModelVerdict {
  double probability;
  bool vote;
};

ModelVerdict per_model(const PredictionSet& set, const std::string& id,
                       const std::map<Segment, double>& segs, const EnsembleOptions& opt) {
  const auto whole = segs.find(Segment::whole);
  const auto first = segs.find(Segment::first_half);
  const auto second = segs.find(Segment::second_half);
  const bool has_halves = first != segs.end() || second != segs.end();
  if (whole != segs.end() && !has_halves) {
    return {whole->second, whole->second >= opt.threshold};
  }
  if (whole != segs.end() || first == segs.end() || second == segs.end()) {
    throw InputError(set.feature + "." + set.model_id + ": instance '" + id +
                     "' needs either a whole prediction or both halves");
  }
  const double a = first->second;
  const double b = second->second;
  switch (opt.half_rule) {
    case HalfRule::mean_or:
      return {(a + b) / 2.0, a >= opt.threshold || b >= opt.threshold};
    case HalfRule::mean_mean:
      return {(a + b) / 2.0, (a + b) / 2.0 >= opt.threshold};
    case HalfRule::max_max:
      return {std::max(a, b), std::max(a, b) >= opt.threshold};
  }
  return {0.0, false};
}

}  // namespace

AggregatedFeature aggregate_ensemble(const std::vector<PredictionSet>& predictions,
                                     const EnsembleOptions& options) {
  if (predictions.empty()) throw InputError("aggregate_ensemble: no prediction sets");
  const auto& feature = predictions.front().feature;
  std::set<std::string> models;
  std::set<std::string> all_ids;
  for (const auto& p : predictions) {
    if (p.feature != feature) {
      throw InputError("aggregate_ensemble: mixed features '" + feature + "' and '" + p.feature + "'");
    }
    if (!models.insert(p.model_id).second) {
      throw InputError("aggregate_ensemble: model '" + p.model_id + "' given twice for " + feature);
    }
    for (const auto& [id, _] : p.rows) all_ids.insert(id);
  }
  for (const auto& p : predictions) {
    std::vector<std::string> missing;
    for (const auto& id : all_ids) {
      if (!p.rows.contains(id)) missing.push_back(id);
    }
    if (!missing.empty()) {
      std::string list;
      for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? ", " : "") + missing[i];
      if (missing.size() > 20) list += ", ...";
      throw InputError("aggregate_ensemble: " + feature + "." + p.model_id + " misses " +
                       std::to_string(missing.size()) + " id(s): " + list);
    }
  }

  const int k = static_cast<int>(predictions.size());
  AggregatedFeature out;
  out.feature = feature;
  std::vector<double> probs(static_cast<std::size_t>(k));
  for (const auto& id : all_ids) {
    AggregatedRow row;
    row.k = k;
    for (int m = 0; m < k; ++m) {
      const auto& set = predictions[static_cast<std::size_t>(m)];
      const auto v = per_model(set, id, set.rows.at(id), options);
      probs[static_cast<std::size_t>(m)] = v.probability;
      row.votes += v.vote ? 1 : 0;
    }
    // Sorting first makes the mean independent of model order bit for bit.
    std::sort(probs.begin(), probs.end());
    row.probability = std::accumulate(probs.begin(), probs.end(), 0.0) / k;
    row.label = 2 * row.votes > k ? 1 : 0;
    row.tie = k % 2 == 0 && 2 * row.votes == k;
    out.rows.emplace(id, row);
  }
  return out;
}

std::vector<DistributionRow> feature_distribution(const std::vector<AggregatedFeature>& features,
                                                  const Corpus& corpus) {
  std::vector<DistributionRow> out;
  for (const auto& f : features) {
    DistributionRow row;
    row.feature = f.feature;
    double sum = 0.0;
    for (const auto& a : corpus.arguments()) {
      auto it = f.rows.find(a.id);
      if (it == f.rows.end()) {
        throw InputError("feature '" + f.feature + "' has no annotation for '" + a.id + "'");
      }
      row.positives += static_cast<std::size_t>(it->second.label);
      sum += it->second.probability;
    }
    const auto n = static_cast<double>(corpus.size());
    row.percent = 100.0 * static_cast<double>(row.positives) / n;
    row.mean_probability = sum / n;
    out.push_back(row);
  }
  return out;
}

PredictionSet read_prediction_file(const std::filesystem::path& path) {
  const auto filename = path.filename().string();
  if (!filename.ends_with(".csv")) {
    throw InputError("prediction file '" + filename + "' must end in .csv");
  }
  const auto stem = filename.substr(0, filename.size() - 4);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto dot = stem.find('.', start);
    parts.push_back(stem.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
    throw InputError("prediction file '" + filename +
                     "' must be named <feature>.<model_id>[.<segment>].csv");
  }
  const Segment file_segment = parts.size() == 3 ? parse_segment(parts[2]) : Segment::whole;

  PredictionSet set{parts[0], parts[1], {}};
  const auto records = csv::read_file(path.string());
  if (records.empty()) throw InputError(filename + ": missing header");
  const auto& header = records.front().fields;
  auto col = [&](std::string_view key) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), key);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = col("id");
  const auto p_col = col("probability");
  const auto seg_col = col("segment");
  if (!id_col || !p_col) throw InputError(filename + ":1: header must contain id,probability");
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    const auto loc = filename + ":" + std::to_string(records[r].line);
    if (f.size() != header.size()) throw InputError(loc + ": wrong number of fields");
    double p = 0.0;
    const auto& text = f[*p_col];
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw InputError(loc + ": bad probability '" + text + "'");
    }
    const Segment seg = seg_col && !f[*seg_col].empty() ? parse_segment(f[*seg_col]) : file_segment;
    try {
      set.add(f[*id_col], seg, p);
    } catch (const InputError& e) {
      throw InputError(loc + ": " + e.what());
    }
  }
  return set;
}

std::map<std::string, std::vector<PredictionSet>> read_prediction_dir(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("prediction directory '" + dir.string() + "' not found");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::map<std::string, PredictionSet>> merged;
  for (const auto& f : files) {
    auto set = read_prediction_file(f);
    auto& slot = merged[set.feature];
    auto it = slot.find(set.model_id);
    if (it == slot.end()) {
      slot.emplace(set.model_id, std::move(set));
      continue;
    }
    for (const auto& [id, segs] : set.rows) {
      for (const auto& [seg, p] : segs) it->second.add(id, seg, p);
    }
  }
  std::map<std::string, std::vector<PredictionSet>> out;
  for (auto& [feature, by_model] : merged) {
    for (auto& [model, set] : by_model) out[feature].push_back(std::move(set));
  }
  return out;
}

void write_aggregated_jsonl(std::ostream& out, const AggregatedFeature& feature) {
  for (const auto& [id, row] : feature.rows) {
    nlohmann::json rec{{"feature", feature.feature}, {"id", id},       {"label", row.label},
                       {"probability", row.probability}, {"votes", row.votes}, {"k", row.k}};
    if (row.tie) rec["tie"] = true;
    out << rec.dump() << '\n';
  }
}

std::vector<AggregatedFeature> read_aggregated_jsonl(std::istream& in) {
  std::map<std::string, AggregatedFeature> by_feature;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      const auto feature = rec.at("feature").get<std::string>();
      AggregatedRow row;
      row.label = rec.at("label").get<int>();
      row.probability = rec.at("probability").get<double>();
      row.votes = rec.value("votes", 0);
      row.k = rec.value("k", 0);
      row.tie = rec.value("tie", false);
      if (!(row.probability >= 0.0 && row.probability <= 1.0) || (row.label != 0 && row.label != 1)) {
        throw InputError("aggregated line " + std::to_string(lineno) + ": label/probability out of range");
      }
      auto& f = by_feature[feature];
      f.feature = feature;
      if (!f.rows.emplace(rec.at("id").get<std::string>(), row).second) {
        throw InputError("aggregated line " + std::to_string(lineno) + ": duplicate id for " + feature);
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError("aggregated line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::vector<AggregatedFeature> out;
  for (auto& [_, f] : by_feature) out.push_back(std::move(f));
  return out;
}

}  // namespace argstrength
