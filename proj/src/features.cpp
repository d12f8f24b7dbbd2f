#include "argstrength/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "argstrength/csv.hpp"
#include "argstrength/errors.hpp"

namespace argstrength {

const std::vector<std::string>& column_registry() {
  static const std::vector<std::string> names{
      "storytelling",     "anger",           "boredom",         "disgust",
      "fear",             "guilt_shame",     "joy",             "pride",
      "relief",           "sadness",         "surprise",        "trust",
      "hedge_abs_first",  "hedge_abs_final", "hedge_abs_all",   "hedge_ratio_first",
      "hedge_ratio_final", "hedge_ratio_all"};
  return names;
}

bool is_hedge_column(std::string_view name) { return name.starts_with("hedge_"); }

bool is_probability_column(std::string_view name) {
  const auto& reg = column_registry();
  return !is_hedge_column(name) && std::find(reg.begin(), reg.end(), name) != reg.end();
}

std::string display_name(std::string_view column) {
  static const std::map<std::string, std::string, std::less<>> names{
      {"guilt_shame", "guilt/shame"},
      {"hedge_abs_first", "# hedges (first)"},
      {"hedge_abs_final", "# hedges (final)"},
      {"hedge_abs_all", "# hedges"},
      {"hedge_ratio_first", "hedge ratio (first)"},
      {"hedge_ratio_final", "hedge ratio (final)"},
      {"hedge_ratio_all", "hedge ratio"}};
  if (auto it = names.find(column); it != names.end()) return it->second;
  return std::string(column);
}

const std::vector<std::string>& default_iv_selection() {
  static const std::vector<std::string> ivs{
      "storytelling",      "anger",           "disgust",         "fear",
      "guilt_shame",       "joy",             "pride",           "relief",
      "sadness",           "trust",           "hedge_abs_first", "hedge_abs_final",
      "hedge_abs_all",     "hedge_ratio_first", "hedge_ratio_final", "hedge_ratio_all"};
  return ivs;
}

FeatureTable::FeatureTable(std::vector<std::string> ids, std::vector<std::string> names,
                           Eigen::MatrixXd values, Eigen::VectorXd dv, CorpusKind dv_kind)
    : ids_(std::move(ids)),
      names_(std::move(names)),
      values_(std::move(values)),
      dv_(std::move(dv)),
      dv_kind_(dv_kind) {
  const auto n = static_cast<Eigen::Index>(ids_.size());
  if (values_.rows() != n || dv_.size() != n ||
      values_.cols() != static_cast<Eigen::Index>(names_.size())) {
    throw InputError("feature table: inconsistent dimensions");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw InputError("feature table: duplicate column '" + name + "'");
  }
  if (!values_.allFinite() || !dv_.allFinite()) throw InputError("feature table: non-finite cell");
}

std::size_t FeatureTable::column_index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool FeatureTable::has_column(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Eigen::VectorXd FeatureTable::column(std::string_view name) const {
  return values_.col(static_cast<Eigen::Index>(column_index(name)));
}

FeatureTable FeatureTable::standardized() const {
  Eigen::MatrixXd z = values_;
  const double n = static_cast<double>(rows());
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    const double mean = z.col(c).mean();
    const double var = (z.col(c).array() - mean).square().sum() / std::max(1.0, n - 1.0);
    if (var > 0.0) z.col(c) = (z.col(c).array() - mean) / std::sqrt(var);
  }
  return FeatureTable(ids_, names_, std::move(z), dv_, dv_kind_);
}

FeatureTable FeatureTable::select(const std::vector<std::string>& names) const {
  Eigen::MatrixXd sub(values_.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    sub.col(static_cast<Eigen::Index>(j)) = column(names[j]);
  }
  return FeatureTable(ids_, names, std::move(sub), dv_, dv_kind_);
}

FeatureTable build_feature_table(const Corpus& corpus,
                                 const std::vector<AggregatedFeature>& aggregated,
                                 const std::vector<HedgeAnnotation>& hedges,
                                 const std::vector<std::string>& iv_selection,
                                 const FeatureOptions& options) {
  const auto& reg = column_registry();
  std::unordered_set<std::string> requested;
  for (const auto& iv : iv_selection) {
    if (std::find(reg.begin(), reg.end(), iv) == reg.end()) {
      throw InputError("unknown IV '" + iv + "'");
    }
    if (options.excluded.contains(iv)) {
      throw InputError("IV '" + iv + "' is excluded (absent from at least one corpus)");
    }
    if (!requested.insert(iv).second) throw InputError("IV '" + iv + "' requested twice");
  }

  std::unordered_map<std::string, const AggregatedFeature*> by_feature;
  for (const auto& f : aggregated) by_feature[f.feature] = &f;
  std::unordered_map<std::string, const HedgeAnnotation*> by_id;
  for (const auto& h : hedges) by_id[h.argument_id] = &h;

  const auto n = static_cast<Eigen::Index>(corpus.size());
  Eigen::MatrixXd values(n, static_cast<Eigen::Index>(iv_selection.size()));
  Eigen::VectorXd dv(n);
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  std::vector<std::string> gaps;

  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& arg = corpus[static_cast<std::size_t>(r)];
    ids.push_back(arg.id);
    dv(r) = arg.strength.value();
    const HedgeAnnotation* hedge = nullptr;
    if (auto it = by_id.find(arg.id); it != by_id.end()) hedge = it->second;
    for (std::size_t c = 0; c < iv_selection.size(); ++c) {
      const auto& iv = iv_selection[c];
      double v = 0.0;
      if (is_hedge_column(iv)) {
        if (!hedge) {
          gaps.push_back(arg.id + ":hedges");
          continue;
        }
        const auto vals = hedge->features.values();
        for (std::size_t k = 0; k < vals.size(); ++k) {
          if (HedgeFeatures::column_names[k] == iv) v = vals[k];
        }
      } else {
        auto fit = by_feature.find(iv);
        if (fit == by_feature.end()) {
          gaps.push_back("*:" + iv);
          continue;
        }
        auto rit = fit->second->rows.find(arg.id);
        if (rit == fit->second->rows.end()) {
          gaps.push_back(arg.id + ":" + iv);
          continue;
        }
        v = rit->second.probability;
      }
      values(r, static_cast<Eigen::Index>(c)) = v;
    }
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    std::string list;
    for (std::size_t i = 0; i < gaps.size() && i < 20; ++i) list += (i ? ", " : "") + gaps[i];
    if (gaps.size() > 20) list += ", ...";
    throw InputError("missing features (" + std::to_string(gaps.size()) + "): " + list);
  }
  FeatureTable table(std::move(ids), iv_selection, std::move(values), std::move(dv), corpus.kind());
  return options.standardize ? table.standardized() : table;
}

TermSpec TermSpec::main_effect(std::string name) { return {Kind::main, {std::move(name)}}; }

TermSpec TermSpec::interaction(std::string a, std::string b) {
  if (a == b) throw InputError("interaction needs two distinct columns, got '" + a + "' twice");
  return {Kind::interaction, {std::move(a), std::move(b)}};
}

TermSpec TermSpec::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    if (text.empty()) throw InputError("empty term");
    return main_effect(std::string(text));
  }
  auto a = text.substr(0, colon);
  auto b = text.substr(colon + 1);
  if (a.empty() || b.empty() || b.find(':') != std::string_view::npos) {
    throw InputError("bad term '" + std::string(text) + "' (expected a or a:b)");
  }
  return interaction(std::string(a), std::string(b));
}

std::string TermSpec::label() const {
  return kind == Kind::main ? names[0] : names[0] + ":" + names[1];
}

std::string TermSpec::key() const {
  if (kind == Kind::main) return names[0];
  return std::min(names[0], names[1]) + ":" + std::max(names[0], names[1]);
}

DesignMatrix materialize_terms(const FeatureTable& table, const std::vector<TermSpec>& terms,
                               bool intercept) {
  std::unordered_set<std::string> keys;
  for (const auto& t : terms) {
    if (!keys.insert(t.key()).second) throw InputError("duplicate term '" + t.label() + "'");
    for (const auto& name : t.names) table.column_index(name);  // throws on unknown
  }
  const auto n = static_cast<Eigen::Index>(table.rows());
  const Eigen::Index offset = intercept ? 1 : 0;
  DesignMatrix dm;
  dm.intercept = intercept;
  dm.x.resize(n, offset + static_cast<Eigen::Index>(terms.size()));
  if (intercept) {
    dm.x.col(0).setOnes();
    dm.column_names.emplace_back("(intercept)");
  }
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    auto col = dm.x.col(offset + static_cast<Eigen::Index>(j));
    col = table.column(t.names[0]);
    if (t.kind == TermSpec::Kind::interaction) {
      col = col.cwiseProduct(table.column(t.names[1]));
    }
    dm.column_names.push_back(t.label());
  }
  return dm;
}

Eigen::RowVectorXd design_row(const std::vector<TermSpec>& terms,
                              const std::vector<std::string>& iv_names,
                              const Eigen::RowVectorXd& iv_values, bool intercept) {
  if (static_cast<Eigen::Index>(iv_names.size()) != iv_values.size()) {
    throw InputError("design_row: names/values size mismatch");
  }
  auto value = [&](const std::string& name) {
    auto it = std::find(iv_names.begin(), iv_names.end(), name);
    if (it == iv_names.end()) throw InputError("design_row: no value for '" + name + "'");
    return iv_values(it - iv_names.begin());
  };
  const Eigen::Index offset = intercept ? 1 : 0;
  Eigen::RowVectorXd row(offset + static_cast<Eigen::Index>(terms.size()));
  if (intercept) row(0) = 1.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    double v = value(terms[j].names[0]);
    if (terms[j].kind == TermSpec::Kind::interaction) v *= value(terms[j].names[1]);
    row(offset + static_cast<Eigen::Index>(j)) = v;
  }
  return row;
}

namespace {

std::string format_cell(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip
  return std::string(buf, ptr);
}

}  // namespace

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  std::vector<std::string> header{"id"};
  header.insert(header.end(), table.names().begin(), table.names().end());
  header.emplace_back("dv");
  csv::write_row(out, header);
  const auto& x = table.values();
  for (std::size_t r = 0; r < table.rows(); ++r) {
    std::vector<std::string> row{table.ids()[r]};
    for (Eigen::Index c = 0; c < x.cols(); ++c) row.push_back(format_cell(x(static_cast<Eigen::Index>(r), c)));
    row.push_back(format_cell(table.dv()(static_cast<Eigen::Index>(r))));
    csv::write_row(out, row);
  }
}

FeatureTable read_feature_csv(std::istream& in, CorpusKind kind) {
  const auto records = csv::read(in);
  if (records.empty()) throw InputError("feature csv: missing header");
  const auto& header = records.front().fields;
  if (header.size() < 2 || header.front() != "id" || header.back() != "dv") {
    throw InputError("feature csv: header must be id,<columns...>,dv");
  }
  std::vector<std::string> names(header.begin() + 1, header.end() - 1);
  const auto n = static_cast<Eigen::Index>(records.size() - 1);
  Eigen::MatrixXd values(n, static_cast<Eigen::Index>(names.size()));
  Eigen::VectorXd dv(n);
  std::vector<std::string> ids;
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& rec = records[static_cast<std::size_t>(r) + 1];
    if (rec.fields.size() != header.size()) {
      throw InputError("feature csv line " + std::to_string(rec.line) + ": wrong number of fields");
    }
    ids.push_back(rec.fields.front());
    for (std::size_t c = 1; c < rec.fields.size(); ++c) {
      const auto& text = rec.fields[c];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError("feature csv line " + std::to_string(rec.line) + ": bad number '" + text + "'");
      }
      if (c + 1 == rec.fields.size()) {
        dv(r) = v;
      } else {
        values(r, static_cast<Eigen::Index>(c - 1)) = v;
      }
    }
    if (kind == CorpusKind::persuasion && dv(r) != 0.0 && dv(r) != 1.0) {
      throw InputError("feature csv line " + std::to_string(rec.line) + ": dv must be 0/1");
    }
    if (kind == CorpusKind::quality && !(dv(r) >= 0.0 && dv(r) <= 1.0)) {
      throw InputError("feature csv line " + std::to_string(rec.line) + ": dv outside [0,1]");
    }
  }
  return FeatureTable(std::move(ids), std::move(names), std::move(values), std::move(dv), kind);
}

}  // namespace argstrength
