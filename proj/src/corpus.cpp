#include "argstrength/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "argstrength/csv.hpp"
#include "argstrength/errors.hpp"

namespace argstrength {

using nlohmann::json;

std::string to_string(CorpusKind kind) {
  return kind == CorpusKind::quality ? "quality" : "persuasion";
}

CorpusKind parse_corpus_kind(const std::string& text) {
  if (text == "quality") return CorpusKind::quality;
  if (text == "persuasion") return CorpusKind::persuasion;
  throw InputError("unknown corpus kind '" + text + "' (expected quality|persuasion)");
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

StrengthLabel StrengthLabel::quality(double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw InputError("quality score " + std::to_string(score) + " outside [0,1]");
  }
  return StrengthLabel(CorpusKind::quality, score);
}

StrengthLabel StrengthLabel::persuasion(int delta) {
  if (delta != 0 && delta != 1) {
    throw InputError("delta must be 0 or 1, got " + std::to_string(delta));
  }
  return StrengthLabel(CorpusKind::persuasion, delta);
}

double StrengthLabel::quality_score() const {
  if (kind_ != CorpusKind::quality) throw InputError("label has no quality score");
  return value_;
}

int StrengthLabel::delta() const {
  if (kind_ != CorpusKind::persuasion) throw InputError("label has no delta");
  return static_cast<int>(value_);
}

Corpus::Corpus(std::string name, CorpusKind kind, std::vector<Argument> arguments)
    : name_(std::move(name)), kind_(kind), arguments_(std::move(arguments)) {
  if (arguments_.empty()) throw InputError("corpus '" + name_ + "' is empty");
  std::unordered_set<std::string> seen;
  for (const auto& a : arguments_) {
    if (a.text.empty()) throw InputError("argument '" + a.id + "' has empty text");
    if (a.strength.kind() != kind_) {
      throw InputError("argument '" + a.id + "' label kind differs from corpus kind");
    }
    if (!seen.insert(a.id).second) throw InputError("duplicate argument id '" + a.id + "'");
  }
}

std::optional<std::size_t> Corpus::find(const std::string& id) const {
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    if (arguments_[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

std::string where(const std::string& name, std::size_t line) {
  return name + ":" + std::to_string(line);
}

std::optional<std::string> optional_string(const json& rec, const char* key,
                                           const std::string& loc) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError(loc + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

double parse_double(const std::string& text, const std::string& loc, const char* field) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e) {
    throw InputError(loc + ": field '" + field + "' is not a number: '" + text + "'");
  }
  return v;
}

StrengthLabel make_label(CorpusKind kind, std::optional<double> score,
                         std::optional<double> delta, const std::string& loc) {
  try {
    if (kind == CorpusKind::quality) {
      if (!score) throw InputError("missing field 'score'");
      return StrengthLabel::quality(*score);
    }
    if (!delta) throw InputError("missing field 'delta'");
    if (*delta != 0.0 && *delta != 1.0) {
      throw InputError("field 'delta' must be 0 or 1");
    }
    return StrengthLabel::persuasion(static_cast<int>(*delta));
  } catch (const InputError& e) {
    throw InputError(loc + ": " + e.what());
  }
}

}  // namespace

Corpus read_corpus_jsonl(std::istream& in, const std::string& name, CorpusKind kind) {
  std::vector<Argument> args;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto loc = where(name, lineno);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(loc + ": malformed JSON record (" + e.what() + ")");
    }
    if (!rec.is_object()) throw InputError(loc + ": record is not a JSON object");

    auto id = optional_string(rec, "id", loc);
    if (!id || id->empty()) throw InputError(loc + ": missing field 'id'");
    auto text = optional_string(rec, "text", loc);
    if (!text) throw InputError(loc + ": missing field 'text'");
    if (text->empty()) throw InputError(loc + ": field 'text' is empty");

    auto number = [&](const char* key) -> std::optional<double> {
      auto it = rec.find(key);
      if (it == rec.end() || it->is_null()) return std::nullopt;
      if (!it->is_number()) throw InputError(loc + ": field '" + key + "' must be numeric");
      return it->get<double>();
    };
    Argument a{*id, *text, optional_string(rec, "topic", loc),
               optional_string(rec, "stance", loc), optional_string(rec, "pair_id", loc),
               make_label(kind, number("score"), number("delta"), loc)};
    if (!seen.insert(a.id).second) {
      throw InputError(loc + ": duplicate argument id '" + a.id + "'");
    }
    args.push_back(std::move(a));
  }
  if (args.empty()) throw InputError(name + ": no records");
  return Corpus(name, kind, std::move(args));
}

Corpus read_corpus_csv(std::istream& in, const std::string& name, CorpusKind kind) {
  auto records = csv::read(in);
  if (records.empty()) throw InputError(name + ": missing header row");
  const auto& header = records.front().fields;
  auto col = [&](const std::string& key) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), key);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = col("id");
  const auto text_col = col("text");
  const auto label_col = col(kind == CorpusKind::quality ? "score" : "delta");
  if (!id_col || !text_col || !label_col) {
    throw InputError(name + ":1: header must contain id,text," +
                     (kind == CorpusKind::quality ? "score" : "delta"));
  }
  const auto topic_col = col("topic");
  const auto stance_col = col("stance");
  const auto pair_col = col("pair_id");

  std::vector<Argument> args;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    const auto loc = where(name, records[r].line);
    if (f.size() != header.size()) {
      throw InputError(loc + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(f.size()));
    }
    auto opt = [&](std::optional<std::size_t> c) -> std::optional<std::string> {
      if (!c || f[*c].empty()) return std::nullopt;
      return f[*c];
    };
    if (f[*id_col].empty()) throw InputError(loc + ": missing field 'id'");
    if (f[*text_col].empty()) throw InputError(loc + ": field 'text' is empty");
    const char* label_name = kind == CorpusKind::quality ? "score" : "delta";
    if (f[*label_col].empty()) throw InputError(loc + ": missing field '" + label_name + "'");
    const double v = parse_double(f[*label_col], loc, label_name);
    Argument a{f[*id_col],  f[*text_col], opt(topic_col), opt(stance_col), opt(pair_col),
               make_label(kind, kind == CorpusKind::quality ? std::optional(v) : std::nullopt,
                          kind == CorpusKind::persuasion ? std::optional(v) : std::nullopt,
                          loc)};
    if (!seen.insert(a.id).second) {
      throw InputError(loc + ": duplicate argument id '" + a.id + "'");
    }
    args.push_back(std::move(a));
  }
  if (args.empty()) throw InputError(name + ": no records");
  return Corpus(name, kind, std::move(args));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus " + path.string());
  const auto name = path.string();
  return format == CorpusFormat::csv ? read_corpus_csv(in, name, kind)
                                     : read_corpus_jsonl(in, name, kind);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind) {
  return load_corpus(path, kind, format_from_path(path));
}

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& a : corpus.arguments()) {
    json rec{{"id", a.id}, {"text", a.text}};
    if (a.topic) rec["topic"] = *a.topic;
    if (a.stance) rec["stance"] = *a.stance;
    if (a.pair_id) rec["pair_id"] = *a.pair_id;
    if (corpus.kind() == CorpusKind::quality) {
      rec["score"] = a.strength.quality_score();
    } else {
      rec["delta"] = a.strength.delta();
    }
    out << rec.dump() << '\n';
  }
}

CorpusSummary corpus_summary(const Corpus& corpus) {
  CorpusSummary s;
  s.n = corpus.size();
  s.kind = corpus.kind();
  double sum = 0.0;
  s.dv_min = corpus[0].strength.value();
  s.dv_max = s.dv_min;
  for (const auto& a : corpus.arguments()) {
    const double v = a.strength.value();
    sum += v;
    s.dv_min = std::min(s.dv_min, v);
    s.dv_max = std::max(s.dv_max, v);
  }
  s.dv_mean = sum / static_cast<double>(s.n);
  return s;
}

}  // namespace argstrength
