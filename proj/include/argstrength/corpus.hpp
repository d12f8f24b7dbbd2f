#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace argstrength {

/// Which notion of argument strength a corpus carries.
/// quality: continuous crowd score in [0,1]; persuasion: binary delta label.
enum class CorpusKind { quality, persuasion };

enum class CorpusFormat { jsonl, csv };

std::string to_string(CorpusKind kind);
CorpusKind parse_corpus_kind(const std::string& text);
CorpusFormat format_from_path(const std::filesystem::path& path);

class StrengthLabel {
 public:
  static StrengthLabel quality(double score);
  static StrengthLabel persuasion(int delta);

  CorpusKind kind() const { return kind_; }
  double quality_score() const;
  int delta() const;
  /// The dependent-variable value: score for quality, 0/1 for persuasion.
  double value() const { return value_; }

  friend bool operator==(const StrengthLabel&, const StrengthLabel&) = default;

 private:
  StrengthLabel(CorpusKind kind, double value) : kind_(kind), value_(value) {}
  CorpusKind kind_;
  double value_;
};

struct Argument {
  std::string id;
  std::string text;
  std::optional<std::string> topic;
  std::optional<std::string> stance;
  std::optional<std::string> pair_id;
  StrengthLabel strength;

  friend bool operator==(const Argument&, const Argument&) = default;
};

/// Immutable after construction; the constructor enforces the id-uniqueness,
/// non-empty text and shared-kind invariants.
class Corpus {
 public:
  Corpus(std::string name, CorpusKind kind, std::vector<Argument> arguments);

  const std::string& name() const { return name_; }
  CorpusKind kind() const { return kind_; }
  const std::vector<Argument>& arguments() const { return arguments_; }
  std::size_t size() const { return arguments_.size(); }
  const Argument& operator[](std::size_t i) const { return arguments_[i]; }

  /// Index of an argument id, or nullopt.
  std::optional<std::size_t> find(const std::string& id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.kind_ == b.kind_ && a.arguments_ == b.arguments_;
  }

 private:
  std::string name_;
  CorpusKind kind_;
  std::vector<Argument> arguments_;
};

Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind,
                   CorpusFormat format);
Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind);

Corpus read_corpus_jsonl(std::istream& in, const std::string& name,
                         CorpusKind kind);
Corpus read_corpus_csv(std::istream& in, const std::string& name,
                       CorpusKind kind);

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus);

struct CorpusSummary {
  std::size_t n = 0;
  CorpusKind kind = CorpusKind::quality;
  double dv_mean = 0.0;
  double dv_min = 0.0;
  double dv_max = 0.0;
};

CorpusSummary corpus_summary(const Corpus& corpus);

}  // namespace argstrength
