#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace argstrength {

struct LexiconEntry {
  std::vector<std::string> pattern;  // lowercased word forms
  std::optional<std::string> rule_id;
};

/// Hedge cue patterns. Construction validates that patterns are non-empty,
/// unique, and that every rule id names a registered disambiguation rule.
class HedgeLexicon {
 public:
  HedgeLexicon() = default;
  explicit HedgeLexicon(std::vector<LexiconEntry> entries);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_pattern_length() const { return max_len_; }

  /// Copy with every rule id removed.
  HedgeLexicon without_rules() const;
  HedgeLexicon with_entry(LexiconEntry entry) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::size_t max_len_ = 0;
};

/// Plain-text format: one pattern per line, optional `|rule_id` suffix,
/// '#' starts a comment. Patterns are tokenized with the builtin tokenizer
/// so "don't know" becomes ["do", "n't", "know"].
HedgeLexicon read_lexicon(std::istream& in);
HedgeLexicon load_lexicon(const std::filesystem::path& path);

/// The lexicon file shipped with the library.
std::filesystem::path default_lexicon_path();
HedgeLexicon default_lexicon();

}  // namespace argstrength
