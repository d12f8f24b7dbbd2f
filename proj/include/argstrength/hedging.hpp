#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "argstrength/corpus.hpp"
#include "argstrength/execution.hpp"
#include "argstrength/lexicon.hpp"
#include "argstrength/parse.hpp"

namespace argstrength {

struct HedgeMatch {
  std::size_t sentence = 0;
  std::size_t start = 0;  // token span [start, end) within the sentence
  std::size_t end = 0;

  friend bool operator==(const HedgeMatch&, const HedgeMatch&) = default;
};

/// The six hedge variants: absolute count and hedge/word ratio, each over
/// the first sentence, the final sentence and the whole argument.
struct HedgeFeatures {
  double abs_first = 0.0;
  double abs_final = 0.0;
  double abs_all = 0.0;
  double ratio_first = 0.0;
  double ratio_final = 0.0;
  double ratio_all = 0.0;
  /// Set when some scope had zero word tokens and its ratio was forced to 0.
  bool empty_scope = false;

  static constexpr std::array<const char*, 6> column_names{
      "hedge_abs_first",   "hedge_abs_final",   "hedge_abs_all",
      "hedge_ratio_first", "hedge_ratio_final", "hedge_ratio_all"};
  std::array<double, 6> values() const {
    return {abs_first, abs_final, abs_all, ratio_first, ratio_final, ratio_all};
  }

  friend bool operator==(const HedgeFeatures&, const HedgeFeatures&) = default;
};

/// Word-token counts (punctuation excluded) of the three scopes.
struct ScopeWordCounts {
  std::size_t first = 0;
  std::size_t final = 0;
  std::size_t all = 0;

  friend bool operator==(const ScopeWordCounts&, const ScopeWordCounts&) = default;
};

struct HedgeAnnotation {
  std::string argument_id;
  std::vector<HedgeMatch> matches;
  std::size_t sentence_count = 0;
  ScopeWordCounts words;
  HedgeFeatures features;

  friend bool operator==(const HedgeAnnotation&, const HedgeAnnotation&) = default;
};

/// Longest-match, left-to-right, non-overlapping lexicon matching over the
/// lowercased word tokens of each sentence. A rule-gated match that its rule
/// rejects is dropped and the next-shorter pattern at that position is tried.
HedgeAnnotation detect_hedges(const ParsedDocument& doc,
                              const HedgeLexicon& lexicon);

/// Recomputes the six variants from the matches and scope word counts.
HedgeFeatures hedge_features(const HedgeAnnotation& annotation);

/// parse_document + detect_hedges over a whole corpus, order preserved.
std::vector<HedgeAnnotation> annotate_corpus(
    const Corpus& corpus, const HedgeLexicon& lexicon,
    const ParseSource& source, Execution exec = Execution::parallel);

void write_annotation_jsonl(std::ostream& out, const HedgeAnnotation& a);
std::vector<HedgeAnnotation> read_annotations_jsonl(std::istream& in);

}  // namespace argstrength
