#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "argstrength/corpus.hpp"

namespace argstrength {

/// Universal POS tags (UD v2).
enum class Upos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM,
  PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};

std::string_view to_string(Upos tag);
std::optional<Upos> parse_upos(std::string_view text);

struct Token {
  std::string surface;
  std::string lower;
  Upos pos = Upos::X;
  int head = 0;         // 1-based index of the head within the sentence; 0 = root
  std::string deprel;   // empty when no dependency parse is available
  bool is_word = true;  // false for punctuation
};

using Sentence = std::vector<Token>;

struct ParsedDocument {
  std::string argument_id;
  std::vector<Sentence> sentences;
  /// True when heads/deprels come from a real parser (CoNLL-U input).
  bool has_dependencies = false;

  std::size_t word_count() const;
};

/// Lowercases ASCII letters and folds typographic apostrophes to '\''.
std::string normalize_lower(std::string_view surface);

/// Whitespace/punctuation tokenizer with PTB-style clitic splitting
/// ("don't" -> "do" "n't"). Returns surface forms only.
std::vector<std::string> tokenize_words(std::string_view text);

/// Builtin pipeline: sentence split on terminal punctuation and line breaks,
/// tokenization, heuristic POS tagging. No dependency structure.
ParsedDocument parse_builtin(const std::string& argument_id,
                             std::string_view text);

/// Heuristic tagger over one sentence of surface tokens.
std::vector<Upos> tag_heuristic(const std::vector<std::string>& surfaces);

/// Documents from a CoNLL-U stream, keyed by `# newdoc id = ...`.
/// Sentences before the first newdoc comment are an InputError.
std::map<std::string, ParsedDocument> read_conllu(std::istream& in);
std::map<std::string, ParsedDocument> read_conllu_file(
    const std::filesystem::path& path);

void write_conllu(std::ostream& out, const ParsedDocument& doc);

/// Where parse_document takes its structure from.
class ParseSource {
 public:
  static ParseSource builtin() { return ParseSource{}; }
  static ParseSource conllu(std::map<std::string, ParsedDocument> docs);

  bool is_builtin() const { return !docs_.has_value(); }
  ParsedDocument parse(const Argument& argument) const;

 private:
  std::optional<std::map<std::string, ParsedDocument>> docs_;
};

ParsedDocument parse_document(const Argument& argument,
                              const ParseSource& source);

}  // namespace argstrength
