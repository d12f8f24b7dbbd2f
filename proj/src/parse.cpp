#include "argstrength/parse.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "argstrength/errors.hpp"

namespace argstrength {

namespace {

constexpr std::array<std::string_view, 17> kUposNames{
    "ADJ",  "ADP",  "ADV",   "AUX",   "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

// Multi-byte punctuation we split off like ASCII quotes.
constexpr std::array<std::string_view, 8> kUnicodePunct{
    "“", "”", "‘", "’", "…", "–", "—", "«"};

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

// Length of a multi-byte punctuation sequence starting at s[i], or 0.
std::size_t unicode_punct_at(std::string_view s, std::size_t i) {
  for (auto p : kUnicodePunct) {
    if (s.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

std::size_t unicode_punct_ending(std::string_view s) {
  for (auto p : kUnicodePunct) {
    if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) return p.size();
  }
  return 0;
}

bool all_punct(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (auto n = unicode_punct_at(s, i)) {
      i += n;
    } else if (is_ascii_punct(s[i])) {
      ++i;
    } else {
      return false;
    }
  }
  return !s.empty();
}

const std::unordered_set<std::string> kAbbreviations{
    "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "vs.", "etc.", "e.g.", "i.e.",
    "approx.", "no.", "jr.", "sr.", "u.s.", "u.k.", "a.m.", "p.m."};

constexpr std::string_view kLeading = "\"'([{<$#";
constexpr std::string_view kTrailing = ",;:!?\"')]}>%";
constexpr std::string_view kInternalSplit = ",;!?()\"";

bool is_letter(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 ||
         (static_cast<unsigned char>(c) & 0x80) != 0;
}

// Byte offset in `core` of the character that sits at `norm_pos` in
// normalize_lower(core); curly apostrophes shrink from 3 bytes to 1.
std::size_t core_offset(std::string_view core, std::size_t norm_pos) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < norm_pos && i < core.size(); ++k) {
    i += (core.substr(i, 3) == "’" || core.substr(i, 3) == "‘") ? 3 : 1;
  }
  return i;
}

// Splits PTB-style clitics off a core word.
void split_clitics(std::string core, std::vector<std::string>& out) {
  const std::string lower = normalize_lower(core);
  auto split_at = [&](std::size_t clitic_len) {
    const std::size_t cut = core_offset(core, lower.size() - clitic_len);
    out.push_back(core.substr(0, cut));
    out.push_back(core.substr(cut));
  };
  if (lower.size() > 3 && lower.ends_with("n't")) {
    split_at(3);
    return;
  }
  for (std::string_view clitic : {"'s", "'re", "'ve", "'ll", "'d", "'m"}) {
    if (lower.size() > clitic.size() && lower.ends_with(clitic)) {
      split_at(clitic.size());
      return;
    }
  }
  out.push_back(std::move(core));
}

void split_core(std::string_view core, std::vector<std::string>& out) {
  std::string piece;
  auto flush = [&] {
    if (!piece.empty()) split_clitics(std::move(piece), out);
    piece.clear();
  };
  for (std::size_t i = 0; i < core.size(); ++i) {
    const char c = core[i];
    const bool digit_comma = c == ',' && i > 0 && i + 1 < core.size() &&
                             std::isdigit(static_cast<unsigned char>(core[i - 1])) &&
                             std::isdigit(static_cast<unsigned char>(core[i + 1]));
    if (kInternalSplit.find(c) != std::string_view::npos && !digit_comma) {
      flush();
      out.emplace_back(1, c);
    } else {
      piece.push_back(c);
    }
  }
  flush();
}

void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::vector<std::string> leading;
  while (!chunk.empty()) {
    if (auto n = unicode_punct_at(chunk, 0)) {
      leading.emplace_back(chunk.substr(0, n));
      chunk.remove_prefix(n);
    } else if (kLeading.find(chunk.front()) != std::string_view::npos) {
      leading.emplace_back(1, chunk.front());
      chunk.remove_prefix(1);
    } else {
      break;
    }
  }
  std::vector<std::string> trailing;  // reversed
  while (!chunk.empty()) {
    if (auto n = unicode_punct_ending(chunk)) {
      trailing.emplace_back(chunk.substr(chunk.size() - n));
      chunk.remove_suffix(n);
      continue;
    }
    const char c = chunk.back();
    if (c == '.') {
      const auto lower = normalize_lower(chunk);
      const bool abbreviation =
          kAbbreviations.contains(lower) ||
          (chunk.size() >= 3 && is_letter(chunk[chunk.size() - 2]) &&
           chunk[chunk.size() - 3] == '.');
      if (abbreviation) break;
      std::size_t dots = 0;
      while (dots < chunk.size() && chunk[chunk.size() - 1 - dots] == '.') ++dots;
      trailing.emplace_back(chunk.substr(chunk.size() - dots));
      chunk.remove_suffix(dots);
      continue;
    }
    if (kTrailing.find(c) != std::string_view::npos) {
      // Keep the apostrophe of a clitic-less plural possessive ("students'")
      // as its own token as well.
      trailing.emplace_back(1, c);
      chunk.remove_suffix(1);
      continue;
    }
    break;
  }
  for (auto& t : leading) out.push_back(std::move(t));
  if (!chunk.empty()) {
    if (all_punct(chunk)) {
      out.emplace_back(chunk);
    } else {
      split_core(chunk, out);
    }
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(std::move(*it));
}

struct RawToken {
  std::string surface;
  bool line_break_before = false;
};

std::vector<RawToken> tokenize_with_breaks(std::string_view text) {
  std::vector<RawToken> tokens;
  bool pending_break = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n' || c == '\r') {
      pending_break = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::vector<std::string> pieces;
    tokenize_chunk(text.substr(i, j - i), pieces);
    for (auto& p : pieces) {
      tokens.push_back({std::move(p), pending_break});
      pending_break = false;
    }
    i = j;
  }
  return tokens;
}

bool is_terminal(std::string_view s) {
  if (s == "…") return true;
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '.' || c == '!' || c == '?'; });
}

bool is_closing(std::string_view s) {
  return s == "\"" || s == "'" || s == ")" || s == "]" || s == "}" || s == "”" ||
         s == "’";
}

// --- heuristic tagger ------------------------------------------------------

using Lex = std::unordered_map<std::string, Upos>;

const Lex& closed_class() {
  static const Lex lex = [] {
    Lex m;
    auto put = [&](Upos tag, std::initializer_list<const char*> words) {
      for (auto w : words) m.emplace(w, tag);
    };
    put(Upos::DET, {"a", "an", "the", "this", "these", "those", "every", "each", "some",
                    "any", "no", "another", "both", "either", "neither", "such",
                    "whose", "all", "that"});
    put(Upos::PRON, {"i", "me", "my", "mine", "myself", "we", "us", "our", "ours",
                     "ourselves", "you", "your", "yours", "yourself", "yourselves", "he",
                     "him", "his", "himself", "she", "her", "hers", "herself", "it", "its",
                     "itself", "they", "them", "their", "theirs", "themselves", "someone",
                     "anyone", "everyone", "nobody", "somebody", "anybody", "everybody",
                     "something", "anything", "everything", "nothing", "who", "whom",
                     "what", "which", "there", "whatever", "whoever"});
    put(Upos::AUX, {"am", "is", "are", "was", "were", "be", "been", "being", "have",
                    "has", "had", "do", "does", "did", "will", "would", "shall", "should",
                    "can", "could", "may", "might", "must", "ought", "'re", "'ve", "'ll",
                    "'d", "'m", "ca", "wo"});
    put(Upos::PART, {"not", "n't", "to"});
    put(Upos::ADP, {"about", "around", "in", "on", "at", "by", "for", "with", "from",
                    "of", "into", "onto", "over", "under", "between", "through", "during",
                    "without", "within", "against", "among", "across", "after", "before",
                    "behind", "below", "above", "beside", "upon", "toward", "towards",
                    "like", "near", "until", "via", "per", "off", "out", "up", "down",
                    "despite", "than"});
    put(Upos::CCONJ, {"and", "or", "but", "nor", "yet", "plus"});
    put(Upos::SCONJ, {"if", "because", "while", "although", "though", "unless", "whether",
                      "whereas", "since", "as", "once", "so"});
    put(Upos::ADV, {"very", "really", "quite", "rather", "too", "also", "just", "only",
                    "even", "still", "already", "always", "never", "often", "sometimes",
                    "perhaps", "maybe", "here", "now", "then", "again", "almost", "soon",
                    "ever", "yet", "however", "therefore", "thus", "instead", "somewhat",
                    "much", "more", "most", "less", "least", "enough", "indeed", "else",
                    "why", "how", "when", "where", "afaik", "imo", "imho"});
    put(Upos::NUM, {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
                    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
                    "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
                    "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "hundred",
                    "thousand", "million", "billion", "trillion", "dozen", "half"});
    put(Upos::INTJ, {"yes", "oh", "wow", "hey", "ok", "okay", "lol", "please", "yeah"});
    put(Upos::ADJ, {"certain", "sure", "good", "bad", "great", "big", "small", "large",
                    "little", "important", "real", "possible", "likely", "unlikely",
                    "clear", "true", "false", "new", "old", "high", "low", "long", "short",
                    "best", "worst", "better", "worse", "own", "other", "many", "few",
                    "several", "whole", "same", "different", "free", "fine", "harsh",
                    "dumb", "wrong", "right", "able", "mandatory", "grateful", "lasting",
                    "pretty", "happy", "sad", "afraid", "safe", "hard", "easy", "strong",
                    "weak", "rich", "poor", "young", "full", "open", "public", "private",
                    "social", "moral", "legal", "illegal", "official", "personal", "human",
                    "natural", "general", "common", "main", "major", "minor", "simple",
                    "serious", "huge", "tiny", "nice", "beautiful", "ugly", "early", "late",
                    "last", "first", "next", "only", "interesting", "confident", "aware",
                    "obvious", "evident", "correct", "unclear", "probable", "apparent",
                    "healthy", "unhealthy", "fatty", "futile", "worthless", "dangerous"});
    put(Upos::VERB, {"get", "gets", "got", "think", "thinks", "know", "knows", "knew",
                     "believe", "believes", "feel", "feels", "felt", "need", "needs",
                     "want", "wants", "make", "makes", "made", "take", "takes", "took",
                     "say", "says", "said", "go", "goes", "went", "come", "comes", "came",
                     "see", "sees", "saw", "left", "give", "gives", "gave", "help", "helps",
                     "seem", "seems", "suggest", "suggests", "find", "finds", "found",
                     "guess", "suppose", "assume", "mean", "means", "let", "keep", "kept",
                     "put", "tell", "told", "ask", "asked", "decide", "wait", "talk"});
    return m;
  }();
  return lex;
}

bool has_suffix(const std::string& w, std::string_view suf) {
  return w.size() > suf.size() + 2 && w.ends_with(suf);
}

bool looks_numeric(const std::string& w) {
  bool digit = false;
  for (char c : w) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.' && c != '%' && c != '-' && c != 's' && c != 'k' &&
               c != 'm') {
      return false;
    }
  }
  return digit && std::isdigit(static_cast<unsigned char>(w.front()));
}

Upos lexical_tag(const std::string& surface, const std::string& lower, bool sentence_initial) {
  if (all_punct(surface)) {
    static const std::string_view symbols = "$%&+=@#*/<>^|~`";
    if (surface.size() == 1 && symbols.find(surface[0]) != std::string_view::npos) {
      return Upos::SYM;
    }
    return Upos::PUNCT;
  }
  if (looks_numeric(lower)) return Upos::NUM;
  if (lower == "'s") return Upos::PART;  // resolved contextually
  const auto& lex = closed_class();
  if (auto it = lex.find(lower); it != lex.end()) return it->second;
  if (!sentence_initial && std::isupper(static_cast<unsigned char>(surface[0])) &&
      lower != "i") {
    return Upos::PROPN;
  }
  if (has_suffix(lower, "ly")) return Upos::ADV;
  for (std::string_view suf : {"ous", "ful", "able", "ible", "ive", "ical", "less", "ish"}) {
    if (has_suffix(lower, suf)) return Upos::ADJ;
  }
  if (has_suffix(lower, "ing") || has_suffix(lower, "ed")) return Upos::VERB;
  return Upos::NOUN;
}

bool nominative_pronoun(const std::string& w) {
  return w == "i" || w == "you" || w == "we" || w == "they" || w == "he" || w == "she" ||
         w == "it";
}

}  // namespace

std::string_view to_string(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

std::optional<Upos> parse_upos(std::string_view text) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == text) return static_cast<Upos>(i);
  }
  return std::nullopt;
}

std::size_t ParsedDocument::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) {
    n += static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](const Token& t) { return t.is_word; }));
  }
  return n;
}

std::string normalize_lower(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  for (std::size_t i = 0; i < surface.size(); ++i) {
    if (surface.substr(i, 3) == "’" || surface.substr(i, 3) == "‘") {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(surface[i]))));
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_breaks(text)) out.push_back(std::move(t.surface));
  return out;
}

std::vector<Upos> tag_heuristic(const std::vector<std::string>& surfaces) {
  const std::size_t n = surfaces.size();
  std::vector<std::string> lower(n);
  std::vector<Upos> tags(n);
  bool initial = true;
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = normalize_lower(surfaces[i]);
    tags[i] = lexical_tag(surfaces[i], lower[i], initial);
    if (tags[i] != Upos::PUNCT) initial = false;
  }
  // Punctuation ends the local context.
  auto next_word = [&](std::size_t i) -> std::optional<std::size_t> {
    if (i + 1 < n && tags[i + 1] != Upos::PUNCT) return i + 1;
    return std::nullopt;
  };

  // Verbs: after a nominative pronoun, a modal/auxiliary, or infinitival "to",
  // skipping adverbs and negation.
  for (std::size_t i = 0; i < n; ++i) {
    const bool trigger = (tags[i] == Upos::PRON && nominative_pronoun(lower[i])) ||
                         tags[i] == Upos::AUX || (tags[i] == Upos::PART && lower[i] == "to");
    if (!trigger) continue;
    std::size_t j = i + 1;
    while (j < n && (tags[j] == Upos::ADV || lower[j] == "not" || lower[j] == "n't")) ++j;
    if (j < n && (tags[j] == Upos::NOUN || (tags[j] == Upos::ADJ && lower[i] == "to"))) {
      tags[j] = Upos::VERB;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Clitic 's: auxiliary after pronouns ("there's", "it's"), possessive otherwise.
    if (lower[i] == "'s" && i > 0) {
      tags[i] = tags[i - 1] == Upos::PRON ? Upos::AUX : Upos::PART;
    }
    if (lower[i] == "that" && i > 0 && (tags[i - 1] == Upos::VERB || tags[i - 1] == Upos::NOUN)) {
      tags[i] = Upos::SCONJ;
    }
    // "to" before a noun phrase is a preposition.
    if (lower[i] == "to") {
      auto j = next_word(i);
      if (j && (tags[*j] == Upos::DET || tags[*j] == Upos::PROPN ||
                (tags[*j] == Upos::PRON && lower[*j] != "i"))) {
        tags[i] = Upos::ADP;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] == "about" || lower[i] == "around") {
      auto j = next_word(i);
      bool numeric = j && tags[*j] == Upos::NUM;
      if (j && tags[*j] == Upos::SYM) {
        auto k = next_word(*j);
        numeric = k && tags[*k] == Upos::NUM;
      }
      tags[i] = numeric ? Upos::ADV : Upos::ADP;
    } else if (lower[i] == "pretty") {
      auto j = next_word(i);
      tags[i] = j && (tags[*j] == Upos::ADJ || tags[*j] == Upos::ADV) ? Upos::ADV : Upos::ADJ;
    }
  }
  return tags;
}

ParsedDocument parse_builtin(const std::string& argument_id, std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw InputError("argument '" + argument_id + "': empty text");
  }
  auto raw = tokenize_with_breaks(text);
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].line_break_before && !current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
    current.push_back(raw[i].surface);
    if (is_terminal(raw[i].surface)) {
      while (i + 1 < raw.size() && !raw[i + 1].line_break_before && is_closing(raw[i + 1].surface)) {
        current.push_back(raw[++i].surface);
      }
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));

  ParsedDocument doc;
  doc.argument_id = argument_id;
  doc.has_dependencies = false;
  for (const auto& surfaces : sentences) {
    const auto tags = tag_heuristic(surfaces);
    Sentence s;
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      Token t;
      t.surface = surfaces[i];
      t.lower = normalize_lower(surfaces[i]);
      t.pos = tags[i];
      t.is_word = tags[i] != Upos::PUNCT;
      s.push_back(std::move(t));
    }
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

// --- CoNLL-U ---------------------------------------------------------------

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, ParsedDocument> read_conllu(std::istream& in) {
  std::map<std::string, ParsedDocument> docs;
  ParsedDocument* doc = nullptr;
  Sentence sentence;
  bool sentence_has_heads = false;
  bool any_missing_head = false;
  std::string line;
  std::size_t lineno = 0;

  auto finish_sentence = [&] {
    if (sentence.empty()) return;
    if (!doc) throw InputError("conllu: sentence before any '# newdoc id' comment");
    const int n = static_cast<int>(sentence.size());
    for (const auto& t : sentence) {
      if (t.head < 0 || t.head > n) {
        throw InputError("conllu: head index out of range in document '" + doc->argument_id + "'");
      }
    }
    doc->sentences.push_back(std::move(sentence));
    sentence.clear();
    if (sentence_has_heads) doc->has_dependencies = true;
    sentence_has_heads = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto loc = "conllu line " + std::to_string(lineno);
    if (trim(line).empty()) {
      finish_sentence();
      continue;
    }
    if (line[0] == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("newdoc")) {
        finish_sentence();
        auto eq = body.find('=');
        if (eq == std::string::npos) throw InputError(loc + ": newdoc comment without id");
        auto id = trim(body.substr(eq + 1));
        if (id.empty()) throw InputError(loc + ": empty newdoc id");
        auto [it, inserted] = docs.try_emplace(id);
        if (!inserted) throw InputError(loc + ": duplicate document id '" + id + "'");
        it->second.argument_id = id;
        doc = &it->second;
      }
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw InputError(loc + ": expected 10 tab-separated columns, got " + std::to_string(cols.size()));
    }
    if (cols[0].find_first_of("-.") != std::string::npos) continue;  // multiword / empty node
    int index = 0;
    try {
      index = std::stoi(cols[0]);
    } catch (const std::exception&) {
      throw InputError(loc + ": bad token id '" + cols[0] + "'");
    }
    if (index != static_cast<int>(sentence.size()) + 1) {
      throw InputError(loc + ": token ids must be consecutive from 1");
    }
    auto upos = parse_upos(cols[3]);
    if (!upos) throw InputError(loc + ": unknown UPOS tag '" + cols[3] + "'");
    Token t;
    t.surface = cols[1];
    t.lower = normalize_lower(cols[1]);
    t.pos = *upos;
    t.is_word = *upos != Upos::PUNCT;
    if (cols[6] == "_") {
      any_missing_head = true;
      t.head = 0;
    } else {
      try {
        t.head = std::stoi(cols[6]);
      } catch (const std::exception&) {
        throw InputError(loc + ": bad head '" + cols[6] + "'");
      }
      sentence_has_heads = true;
    }
    t.deprel = cols[7] == "_" ? std::string{} : cols[7];
    sentence.push_back(std::move(t));
  }
  finish_sentence();
  if (any_missing_head) {
    // Partial head columns cannot be trusted by the dependency rules.
    for (auto& [id, d] : docs) {
      bool missing = false;
      for (const auto& s : d.sentences) {
        for (const auto& t : s) missing |= t.deprel.empty();
      }
      if (missing) d.has_dependencies = false;
    }
  }
  for (const auto& [id, d] : docs) {
    if (d.sentences.empty()) throw InputError("conllu: document '" + id + "' has no sentences");
  }
  return docs;
}

std::map<std::string, ParsedDocument> read_conllu_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open CoNLL-U file " + path.string());
  return read_conllu(in);
}

void write_conllu(std::ostream& out, const ParsedDocument& doc) {
  out << "# newdoc id = " << doc.argument_id << '\n';
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    out << "# sent_id = " << doc.argument_id << '-' << (s + 1) << '\n';
    const auto& sent = doc.sentences[s];
    for (std::size_t i = 0; i < sent.size(); ++i) {
      const auto& t = sent[i];
      out << (i + 1) << '\t' << t.surface << "\t_\t" << to_string(t.pos) << "\t_\t_\t";
      if (doc.has_dependencies) {
        out << t.head << '\t' << (t.deprel.empty() ? "_" : t.deprel);
      } else {
        out << "_\t_";
      }
      out << "\t_\t_\n";
    }
    out << '\n';
  }
}

ParseSource ParseSource::conllu(std::map<std::string, ParsedDocument> docs) {
  ParseSource s;
  s.docs_ = std::move(docs);
  return s;
}

ParsedDocument ParseSource::parse(const Argument& argument) const {
  if (argument.text.empty()) throw InputError("argument '" + argument.id + "': empty text");
  if (!docs_) return parse_builtin(argument.id, argument.text);
  auto it = docs_->find(argument.id);
  if (it == docs_->end()) {
    throw InputError("no CoNLL-U parse for argument '" + argument.id + "'");
  }
  return it->second;
}

ParsedDocument parse_document(const Argument& argument, const ParseSource& source) {
  return source.parse(argument);
}

}  // namespace argstrength
