#include "argstrength/lexicon.hpp"

#include <fstream>
#include <istream>
#include <set>

#include "argstrength/errors.hpp"
#include "argstrength/hedge_rules.hpp"
#include "argstrength/parse.hpp"

#ifndef ARGSTRENGTH_DEFAULT_LEXICON
#define ARGSTRENGTH_DEFAULT_LEXICON "data/hedge_lexicon.txt"
#endif

namespace argstrength {

HedgeLexicon::HedgeLexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {
  std::set<std::vector<std::string>> seen;
  for (const auto& e : entries_) {
    if (e.pattern.empty()) throw InputError("lexicon: empty pattern");
    for (const auto& w : e.pattern) {
      if (w.empty()) throw InputError("lexicon: empty word in pattern");
    }
    if (!seen.insert(e.pattern).second) {
      std::string text;
      for (const auto& w : e.pattern) text += (text.empty() ? "" : " ") + w;
      throw InputError("lexicon: duplicate pattern '" + text + "'");
    }
    if (e.rule_id && !find_rule(*e.rule_id)) {
      throw InputError("lexicon: unknown rule id '" + *e.rule_id + "'");
    }
    max_len_ = std::max(max_len_, e.pattern.size());
  }
}

HedgeLexicon HedgeLexicon::without_rules() const {
  auto copy = entries_;
  for (auto& e : copy) e.rule_id.reset();
  return HedgeLexicon(std::move(copy));
}

HedgeLexicon HedgeLexicon::with_entry(LexiconEntry entry) const {
  auto copy = entries_;
  copy.push_back(std::move(entry));
  return HedgeLexicon(std::move(copy));
}

HedgeLexicon read_lexicon(std::istream& in) {
  std::vector<LexiconEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::optional<std::string> rule;
    if (auto bar = line.find('|'); bar != std::string::npos) {
      auto id = line.substr(bar + 1);
      id.erase(0, id.find_first_not_of(" \t"));
      id.erase(id.find_last_not_of(" \t\r") + 1);
      if (id.empty()) throw InputError("lexicon line " + std::to_string(lineno) + ": empty rule id");
      rule = id;
      line.erase(bar);
    }
    LexiconEntry e;
    for (auto& w : tokenize_words(line)) e.pattern.push_back(normalize_lower(w));
    if (e.pattern.empty()) {
      if (rule) throw InputError("lexicon line " + std::to_string(lineno) + ": rule without pattern");
      continue;
    }
    e.rule_id = std::move(rule);
    entries.push_back(std::move(e));
  }
  return HedgeLexicon(std::move(entries));
}

HedgeLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon " + path.string());
  return read_lexicon(in);
}

std::filesystem::path default_lexicon_path() { return ARGSTRENGTH_DEFAULT_LEXICON; }

HedgeLexicon default_lexicon() { return load_lexicon(default_lexicon_path()); }

}  // namespace argstrength
