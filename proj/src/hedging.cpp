#include "argstrength/hedging.hpp"

#include <algorithm>
#include <exception>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "argstrength/errors.hpp"
#include "argstrength/hedge_rules.hpp"

namespace argstrength {

namespace {

// Entries grouped by first word, longest pattern first; equal lengths keep
// lexicon order.
class MatchIndex {
 public:
  explicit MatchIndex(const HedgeLexicon& lexicon) {
    for (const auto& e : lexicon.entries()) by_first_[e.pattern.front()].push_back(&e);
    for (auto& [w, list] : by_first_) {
      std::stable_sort(list.begin(), list.end(), [](const LexiconEntry* a, const LexiconEntry* b) {
        return a->pattern.size() > b->pattern.size();
      });
    }
  }

  const std::vector<const LexiconEntry*>* candidates(const std::string& word) const {
    auto it = by_first_.find(word);
    return it == by_first_.end() ? nullptr : &it->second;
  }

 private:
  std::unordered_map<std::string, std::vector<const LexiconEntry*>> by_first_;
};

bool matches_at(const Sentence& s, std::size_t i, const std::vector<std::string>& pattern) {
  if (i + pattern.size() > s.size()) return false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const auto& t = s[i + k];
    if (!t.is_word || t.lower != pattern[k]) return false;
  }
  return true;
}

std::size_t words_in(const Sentence& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](const Token& t) { return t.is_word; }));
}

HedgeAnnotation detect_with_index(const ParsedDocument& doc, const MatchIndex& index) {
  HedgeAnnotation a;
  a.argument_id = doc.argument_id;
  a.sentence_count = doc.sentences.size();
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& s = doc.sentences[si];
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t advance = 1;
      if (s[i].is_word) {
        if (const auto* list = index.candidates(s[i].lower)) {
          for (const LexiconEntry* e : *list) {
            if (!matches_at(s, i, e->pattern)) continue;
            if (e->rule_id) {
              const auto* rule = find_rule(*e->rule_id);
              if (rule->predicate(RuleContext{s, i, doc.has_dependencies}) !=
                  HedgeVerdict::hedge) {
                continue;
              }
            }
            a.matches.push_back({si, i, i + e->pattern.size()});
            advance = e->pattern.size();
            break;
          }
        }
      }
      i += advance;
    }
  }
  if (!doc.sentences.empty()) {
    a.words.first = words_in(doc.sentences.front());
    a.words.final = words_in(doc.sentences.back());
  }
  a.words.all = doc.word_count();
  a.features = hedge_features(a);
  return a;
}

}  // namespace

HedgeFeatures hedge_features(const HedgeAnnotation& annotation) {
  HedgeFeatures f;
  const std::size_t last = annotation.sentence_count == 0 ? 0 : annotation.sentence_count - 1;
  for (const auto& m : annotation.matches) {
    f.abs_all += 1.0;
    if (m.sentence == 0) f.abs_first += 1.0;
    if (m.sentence == last) f.abs_final += 1.0;
  }
  auto ratio = [&](double count, std::size_t words) {
    if (words == 0) {
      f.empty_scope = true;
      return 0.0;
    }
    return count / static_cast<double>(words);
  };
  f.ratio_first = ratio(f.abs_first, annotation.words.first);
  f.ratio_final = ratio(f.abs_final, annotation.words.final);
  f.ratio_all = ratio(f.abs_all, annotation.words.all);
  return f;
}

HedgeAnnotation detect_hedges(const ParsedDocument& doc, const HedgeLexicon& lexicon) {
  return detect_with_index(doc, MatchIndex(lexicon));
}

std::vector<HedgeAnnotation> annotate_corpus(const Corpus& corpus, const HedgeLexicon& lexicon,
                                             const ParseSource& source, Execution exec) {
  const MatchIndex index(lexicon);
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
  std::vector<HedgeAnnotation> out(corpus.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[i] = detect_with_index(source.parse(corpus[i]), index);
    }
    return out;
  }
  // Exceptions may not cross the parallel region; keep the lowest-index one
  // so the reported error matches the serial path.
  std::vector<std::exception_ptr> errors(corpus.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = detect_with_index(source.parse(corpus[i]), index);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void write_annotation_jsonl(std::ostream& out, const HedgeAnnotation& a) {
  nlohmann::json matches = nlohmann::json::array();
  for (const auto& m : a.matches) matches.push_back({m.sentence, m.start, m.end});
  nlohmann::json features;
  const auto values = a.features.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    features[HedgeFeatures::column_names[i]] = values[i];
  }
  nlohmann::json rec{{"id", a.argument_id},
                     {"matches", matches},
                     {"features", features},
                     {"sentences", a.sentence_count},
                     {"words", {{"first", a.words.first}, {"final", a.words.final}, {"all", a.words.all}}}};
  if (a.features.empty_scope) rec["empty_scope"] = true;
  out << rec.dump() << '\n';
}

std::vector<HedgeAnnotation> read_annotations_jsonl(std::istream& in) {
  std::vector<HedgeAnnotation> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      HedgeAnnotation a;
      a.argument_id = rec.at("id").get<std::string>();
      for (const auto& m : rec.at("matches")) {
        a.matches.push_back({m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>(),
                             m.at(2).get<std::size_t>()});
      }
      a.sentence_count = rec.at("sentences").get<std::size_t>();
      const auto& w = rec.at("words");
      a.words = {w.at("first").get<std::size_t>(), w.at("final").get<std::size_t>(),
                 w.at("all").get<std::size_t>()};
      a.features = hedge_features(a);
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("hedge annotations line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace argstrength
