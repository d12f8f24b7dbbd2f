#include "argstrength/hedge_rules.hpp"

#include <algorithm>

namespace argstrength {

namespace {

bool first_person_subject(const std::string& w) { return w == "i" || w == "we"; }
bool first_person_possessive(const std::string& w) { return w == "my" || w == "our"; }

// 1-based head convention: token i (0-based) is referenced as i + 1.
template <typename F>
void for_each_child(const Sentence& s, std::size_t head0, F&& f) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j].head == static_cast<int>(head0) + 1) f(j);
  }
}

std::optional<std::size_t> next_word(const Sentence& s, std::size_t i) {
  if (i + 1 < s.size() && s[i + 1].is_word) return i + 1;
  return std::nullopt;
}

// about/around: approximator before a quantity, preposition otherwise.
HedgeVerdict about_around(const RuleContext& ctx) {
  const auto& s = ctx.sentence;
  const auto& tok = s[ctx.token];
  if (tok.pos == Upos::ADJ) return HedgeVerdict::non_hedge;
  if (tok.pos == Upos::ADV) return HedgeVerdict::hedge;
  if (ctx.has_dependencies) {
    if (tok.deprel == "advmod") return HedgeVerdict::hedge;
    bool numeral = false;
    for_each_child(s, ctx.token, [&](std::size_t j) { numeral |= s[j].pos == Upos::NUM; });
    if (tok.head > 0) {
      const auto h = static_cast<std::size_t>(tok.head - 1);
      numeral |= s[h].pos == Upos::NUM;
      // "around 10 packages" parsed with both words attached to the noun.
      for_each_child(s, h, [&](std::size_t j) {
        numeral |= j == ctx.token + 1 && s[j].pos == Upos::NUM;
      });
    }
    return numeral ? HedgeVerdict::hedge : HedgeVerdict::non_hedge;
  }
  auto j = next_word(s, ctx.token);
  return j && s[*j].pos == Upos::NUM ? HedgeVerdict::hedge : HedgeVerdict::non_hedge;
}

// pretty: hedge only when it modifies an adjective or adverb.
HedgeVerdict pretty(const RuleContext& ctx) {
  const auto& s = ctx.sentence;
  const auto& tok = s[ctx.token];
  if (tok.pos == Upos::ADV) return HedgeVerdict::hedge;
  if (ctx.has_dependencies) {
    if (tok.deprel == "advmod") return HedgeVerdict::hedge;
    return HedgeVerdict::non_hedge;
  }
  if (tok.pos == Upos::ADJ) {
    auto j = next_word(s, ctx.token);
    if (j && (s[*j].pos == Upos::ADJ || s[*j].pos == Upos::ADV)) return HedgeVerdict::hedge;
  }
  return HedgeVerdict::non_hedge;
}

// impression: hedge with a first-person possessive dependent, or when its
// head also governs a first-person nominal subject.
HedgeVerdict impression(const RuleContext& ctx) {
  const auto& s = ctx.sentence;
  const auto& tok = s[ctx.token];
  if (ctx.has_dependencies) {
    bool possessive = false;
    for_each_child(s, ctx.token, [&](std::size_t j) {
      possessive |= first_person_possessive(s[j].lower) &&
                    (s[j].pos == Upos::PRON || s[j].pos == Upos::DET);
    });
    if (possessive) return HedgeVerdict::hedge;
    if (tok.head > 0) {
      bool subject = false;
      for_each_child(s, static_cast<std::size_t>(tok.head - 1), [&](std::size_t j) {
        subject |= j != ctx.token && s[j].deprel.starts_with("nsubj") &&
                   first_person_subject(s[j].lower);
      });
      if (subject) return HedgeVerdict::hedge;
    }
    return HedgeVerdict::non_hedge;
  }
  // Without a parse: walk left over the noun phrase to a possessive or a
  // verb, then over auxiliaries/adverbs/negation to the verb's subject.
  std::size_t j = ctx.token;
  while (j > 0) {
    const auto& t = s[j - 1];
    if (t.pos == Upos::DET || t.pos == Upos::ADJ || t.pos == Upos::ADV || t.pos == Upos::NUM) {
      --j;
      continue;
    }
    break;
  }
  if (j == 0) return HedgeVerdict::non_hedge;
  const auto& before = s[j - 1];
  if (before.pos == Upos::PRON && first_person_possessive(before.lower)) {
    return HedgeVerdict::hedge;
  }
  if (before.pos != Upos::VERB && before.pos != Upos::AUX) return HedgeVerdict::non_hedge;
  std::size_t k = j - 1;
  while (k > 0) {
    const auto& t = s[k - 1];
    if (t.pos == Upos::ADV || t.pos == Upos::AUX || t.pos == Upos::PART) {
      --k;
      continue;
    }
    break;
  }
  if (k == 0) return HedgeVerdict::non_hedge;
  const auto& subject = s[k - 1];
  return subject.pos == Upos::PRON && first_person_subject(subject.lower)
             ? HedgeVerdict::hedge
             : HedgeVerdict::non_hedge;
}

}  // namespace

const std::vector<DisambiguationRule>& registered_rules() {
  static const std::vector<DisambiguationRule> rules{
      {"about_around", about_around},
      {"pretty", pretty},
      {"impression", impression},
  };
  return rules;
}

const DisambiguationRule* find_rule(std::string_view rule_id) {
  const auto& rules = registered_rules();
  auto it = std::find_if(rules.begin(), rules.end(),
                         [&](const DisambiguationRule& r) { return r.rule_id == rule_id; });
  return it == rules.end() ? nullptr : &*it;
}

}  // namespace argstrength
