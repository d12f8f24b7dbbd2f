#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "argstrength/parse.hpp"

namespace argstrength {

enum class HedgeVerdict { hedge, non_hedge };

/// Everything a rule may look at: the sentence, the matched token index
/// (0-based), and whether heads/deprels are trustworthy.
struct RuleContext {
  const Sentence& sentence;
  std::size_t token;
  bool has_dependencies;
};

using RulePredicate = std::function<HedgeVerdict(const RuleContext&)>;

struct DisambiguationRule {
  std::string rule_id;
  RulePredicate predicate;
};

/// Registered rules: "about_around", "pretty", "impression".
const std::vector<DisambiguationRule>& registered_rules();
const DisambiguationRule* find_rule(std::string_view rule_id);

}  // namespace argstrength
