#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "argstrength/corpus.hpp"
#include "argstrength/ensemble.hpp"
#include "argstrength/hedging.hpp"

namespace argstrength {

/// Known column names in registry order; this order also drives the
/// stepwise candidate pool.
const std::vector<std::string>& column_registry();
bool is_probability_column(std::string_view name);
bool is_hedge_column(std::string_view name);
/// Name as printed in reports ("guilt_shame" -> "guilt/shame").
std::string display_name(std::string_view column);

/// The sixteen default IVs: storytelling, nine emotions (no boredom, no
/// surprise) and the six hedge variants.
const std::vector<std::string>& default_iv_selection();

struct FeatureOptions {
  /// Columns that may not be requested (absent from at least one corpus).
  std::set<std::string> excluded{"surprise"};
  bool standardize = false;
};

class FeatureTable {
 public:
  FeatureTable(std::vector<std::string> ids, std::vector<std::string> names,
               Eigen::MatrixXd values, Eigen::VectorXd dv, CorpusKind dv_kind);

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::VectorXd& dv() const { return dv_; }
  CorpusKind dv_kind() const { return dv_kind_; }
  std::size_t rows() const { return ids_.size(); }

  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const;
  Eigen::VectorXd column(std::string_view name) const;

  /// z-scored copy (each column mean 0, sd 1; constant columns untouched).
  FeatureTable standardized() const;
  FeatureTable select(const std::vector<std::string>& names) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
  Eigen::VectorXd dv_;
  CorpusKind dv_kind_;
};

/// Rows follow corpus order. Probability columns take the averaged
/// ensemble probability; hedge columns take the six variants.
FeatureTable build_feature_table(const Corpus& corpus,
                                 const std::vector<AggregatedFeature>& aggregated,
                                 const std::vector<HedgeAnnotation>& hedges,
                                 const std::vector<std::string>& iv_selection,
                                 const FeatureOptions& options = {});

struct TermSpec {
  enum class Kind { main, interaction };
  Kind kind = Kind::main;
  std::vector<std::string> names;

  static TermSpec main_effect(std::string name);
  static TermSpec interaction(std::string a, std::string b);
  /// "fear" or "fear:sadness".
  static TermSpec parse(std::string_view text);

  std::string label() const;
  /// Order-insensitive identity (a:b == b:a).
  std::string key() const;

  friend bool operator==(const TermSpec& a, const TermSpec& b) {
    return a.key() == b.key();
  }
};

struct DesignMatrix {
  Eigen::MatrixXd x;
  std::vector<std::string> column_names;  // "(intercept)" first when present
  bool intercept = true;
};

DesignMatrix materialize_terms(const FeatureTable& table,
                               const std::vector<TermSpec>& terms,
                               bool intercept = true);

/// One design row from raw IV values, in the same column layout as
/// materialize_terms.
Eigen::RowVectorXd design_row(const std::vector<TermSpec>& terms,
                              const std::vector<std::string>& iv_names,
                              const Eigen::RowVectorXd& iv_values,
                              bool intercept = true);

/// Header "id,<columns...>,dv".
void write_feature_csv(std::ostream& out, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in, CorpusKind kind);

}  // namespace argstrength
