#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/catalog.hpp"
#include "biasprobe/json_io.hpp"
#include "biasprobe/rational.hpp"
#include "biasprobe/recover.hpp"

namespace biasprobe {

struct ImpactEntry {
  std::string label;
  std::string rendered;  // render_decimal(exact, 6)
  Rational exact;

  friend bool operator==(const ImpactEntry&, const ImpactEntry&) = default;
};

/// One line of a Bias Breakdown: a bias class and what is known about it.
struct BreakdownRow {
  std::string bias_class;
  std::vector<std::string> dimensions_evaluated;
  std::string interpretation;
  std::string not_applicable_by_design;
  std::vector<ImpactEntry> evaluated_impact;
  std::vector<std::string> dimensions_not_evaluated;
  std::string estimated_impact_of_non_evaluated;

  friend bool operator==(const BreakdownRow&, const BreakdownRow&) = default;
};

struct BiasBreakdown {
  std::vector<BreakdownRow> rows;
  std::string catalog_id;
  std::optional<std::string> generated_at;  // UTC, "YYYY-MM-DDTHH:MM:SSZ"

  friend bool operator==(const BiasBreakdown&, const BiasBreakdown&) = default;
};

/// The seven column titles, in order.
const std::vector<std::string>& breakdown_columns();

/// Current time in the breakdown timestamp format.
std::string utc_timestamp();

/// Groups `results` into a "missing data" row. Results of one network that
/// share a bound are merged into a single impact entry ("A^c, c ∈ (...)"),
/// preceded by the unbiased base bound. No results, no rows.
BiasBreakdown build_breakdown(const std::vector<AnalysisResult>& results, const BrickCatalog& catalog,
                              std::optional<std::string> generated_at = std::nullopt);

/// One analysis per table2 case: every staple colour, plus one
/// representative value of size, orientation, pose and shape.
std::vector<AnalysisResult> builtin_analyses(const BrickCatalog& catalog, const RuleSet& rules);

/// Merges a notes document into the breakdown. The document maps bias class
/// names to objects with any of "dimensions_not_evaluated" (appended) and
/// "estimated_impact_of_non_evaluated", "interpretation",
/// "not_applicable_by_design" (replaced). Unknown classes become stub rows.
void merge_notes(BiasBreakdown& breakdown, const Json& notes);

enum class ReportFormat { markdown, csv, json };

ReportFormat parse_report_format(std::string_view text);

std::string render(const BiasBreakdown& breakdown, ReportFormat format);

Json breakdown_to_json(const BiasBreakdown& breakdown);
BiasBreakdown breakdown_from_json(const Json& j);
/// Inverse of render(.., ReportFormat::json).
BiasBreakdown parse_breakdown(std::string_view json_text);

}  // namespace biasprobe
