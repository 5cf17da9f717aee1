#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/bias.hpp"
#include "biasprobe/catalog.hpp"
#include "biasprobe/json_io.hpp"
#include "biasprobe/mixing.hpp"
#include "biasprobe/rational.hpp"

namespace biasprobe {

enum class Ruling { recoverable, unrecoverable, partial };

const char* to_string(Ruling ruling) noexcept;
Ruling parse_ruling(std::string_view text);

/// A supporting figure carried alongside a verdict, e.g. the unrounded
/// alternative to a rounded fraction.
struct VerdictNote {
  std::string label;
  Rational value;

  friend bool operator==(const VerdictNote&, const VerdictNote&) = default;
};

/// Whether the instances of a withheld value can still be classified, and
/// what fraction of the population is lost if not.
struct RecoverabilityVerdict {
  Ruling ruling = Ruling::recoverable;
  Rational affected_fraction;  // 0 iff recoverable
  std::string rule_id;
  std::string rationale;
  std::vector<VerdictNote> notes;

  friend bool operator==(const RecoverabilityVerdict&, const RecoverabilityVerdict&) = default;
};

struct AnalysisResult {
  BiasSpec bias;
  RecoverabilityVerdict verdict;
  Rational added_error;
  std::string network_label;

  const std::string& dimension() const { return bias.entries.front().dimension; }
  const std::string& withheld() const { return bias.entries.front().withheld.front(); }

  friend bool operator==(const AnalysisResult&, const AnalysisResult&) = default;
};

// Constants of the pose case: pieces with no similar piece to generalize
// from, out of unique_type_count_for_error.
inline constexpr std::uint64_t kPoseUniquePieces = 132;

/// Unrecoverable (1 / staple count) unless the closure of the other staple
/// colours under both mixing models reaches `withheld`.
RecoverabilityVerdict color_verdict(std::string_view withheld, const BrickCatalog& catalog, const RuleSet& rules);

/// Worst case: every type with the withheld stud count is misbinned. Types
/// are assumed spread evenly over stud counts (production unique types over
/// the number of stud counts, rounded to nearest), so the fraction does not
/// depend on which count is withheld.
RecoverabilityVerdict size_verdict(std::uint64_t withheld_stud_count, const BrickCatalog& catalog);

/// In-plane rotation augmentation covers any missing orientation bin.
RecoverabilityVerdict orientation_verdict(std::uint64_t withheld_bin, const BrickCatalog& catalog);

/// Pieces with no similar counterpart cannot be generalized to the missing
/// stable pose. The fraction is that share rounded to whole percent (12/100);
/// the unrounded share and the cube aspect fraction travel as notes.
RecoverabilityVerdict pose_verdict(std::string_view withheld_pose, const BrickCatalog& catalog);

/// Optimistic bound: the images of the smallest shape group, whichever group
/// is actually withheld.
RecoverabilityVerdict shape_verdict(std::string_view withheld_group, const BrickCatalog& catalog);

/// "A^c", "A^z", "A^o", "A^p", "A^s" for the five supported dimensions.
std::string network_label_for(std::string_view dimension);
bool is_supported_dimension(std::string_view dimension);

/// Dispatches a single-entry, single-value bias to its verdict. Throws
/// Error(unsupported_dimension) for any other dimension and
/// Error(unsupported_bias) for multi-entry or multi-value specs; those have
/// no closed form and belong to the oracle.
AnalysisResult analyze(const BiasSpec& bias, const BrickCatalog& catalog, const RuleSet& rules);

Json verdict_to_json(const RecoverabilityVerdict& verdict);
RecoverabilityVerdict verdict_from_json(const Json& j);
Json analysis_to_json(const AnalysisResult& result);
AnalysisResult analysis_from_json(const Json& j);

}  // namespace biasprobe
