#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/domain.hpp"
#include "biasprobe/json_io.hpp"
#include "biasprobe/rational.hpp"

namespace biasprobe {

struct BrickCategory {
  std::string name;
  std::uint64_t subtype_count = 0;

  friend bool operator==(const BrickCategory&, const BrickCategory&) = default;
};

struct StudRange {
  std::uint64_t min = 0;
  std::uint64_t max = 0;

  std::uint64_t width() const noexcept { return max - min + 1; }
  bool contains(std::uint64_t n) const noexcept { return n >= min && n <= max; }

  friend bool operator==(const StudRange&, const StudRange&) = default;
};

/// The enumerated brick domain: categories with their subtype counts, the
/// colour palette, and the constants of the sorting scenario.
struct BrickCatalog {
  std::string name;
  std::vector<BrickCategory> categories;
  std::vector<std::string> staple_colors;
  std::uint64_t full_color_count = 0;
  StudRange stud_count_range;
  std::uint64_t production_piece_count = 0;
  // Denominator of the size and pose error fractions. Kept separate from
  // production_unique_types(), which derives 1133 from the piece count.
  std::uint64_t unique_type_count_for_error = 0;
  std::uint64_t avg_stable_poses = 0;
  std::uint64_t orientation_bins = 0;
  Rational manufacturing_error;
  std::uint64_t throughput_per_second = 0;

  friend bool operator==(const BrickCatalog&, const BrickCatalog&) = default;
};

inline constexpr std::size_t kStapleColorCount = 6;

BrickCatalog builtin_catalog();

/// Throws Error(validation) naming the first violated invariant.
void validate_catalog(const BrickCatalog& catalog);

/// Parses and validates a catalog document. An optional "subtype_total" key
/// is checked against the category counts. Throws Error(parse) or
/// Error(validation).
BrickCatalog load_catalog(std::string_view text);
BrickCatalog load_catalog_file(const std::string& path);

Json catalog_to_json(const BrickCatalog& catalog);
std::string serialize_catalog(const BrickCatalog& catalog);

std::uint64_t subtype_total(const BrickCatalog& catalog);
std::uint64_t full_piece_count(const BrickCatalog& catalog);
std::uint64_t production_unique_types(const BrickCatalog& catalog);

enum class PopulationMode { full, production };

/// full: poses x subtypes x colours x orientation bins.
/// production: poses x production pieces x orientation bins.
std::uint64_t binning_population(const BrickCatalog& catalog, PopulationMode mode);

/// First category with the fewest subtypes.
const BrickCategory& smallest_category(const BrickCatalog& catalog);
/// Case-insensitive lookup; nullptr when absent.
const BrickCategory* find_category(const BrickCatalog& catalog, std::string_view name);

std::vector<std::string> pose_labels(const BrickCatalog& catalog);

// Dimension names shared by the analysis and enumeration domains.
namespace dim {
inline constexpr std::string_view color = "color";
inline constexpr std::string_view size = "size";
inline constexpr std::string_view orientation = "orientation";
inline constexpr std::string_view pose = "pose";
inline constexpr std::string_view shape = "shape";
inline constexpr std::string_view piece = "piece";
inline constexpr std::string_view type = "type";
}  // namespace dim

/// The five analysable attributes with their value labels: staple colours,
/// stud counts, orientation bins, stable poses and shape groups. Biases are
/// validated against this domain before analysis.
DomainSpec analysis_domain(const BrickCatalog& catalog);

/// pose x piece x orientation; population equals
/// binning_population(production).
DomainSpec production_domain(const BrickCatalog& catalog);

/// pose x type x color x orientation with production_unique_types() types,
/// so a colour dimension exists to withhold.
DomainSpec color_refined_domain(const BrickCatalog& catalog);

/// pose x type x orientation over unique_type_count_for_error types.
DomainSpec error_type_domain(const BrickCatalog& catalog);

}  // namespace biasprobe
