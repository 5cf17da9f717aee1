#include "biasprobe/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::validation, "catalog: " + message);
}

std::uint64_t positive_field(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw Error(ErrorKind::parse, std::string("catalog: '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

BrickCatalog builtin_catalog() {
  BrickCatalog c;
  c.name = "lego-classic";
  c.categories = {
      {"Plates 1xN", 48},
      {"Plates 2xN", 49},
      {"Plates 3xN-4xN", 25},
      {"Bricks 1xN", 48},
      {"Bricks 2xN", 33},
      {"Wedge - Plates", 29},
      {"Tiles", 49},
      {"Slopes", 106},
      {"Plates 5xN-6xN plus Plates 5xN+", 22},
      {"Hinges", 66},
      {"Wedge - Bricks", 45},
  };
  c.staple_colors = {"red", "yellow", "blue", "green", "black", "white"};
  c.full_color_count = 141;
  c.stud_count_range = {1, 54};
  c.production_piece_count = 6800;
  c.unique_type_count_for_error = 1130;
  c.avg_stable_poses = 3;
  c.orientation_bins = 72;
  c.manufacturing_error = Rational::from_integers(18, 1'000'000);
  c.throughput_per_second = 600;
  return c;
}

void validate_catalog(const BrickCatalog& c) {
  require(!c.categories.empty(), "no categories");
  std::set<std::string> names;
  for (const auto& cat : c.categories) {
    require(!cat.name.empty(), "category with empty name");
    require(cat.subtype_count > 0, "category '" + cat.name + "' has no subtypes");
    require(names.insert(cat.name).second, "duplicate category '" + cat.name + "'");
  }
  require(c.staple_colors.size() == kStapleColorCount,
          "expected " + std::to_string(kStapleColorCount) + " staple colors, got " +
              std::to_string(c.staple_colors.size()));
  std::set<std::string> colors;
  for (const auto& color : c.staple_colors) {
    require(!color.empty(), "empty color name");
    require(colors.insert(color).second, "duplicate color '" + color + "'");
  }
  require(c.full_color_count > 0, "full_color_count must be positive");
  require(c.stud_count_range.min <= c.stud_count_range.max, "stud_count_range min exceeds max");
  require(c.production_piece_count > 0, "production_piece_count must be positive");
  require(c.unique_type_count_for_error > 0, "unique_type_count_for_error must be positive");
  require(c.avg_stable_poses > 0, "avg_stable_poses must be positive");
  require(c.orientation_bins > 0, "orientation_bins must be positive");
  require(c.throughput_per_second > 0, "throughput_per_second must be positive");
  require(c.manufacturing_error >= Rational(0) && c.manufacturing_error <= Rational(1),
          "manufacturing_error outside [0, 1]");
  (void)subtype_total(c);  // overflow check
}

BrickCatalog load_catalog(std::string_view text) {
  const Json doc = parse_json(text, "catalog");
  BrickCatalog c;
  std::uint64_t declared_total = 0;
  bool has_total = false;
  try {
    if (!doc.is_object()) throw Error(ErrorKind::parse, "catalog: document must be an object");
    c.name = doc.value("name", std::string("custom"));
    for (const auto& entry : doc.at("categories")) {
      c.categories.push_back({entry.at("name").get<std::string>(), positive_field(entry, "subtype_count")});
    }
    c.staple_colors = doc.at("staple_colors").get<std::vector<std::string>>();
    c.full_color_count = positive_field(doc, "full_color_count");
    const auto& studs = doc.at("stud_count_range");
    c.stud_count_range = {positive_field(studs, "min"), positive_field(studs, "max")};
    c.production_piece_count = positive_field(doc, "production_piece_count");
    c.unique_type_count_for_error = positive_field(doc, "unique_type_count_for_error");
    c.avg_stable_poses = positive_field(doc, "avg_stable_poses");
    c.orientation_bins = positive_field(doc, "orientation_bins");
    c.manufacturing_error = rational_from_json(doc.at("manufacturing_error"));
    c.throughput_per_second = positive_field(doc, "throughput_per_second");
    if (doc.contains("subtype_total")) {
      declared_total = positive_field(doc, "subtype_total");
      has_total = true;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("catalog: ") + e.what());
  }
  validate_catalog(c);
  if (has_total) {
    require(subtype_total(c) == declared_total,
            "subtype counts sum to " + std::to_string(subtype_total(c)) + " but subtype_total is " +
                std::to_string(declared_total));
  }
  return c;
}

BrickCatalog load_catalog_file(const std::string& path) { return load_catalog(read_text_file(path)); }

Json catalog_to_json(const BrickCatalog& c) {
  Json j;
  j["name"] = c.name;
  j["categories"] = Json::array();
  for (const auto& cat : c.categories) {
    j["categories"].push_back({{"name", cat.name}, {"subtype_count", cat.subtype_count}});
  }
  j["subtype_total"] = subtype_total(c);
  j["staple_colors"] = c.staple_colors;
  j["full_color_count"] = c.full_color_count;
  j["stud_count_range"] = {{"min", c.stud_count_range.min}, {"max", c.stud_count_range.max}};
  j["production_piece_count"] = c.production_piece_count;
  j["unique_type_count_for_error"] = c.unique_type_count_for_error;
  j["avg_stable_poses"] = c.avg_stable_poses;
  j["orientation_bins"] = c.orientation_bins;
  j["manufacturing_error"] = rational_to_json(c.manufacturing_error);
  j["throughput_per_second"] = c.throughput_per_second;
  return j;
}

std::string serialize_catalog(const BrickCatalog& catalog) { return catalog_to_json(catalog).dump(2) + "\n"; }

std::uint64_t subtype_total(const BrickCatalog& catalog) {
  std::uint64_t total = 0;
  for (const auto& cat : catalog.categories) {
    if (__builtin_add_overflow(total, cat.subtype_count, &total)) {
      throw Error(ErrorKind::overflow, "subtype total exceeds 64-bit range");
    }
  }
  return total;
}

std::uint64_t full_piece_count(const BrickCatalog& catalog) {
  return checked_product({subtype_total(catalog), catalog.full_color_count});
}

std::uint64_t production_unique_types(const BrickCatalog& catalog) {
  return catalog.production_piece_count / catalog.staple_colors.size();
}

std::uint64_t binning_population(const BrickCatalog& catalog, PopulationMode mode) {
  switch (mode) {
    case PopulationMode::full:
      return checked_product({catalog.avg_stable_poses, subtype_total(catalog), catalog.full_color_count,
                              catalog.orientation_bins});
    case PopulationMode::production:
      return checked_product({catalog.avg_stable_poses, catalog.production_piece_count, catalog.orientation_bins});
  }
  return 0;
}

const BrickCategory& smallest_category(const BrickCatalog& catalog) {
  return *std::min_element(catalog.categories.begin(), catalog.categories.end(),
                           [](const auto& a, const auto& b) { return a.subtype_count < b.subtype_count; });
}

const BrickCategory* find_category(const BrickCatalog& catalog, std::string_view name) {
  for (const auto& cat : catalog.categories) {
    if (iequals(cat.name, name)) return &cat;
  }
  return nullptr;
}

std::vector<std::string> pose_labels(const BrickCatalog& catalog) {
  return indexed_dimension("", catalog.avg_stable_poses, "p", 1).values;
}

DomainSpec analysis_domain(const BrickCatalog& catalog) {
  AttributeDimension shapes{std::string(dim::shape), {}};
  for (const auto& cat : catalog.categories) shapes.values.push_back(cat.name);
  return DomainSpec({
      {std::string(dim::color), catalog.staple_colors},
      indexed_dimension(std::string(dim::size), catalog.stud_count_range.width(), {}, catalog.stud_count_range.min),
      indexed_dimension(std::string(dim::orientation), catalog.orientation_bins),
      {std::string(dim::pose), pose_labels(catalog)},
      std::move(shapes),
  });
}

DomainSpec production_domain(const BrickCatalog& catalog) {
  return DomainSpec({
      {std::string(dim::pose), pose_labels(catalog)},
      indexed_dimension(std::string(dim::piece), catalog.production_piece_count, "piece-"),
      indexed_dimension(std::string(dim::orientation), catalog.orientation_bins),
  });
}

DomainSpec color_refined_domain(const BrickCatalog& catalog) {
  return DomainSpec({
      {std::string(dim::pose), pose_labels(catalog)},
      indexed_dimension(std::string(dim::type), production_unique_types(catalog), "type-"),
      {std::string(dim::color), catalog.staple_colors},
      indexed_dimension(std::string(dim::orientation), catalog.orientation_bins),
  });
}

DomainSpec error_type_domain(const BrickCatalog& catalog) {
  return DomainSpec({
      {std::string(dim::pose), pose_labels(catalog)},
      indexed_dimension(std::string(dim::type), catalog.unique_type_count_for_error, "type-"),
      indexed_dimension(std::string(dim::orientation), catalog.orientation_bins),
  });
}

}  // namespace biasprobe
