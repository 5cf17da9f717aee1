// biasprobe: selection-bias accounting for the brick sorting domain.
//
// Exit status: 0 success, 1 usage or validation error, 2 verification
// mismatch, 3 enumeration budget exceeded.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biasprobe/account.hpp"
#include "biasprobe/aspect.hpp"
#include "biasprobe/bias.hpp"
#include "biasprobe/catalog.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/mixing.hpp"
#include "biasprobe/oracle.hpp"
#include "biasprobe/recover.hpp"
#include "biasprobe/report.hpp"

namespace bp = biasprobe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitBudget = 3;

constexpr const char* kCatalogEnv = "BIASPROBE_CATALOG";

struct CliConfig {
  std::string catalog_path;
  std::string rules_path;
  std::string output_format = "plain";
  bool no_timestamp = false;
  std::uint64_t enumeration_budget = bp::kDefaultEnumerationBudget;
};

std::string group_digits(std::uint64_t n) {
  std::string s = std::to_string(n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

bp::BrickCatalog load_catalog(const CliConfig& cfg) {
  std::string path = cfg.catalog_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kCatalogEnv); env != nullptr && *env != '\0') path = env;
  }
  return path.empty() ? bp::builtin_catalog() : bp::load_catalog_file(path);
}

bp::RuleSet load_rules(const CliConfig& cfg) {
  return cfg.rules_path.empty() ? bp::builtin_rules() : bp::load_rules_file(cfg.rules_path);
}

void line(std::ostream& os, const std::string& label, const std::string& value) {
  os << std::left << std::setw(36) << label << std::right << std::setw(16) << value << '\n';
}

// Pads to `width` display columns, counting UTF-8 code points.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t columns = 0;
  for (unsigned char c : s) columns += (c & 0xC0) != 0x80 ? 1 : 0;
  return columns >= width ? s + ' ' : s + std::string(width - columns, ' ');
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// -- catalog ----------------------------------------------------------------

int cmd_catalog(const CliConfig& cfg, std::ostream& out) {
  const auto c = load_catalog(cfg);
  const auto total = bp::subtype_total(c);
  if (cfg.output_format == "json") {
    out << bp::serialize_catalog(c);
    return kExitOk;
  }
  if (cfg.output_format == "csv") {
    out << "category,subtype_count\n";
    for (const auto& cat : c.categories) out << csv_field(cat.name) << ',' << cat.subtype_count << '\n';
    return kExitOk;
  }
  if (cfg.output_format == "markdown") {
    out << "| Category | Sub-types |\n|---|---|\n";
    for (const auto& cat : c.categories) out << "| " << cat.name << " | " << cat.subtype_count << " |\n";
    out << "| **Total** | " << total << " |\n";
    return kExitOk;
  }

  out << "Catalog: " << c.name << "\n\n";
  line(out, "Category", "Sub-types");
  for (const auto& cat : c.categories) line(out, cat.name, std::to_string(cat.subtype_count));
  line(out, "Total sub-types", group_digits(total));
  out << '\n';
  std::string staples;
  for (const auto& s : c.staple_colors) staples += (staples.empty() ? "" : ", ") + s;
  out << "Staple colors: " << staples << '\n';
  line(out, "Full color palette", group_digits(c.full_color_count));
  line(out, "Possible pieces (" + std::to_string(total) + " x " + std::to_string(c.full_color_count) + ")",
       group_digits(bp::full_piece_count(c)));
  line(out, "Production pieces", group_digits(c.production_piece_count));
  line(out, "Production unique types", group_digits(bp::production_unique_types(c)));
  line(out, "Unique types (error denominator)", group_digits(c.unique_type_count_for_error));
  line(out, "Stud counts",
       std::to_string(c.stud_count_range.min) + ".." + std::to_string(c.stud_count_range.max));
  line(out, "Average stable poses", std::to_string(c.avg_stable_poses));
  line(out, "Orientation bins", std::to_string(c.orientation_bins));
  line(out, "Manufacturing error", bp::render_decimal(c.manufacturing_error, 6));
  line(out, "Throughput per second", group_digits(c.throughput_per_second));
  line(out, "Binning population (full)", group_digits(bp::binning_population(c, bp::PopulationMode::full)));
  line(out, "Binning population (production)",
       group_digits(bp::binning_population(c, bp::PopulationMode::production)));
  return kExitOk;
}

// -- analyze ----------------------------------------------------------------

int cmd_analyze(const CliConfig& cfg, const std::string& dimension, const std::vector<std::string>& withheld,
                std::ostream& out) {
  const auto catalog = load_catalog(cfg);
  const auto rules = load_rules(cfg);
  const auto result = bp::analyze(bp::BiasSpec::single(dimension, withheld), catalog, rules);
  const auto bound = bp::total_error(catalog.manufacturing_error, result.added_error, result.network_label);

  if (cfg.output_format == "json") {
    bp::Json j = bp::analysis_to_json(result);
    j["bound"] = {{"label", bound.label},
                  {"base", bp::rendered_rational_to_json(bound.base)},
                  {"total", bp::rendered_rational_to_json(bound.total)}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  const auto total = bp::render_decimal(bound.total, bp::kRenderPlaces);
  out << "dimension:   " << dimension << '\n';
  out << "withheld:    " << withheld.front() << '\n';
  out << "network:     " << result.network_label << '\n';
  out << "verdict:     " << bp::to_string(result.verdict.ruling) << '\n';
  out << "rule:        " << result.verdict.rule_id << '\n';
  out << "added error: " << result.added_error.str() << " (" << bp::render_decimal(result.added_error, 6) << ")\n";
  out << "bound:       G_{" << result.network_label << "} < " << total << " (exact " << bound.total.str() << ")\n";
  for (const auto& n : result.verdict.notes) {
    out << "note:        " << n.label << " = " << n.value.str() << " (" << bp::render_decimal(n.value, 6) << ")\n";
  }
  out << "rationale:   " << result.verdict.rationale << '\n';
  return kExitOk;
}

// -- table2 -----------------------------------------------------------------

int cmd_table2(const CliConfig& cfg, bool exact, std::ostream& out) {
  const auto catalog = load_catalog(cfg);
  const auto rows = bp::table2(catalog, load_rules(cfg));

  if (cfg.output_format == "json") {
    bp::Json j = bp::Json::array();
    for (const auto& r : rows) {
      j.push_back({{"bias", r.bias_name},
                   {"network", r.network_label},
                   {"base", bp::rational_to_json(r.bound.base)},
                   {"added", bp::rational_to_json(r.bound.added)},
                   {"total", bp::rational_to_json(r.bound.total)},
                   {"rendered", r.rendered}});
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  if (cfg.output_format == "csv") {
    out << "bias,network,bound" << (exact ? ",exact" : "") << '\n';
    for (const auto& r : rows) {
      out << csv_field(r.bias_name) << ',' << csv_field(r.network_label) << ',' << r.rendered;
      if (exact) out << ',' << r.bound.total.str();
      out << '\n';
    }
    return kExitOk;
  }
  if (cfg.output_format == "markdown") {
    out << "| Bias | Network | Bound |" << (exact ? " Exact |" : "") << '\n';
    out << "|---|---|---|" << (exact ? "---|" : "") << '\n';
    for (const auto& r : rows) {
      out << "| " << r.bias_name << " | " << r.network_label << " | G < " << r.rendered << " |";
      if (exact) out << ' ' << r.bound.total.str() << " |";
      out << '\n';
    }
    return kExitOk;
  }
  for (const auto& r : rows) {
    out << pad(r.bias_name, 20) << pad(r.network_label, 34) << "G < " << r.rendered;
    if (exact) out << "   " << r.bound.total.str();
    out << '\n';
  }
  return kExitOk;
}

// -- breakdown --------------------------------------------------------------

std::vector<bp::AnalysisResult> load_results(const std::string& path, const bp::BrickCatalog& catalog,
                                             const bp::RuleSet& rules) {
  const auto doc = bp::parse_json(bp::read_text_file(path), "results");
  if (!doc.is_array()) throw bp::Error(bp::ErrorKind::parse, "results: document must be an array");
  std::vector<bp::AnalysisResult> out;
  for (const auto& item : doc) {
    if (item.contains("verdict")) {
      out.push_back(bp::analysis_from_json(item));
    } else {
      // A bare bias entry: analyze it here.
      out.push_back(bp::analyze(bp::bias_from_json(bp::Json::array({item})), catalog, rules));
    }
  }
  return out;
}

int cmd_breakdown(const CliConfig& cfg, bool all_builtin, const std::string& results_path,
                  const std::string& notes_path, const std::string& output_path, std::ostream& out) {
  const auto catalog = load_catalog(cfg);
  const auto rules = load_rules(cfg);
  std::vector<bp::AnalysisResult> results;
  if (all_builtin) {
    results = bp::builtin_analyses(catalog, rules);
  } else if (!results_path.empty()) {
    results = load_results(results_path, catalog, rules);
  }
  std::optional<std::string> stamp;
  if (!cfg.no_timestamp) stamp = bp::utc_timestamp();
  auto breakdown = bp::build_breakdown(results, catalog, stamp);
  if (!notes_path.empty()) bp::merge_notes(breakdown, bp::parse_json(bp::read_text_file(notes_path), "notes"));

  const auto format = cfg.output_format == "plain" ? bp::ReportFormat::markdown
                                                   : bp::parse_report_format(cfg.output_format);
  const auto text = bp::render(breakdown, format);
  if (output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw bp::Error(bp::ErrorKind::invalid_argument, "cannot write '" + output_path + "'");
    file << text;
  }
  return kExitOk;
}

// -- verify -----------------------------------------------------------------

int cmd_verify(const CliConfig& cfg, std::size_t property_count, unsigned workers, std::ostream& out) {
  const auto catalog = load_catalog(cfg);
  const auto rules = load_rules(cfg);
  bp::OracleOptions options{cfg.enumeration_budget, workers};

  const auto checks = bp::run_table2_checks(catalog, rules, options);
  const bp::Table2Check* failed = nullptr;
  for (const auto& c : checks) {
    out << (c.passed ? "ok   " : "FAIL ") << std::left << std::setw(26) << c.row << std::setw(6) << c.network_label
        << c.oracle.misclassified << " of " << c.oracle.population << " = " << c.oracle.empirical_fraction.str()
        << " (closed form " << (c.oracle.closed_form ? c.oracle.closed_form->str() : "none") << ", expected "
        << c.reference.str();
    if (c.production_equivalent.denominator() == 1) {
      out << "; " << c.production_equivalent.str() << " of "
          << bp::binning_population(catalog, bp::PopulationMode::production) << " production images";
    }
    out << ")\n";
    if (!c.passed && failed == nullptr) failed = &c;
  }
  if (failed != nullptr) {
    std::cerr << "biasprobe: verification mismatch in row '" << failed->row << "'\n";
    return kExitMismatch;
  }
  const auto n = bp::run_oracle_property_suite(1, property_count, options);
  out << "ok   oracle property suite: " << n << " random domains agree with closed form\n";
  return kExitOk;
}

// -- combin -----------------------------------------------------------------

long double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  long double v = 0;
  try {
    v = std::stold(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw bp::Error(bp::ErrorKind::invalid_argument, std::string(what) + " '" + text + "' is not a number");
  }
  return v;
}

int cmd_combin(const CliConfig& cfg, const std::string& n_text, const std::string& k_text, std::ostream& out) {
  const long double n = parse_number(n_text, "n");
  const long double k = parse_number(k_text, "k");
  if (k < 0 || std::floor(k) != k || k > 1.8e19L) {
    throw bp::Error(bp::ErrorKind::invalid_argument, "k must be a non-negative integer");
  }
  const auto m = bp::log10_combinations(n, static_cast<std::uint64_t>(k));
  if (cfg.output_format == "json") {
    out << bp::Json{{"n", n_text}, {"k", k_text}, {"log10", m.log10_value}, {"digits", m.digit_count}}.dump(2)
        << '\n';
    return kExitOk;
  }
  std::ostringstream log10;
  log10 << std::setprecision(12) << m.log10_value;
  out << "log10 C(" << n_text << ", " << k_text << ") = " << log10.str() << '\n';
  out << m.digit_count << " digits\n";
  return kExitOk;
}

int exit_code_for(bp::ErrorKind kind) {
  switch (kind) {
    case bp::ErrorKind::mismatch: return kExitMismatch;
    case bp::ErrorKind::budget_exceeded: return kExitBudget;
    default: return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selection-bias accounting for the brick sorting domain"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--catalog", cfg.catalog_path, std::string("Catalog JSON (default: builtin, or $") + kCatalogEnv + ")");
  app.add_option("--rules", cfg.rules_path, "Mixing rules JSON (default: builtin)");
  app.add_option("--format", cfg.output_format, "Output format")
      ->check(CLI::IsMember({"plain", "markdown", "csv", "json"}));
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit generation timestamps");
  app.add_option("--budget", cfg.enumeration_budget, "Enumeration budget (instances)")->check(CLI::PositiveNumber);

  auto* catalog_cmd = app.add_subcommand("catalog", "Print the brick catalog and population counts");

  std::string dimension;
  std::vector<std::string> withheld;
  auto* analyze_cmd = app.add_subcommand("analyze", "Recoverability verdict and error bound for one withheld value");
  analyze_cmd->add_option("--dimension", dimension, "color, size, orientation, pose or shape")->required();
  analyze_cmd->add_option("--withhold", withheld, "Withheld value")->required();

  bool exact = false;
  auto* table2_cmd = app.add_subcommand("table2", "Summary of error bounds for every analysed bias");
  table2_cmd->add_flag("--exact", exact, "Add the exact rational column");

  bool all_builtin = false;
  std::string results_path, notes_path, output_path;
  auto* breakdown_cmd = app.add_subcommand("breakdown", "Render a Bias Breakdown");
  auto* all_opt = breakdown_cmd->add_flag("--all-builtin", all_builtin, "Analyse every builtin case");
  breakdown_cmd->add_option("--results", results_path, "JSON array of analysis results or bias entries")
      ->check(CLI::ExistingFile)
      ->excludes(all_opt);
  breakdown_cmd->add_option("--notes", notes_path, "Notes JSON merged into non-evaluated columns")
      ->check(CLI::ExistingFile);
  breakdown_cmd->add_option("-o,--output", output_path, "Write to file instead of stdout");

  std::size_t property_count = 100;
  unsigned workers = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Brute-force check of every bound against enumeration");
  verify_cmd->add_option("--property-count", property_count, "Random domains in the oracle property suite");
  verify_cmd->add_option("--workers", workers, "Enumeration threads (0: all cores)");

  std::string n_text, k_text;
  auto* combin_cmd = app.add_subcommand("combin", "Magnitude of the number of k-subsets of n items");
  combin_cmd->add_option("--n", n_text, "Population size, e.g. 10000 or 1.5e25")->required();
  combin_cmd->add_option("--k", k_text, "Subset size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*catalog_cmd) return cmd_catalog(cfg, std::cout);
    if (*analyze_cmd) return cmd_analyze(cfg, dimension, withheld, std::cout);
    if (*table2_cmd) return cmd_table2(cfg, exact, std::cout);
    if (*breakdown_cmd) return cmd_breakdown(cfg, all_builtin, results_path, notes_path, output_path, std::cout);
    if (*verify_cmd) return cmd_verify(cfg, property_count, workers, std::cout);
    if (*combin_cmd) return cmd_combin(cfg, n_text, k_text, std::cout);
  } catch (const bp::Error& e) {
    std::cerr << "biasprobe: " << bp::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
