#include "biasprobe/oracle.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

constexpr std::uint64_t kMaxRandomPopulation = 100'000;

// Lookup tables built once per run so the enumeration loop only indexes.
struct Predicate {
  // unrecoverable[d][v] for dimensions present in the domain
  std::vector<std::vector<char>> unrecoverable;
  std::size_t flag_dim = npos;
  std::uint64_t flagged_prefix = 0;

  bool operator()(const Instance& inst) const {
    if (flag_dim != npos && inst.value_index[flag_dim] < flagged_prefix) return true;
    for (std::size_t d = 0; d < unrecoverable.size(); ++d) {
      if (!unrecoverable[d].empty() && unrecoverable[d][inst.value_index[d]]) return true;
    }
    return false;
  }
};

std::uint64_t ceil_share(const Rational& fraction, std::uint64_t n) {
  const BigInt scaled = fraction.numerator() * n;
  BigInt q = scaled / fraction.denominator();
  if (q * fraction.denominator() != scaled) ++q;
  return static_cast<std::uint64_t>(q);
}

const RecoverabilityVerdict* find_verdict(const VerdictFunction& vf, const std::string& dimension,
                                          const std::string& value) {
  const auto it = vf.verdicts.find({dimension, value});
  return it == vf.verdicts.end() ? nullptr : &it->second;
}

// Largest Partial fraction over the bias's withheld values.
std::optional<Rational> partial_share(const BiasSpec& bias, const VerdictFunction& vf) {
  std::optional<Rational> share;
  for (const auto& entry : bias.entries) {
    for (const auto& v : entry.withheld) {
      const auto* verdict = find_verdict(vf, entry.dimension, v);
      if (verdict && verdict->ruling == Ruling::partial) {
        if (!share || *share < verdict->affected_fraction) share = verdict->affected_fraction;
      }
    }
  }
  return share;
}

// The bias restricted to its Unrecoverable values, dropping empty entries.
BiasSpec unrecoverable_part(const BiasSpec& bias, const VerdictFunction& vf) {
  BiasSpec out;
  for (const auto& entry : bias.entries) {
    BiasEntry kept{entry.dimension, {}};
    for (const auto& v : entry.withheld) {
      const auto* verdict = find_verdict(vf, entry.dimension, v);
      if (verdict && verdict->ruling == Ruling::unrecoverable) kept.withheld.push_back(v);
    }
    if (!kept.withheld.empty()) out.entries.push_back(std::move(kept));
  }
  return out;
}

Predicate build_predicate(const DomainSpec& domain, const BiasSpec& bias, const VerdictFunction& vf) {
  for (const auto& entry : bias.entries) {
    if (domain.find(entry.dimension) != npos) continue;
    for (const auto& v : entry.withheld) {
      const auto* verdict = find_verdict(vf, entry.dimension, v);
      if (verdict && verdict->ruling == Ruling::unrecoverable) {
        throw Error(ErrorKind::unknown_dimension, "bias entry '" + entry.dimension +
                                                      "' has Unrecoverable values but no such dimension exists");
      }
    }
  }
  BiasSpec present;
  for (const auto& entry : bias.entries) {
    if (domain.find(entry.dimension) != npos) present.entries.push_back(entry);
  }
  if (!present.entries.empty()) validate_bias(domain, present);

  Predicate p;
  p.unrecoverable.resize(domain.rank());
  for (const auto& entry : unrecoverable_part(present, vf).entries) {
    const auto d = domain.find(entry.dimension);
    auto& mask = p.unrecoverable[d];
    mask.assign(domain.dimensions()[d].cardinality(), 0);
    for (const auto& v : entry.withheld) mask[domain.dimensions()[d].index_of(v)] = 1;
  }
  if (const auto share = partial_share(bias, vf)) {
    if (vf.flag_dimension.empty()) {
      throw Error(ErrorKind::invalid_argument, "Partial verdicts need a flag dimension");
    }
    p.flag_dim = domain.find(vf.flag_dimension);
    if (p.flag_dim == npos) {
      throw Error(ErrorKind::unknown_dimension, "flag dimension '" + vf.flag_dimension + "' not in domain");
    }
    p.flagged_prefix = ceil_share(*share, domain.dimensions()[p.flag_dim].cardinality());
  }
  return p;
}

std::uint64_t count_slice(const DomainSpec& domain, const Predicate& pred, std::uint64_t first, std::uint64_t last,
                          std::uint64_t budget) {
  std::uint64_t n = 0;
  for (const auto& inst : enumerate_slice(domain, first, last, budget)) n += pred(inst) ? 1 : 0;
  return n;
}

}  // namespace

VerdictFunction VerdictFunction::all_unrecoverable(const BiasSpec& bias) {
  VerdictFunction vf;
  vf.builtin_model = false;
  for (const auto& entry : bias.entries) {
    for (const auto& v : entry.withheld) {
      vf.verdicts[{entry.dimension, v}] = {Ruling::unrecoverable, 1, "user-model", "withheld value assumed lost", {}};
    }
  }
  return vf;
}

VerdictFunction VerdictFunction::from_analysis(const AnalysisResult& result, std::string flag_dimension) {
  VerdictFunction vf;
  vf.verdicts[{result.dimension(), result.withheld()}] = result.verdict;
  vf.flag_dimension = std::move(flag_dimension);
  return vf;
}

std::optional<Rational> closed_form_fraction(const DomainSpec& domain, const BiasSpec& bias,
                                             const VerdictFunction& vf) {
  const auto partial = partial_share(bias, vf);
  const auto lost = unrecoverable_part(bias, vf);
  Rational u;
  if (!lost.entries.empty()) u = apply_bias(domain, lost).withheld_fraction;
  if (!partial) return u;
  if (bias.entries.size() != 1 || bias.entries.front().dimension == vf.flag_dimension) return std::nullopt;
  return u + *partial - u * *partial;
}

OracleResult brute_force_error(const DomainSpec& domain, const BiasSpec& bias, const VerdictFunction& verdicts,
                               const OracleOptions& options) {
  const auto population = population_size(domain);
  if (population > options.budget) {
    throw Error(ErrorKind::budget_exceeded, "population of " + std::to_string(population) +
                                                " instances exceeds enumeration budget of " +
                                                std::to_string(options.budget));
  }
  const Predicate pred = build_predicate(domain, bias, verdicts);

  unsigned workers = options.workers != 0 ? options.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, population / 4096)));

  OracleResult r;
  r.population = population;
  if (workers <= 1) {
    r.misclassified = count_slice(domain, pred, 0, population, options.budget);
  } else {
    std::vector<std::future<std::uint64_t>> parts;
    const std::uint64_t chunk = (population + workers - 1) / workers;
    for (std::uint64_t first = 0; first < population; first += chunk) {
      const std::uint64_t last = std::min(population, first + chunk);
      parts.push_back(std::async(std::launch::async, count_slice, std::cref(domain), std::cref(pred), first, last,
                                 options.budget));
    }
    for (auto& f : parts) r.misclassified += f.get();
  }
  r.empirical_fraction = Rational::from_integers(r.misclassified, population);
  r.closed_form = closed_form_fraction(domain, bias, verdicts);
  r.matches_closed_form = r.closed_form && *r.closed_form == r.empirical_fraction;
  return r;
}

DomainSpec random_small_domain(std::uint64_t seed, std::size_t max_dims, std::size_t max_values) {
  if (max_dims < 1 || max_values < 2) {
    throw Error(ErrorKind::invalid_argument, "random domain needs max_dims >= 1 and max_values >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dims_dist(1, max_dims);
  std::uniform_int_distribution<std::size_t> values_dist(2, max_values);
  const auto rank = dims_dist(rng);
  std::vector<AttributeDimension> dims;
  std::uint64_t population = 1;
  for (std::size_t d = 0; d < rank; ++d) {
    const auto n = values_dist(rng);
    if (population * n > kMaxRandomPopulation) break;
    population *= n;
    dims.push_back(indexed_dimension("d" + std::to_string(d), n, "v"));
  }
  return DomainSpec(std::move(dims));
}

BiasSpec random_single_entry_bias(const DomainSpec& domain, std::mt19937_64& rng) {
  if (domain.rank() == 0) throw Error(ErrorKind::invalid_argument, "domain has no dimensions");
  std::uniform_int_distribution<std::size_t> pick_dim(0, domain.rank() - 1);
  const auto& dimension = domain.dimensions()[pick_dim(rng)];
  if (dimension.cardinality() < 2) throw Error(ErrorKind::invalid_argument, "dimension too small to bias");
  std::uniform_int_distribution<std::size_t> pick_count(1, dimension.cardinality() - 1);
  std::vector<std::string> values = dimension.values;
  std::shuffle(values.begin(), values.end(), rng);
  values.resize(pick_count(rng));
  return BiasSpec::single(dimension.name, std::move(values));
}

namespace {

struct Table2Case {
  std::string row;
  std::string network_label;
  DomainSpec domain;
  std::string domain_description;
  BiasSpec bias;
  VerdictFunction verdicts;
  Rational reference;
};

std::string describe(const DomainSpec& domain) {
  std::string out;
  for (const auto& d : domain.dimensions()) {
    if (!out.empty()) out += " x ";
    out += d.name + "(" + std::to_string(d.cardinality()) + ")";
  }
  return out;
}

std::vector<Table2Case> table2_cases(const BrickCatalog& catalog, const RuleSet& rules) {
  // Reference shares per row.
  const std::vector<std::string> lost_colors = {"red", "blue", "yellow"};
  const Rational color_lost = Rational::from_integers(1, 6);
  const Rational size_share = Rational::from_integers(21, 1130);
  const Rational pose_share = Rational::from_integers(12, 100);
  const Rational pose_exact = Rational::from_integers(132, 1130);
  const Rational shape_share = Rational::from_integers(9504, 1'468'800);

  const auto production = production_domain(catalog);
  const auto refined = color_refined_domain(catalog);
  const auto types = error_type_domain(catalog);

  std::vector<Table2Case> cases;
  cases.push_back({"unbiased", "A", production, describe(production), BiasSpec{}, VerdictFunction{}, 0});

  for (const auto& color : catalog.staple_colors) {
    auto result = analyze(BiasSpec::single(std::string(dim::color), {color}), catalog, rules);
    const bool lost = std::find(lost_colors.begin(), lost_colors.end(), color) != lost_colors.end();
    cases.push_back({"color (" + color + ")", result.network_label, refined, describe(refined), result.bias,
                     VerdictFunction::from_analysis(result), lost ? color_lost : Rational(0)});
  }

  auto size = analyze(BiasSpec::single(std::string(dim::size), {"4"}), catalog, rules);
  cases.push_back({"size", size.network_label, types, describe(types), size.bias,
                   VerdictFunction::from_analysis(size, std::string(dim::type)), size_share});

  auto orientation = analyze(BiasSpec::single(std::string(dim::orientation), {"0"}), catalog, rules);
  cases.push_back({"orientation", orientation.network_label, production, describe(production), orientation.bias,
                   VerdictFunction::from_analysis(orientation), 0});

  const auto poses = pose_labels(catalog);
  const auto pose_value = poses.size() > 1 ? poses[1] : poses.front();
  auto pose = analyze(BiasSpec::single(std::string(dim::pose), {pose_value}), catalog, rules);
  cases.push_back({"pose", pose.network_label, production, describe(production), pose.bias,
                   VerdictFunction::from_analysis(pose, std::string(dim::piece)), pose_share});

  auto pose_alt = pose;
  for (const auto& note : pose.verdict.notes) {
    if (note.label == "exact_alternative") pose_alt.verdict.affected_fraction = note.value;
  }
  pose_alt.added_error = pose_alt.verdict.affected_fraction;
  cases.push_back({"pose (exact alternative)", pose.network_label, types, describe(types), pose_alt.bias,
                   VerdictFunction::from_analysis(pose_alt, std::string(dim::type)), pose_exact});

  const auto* slopes = find_category(catalog, "Slopes");
  const auto shape_group = slopes ? slopes->name : catalog.categories.front().name;
  auto shape = analyze(BiasSpec::single(std::string(dim::shape), {shape_group}), catalog, rules);
  cases.push_back({"shape", shape.network_label, production, describe(production), shape.bias,
                   VerdictFunction::from_analysis(shape, std::string(dim::piece)), shape_share});
  return cases;
}

}  // namespace

std::vector<Table2Check> run_table2_checks(const BrickCatalog& catalog, const RuleSet& rules,
                                           const OracleOptions& options) {
  const auto production_population = binning_population(catalog, PopulationMode::production);
  std::vector<Table2Check> checks;
  for (const auto& c : table2_cases(catalog, rules)) {
    Table2Check check;
    check.row = c.row;
    check.network_label = c.network_label;
    check.domain_description = c.domain_description;
    check.reference = c.reference;
    check.oracle = brute_force_error(c.domain, c.bias, c.verdicts, options);
    check.production_equivalent =
        check.oracle.empirical_fraction * Rational(static_cast<std::int64_t>(production_population));
    check.passed = check.oracle.matches_closed_form && check.oracle.empirical_fraction == c.reference;
    checks.push_back(std::move(check));
  }
  return checks;
}

std::vector<Table2Check> verify_table2(const BrickCatalog& catalog, const RuleSet& rules,
                                       const OracleOptions& options) {
  auto checks = run_table2_checks(catalog, rules, options);
  for (const auto& c : checks) {
    if (!c.passed) {
      throw Error(ErrorKind::mismatch, "table2 row '" + c.row + "': oracle " + c.oracle.empirical_fraction.str() +
                                           ", closed form " +
                                           (c.oracle.closed_form ? c.oracle.closed_form->str() : "none") +
                                           ", expected " + c.reference.str());
    }
  }
  return checks;
}

std::size_t run_oracle_property_suite(std::uint64_t first_seed, std::size_t count, const OracleOptions& options) {
  for (std::size_t i = 0; i < count; ++i) {
    const auto seed = first_seed + i;
    const auto domain = random_small_domain(seed, 4, 8);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto bias = random_single_entry_bias(domain, rng);
    const auto oracle = brute_force_error(domain, bias, VerdictFunction::all_unrecoverable(bias), options);
    const auto closed = apply_bias(domain, bias).withheld_fraction;
    if (oracle.empirical_fraction != closed || !oracle.matches_closed_form) {
      throw Error(ErrorKind::mismatch, "oracle property, seed " + std::to_string(seed) + ": enumerated " +
                                           oracle.empirical_fraction.str() + " vs closed form " + closed.str());
    }
  }
  return count;
}

}  // namespace biasprobe
