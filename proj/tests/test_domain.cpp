#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "biasprobe/domain.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/oracle.hpp"

using namespace biasprobe;

namespace {

DomainSpec sized(std::initializer_list<std::size_t> sizes) {
  std::vector<AttributeDimension> dims;
  std::size_t i = 0;
  for (auto n : sizes) dims.push_back(indexed_dimension("d" + std::to_string(i++), n, "v"));
  return DomainSpec(std::move(dims));
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("population_size") {
    const DomainSpec production({indexed_dimension("poses", 3), indexed_dimension("types", 6800),
                                 indexed_dimension("orientations", 72)});
    CHECK(population_size(production) == 1'468'800);
    CHECK(population_size(sized({1})) == 1);
    CHECK(population_size(sized({2, 3, 5})) == 30);
  }

  TEST_CASE("population overflow is an error") {
    std::vector<AttributeDimension> dims;
    for (int i = 0; i < 8; ++i) dims.push_back(indexed_dimension("d" + std::to_string(i), 1000));
    CHECK_THROWS_AS(population_size(DomainSpec(dims)), Error);
    try {
      population_size(DomainSpec(dims));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::overflow);
    }
  }

  TEST_CASE("invalid domains are rejected") {
    CHECK_THROWS_AS(DomainSpec(std::vector<AttributeDimension>{{"a", {}}}), Error);
    CHECK_THROWS_AS(DomainSpec(std::vector<AttributeDimension>{{"a", {"x", "x"}}}), Error);
    CHECK_THROWS_AS(DomainSpec(std::vector<AttributeDimension>{{"a", {"x"}}, {"a", {"y"}}}), Error);
    CHECK_THROWS_AS(DomainSpec(std::vector<AttributeDimension>{{"", {"x"}}}), Error);
  }

  TEST_CASE("enumeration order is lexicographic") {
    const DomainSpec d(std::vector<AttributeDimension>{{"a", {"x", "y"}}, {"b", {"0", "1"}}});
    std::vector<std::vector<std::string>> seen;
    for (const auto& inst : enumerate(d)) seen.push_back(inst.labels(d));
    const std::vector<std::vector<std::string>> expected = {{"x", "0"}, {"x", "1"}, {"y", "0"}, {"y", "1"}};
    CHECK(seen == expected);

    const DomainSpec single(std::vector<AttributeDimension>{{"a", {"x"}}});
    std::vector<std::vector<std::string>> one;
    for (const auto& inst : enumerate(single)) one.push_back(inst.labels(single));
    CHECK(one == std::vector<std::vector<std::string>>{{"x"}});
  }

  TEST_CASE("enumerating [2,3,5] yields 30 distinct instances") {
    const auto d = sized({2, 3, 5});
    std::set<std::vector<std::size_t>> distinct;
    for (const auto& inst : enumerate(d)) distinct.insert(inst.value_index);
    CHECK(distinct.size() == 30);
  }

  TEST_CASE("budget") {
    const auto d = sized({10, 10});
    CHECK_NOTHROW(enumerate(d, 100));
    try {
      enumerate(d, 99);
      FAIL("expected budget error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::budget_exceeded);
    }
  }

  TEST_CASE("instance_at decodes mixed radix") {
    const auto d = sized({2, 3, 5});
    std::uint64_t pos = 0;
    for (const auto& inst : enumerate(d)) CHECK(inst == instance_at(d, pos++));
  }

  TEST_CASE("property: enumeration matches population, is sorted, distinct and deterministic") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto d = random_small_domain(seed, 4, 6);
      std::vector<Instance> first, second;
      for (const auto& inst : enumerate(d)) first.push_back(inst);
      for (const auto& inst : enumerate(d)) second.push_back(inst);
      REQUIRE(first.size() == population_size(d));
      REQUIRE(first == second);
      REQUIRE(std::adjacent_find(first.begin(), first.end(),
                                 [](const Instance& a, const Instance& b) { return !(a < b); }) == first.end());
    }
  }

  TEST_CASE("property: any slicing visits the same instances") {
    const auto d = sized({3, 4, 5});
    const auto total = population_size(d);
    std::vector<Instance> whole;
    for (const auto& inst : enumerate(d)) whole.push_back(inst);
    for (std::uint64_t cut = 0; cut <= total; cut += 7) {
      std::vector<Instance> parts;
      for (const auto& inst : enumerate_slice(d, 0, cut)) parts.push_back(inst);
      for (const auto& inst : enumerate_slice(d, cut, total)) parts.push_back(inst);
      REQUIRE(parts == whole);
    }
  }
}
