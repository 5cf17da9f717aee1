#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

/// Default cap on the number of instances any enumeration may visit.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct AttributeDimension {
  std::string name;
  std::vector<std::string> values;

  std::size_t cardinality() const noexcept { return values.size(); }
  /// Index of `label`, or npos.
  std::size_t index_of(std::string_view label) const noexcept;

  friend bool operator==(const AttributeDimension&, const AttributeDimension&) = default;
};

/// A population defined as the Cartesian product of its dimensions.
/// Construction validates names and values; instances are immutable.
class DomainSpec {
 public:
  DomainSpec() = default;
  explicit DomainSpec(std::vector<AttributeDimension> dimensions);

  const std::vector<AttributeDimension>& dimensions() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }

  /// Position of the named dimension, or npos.
  std::size_t find(std::string_view name) const noexcept;
  const AttributeDimension& dimension(std::string_view name) const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  std::vector<AttributeDimension> dims_;
};

/// Builds a dimension whose values are `prefix0 .. prefix{n-1}`, or plain
/// integers when `prefix` is empty.
AttributeDimension indexed_dimension(std::string name, std::size_t count,
                                     std::string_view prefix = {}, std::size_t first = 0);

/// Product of `factors`; throws Error(overflow) instead of wrapping.
std::uint64_t checked_product(std::initializer_list<std::uint64_t> factors);

/// Product of the dimension cardinalities. Throws Error(overflow) instead of
/// wrapping.
std::uint64_t population_size(const DomainSpec& domain);

/// One value per dimension, held as value indices in dimension order.
struct Instance {
  std::vector<std::size_t> value_index;

  std::string_view label(const DomainSpec& domain, std::size_t dim) const {
    return domain.dimensions()[dim].values[value_index[dim]];
  }
  std::vector<std::string> labels(const DomainSpec& domain) const;

  friend bool operator==(const Instance&, const Instance&) = default;
  friend auto operator<=>(const Instance&, const Instance&) = default;
};

/// Decodes a linear position (mixed radix, last dimension fastest).
Instance instance_at(const DomainSpec& domain, std::uint64_t position);

/// A half-open slice [first, last) of the lexicographic instance order.
///
/// Iteration is an odometer over value indices, so visiting an instance costs
/// amortized O(1). Any partition of [0, population) into slices visits each
/// instance exactly once.
class Enumeration {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Instance;
    using difference_type = std::ptrdiff_t;
    using pointer = const Instance*;
    using reference = const Instance&;

    iterator() = default;

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.position_ == b.position_; }

   private:
    friend class Enumeration;
    iterator(const DomainSpec* domain, std::uint64_t position);

    const DomainSpec* domain_ = nullptr;
    std::uint64_t position_ = 0;
    Instance current_;
  };

  iterator begin() const { return iterator(domain_, first_); }
  iterator end() const { return iterator(nullptr, last_); }
  std::uint64_t size() const noexcept { return last_ - first_; }

 private:
  friend Enumeration enumerate(const DomainSpec&, std::uint64_t);
  friend Enumeration enumerate_slice(const DomainSpec&, std::uint64_t, std::uint64_t, std::uint64_t);
  Enumeration(const DomainSpec* domain, std::uint64_t first, std::uint64_t last)
      : domain_(domain), first_(first), last_(last) {}

  const DomainSpec* domain_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// Every instance of `domain` in lexicographic order of value indices. The
/// domain must outlive the returned range. Throws Error(budget_exceeded) when
/// the population is larger than `budget`.
Enumeration enumerate(const DomainSpec& domain, std::uint64_t budget = kDefaultEnumerationBudget);

/// Instances [first, last) of the same order; the slice length is charged
/// against `budget`.
Enumeration enumerate_slice(const DomainSpec& domain, std::uint64_t first, std::uint64_t last,
                            std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace biasprobe
