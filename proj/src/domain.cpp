#include "biasprobe/domain.hpp"

#include <algorithm>
#include <set>

#include "biasprobe/error.hpp"

namespace biasprobe {

std::size_t AttributeDimension::index_of(std::string_view label) const noexcept {
  auto it = std::find(values.begin(), values.end(), label);
  return it == values.end() ? npos : static_cast<std::size_t>(it - values.begin());
}

DomainSpec::DomainSpec(std::vector<AttributeDimension> dimensions) : dims_(std::move(dimensions)) {
  std::set<std::string_view> names;
  for (const auto& dim : dims_) {
    if (dim.name.empty()) throw Error(ErrorKind::validation, "dimension with empty name");
    if (!names.insert(dim.name).second) {
      throw Error(ErrorKind::validation, "duplicate dimension '" + dim.name + "'");
    }
    if (dim.values.empty()) {
      throw Error(ErrorKind::validation, "dimension '" + dim.name + "' has no values");
    }
    std::set<std::string_view> seen;
    for (const auto& v : dim.values) {
      if (!seen.insert(v).second) {
        throw Error(ErrorKind::validation, "dimension '" + dim.name + "' repeats value '" + v + "'");
      }
    }
  }
}

std::size_t DomainSpec::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return i;
  }
  return npos;
}

const AttributeDimension& DomainSpec::dimension(std::string_view name) const {
  const auto i = find(name);
  if (i == npos) throw Error(ErrorKind::unknown_dimension, "unknown dimension '" + std::string(name) + "'");
  return dims_[i];
}

AttributeDimension indexed_dimension(std::string name, std::size_t count, std::string_view prefix,
                                     std::size_t first) {
  AttributeDimension dim{std::move(name), {}};
  dim.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    dim.values.push_back(std::string(prefix) + std::to_string(first + i));
  }
  return dim;
}

std::uint64_t checked_product(std::initializer_list<std::uint64_t> factors) {
  std::uint64_t total = 1;
  for (auto f : factors) {
    if (__builtin_mul_overflow(total, f, &total)) {
      throw Error(ErrorKind::overflow, "count exceeds 64-bit range");
    }
  }
  return total;
}

std::uint64_t population_size(const DomainSpec& domain) {
  std::uint64_t total = 1;
  for (const auto& dim : domain.dimensions()) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(dim.cardinality()), &total)) {
      throw Error(ErrorKind::overflow, "population size exceeds 64-bit range");
    }
  }
  return total;
}

std::vector<std::string> Instance::labels(const DomainSpec& domain) const {
  std::vector<std::string> out;
  out.reserve(value_index.size());
  for (std::size_t d = 0; d < value_index.size(); ++d) out.emplace_back(label(domain, d));
  return out;
}

Instance instance_at(const DomainSpec& domain, std::uint64_t position) {
  const auto& dims = domain.dimensions();
  Instance inst{std::vector<std::size_t>(dims.size(), 0)};
  for (std::size_t d = dims.size(); d-- > 0;) {
    const auto radix = static_cast<std::uint64_t>(dims[d].cardinality());
    inst.value_index[d] = static_cast<std::size_t>(position % radix);
    position /= radix;
  }
  return inst;
}

Enumeration::iterator::iterator(const DomainSpec* domain, std::uint64_t position)
    : domain_(domain), position_(position) {
  if (domain_ != nullptr) current_ = instance_at(*domain_, position_);
}

Enumeration::iterator& Enumeration::iterator::operator++() {
  ++position_;
  const auto& dims = domain_->dimensions();
  for (std::size_t d = dims.size(); d-- > 0;) {
    if (++current_.value_index[d] < dims[d].cardinality()) break;
    current_.value_index[d] = 0;
  }
  return *this;
}

Enumeration enumerate(const DomainSpec& domain, std::uint64_t budget) {
  const auto total = population_size(domain);
  return enumerate_slice(domain, 0, total, budget);
}

Enumeration enumerate_slice(const DomainSpec& domain, std::uint64_t first, std::uint64_t last,
                            std::uint64_t budget) {
  const auto total = population_size(domain);
  if (first > last || last > total) {
    throw Error(ErrorKind::out_of_range, "enumeration slice outside the population");
  }
  if (last - first > budget) {
    throw Error(ErrorKind::budget_exceeded,
                "enumeration of " + std::to_string(last - first) + " instances exceeds budget of " +
                    std::to_string(budget) + "; use closed-form accounting");
  }
  return Enumeration(&domain, first, last);
}

}  // namespace biasprobe
