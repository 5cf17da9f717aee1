#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/rational.hpp"

namespace biasprobe {

enum class Face : std::uint8_t { top, bottom, left, right, front, back };

inline constexpr std::array<Face, 6> kAllFaces = {Face::top, Face::bottom, Face::left,
                                                 Face::right, Face::front, Face::back};

const char* to_string(Face face) noexcept;
/// Throws Error(unknown_value) for anything but the six face names.
Face parse_face(std::string_view text);
Face opposite(Face face) noexcept;

/// The set of faces visible together from one region of viewpoint space.
class BoxAspect {
 public:
  constexpr BoxAspect() = default;

  /// Throws Error(validation) for an empty set, opposite faces, or more than
  /// three faces.
  static BoxAspect of(std::initializer_list<Face> faces);
  static constexpr BoxAspect from_mask(std::uint8_t mask) {
    BoxAspect a;
    a.mask_ = mask;
    return a;
  }

  constexpr bool contains(Face f) const { return (mask_ >> static_cast<unsigned>(f)) & 1U; }
  int size() const { return __builtin_popcount(mask_); }
  constexpr std::uint8_t mask() const { return mask_; }
  std::string str() const;

  friend constexpr bool operator==(BoxAspect, BoxAspect) = default;
  friend constexpr auto operator<=>(BoxAspect, BoxAspect) = default;

 private:
  std::uint8_t mask_ = 0;
};

struct AspectSummary {
  std::uint64_t total_aspects = 0;
  std::uint64_t affected_aspects = 0;
  Rational affected_fraction;
};

/// Aspects of an axis-aligned box under orthographic projection. Along each
/// axis the viewer sees the positive face, the negative face, or neither;
/// every combination except "neither on all three axes" is one aspect,
/// giving 3^3 - 1 = 26.
std::vector<BoxAspect> box_aspects();

/// Aspects that lose information when `face` is never observed.
AspectSummary affected_by_missing_face(Face face);
/// Throws Error(unknown_value) for an unknown face name.
AspectSummary affected_by_missing_face(std::string_view face);

}  // namespace biasprobe
