#include "biasprobe/aspect.hpp"

#include <algorithm>

#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

constexpr std::uint8_t bit(Face f) { return static_cast<std::uint8_t>(1U << static_cast<unsigned>(f)); }

}  // namespace

const char* to_string(Face face) noexcept {
  switch (face) {
    case Face::top: return "top";
    case Face::bottom: return "bottom";
    case Face::left: return "left";
    case Face::right: return "right";
    case Face::front: return "front";
    case Face::back: return "back";
  }
  return "?";
}

Face parse_face(std::string_view text) {
  for (Face f : kAllFaces) {
    if (text == to_string(f)) return f;
  }
  throw Error(ErrorKind::unknown_value, "unknown face '" + std::string(text) + "'");
}

Face opposite(Face face) noexcept {
  switch (face) {
    case Face::top: return Face::bottom;
    case Face::bottom: return Face::top;
    case Face::left: return Face::right;
    case Face::right: return Face::left;
    case Face::front: return Face::back;
    case Face::back: return Face::front;
  }
  return face;
}

BoxAspect BoxAspect::of(std::initializer_list<Face> faces) {
  std::uint8_t mask = 0;
  for (Face f : faces) mask |= bit(f);
  BoxAspect a = from_mask(mask);
  if (a.size() < 1 || a.size() > 3) throw Error(ErrorKind::validation, "aspect must show 1 to 3 faces");
  for (Face f : kAllFaces) {
    if (a.contains(f) && a.contains(opposite(f))) {
      throw Error(ErrorKind::validation, "aspect cannot show opposite faces");
    }
  }
  return a;
}

std::string BoxAspect::str() const {
  std::string out = "{";
  for (Face f : kAllFaces) {
    if (!contains(f)) continue;
    if (out.size() > 1) out += ", ";
    out += to_string(f);
  }
  return out + "}";
}

std::vector<BoxAspect> box_aspects() {
  // Per axis: 0 = face pair hidden, 1 = first face visible, 2 = second face visible.
  constexpr std::array<std::array<Face, 2>, 3> axes = {{
      {Face::top, Face::bottom},
      {Face::left, Face::right},
      {Face::front, Face::back},
  }};
  std::vector<BoxAspect> out;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        std::uint8_t mask = 0;
        const std::array<int, 3> choice = {a, b, c};
        for (std::size_t axis = 0; axis < 3; ++axis) {
          if (choice[axis] != 0) mask |= bit(axes[axis][choice[axis] - 1]);
        }
        if (mask != 0) out.push_back(BoxAspect::from_mask(mask));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AspectSummary affected_by_missing_face(Face face) {
  const auto aspects = box_aspects();
  AspectSummary s;
  s.total_aspects = aspects.size();
  s.affected_aspects = static_cast<std::uint64_t>(
      std::count_if(aspects.begin(), aspects.end(), [&](BoxAspect a) { return a.contains(face); }));
  s.affected_fraction = Rational::from_integers(s.affected_aspects, s.total_aspects);
  return s;
}

AspectSummary affected_by_missing_face(std::string_view face) {
  return affected_by_missing_face(parse_face(face));
}

}  // namespace biasprobe
