#pragma once

#include <cstddef>
#include <vector>

#include "dynwidth/geom.hpp"

namespace dynwidth {

// Exact feature delta of one hull update. Identity is by coordinates
// (SideId / CornerKey); vectors are sorted by that identity.
struct HullDiff {
  std::vector<Side> sides_removed;
  std::vector<Side> sides_added;
  std::vector<Corner> corners_removed;
  std::vector<Corner> corners_added;

  std::size_t k() const {
    return sides_removed.size() + sides_added.size() + corners_removed.size() +
           corners_added.size();
  }
  bool empty() const { return k() == 0; }
};

}  // namespace dynwidth
