#pragma once

#include <cstdlib>

#include "o2osim/core/types.hpp"

namespace o2o {

inline int manhattan_distance(const GridPos& a, const GridPos& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline bool in_bounds(const GridPos& p, int width, int height) {
    return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
}

// Advance up to `cells` grid cells toward `target` along an L-shaped route:
// the x leg first, then the y leg. Returns the number of cells actually
// moved (less than `cells` when the target is reached).
inline int advance_toward(GridPos& pos, const GridPos& target, int cells) {
    int moved = 0;
    while (moved < cells && pos.x != target.x) {
        pos.x += (target.x > pos.x) ? 1 : -1;
        ++moved;
    }
    while (moved < cells && pos.y != target.y) {
        pos.y += (target.y > pos.y) ? 1 : -1;
        ++moved;
    }
    return moved;
}

} // namespace o2o
