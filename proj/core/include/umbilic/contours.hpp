#pragma once

#include <umbilic/geometry.hpp>
#include <umbilic/grid.hpp>

#include <span>
#include <vector>

namespace umbilic {

struct Polyline {
    std::vector<Vec2> pts;
    bool closed = false;
};

struct LevelContours {
    double level;
    std::vector<Polyline> lines;
};

// Marching-squares contours with linear edge interpolation. The ambiguous
// saddle cells are resolved by the cell-center average. Every polyline is
// either closed or terminates on the field boundary.
std::vector<LevelContours> level_sets(const GridField& field,
                                      std::span<const double> levels);

}  // namespace umbilic
