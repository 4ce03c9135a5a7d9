#include <umbilic/contours.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <utility>

namespace umbilic {

namespace {

// Grid edges carry at most one crossing per level. An edge is identified by
// its lower-left node and its axis (0: toward +x, 1: toward +y).
std::int64_t edge_key(int i, int j, int axis, int nx) {
    return (static_cast<std::int64_t>(j) * nx + i) * 2 + axis;
}

struct Segment {
    std::int64_t e0, e1;  // endpoint edges
};

Vec2 edge_point(const GridField& f, double level, int i, int j, int axis) {
    const double va = f.at(i, j);
    const double vb = axis == 0 ? f.at(i + 1, j) : f.at(i, j + 1);
    double t = 0.0;
    if (vb != va) t = (level - va) / (vb - va);
    t = std::min(1.0, std::max(0.0, t));
    return axis == 0 ? Vec2{f.x(i) + t * f.h, f.y(j)} : Vec2{f.x(i), f.y(j) + t * f.h};
}

bool on_boundary(const GridField& f, std::int64_t key) {
    const int axis = static_cast<int>(key % 2);
    const std::int64_t node = key / 2;
    const int i = static_cast<int>(node % f.nx);
    const int j = static_cast<int>(node / f.nx);
    if (axis == 0) return j == 0 || j == f.ny - 1;
    return i == 0 || i == f.nx - 1;
}

}  // namespace

std::vector<LevelContours> level_sets(const GridField& f, std::span<const double> levels) {
    std::vector<LevelContours> out;
    out.reserve(levels.size());

    for (const double level : levels) {
        auto inside = [&](int i, int j) { return f.at(i, j) >= level; };

        // Collect cell segments. Corner order: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1);
        // edge order around the cell: bottom, right, top, left.
        std::vector<Segment> segments;
        std::map<std::int64_t, std::vector<int>> by_edge;

        auto add_segment = [&](std::int64_t a, std::int64_t b) {
            const int idx = static_cast<int>(segments.size());
            segments.push_back({a, b});
            by_edge[a].push_back(idx);
            by_edge[b].push_back(idx);
        };

        for (int j = 0; j + 1 < f.ny; ++j) {
            for (int i = 0; i + 1 < f.nx; ++i) {
                const bool c0 = inside(i, j), c1 = inside(i + 1, j);
                const bool c2 = inside(i + 1, j + 1), c3 = inside(i, j + 1);
                const int code = (c0 ? 1 : 0) | (c1 ? 2 : 0) | (c2 ? 4 : 0) | (c3 ? 8 : 0);
                if (code == 0 || code == 15) continue;

                const std::int64_t bottom = edge_key(i, j, 0, f.nx);
                const std::int64_t right = edge_key(i + 1, j, 1, f.nx);
                const std::int64_t top = edge_key(i, j + 1, 0, f.nx);
                const std::int64_t left = edge_key(i, j, 1, f.nx);

                switch (code) {
                    case 1: case 14: add_segment(left, bottom); break;
                    case 2: case 13: add_segment(bottom, right); break;
                    case 4: case 11: add_segment(right, top); break;
                    case 8: case 7: add_segment(top, left); break;
                    case 3: case 12: add_segment(left, right); break;
                    case 6: case 9: add_segment(bottom, top); break;
                    case 5: case 10: {
                        // Ambiguous: split by the cell-center average.
                        const double center = 0.25 * (f.at(i, j) + f.at(i + 1, j) +
                                                      f.at(i + 1, j + 1) + f.at(i, j + 1));
                        const bool center_in = center >= level;
                        const bool diag_05 = code == 5;  // corners 0 and 2 inside
                        if (diag_05 == center_in) {
                            add_segment(left, top);
                            add_segment(bottom, right);
                        } else {
                            add_segment(left, bottom);
                            add_segment(right, top);
                        }
                        break;
                    }
                    default: break;
                }
            }
        }

        // Stitch segments into chains: each edge joins at most two segments.
        std::vector<bool> used(segments.size(), false);
        std::vector<Polyline> lines;

        auto next_segment = [&](std::int64_t edge, int current) -> int {
            for (const int k : by_edge[edge])
                if (k != current && !used[k]) return k;
            return -1;
        };

        auto walk = [&](int start, std::int64_t start_edge) {
            std::vector<std::int64_t> chain{start_edge};
            int seg = start;
            std::int64_t edge = start_edge;
            while (seg >= 0 && !used[seg]) {
                used[seg] = true;
                edge = segments[seg].e0 == edge ? segments[seg].e1 : segments[seg].e0;
                chain.push_back(edge);
                seg = next_segment(edge, seg);
            }
            return chain;
        };

        auto emit = [&](const std::vector<std::int64_t>& chain, bool closed) {
            Polyline pl;
            pl.closed = closed;
            pl.pts.reserve(chain.size());
            for (const std::int64_t key : chain) {
                const int axis = static_cast<int>(key % 2);
                const std::int64_t node = key / 2;
                const int i = static_cast<int>(node % f.nx);
                const int j = static_cast<int>(node / f.nx);
                pl.pts.push_back(edge_point(f, level, i, j, axis));
            }
            lines.push_back(std::move(pl));
        };

        // Open chains first, starting from boundary-terminated or degree-1 edges.
        for (std::size_t k = 0; k < segments.size(); ++k) {
            if (used[k]) continue;
            std::int64_t start_edge = -1;
            for (const std::int64_t e : {segments[k].e0, segments[k].e1}) {
                if (by_edge[e].size() == 1 || on_boundary(f, e)) {
                    start_edge = e;
                    break;
                }
            }
            if (start_edge >= 0) emit(walk(static_cast<int>(k), start_edge), false);
        }
        // Remaining segments form closed loops.
        for (std::size_t k = 0; k < segments.size(); ++k) {
            if (used[k]) continue;
            auto chain = walk(static_cast<int>(k), segments[k].e0);
            emit(chain, true);
        }

        out.push_back({level, std::move(lines)});
    }
    return out;
}

}  // namespace umbilic
