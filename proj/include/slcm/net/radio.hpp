#pragma once

#include <cstddef>
#include <cstdint>

namespace slcm::net {

using NodeId = std::uint32_t;

struct Point {
    double x{0.0};
    double y{0.0};

    bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

struct Arena {
    double width{0.0};
    double height{0.0};

    bool contains(Point p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height; }
};

/// Unit-disk radio: a link exists iff distance <= range.
struct RadioModel {
    double range{0.0};
    Arena arena;

    bool in_range(Point a, Point b) const;

    /// Generous bound on the hop diameter of a connected network of `nodes`
    /// devices in the arena: twice the diagonal in ranges, capped by nodes - 1.
    std::size_t hop_bound(std::size_t nodes) const;
};

} // namespace slcm::net
