#include "slcm/net/radio.hpp"

#include <algorithm>
#include <cmath>

namespace slcm::net {

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool RadioModel::in_range(Point a, Point b) const
{
    // Squared comparison keeps the boundary exact for representable inputs.
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= range * range;
}

std::size_t RadioModel::hop_bound(std::size_t nodes) const
{
    const std::size_t cap = std::max<std::size_t>(nodes, 2) - 1;
    if (range <= 0.0) {
        return cap;
    }
    const double diag = std::hypot(arena.width, arena.height);
    const auto hops = static_cast<std::size_t>(2.0 * std::ceil(diag / range)) + 2;
    return std::min(cap, hops);
}

} // namespace slcm::net
