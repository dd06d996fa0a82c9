#pragma once

#include <string>

namespace vbx {

// Fiber coordinate q^index of derivative order `order` on the formal jet tower:
// order 0 is the base coordinate, order 1 its velocity, and so on without bound.
struct Coordinate {
    int index = 1;  // 1-based fiber index
    int order = 0;  // derivative order, >= 0

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Total order by (derivative order, fiber index); returns -1, 0 or 1.
int compare(const Coordinate& a, const Coordinate& b);

bool coordinate_less(const Coordinate& a, const Coordinate& b);

struct CoordinateLess {
    bool operator()(const Coordinate& a, const Coordinate& b) const {
        return coordinate_less(a, b);
    }
};

Coordinate next_order(const Coordinate& c);

// q1, q1', q1'', q1''', q1[4], ...
std::string coordinate_str(const Coordinate& c);

// dq1, dq1', ...
std::string differential_str(const Coordinate& c);

}  // namespace vbx
