#include "vbx/coordinate.hpp"

namespace vbx {

int compare(const Coordinate& a, const Coordinate& b) {
    if (a.order != b.order) return a.order < b.order ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    return 0;
}

bool coordinate_less(const Coordinate& a, const Coordinate& b) {
    return compare(a, b) < 0;
}

Coordinate next_order(const Coordinate& c) {
    return Coordinate{c.index, c.order + 1};
}

std::string coordinate_str(const Coordinate& c) {
    std::string s = "q" + std::to_string(c.index);
    if (c.order <= 3) {
        s.append(static_cast<size_t>(c.order), '\'');
    } else {
        s += "[" + std::to_string(c.order) + "]";
    }
    return s;
}

std::string differential_str(const Coordinate& c) {
    return "d" + coordinate_str(c);
}

}  // namespace vbx
