#pragma once

#include <stdexcept>

#include "graphlim/rational.hpp"

namespace graphlim {

// Finite probability base space: points 0..n-1, each of mass 1/n.
struct BaseSpace {
    int n = 1;

    explicit BaseSpace(int size = 1) : n(size) {
        if (size < 1) throw std::invalid_argument("base space needs at least one point");
    }

    bool operator==(const BaseSpace&) const = default;

    Rat point_mass() const { return rat(1, n); }
};

}  // namespace graphlim
