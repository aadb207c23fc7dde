#pragma once

#include <vector>

#include "eulerfill/euler.hpp"

namespace eulerfill::detail {

struct PassOutput {
    EulerComplex ec;
    CollapseReport report;
};

/// One transformation pass with a per-face offset and no precondition checks.
PassOutput transform_pass(const CellComplex& k, const std::vector<double>& d);

/// First skeleton event per face (infinity for hole and outside faces).
std::vector<double> face_first_events(const CellComplex& k);

std::vector<int> canonical_cycle(std::vector<int> c);

}  // namespace eulerfill::detail
