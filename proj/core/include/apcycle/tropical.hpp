#pragma once

#include <map>
#include <string>
#include <vector>

#include "apcycle/polytope.hpp"

namespace apcycle {

/// Stable self-intersection point of the common tropical hypersurface of the
/// unmixed equations, in min convention (same sign as the cell normals).
struct TropicalPoint {
    IntVector coords;
    int multiplicity = 0;
};

/// One point per cell; multiplicity is the normalized volume of the cell.
std::vector<TropicalPoint> stable_intersections(int N);

/// Valuations of the unmixed coefficients, keyed "c" for the constants and
/// "a(i,j)" for the coefficient of x_i/x_j.
std::map<std::string, int> valuation_table(int N);

}  // namespace apcycle
