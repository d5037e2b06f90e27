#pragma once

#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apcycle/types.hpp"

namespace apcycle {

using Rational = boost::multiprecision::cpp_rational;

/// Lower facet of a lifted point configuration: the affine functional
/// <normal, a> + height(a) attains its minimum `offset` exactly on `points`.
struct LowerFacet {
    std::vector<Rational> normal;
    Rational offset;
    std::vector<int> points;
};

/// All lower facets of {(points[i], heights[i])}, found by solving for the
/// non-vertical hyperplane through every (dim+1)-subset and keeping the
/// supporting ones. Exact rational arithmetic; cost grows as C(m, dim+1).
std::vector<LowerFacet> lower_facets(std::span<const IntVector> points, std::span<const int> heights);

struct SubdivisionSummary {
    std::size_t cells = 0;
    bool triangulation = false;  // every lower facet carries exactly dim+1 points
    bool unimodular = false;     // triangulation and every simplex has |det| = 1
};

SubdivisionSummary summarize_subdivision(std::span<const IntVector> points,
                                         std::span<const int> heights);

}  // namespace apcycle
