#include "apcycle/lower_hull.hpp"

#include <cstdlib>
#include <optional>
#include <set>

#include "apcycle/errors.hpp"
#include "apcycle/polytope.hpp"

namespace apcycle {

namespace {

// Solves the square system A z = b exactly; nullopt when A is singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(b[pivot], b[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
            b[i] -= factor * b[k];
        }
    }
    std::vector<Rational> z(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * z[j];
        z[i] = acc / a[i][i];
    }
    return z;
}

}  // namespace

std::vector<LowerFacet> lower_facets(std::span<const IntVector> points, std::span<const int> heights) {
    if (points.size() != heights.size()) throw Error("points and heights differ in length");
    if (points.empty()) return {};
    const std::size_t dim = points.front().size();
    const std::size_t m = points.size();
    const std::size_t k = dim + 1;
    if (m < k) return {};

    std::vector<LowerFacet> facets;
    std::set<std::vector<int>> seen;
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;

    while (true) {
        // Unknowns (normal, offset): <normal, a_p> - offset = -h_p.
        std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
        std::vector<Rational> b(k);
        for (std::size_t r = 0; r < k; ++r) {
            const IntVector& p = points[subset[r]];
            for (std::size_t c = 0; c < dim; ++c) a[r][c] = p[c];
            a[r][dim] = -1;
            b[r] = -heights[subset[r]];
        }
        if (auto z = solve_exact(std::move(a), std::move(b))) {
            std::vector<int> on_facet;
            bool supporting = true;
            for (std::size_t p = 0; p < m && supporting; ++p) {
                Rational value = heights[p] - (*z)[dim];
                for (std::size_t c = 0; c < dim; ++c) value += (*z)[c] * points[p][c];
                if (value < 0) supporting = false;
                if (value == 0) on_facet.push_back(static_cast<int>(p));
            }
            if (supporting && seen.insert(on_facet).second) {
                LowerFacet facet;
                facet.normal.assign(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(dim));
                facet.offset = (*z)[dim];
                facet.points = std::move(on_facet);
                facets.push_back(std::move(facet));
            }
        }

        // Next k-subset in lexicographic order.
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    return facets;
}

SubdivisionSummary summarize_subdivision(std::span<const IntVector> points, std::span<const int> heights) {
    const std::vector<LowerFacet> facets = lower_facets(points, heights);
    SubdivisionSummary summary;
    summary.cells = facets.size();
    if (facets.empty()) return summary;
    const std::size_t dim = points.front().size();
    summary.triangulation = true;
    summary.unimodular = true;
    for (const LowerFacet& facet : facets) {
        if (facet.points.size() != dim + 1) {
            summary.triangulation = false;
            summary.unimodular = false;
            break;
        }
        const IntVector& apex = points[facet.points.front()];
        std::vector<std::vector<long long>> rows(dim, std::vector<long long>(dim));
        for (std::size_t c = 0; c < dim; ++c) {
            const IntVector& p = points[facet.points[c + 1]];
            for (std::size_t r = 0; r < dim; ++r) rows[r][c] = p[r] - apex[r];
        }
        if (std::llabs(determinant(std::move(rows))) != 1) summary.unimodular = false;
    }
    return summary;
}

}  // namespace apcycle
