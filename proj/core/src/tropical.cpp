#include "apcycle/tropical.hpp"

#include <cstdlib>

namespace apcycle {

std::vector<TropicalPoint> stable_intersections(int N) {
    std::vector<TropicalPoint> points;
    for_each_cell(N, [&](const Cell& cell) {
        points.push_back({cell.normal, static_cast<int>(std::llabs(cell_determinant(cell, N)))});
    });
    return points;
}

std::map<std::string, int> valuation_table(int N) {
    std::map<std::string, int> table;
    table["c"] = 0;
    for (int d = 0; d < directed_edge_count(N); ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        // Heavy valuation on both orientations of {0,1}, mirroring the lifting.
        const bool heavy = N % 2 == 0 && ((edge.from == 1 && edge.to == 0) || (edge.from == 0 && edge.to == 1));
        table["a(" + std::to_string(edge.from) + "," + std::to_string(edge.to) + ")"] = heavy ? 2 : 1;
    }
    return table;
}

}  // namespace apcycle
