#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "apcycle/network.hpp"
#include "apcycle/polytope.hpp"

namespace apcycle {

/// Spanning, acyclic set of N-1 directed cycle edges induced by a cell.
struct PrimitiveSubnetwork {
    int N = 0;
    std::vector<DirectedEdge> edges;
    std::size_t source_cell = 0;
};

/// Unique root of a cell system. edge_values[i] is the value of the monomial
/// x_from / x_to for sub.edges[i]; x holds nodes 1..n (x_0 = 1).
struct CellSolution {
    std::vector<Complex> edge_values;
    CVector x;
    double residual = 0.0;
};

/// Complex multiplications, divisions and additions spent inside solve_cell.
struct SolveCounter {
    std::size_t operations = 0;
};

/// Throws MalformedCell if the cell does not induce a spanning tree of N-1 edges.
PrimitiveSubnetwork subnetwork(const Cell& cell, int N, std::size_t cell_index = 0);

/// Solves the base-form cell system by leaf elimination on the spanning tree.
///
/// Every cell monomial x_i/x_j appears only in the equations of nodes i and j,
/// so a leaf node other than 0 owns an equation with a single unknown. Solving
/// it and substituting into the neighbour's equation exposes the next leaf.
/// The x-coordinates follow from x_0 = 1 by walking the tree.
/// Throws DegenerateCoefficient if a pivot is below 1e-14 times the largest
/// coefficient magnitude.
CellSolution solve_cell(const LaurentSystem& base, const PrimitiveSubnetwork& sub,
                        SolveCounter* counter = nullptr);

/// Relative residual of the base-form cell system at x: max |G_T,k(x)| over the
/// largest term magnitude (at least 1).
double cell_residual(const LaurentSystem& base, const PrimitiveSubnetwork& sub, const CVector& x);

/// Graphviz text with one digraph per subnetwork, in input order.
std::string export_dot(std::span<const PrimitiveSubnetwork> subs);

}  // namespace apcycle
