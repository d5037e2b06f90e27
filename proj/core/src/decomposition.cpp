#include "apcycle/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "apcycle/errors.hpp"

namespace apcycle {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int size) : parent(static_cast<std::size_t>(size)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

Complex node_value(const CVector& x, int node) { return node == 0 ? Complex{1.0} : x[node - 1]; }

}  // namespace

PrimitiveSubnetwork subnetwork(const Cell& cell, int N, std::size_t cell_index) {
    const int n = N - 1;
    if (static_cast<int>(cell.edges.size()) != n) {
        throw MalformedCell("cell has " + std::to_string(cell.edges.size()) + " edges, expected " +
                            std::to_string(n));
    }
    DisjointSet components(N);
    for (const DirectedEdge& edge : cell.edges) {
        if (directed_edge_index(N, edge) < 0) {
            throw MalformedCell("(" + std::to_string(edge.from) + "," + std::to_string(edge.to) +
                                ") is not a cycle edge");
        }
        if (!components.unite(edge.from, edge.to)) {
            throw MalformedCell("cell edges contain a cycle");
        }
    }
    // n edges without a cycle on N nodes form a spanning tree.
    return PrimitiveSubnetwork{N, cell.edges, cell_index};
}

CellSolution solve_cell(const LaurentSystem& base, const PrimitiveSubnetwork& sub, SolveCounter* counter) {
    const int N = sub.N;
    const int n = N - 1;
    if (base.N != N) throw Error("system and subnetwork disagree on N");
    if (static_cast<int>(sub.edges.size()) != n) throw MalformedCell("subnetwork must have N-1 edges");

    std::vector<int> column(sub.edges.size());
    double scale = 0.0;
    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
        column[e] = directed_edge_index(N, sub.edges[e]);
        if (column[e] < 0) throw MalformedCell("subnetwork edge is not a cycle edge");
        for (int node : {sub.edges[e].from, sub.edges[e].to}) {
            if (node != 0) scale = std::max(scale, std::abs(base.coeffs(node - 1, column[e])));
        }
    }
    const double pivot_floor = 1e-14 * scale;

    // Incident tree edges per node; cycle subgraphs keep this at most two.
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(N));
    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
        incident[sub.edges[e].from].push_back(static_cast<int>(e));
        incident[sub.edges[e].to].push_back(static_cast<int>(e));
    }
    std::vector<int> degree(static_cast<std::size_t>(N));
    for (int v = 0; v < N; ++v) degree[v] = static_cast<int>(incident[v].size());

    std::vector<Complex> rhs(static_cast<std::size_t>(N), Complex{0.0});
    for (int v = 1; v < N; ++v) rhs[v] = base.constants[v - 1];

    std::vector<bool> eliminated(sub.edges.size(), false);
    std::vector<Complex> values(sub.edges.size());
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v < N; ++v) {
        if (degree[v] == 1) leaves.push(v);
    }

    std::size_t ops = 0;
    for (int step = 0; step < n; ++step) {
        if (leaves.empty()) throw MalformedCell("subnetwork is not a tree");
        const int leaf = leaves.top();
        leaves.pop();
        int e = -1;
        for (int candidate : incident[leaf]) {
            if (!eliminated[candidate]) {
                e = candidate;
                break;
            }
        }
        const Complex pivot = base.coeffs(leaf - 1, column[e]);
        if (std::abs(pivot) < pivot_floor || pivot == Complex{0.0}) {
            throw DegenerateCoefficient("coefficient of edge monomial in the equation of node " +
                                        std::to_string(leaf) + " vanishes");
        }
        // c_leaf + pivot * y = 0
        values[e] = -rhs[leaf] / pivot;
        ops += 1;
        if (values[e] == Complex{0.0}) {
            throw DegenerateCoefficient("cell system root has a zero edge monomial at node " +
                                        std::to_string(leaf));
        }
        eliminated[e] = true;
        degree[leaf] = 0;
        const DirectedEdge& edge = sub.edges[e];
        const int other = edge.from == leaf ? edge.to : edge.from;
        if (other != 0) {
            rhs[other] += base.coeffs(other - 1, column[e]) * values[e];
            ops += 2;
        }
        if (--degree[other] == 1 && other != 0) leaves.push(other);
    }

    // Walk the tree outward from the reference node.
    CVector x(n);
    std::vector<bool> known(static_cast<std::size_t>(N), false);
    known[0] = true;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : incident[v]) {
            const DirectedEdge& edge = sub.edges[e];
            const int other = edge.from == v ? edge.to : edge.from;
            if (known[other]) continue;
            const Complex xv = node_value(x, v);
            // values[e] = x_from / x_to
            x[other - 1] = edge.from == v ? xv / values[e] : xv * values[e];
            ops += 1;
            known[other] = true;
            stack.push_back(other);
        }
    }
    if (counter) counter->operations += ops;

    CellSolution solution;
    solution.edge_values = std::move(values);
    solution.x = std::move(x);
    solution.residual = cell_residual(base, sub, solution.x);
    return solution;
}

double cell_residual(const LaurentSystem& base, const PrimitiveSubnetwork& sub, const CVector& x) {
    // Column d of a base system is nonzero only in the rows of its two endpoints.
    const int n = base.n();
    if (x.size() != n) throw Error("point dimension does not match the system");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] == Complex{0.0}) throw ZeroCoordinate();
    }
    std::vector<Complex> value(base.constants.data(), base.constants.data() + n);
    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) scale[k] = std::max(1.0, std::abs(value[k]));
    for (const DirectedEdge& edge : sub.edges) {
        const int d = directed_edge_index(base.N, edge);
        const Complex m = node_value(x, edge.from) / node_value(x, edge.to);
        for (int node : {edge.from, edge.to}) {
            if (node == 0) continue;
            const Complex term = base.coeffs(node - 1, d) * m;
            value[node - 1] += term;
            scale[node - 1] = std::max(scale[node - 1], std::abs(term));
        }
    }
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(value[k]) / scale[k]);
    return worst;
}

std::string export_dot(std::span<const PrimitiveSubnetwork> subs) {
    std::ostringstream out;
    for (const PrimitiveSubnetwork& sub : subs) {
        out << "digraph cell_" << sub.source_cell << " {\n";
        for (int v = 0; v < sub.N; ++v) out << "  " << v << ";\n";
        for (const DirectedEdge& edge : sub.edges) out << "  " << edge.from << " -> " << edge.to << ";\n";
        out << "}\n";
    }
    return out.str();
}

}  // namespace apcycle
