#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace apcycle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using IntVector = std::vector<int>;

/// Directed edge (from, to) of a cycle graph. It stands for the Laurent
/// monomial x_from / x_to, whose exponent vector is e_from - e_to with
/// e_0 = 0 for the reference node.
struct DirectedEdge {
    int from = 0;
    int to = 0;

    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Number of directed edges of C_N. Directed edge index 2e is (e, e+1 mod N),
/// index 2e+1 is the reverse orientation.
inline int directed_edge_count(int N) { return 2 * N; }

inline DirectedEdge directed_edge(int N, int index) {
    const int e = index / 2;
    const int next = (e + 1) % N;
    return index % 2 == 0 ? DirectedEdge{e, next} : DirectedEdge{next, e};
}

/// Inverse of directed_edge(); returns -1 when (from, to) is not a cycle edge.
inline int directed_edge_index(int N, DirectedEdge edge) {
    if (edge.from < 0 || edge.to < 0 || edge.from >= N || edge.to >= N) return -1;
    if ((edge.from + 1) % N == edge.to) return 2 * edge.from;
    if ((edge.to + 1) % N == edge.from) return 2 * edge.to + 1;
    return -1;
}

}  // namespace apcycle
