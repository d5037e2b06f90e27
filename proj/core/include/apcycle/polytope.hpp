#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apcycle/types.hpp"

namespace apcycle {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector of the unmixed system: the origin or e_i - e_j for a
/// directed cycle edge (i, j), together with its lifting height.
struct SupportPoint {
    IntVector vector;
    std::optional<DirectedEdge> edge;
    int height = 0;
};

/// Entries in {-1, 0, 1} summing to zero. Even N: no zeros. Odd N: exactly one zero.
struct SignVector {
    IntVector lambdas;

    /// Throws InvalidSignVector unless the vector is a facet index for C_N.
    void validate(int N) const;

    friend bool operator==(const SignVector&, const SignVector&) = default;
};

/// Simplex of the triangulation. The lifted lower facet has upward inner
/// normal (normal, 1); vertices index into support(N) with 0 the origin.
struct Cell {
    std::optional<SignVector> lambda;
    IntVector normal;
    std::vector<int> vertices;
    std::vector<DirectedEdge> edges;
    bool certified = false;
};

/// N * C(N-1, floor((N-1)/2)), the normalized volume of the adjacency polytope.
BigInt bound(int N);

/// Lifting height of a directed edge: 2 on both orientations of {0,1} for
/// even N, 1 otherwise.
int lifting_height(int N, DirectedEdge edge);

/// Origin first, then one point per directed edge in directed_edge() order.
std::vector<SupportPoint> support(int N);

/// Exponent vector e_from - e_to in Z^{N-1}.
IntVector exponent(int N, DirectedEdge edge);

/// All facet sign vectors in colexicographic order (last entry most significant).
std::vector<SignVector> enumerate_sign_vectors(int N);
void for_each_sign_vector(int N, const std::function<void(const SignVector&)>& visit);

/// Normals of the cells lying over the facet indexed by lambda: one for odd N,
/// N/2 for even N (offsets j ascending).
std::vector<IntVector> normals_for(const SignVector& lambda, int N);

/// Recovers the cell whose lifted facet has normal (alpha, 1). Throws NotACell
/// if the minimizers are not n+1 affinely independent points including the origin.
Cell cell_from_normal(const IntVector& alpha, int N);

/// Strict lower-facet test plus unimodularity of the nonzero vertices.
bool certify(const Cell& cell, int N);

/// <alpha, a> + height(a) for each support point.
std::vector<long long> lifted_values(const IntVector& alpha, int N);

/// Exact determinant (Bareiss).
long long determinant(std::vector<std::vector<long long>> rows);

/// Determinant of the matrix whose columns are the nonzero vertex vectors.
long long cell_determinant(const Cell& cell, int N);

/// Full triangulation: every cell certified, sign vectors in colex order.
std::vector<Cell> triangulation(int N);
void for_each_cell(int N, const std::function<void(const Cell&)>& visit);

/// Brute-force lower hull by exact rational hyperplane enumeration over all
/// (n+1)-subsets of the lifted support. Intended for verification only.
/// Throws Error when N exceeds `max_N`.
std::vector<Cell> lower_hull_oracle(int N, int max_N = 7);

}  // namespace apcycle
