#include "apcycle/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "apcycle/errors.hpp"
#include "apcycle/lower_hull.hpp"

namespace apcycle {

namespace {

void require_cycle(int N) {
    if (N < 3) throw Error("cycle graphs need N >= 3, got " + std::to_string(N));
}

std::string to_string(const IntVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

}  // namespace

void SignVector::validate(int N) const {
    if (static_cast<int>(lambdas.size()) != N) {
        throw InvalidSignVector("sign vector must have N = " + std::to_string(N) + " entries");
    }
    int sum = 0;
    int zeros = 0;
    for (int l : lambdas) {
        if (l < -1 || l > 1) throw InvalidSignVector("sign vector entries must lie in {-1,0,1}");
        sum += l;
        zeros += l == 0;
    }
    if (sum != 0) throw InvalidSignVector("sign vector entries must sum to zero");
    if (N % 2 == 0 && zeros != 0) throw InvalidSignVector("even N admits no zero entries");
    if (N % 2 == 1 && zeros != 1) throw InvalidSignVector("odd N requires exactly one zero entry");
}

BigInt bound(int N) {
    require_cycle(N);
    const int m = N - 1;
    const int k = m / 2;
    BigInt binom = 1;
    for (int i = 1; i <= k; ++i) binom = binom * (m - k + i) / i;
    return binom * N;
}

int lifting_height(int N, DirectedEdge edge) {
    const bool heavy = N % 2 == 0 && std::min(edge.from, edge.to) == 0 && std::max(edge.from, edge.to) == 1;
    return heavy ? 2 : 1;
}

IntVector exponent(int N, DirectedEdge edge) {
    IntVector v(static_cast<std::size_t>(N - 1), 0);
    if (edge.from != 0) v[edge.from - 1] += 1;
    if (edge.to != 0) v[edge.to - 1] -= 1;
    return v;
}

std::vector<SupportPoint> support(int N) {
    require_cycle(N);
    std::vector<SupportPoint> points;
    points.reserve(static_cast<std::size_t>(directed_edge_count(N) + 1));
    points.push_back({IntVector(static_cast<std::size_t>(N - 1), 0), std::nullopt, 0});
    for (int d = 0; d < directed_edge_count(N); ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        points.push_back({exponent(N, edge), edge, lifting_height(N, edge)});
    }
    return points;
}

void for_each_sign_vector(int N, const std::function<void(const SignVector&)>& visit) {
    require_cycle(N);
    const bool odd = N % 2 == 1;
    SignVector current{IntVector(static_cast<std::size_t>(N), 0)};
    // Fill positions from last to first; values ascend at each position, so
    // the output is colexicographic.
    auto fill = [&](auto&& self, int pos, int sum, int zeros) -> void {
        if (pos < 0) {
            if (sum == 0 && zeros == (odd ? 1 : 0)) visit(current);
            return;
        }
        const int remaining_after = pos;  // positions 0..pos-1 still open
        for (int value = -1; value <= 1; ++value) {
            if (value == 0 && (!odd || zeros == 1)) continue;
            const int next_sum = sum + value;
            const int next_zeros = zeros + (value == 0);
            const int free_slots = remaining_after - ((odd && next_zeros == 0) ? 1 : 0);
            if (std::abs(next_sum) > free_slots) continue;
            current.lambdas[pos] = value;
            self(self, pos - 1, next_sum, next_zeros);
        }
    };
    fill(fill, N - 1, 0, 0);
}

std::vector<SignVector> enumerate_sign_vectors(int N) {
    std::vector<SignVector> out;
    for_each_sign_vector(N, [&](const SignVector& s) { out.push_back(s); });
    return out;
}

std::vector<IntVector> normals_for(const SignVector& lambda, int N) {
    require_cycle(N);
    lambda.validate(N);
    const int n = N - 1;
    IntVector x(static_cast<std::size_t>(n));
    int prefix = 0;
    for (int k = 0; k < n; ++k) {
        prefix += lambda.lambdas[k];
        x[k] = prefix;
    }
    std::vector<IntVector> normals{x};
    if (N % 2 == 0) {
        const int first = lambda.lambdas[0];
        // 1-based j = 2..N with lambda_j = lambda_1: shift e_1..e_{j-1} by lambda_1.
        for (int j = 2; j <= N; ++j) {
            if (lambda.lambdas[j - 1] != first) continue;
            IntVector y = x;
            for (int k = 1; k <= j - 1; ++k) y[k - 1] += first;
            normals.push_back(std::move(y));
        }
    }
    return normals;
}

std::vector<long long> lifted_values(const IntVector& alpha, int N) {
    require_cycle(N);
    if (static_cast<int>(alpha.size()) != N - 1) throw Error("normal must have N-1 entries");
    std::vector<long long> values;
    values.reserve(static_cast<std::size_t>(directed_edge_count(N) + 1));
    values.push_back(0);
    for (int d = 0; d < directed_edge_count(N); ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        long long v = lifting_height(N, edge);
        if (edge.from != 0) v += alpha[edge.from - 1];
        if (edge.to != 0) v -= alpha[edge.to - 1];
        values.push_back(v);
    }
    return values;
}

long long determinant(std::vector<std::vector<long long>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    long long sign = 1;
    long long prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

long long cell_determinant(const Cell& cell, int N) {
    const int n = N - 1;
    std::vector<std::vector<long long>> rows(static_cast<std::size_t>(n),
                                             std::vector<long long>(static_cast<std::size_t>(n), 0));
    int col = 0;
    for (const DirectedEdge& edge : cell.edges) {
        if (col >= n) return 0;
        const IntVector v = exponent(N, edge);
        for (int r = 0; r < n; ++r) rows[r][col] = v[r];
        ++col;
    }
    if (col != n) return 0;
    return determinant(std::move(rows));
}

Cell cell_from_normal(const IntVector& alpha, int N) {
    const std::vector<long long> values = lifted_values(alpha, N);
    const long long minimum = *std::min_element(values.begin(), values.end());
    Cell cell;
    cell.normal = alpha;
    for (std::size_t p = 0; p < values.size(); ++p) {
        if (values[p] == minimum) cell.vertices.push_back(static_cast<int>(p));
    }
    const int n = N - 1;
    if (values[0] != minimum) {
        throw NotACell("normal " + to_string(alpha) + " does not support the origin");
    }
    if (static_cast<int>(cell.vertices.size()) != n + 1) {
        throw NotACell("normal " + to_string(alpha) + " has " + std::to_string(cell.vertices.size()) +
                       " minimizers, expected " + std::to_string(n + 1));
    }
    for (std::size_t v = 1; v < cell.vertices.size(); ++v) {
        cell.edges.push_back(directed_edge(N, cell.vertices[v] - 1));
    }
    if (cell_determinant(cell, N) == 0) {
        throw NotACell("minimizers of normal " + to_string(alpha) + " are affinely dependent");
    }
    cell.certified = certify(cell, N);
    return cell;
}

bool certify(const Cell& cell, int N) {
    const int n = N - 1;
    if (static_cast<int>(cell.normal.size()) != n) return false;
    if (static_cast<int>(cell.vertices.size()) != n + 1 || static_cast<int>(cell.edges.size()) != n) return false;
    if (cell.vertices.front() != 0) return false;
    const std::vector<long long> values = lifted_values(cell.normal, N);
    std::vector<bool> is_vertex(values.size(), false);
    for (int v : cell.vertices) {
        if (v < 0 || v >= static_cast<int>(values.size()) || is_vertex[v]) return false;
        is_vertex[v] = true;
    }
    for (std::size_t i = 1; i < cell.vertices.size(); ++i) {
        if (directed_edge(N, cell.vertices[i] - 1) != cell.edges[i - 1]) return false;
    }
    for (std::size_t p = 0; p < values.size(); ++p) {
        if (is_vertex[p] ? values[p] != 0 : values[p] <= 0) return false;
    }
    return std::llabs(cell_determinant(cell, N)) == 1;
}

void for_each_cell(int N, const std::function<void(const Cell&)>& visit) {
    for_each_sign_vector(N, [&](const SignVector& lambda) {
        for (IntVector& alpha : normals_for(lambda, N)) {
            Cell cell = cell_from_normal(alpha, N);
            if (!cell.certified) {
                throw CertificateViolation("cell with normal " + to_string(cell.normal) +
                                           " failed the lower-facet certificate");
            }
            cell.lambda = lambda;
            visit(cell);
        }
    });
}

std::vector<Cell> triangulation(int N) {
    std::vector<Cell> cells;
    for_each_cell(N, [&](const Cell& cell) { cells.push_back(cell); });
    return cells;
}

std::vector<Cell> lower_hull_oracle(int N, int max_N) {
    require_cycle(N);
    if (N > max_N) {
        throw Error("lower-hull oracle is capped at N = " + std::to_string(max_N) + ", got " +
                    std::to_string(N));
    }
    const std::vector<SupportPoint> pts = support(N);
    std::vector<IntVector> vectors;
    std::vector<int> heights;
    for (const SupportPoint& p : pts) {
        vectors.push_back(p.vector);
        heights.push_back(p.height);
    }
    std::vector<Cell> cells;
    for (const LowerFacet& facet : lower_facets(vectors, heights)) {
        Cell cell;
        bool integral = facet.offset == 0;
        for (const Rational& r : facet.normal) {
            integral = integral && boost::multiprecision::denominator(r) == 1;
            cell.normal.push_back(integral ? static_cast<int>(boost::multiprecision::numerator(r)) : 0);
        }
        cell.vertices = facet.points;
        for (int p : facet.points) {
            if (p != 0) cell.edges.push_back(directed_edge(N, p - 1));
        }
        cell.certified = integral && certify(cell, N);
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace apcycle
