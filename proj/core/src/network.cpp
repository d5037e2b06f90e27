#include "apcycle/network.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "apcycle/errors.hpp"

namespace apcycle {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex complex_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

// Coordinate of node i in a point of (C*)^n; node 0 is pinned to 1.
Complex node_value(const CVector& x, int node) { return node == 0 ? Complex{1.0} : x[node - 1]; }

}  // namespace

void CycleNetwork::validate() const {
    if (N < 3) throw InvalidNetwork("cycle networks need N >= 3, got " + std::to_string(N));
    const auto expect = [this](const std::vector<double>& v, const char* name) {
        if (static_cast<int>(v.size()) != N) {
            throw InvalidNetwork(std::string(name) + " must have N = " + std::to_string(N) +
                                 " entries, got " + std::to_string(v.size()));
        }
        for (double value : v) {
            if (!std::isfinite(value)) throw InvalidNetwork(std::string(name) + " has a non-finite entry");
        }
    };
    expect(couplings, "coupling");
    expect(phase_shifts, "delta");
    expect(frequencies, "omega");
    for (int e = 0; e < N; ++e) {
        if (couplings[e] == 0.0) {
            throw InvalidNetwork("coupling of edge {" + std::to_string(e) + "," +
                                 std::to_string((e + 1) % N) + "} is zero");
        }
    }
}

CycleNetwork CycleNetwork::homogeneous(int N, double coupling) {
    CycleNetwork net;
    net.N = N;
    net.couplings.assign(static_cast<std::size_t>(N), coupling);
    net.phase_shifts.assign(static_cast<std::size_t>(N), 0.0);
    net.frequencies.assign(static_cast<std::size_t>(N), 0.0);
    return net;
}

CVector LaurentSystem::monomials(const CVector& x) const {
    if (x.size() != n()) throw Error("point dimension does not match the system");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] == Complex{0.0}) throw ZeroCoordinate();
    }
    const int edges = directed_edge_count(N);
    CVector m(edges);
    for (int d = 0; d < edges; ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        m[d] = node_value(x, edge.from) / node_value(x, edge.to);
    }
    return m;
}

CVector LaurentSystem::evaluate(const CVector& x) const { return constants + coeffs * monomials(x); }

CMatrix LaurentSystem::jacobian(const CVector& x) const {
    const CVector m = monomials(x);
    CMatrix jac = CMatrix::Zero(n(), n());
    for (int d = 0; d < directed_edge_count(N); ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        if (edge.from != 0) jac.col(edge.from - 1) += coeffs.col(d) * (m[d] / x[edge.from - 1]);
        if (edge.to != 0) jac.col(edge.to - 1) -= coeffs.col(d) * (m[d] / x[edge.to - 1]);
    }
    return jac;
}

double MixingMatrix::condition() const {
    if (entries.rows() == 0) return 1.0;
    Eigen::JacobiSVD<CMatrix> svd(entries);
    const auto& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return sv[0] / smallest;
}

MixingMatrix MixingMatrix::identity(int n) { return MixingMatrix{CMatrix::Identity(n, n), 0}; }

MixingMatrix MixingMatrix::random(int n, std::uint64_t seed, double condition_limit) {
    for (std::uint64_t offset = 0;; ++offset) {
        std::mt19937_64 rng(seed + offset);
        MixingMatrix mixing{CMatrix(n, n), seed + offset};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) mixing.entries(i, j) = complex_gaussian(rng);
        }
        if (mixing.condition() < condition_limit) return mixing;
    }
}

LaurentSystem complexify(const CycleNetwork& net) {
    net.validate();
    const int n = net.n();
    const double mean = mean_frequency(net);

    LaurentSystem sys;
    sys.N = net.N;
    sys.constants = CVector(n);
    sys.coeffs = CMatrix::Zero(n, directed_edge_count(net.N));
    for (int i = 1; i <= n; ++i) sys.constants[i - 1] = net.frequencies[i] - mean;

    for (int e = 0; e < net.N; ++e) {
        const double k = net.couplings[e];
        for (int orientation = 0; orientation < 2; ++orientation) {
            // Equation of node `i`, neighbour `j`; delta_ji = -delta_ij.
            const DirectedEdge ij = directed_edge(net.N, 2 * e + orientation);
            const int i = ij.from;
            if (i == 0) continue;
            const double delta = orientation == 0 ? net.phase_shifts[e] : -net.phase_shifts[e];
            const Complex a = k / (2.0 * kI) * std::exp(kI * delta);
            const Complex b = k / (2.0 * kI) * std::exp(-kI * delta);
            const int d_ij = 2 * e + orientation;
            const int d_ji = 2 * e + (1 - orientation);
            sys.coeffs(i - 1, d_ij) -= a;
            sys.coeffs(i - 1, d_ji) += b;
        }
    }
    return sys;
}

LaurentSystem random_base_system(int N, std::uint64_t seed) {
    if (N < 3) throw InvalidNetwork("cycle networks need N >= 3, got " + std::to_string(N));
    const int n = N - 1;
    std::mt19937_64 rng(seed);
    LaurentSystem sys;
    sys.N = N;
    sys.constants = CVector(n);
    sys.coeffs = CMatrix::Zero(n, directed_edge_count(N));
    for (int i = 1; i <= n; ++i) sys.constants[i - 1] = complex_gaussian(rng);
    for (int i = 1; i <= n; ++i) {
        for (int d = 0; d < directed_edge_count(N); ++d) {
            const DirectedEdge edge = directed_edge(N, d);
            if (edge.from == i || edge.to == i) sys.coeffs(i - 1, d) = complex_gaussian(rng);
        }
    }
    return sys;
}

LaurentSystem randomize(const LaurentSystem& sys, const MixingMatrix& mixing, double condition_limit) {
    const int n = sys.n();
    if (mixing.entries.rows() != n || mixing.entries.cols() != n) {
        throw SingularMixing("mixing matrix must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    const double cond = mixing.condition();
    if (!(cond < condition_limit)) {
        throw SingularMixing("mixing matrix condition number " + std::to_string(cond) +
                             " exceeds limit " + std::to_string(condition_limit));
    }
    LaurentSystem out;
    out.N = sys.N;
    out.constants = mixing.entries * sys.constants;
    out.coeffs = mixing.entries * sys.coeffs;
    return out;
}

UnmixedSystem make_unmixed(LaurentSystem base, MixingMatrix mixing) {
    LaurentSystem target = randomize(base, mixing);
    return UnmixedSystem{std::move(base), std::move(mixing), std::move(target)};
}

CVector evaluate(const LaurentSystem& sys, const CVector& x) { return sys.evaluate(x); }

CMatrix jacobian(const LaurentSystem& sys, const CVector& x) { return sys.jacobian(x); }

std::vector<double> real_residual(const CycleNetwork& net, std::span<const double> theta, double c) {
    if (static_cast<int>(theta.size()) != net.N) throw Error("theta must have N entries");
    std::vector<double> r(static_cast<std::size_t>(net.N));
    for (int i = 0; i < net.N; ++i) r[i] = net.frequencies[i] - c;
    for (int e = 0; e < net.N; ++e) {
        const int i = e;
        const int j = (e + 1) % net.N;
        const double k = net.couplings[e];
        const double delta = net.phase_shifts[e];
        r[i] -= k * std::sin(theta[i] - theta[j] + delta);
        r[j] -= k * std::sin(theta[j] - theta[i] - delta);
    }
    return r;
}

double mean_frequency(const CycleNetwork& net) {
    if (net.frequencies.empty()) return 0.0;
    return std::accumulate(net.frequencies.begin(), net.frequencies.end(), 0.0) /
           static_cast<double>(net.frequencies.size());
}

double residual_norm(const LaurentSystem& sys, const CVector& x) {
    return sys.evaluate(x).cwiseAbs().maxCoeff();
}

}  // namespace apcycle
