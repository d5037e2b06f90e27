// Acceptance run: one PASS/FAIL line per criterion.
//   apcycle_acceptance            all criteria
//   apcycle_acceptance --only 5   a single criterion

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apcycle/decomposition.hpp"
#include "apcycle/engine.hpp"
#include "apcycle/errors.hpp"
#include "apcycle/homotopy.hpp"
#include "apcycle/lower_hull.hpp"
#include "apcycle/polytope.hpp"
#include "apcycle/tropical.hpp"

using namespace apcycle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            pass = false;
            detail << what;
        }
    }
};

std::set<IntVector> normal_set(const std::vector<Cell>& cells) {
    std::set<IntVector> out;
    for (const Cell& c : cells) out.insert(c.normal);
    return out;
}

// 1 ------------------------------------------------------------------------
Outcome cell_counts() {
    Outcome o;
    const long long expected[] = {6, 12, 30, 60, 140, 280, 630, 1260, 2772, 5544};
    const auto start = Clock::now();
    for (int N = 3; N <= 12; ++N) {
        // N * C(N-1, floor((N-1)/2)) by direct multiplication.
        long long binom = 1;
        const int k = (N - 1) / 2;
        for (int i = 1; i <= k; ++i) binom = binom * (N - 1 - k + i) / i;
        const std::size_t count = triangulation(N).size();
        o.require(N * binom == expected[N - 3], "formula mismatch at N=" + std::to_string(N));
        o.require(static_cast<long long>(count) == expected[N - 3],
                  "N=" + std::to_string(N) + " gave " + std::to_string(count));
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
    if (o.pass) o.detail << "N=3..12 give 6..5544 cells in " << elapsed << " s";
    return o;
}

// 2 ------------------------------------------------------------------------
Outcome certificates() {
    Outcome o;
    std::size_t total = 0;
    for (int N = 3; N <= 12; ++N) {
        try {
            for_each_cell(N, [&](const Cell& cell) {
                ++total;
                // Independent recheck of the certificate from the lifted values.
                const auto values = lifted_values(cell.normal, N);
                std::size_t zeros = 0;
                bool origin = values[0] == 0;
                bool negative = false;
                for (long long v : values) {
                    zeros += v == 0;
                    negative = negative || v < 0;
                }
                o.require(origin && !negative && zeros == static_cast<std::size_t>(N) && certify(cell, N),
                          "certificate fails at N=" + std::to_string(N));
                o.require(std::llabs(cell_determinant(cell, N)) == 1, "non-unimodular cell at N=" + std::to_string(N));
            });
        } catch (const CertificateViolation& e) {
            o.require(false, e.what());
        }
    }
    if (o.pass) o.detail << total << " cells certified with |det| = 1 for N=3..12";
    return o;
}

// 3 ------------------------------------------------------------------------
Outcome oracle_equivalence() {
    Outcome o;
    const auto start = Clock::now();
    for (int N = 3; N <= 7; ++N) {
        o.require(normal_set(triangulation(N)) == normal_set(lower_hull_oracle(N, 7)),
                  "normal sets differ at N=" + std::to_string(N));
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
    if (o.pass) o.detail << "closed form equals exact lower hull for N=3..7 in " << elapsed << " s";
    return o;
}

// 4 ------------------------------------------------------------------------
Outcome unsigned_shift_regression() {
    Outcome o;
    const SignVector lambda{{-1, -1, 1, 1}};
    // Shifting by +(e_1 + e_2) regardless of the sign of lambda_1 gives (0,-1,-1).
    IntVector shifted{-1, -2, -1};
    shifted[0] += 1;
    shifted[1] += 1;
    o.require(shifted == IntVector({0, -1, -1}), "shifted vector not reproduced");
    try {
        cell_from_normal(shifted, 4);
        o.require(false, "(0,-1,-1) was accepted");
    } catch (const NotACell&) {
    }
    try {
        const Cell good = cell_from_normal({-2, -2, -1}, 4);
        o.require(good.certified, "(-2,-2,-1) not certified");
    } catch (const NotACell& e) {
        o.require(false, std::string("(-2,-2,-1) rejected: ") + e.what());
    }
    const auto normals = normals_for(lambda, 4);
    o.require(normals == std::vector<IntVector>({{-1, -2, -1}, {-2, -2, -1}}), "normals_for output changed");
    if (o.pass) o.detail << "(0,-1,-1) raises NotACell, (-2,-2,-1) is a certified cell";
    return o;
}

// 5 ------------------------------------------------------------------------
Outcome root_counts() {
    Outcome o;
    double slowest = 0.0;
    for (int N = 3; N <= 6; ++N) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const std::string tag = "N=" + std::to_string(N) + " seed " + std::to_string(seed);
            SolveOptions opts;
            opts.seed = seed;
            opts.dedup_tol = 1e-6;
            const auto start = Clock::now();
            try {
                const SolveReport r = solve_all(RandomSpec{N}, opts);
                const double elapsed = seconds_since(start);
                slowest = std::max(slowest, elapsed);
                o.require(BigInt(r.solutions.size()) == bound(N) && r.paths_converged == r.paths_total,
                          tag + ": " + std::to_string(r.solutions.size()) + " distinct endpoints");
                for (const SolutionRecord& s : r.solutions) {
                    o.require(s.residual_base < 1e-8 && s.residual_unmixed < 1e-8, tag + ": residual too large");
                }
                o.require(elapsed < 60.0, tag + ": runtime " + std::to_string(elapsed) + " s");
            } catch (const NonGenericInput& e) {
                o.require(false, tag + ": " + e.what());
            }
        }
    }
    if (o.pass) o.detail << "6/12/30/60 distinct roots for seeds 1..5, slowest run " << slowest << " s";
    return o;
}

// 6 ------------------------------------------------------------------------
Outcome cell_solver() {
    Outcome o;
    double worst = 0.0;
    for (int N = 3; N <= 6; ++N) {
        const LaurentSystem base = random_base_system(N, 2024 + N);
        std::size_t index = 0;
        for_each_cell(N, [&](const Cell& cell) {
            const PrimitiveSubnetwork sub = subnetwork(cell, N, index++);
            const CellSolution sol = solve_cell(base, sub);
            CMatrix A(N - 1, N - 1);
            for (int j = 0; j < N - 1; ++j) A.col(j) = base.coeffs.col(directed_edge_index(N, sub.edges[j]));
            const CVector dense = A.partialPivLu().solve(-base.constants);
            for (int j = 0; j < N - 1; ++j) {
                worst = std::max(worst, std::abs(sol.edge_values[j] - dense[j]) / std::abs(dense[j]));
            }
        });
    }
    o.require(worst < 1e-12, "max relative error " + std::to_string(worst));

    // Least-squares slope of log(ops) against log(n).
    std::vector<double> lx;
    std::vector<double> ly;
    for (int N = 8; N <= 64; ++N) {
        const LaurentSystem base = random_base_system(N, static_cast<std::uint64_t>(N));
        SignVector lambda{IntVector(N, -1)};
        for (int i = 0; i < N / 2; ++i) lambda.lambdas[i] = 1;
        if (N % 2 != 0) lambda.lambdas[N / 2] = 0;
        const Cell cell = cell_from_normal(normals_for(lambda, N).front(), N);
        SolveCounter counter;
        solve_cell(base, subnetwork(cell, N), &counter);
        lx.push_back(std::log(N - 1.0));
        ly.push_back(std::log(static_cast<double>(counter.operations)));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    o.require(slope >= 0.8 && slope <= 1.3, "fitted exponent " + std::to_string(slope));
    if (o.pass) o.detail << "max relative error " << worst << " on N=3..6, operation-count exponent " << slope;
    return o;
}

// 7 ------------------------------------------------------------------------
Outcome start_anchoring() {
    Outcome o;
    std::size_t cells = 0;
    double worst = 0.0;
    for (int N = 3; N <= 12; ++N) {
        const auto sys = std::make_shared<const UnmixedSystem>(
            make_unmixed(random_base_system(N, 77 + N), MixingMatrix::random(N - 1, 7 + N)));
        std::size_t index = 0;
        for_each_cell(N, [&](const Cell& cell) {
            const HomotopySystem h = build(sys, cell);
            int zeros = 0;
            bool negative = false;
            for (int m : h.shifted_exponents) {
                zeros += m == 0;
                negative = negative || m < 0;
            }
            o.require(!negative && zeros == N - 1, "exponent map wrong at N=" + std::to_string(N));
            const CellSolution start = solve_cell(sys->base, subnetwork(cell, N, index++));
            const double norm = eval_H(h, start.x, 0.0).value.norm();
            worst = std::max(worst, norm);
            ++cells;
        });
    }
    o.require(worst < 1e-10, "max |H_T(start, 0)| = " + std::to_string(worst));
    if (o.pass) o.detail << cells << " cells for N=3..12, max |H_T(start, 0)| = " << worst;
    return o;
}

// 8 ------------------------------------------------------------------------
Outcome twist_states() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> small(-1e-3, 1e-3);
    int draws = 0;
    for (int draw = 0; draw < 5; ++draw) {
        CycleNetwork net = CycleNetwork::homogeneous(3, 1.0);
        for (double& w : net.frequencies) w = small(rng);
        SolveOptions opts;
        opts.seed = static_cast<std::uint64_t>(draw + 1);
        const std::string tag = "draw " + std::to_string(draw);
        try {
            const SolveReport r = solve_all(net, opts);
            int real = 0;
            bool near[3] = {false, false, false};
            for (const SolutionRecord& s : r.solutions) {
                if (!s.on_torus || !s.theta) continue;
                double res = 0.0;
                for (double v : real_residual(net, *s.theta, mean_frequency(net))) res = std::max(res, std::abs(v));
                if (res >= 1e-6) continue;
                ++real;
                for (int q = 0; q < 3; ++q) {
                    double gap = 0.0;
                    for (int j = 0; j < 3; ++j) {
                        const double analytic = 2 * std::numbers::pi * q * j / 3;
                        gap = std::max(gap, std::abs(std::remainder((*s.theta)[j] - analytic, 2 * std::numbers::pi)));
                    }
                    near[q] = near[q] || gap < 1e-2;
                }
            }
            o.require(real >= 3, tag + ": only " + std::to_string(real) + " real solutions");
            o.require(near[0] && near[1] && near[2], tag + ": a twist state is missing");
            ++draws;
        } catch (const NonGenericInput& e) {
            o.require(false, tag + ": " + e.what());
        }
    }
    if (o.pass) o.detail << draws << " frequency draws, each recovers q = 0, 1, 2 within 1e-2 rad";
    return o;
}

// 9 ------------------------------------------------------------------------
Outcome tropical() {
    Outcome o;
    for (int N = 3; N <= 12; ++N) {
        const auto points = stable_intersections(N);
        std::set<IntVector> coords;
        bool simple = true;
        for (const TropicalPoint& p : points) {
            coords.insert(p.coords);
            simple = simple && p.multiplicity == 1;
        }
        const std::string tag = "N=" + std::to_string(N);
        o.require(BigInt(points.size()) == bound(N) && coords.size() == points.size(), tag + ": count");
        o.require(simple, tag + ": multiplicity above 1");
        o.require(coords == normal_set(triangulation(N)), tag + ": not the normal set");
    }
    if (o.pass) o.detail << "bound(N) distinct multiplicity-1 points matching the normals for N=3..12";
    return o;
}

// 10 -----------------------------------------------------------------------
bool strictly_inside(const std::vector<IntVector>& pts, const std::vector<int>& simplex, const IntVector& q) {
    std::vector<std::vector<long long>> m(3, std::vector<long long>(3));
    for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 3; ++k) m[k][c] = pts[simplex[c + 1]][k] - pts[simplex[0]][k];
    }
    const long long d = determinant(m);
    if (d == 0) return false;
    long long total = 0;
    for (int c = 0; c < 3; ++c) {
        auto mc = m;
        for (int k = 0; k < 3; ++k) mc[k][c] = q[k] - pts[simplex[0]][k];
        const long long l = d > 0 ? determinant(mc) : -determinant(mc);
        if (l <= 0) return false;
        total += l;
    }
    return total < std::llabs(d);
}

Outcome zero_one_scan() {
    Outcome o;
    const auto start = Clock::now();
    std::vector<IntVector> pts;
    for (const SupportPoint& p : support(4)) pts.push_back(p.vector);
    int triangulating = 0;
    int unimodular = 0;
    int strict = 0;
    std::set<std::set<std::vector<int>>> distinct;
    for (int mask = 0; mask < 512; ++mask) {
        std::vector<int> h(9);
        for (int i = 0; i < 9; ++i) h[i] = (mask >> i) & 1;
        const auto facets = lower_facets(pts, h);
        const auto summary = summarize_subdivision(pts, h);
        if (!summary.triangulation) continue;
        ++triangulating;
        unimodular += summary.unimodular;
        std::set<std::vector<int>> cells;
        bool interior = false;
        for (const LowerFacet& f : facets) {
            cells.insert(f.points);
            for (const IntVector& q : pts) interior = interior || strictly_inside(pts, f.points, q);
        }
        distinct.insert(cells);
        strict += !interior;
    }
    const double elapsed = seconds_since(start);
    o.require(unimodular == 0, std::to_string(unimodular) + " unimodular");
    o.require(triangulating == 4, std::to_string(triangulating) + " triangulating assignments, expected 4");
    o.require(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s");
    o.detail << (o.pass ? "" : " | ") << triangulating << " triangulating (" << distinct.size()
             << " distinct triangulations), " << unimodular << " unimodular, " << strict
             << " leave no support point strictly inside a cell, " << elapsed << " s";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: apcycle_acceptance [--only K]\n";
            return 2;
        }
    }
    const std::vector<Criterion> criteria{
        {1, "exact cell counts", cell_counts},
        {2, "certificate and unimodularity", certificates},
        {3, "oracle equivalence", oracle_equivalence},
        {4, "unsigned-shift regression", unsigned_shift_regression},
        {5, "random root counts", root_counts},
        {6, "cell solver oracle and linear cost", cell_solver},
        {7, "start anchoring", start_anchoring},
        {8, "twist-state recovery", twist_states},
        {9, "tropical output", tropical},
        {10, "0/1 lifting scan", zero_one_scan},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        failures += !outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name
                  << "): " << outcome.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
