#include "apcycle/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "apcycle/decomposition.hpp"

namespace apcycle {

namespace {

constexpr std::uint64_t kMixingSalt = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kTwistSalt = 0xC2B2AE3D27D4EB4FULL;
constexpr double kTorusTol = 1e-6;
constexpr double kRealResidualTol = 1e-7;

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned threads = requested == 0 ? std::thread::hardware_concurrency() : requested;
    threads = std::max(1U, threads);
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
}

TrackedPath run_cell(const std::shared_ptr<const UnmixedSystem>& system, const Cell& cell,
                     std::size_t index, const TrackOptions& topts) {
    const int N = system->base.N;
    const PrimitiveSubnetwork sub = subnetwork(cell, N, index);
    CellSolution start;
    try {
        start = solve_cell(system->base, sub);
    } catch (const DegenerateCoefficient&) {
        TrackedPath failed;
        failed.cell_id = index;
        failed.status = PathStatus::singular;
        failed.endpoint_residual = std::numeric_limits<double>::infinity();
        return failed;
    }
    const HomotopySystem h = build(system, cell);
    return track(h, start, topts, index);
}

bool is_on_torus(const CVector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(std::abs(x[i]) - 1.0) >= kTorusTol) return false;
    }
    return true;
}

SolveReport solve_system(LaurentSystem base, const CycleNetwork* net, const SolveOptions& opts) {
    const auto clock_start = std::chrono::steady_clock::now();
    const int N = base.N;
    const int n = base.n();

    SolveReport report;
    report.N = N;
    report.seed = opts.seed;
    report.physical = net != nullptr;
    report.bound = bound(N);
    report.twist_angle = opts.twist ? twist_angle_for_seed(opts.seed) : 0.0;

    MixingMatrix mixing = MixingMatrix::random(n, opts.seed ^ kMixingSalt);
    report.mixing_seed = mixing.seed;
    const auto system = std::make_shared<const UnmixedSystem>(make_unmixed(std::move(base), std::move(mixing)));

    report.cells = triangulation(N);
    const std::size_t total = report.cells.size();
    report.paths_total = total;
    report.paths.resize(total);

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (opts.shuffle_seed) {
        std::mt19937_64 rng(*opts.shuffle_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    TrackOptions topts = opts.track;
    topts.twist_angle = report.twist_angle;
    topts.record_trace = topts.record_trace || opts.record_trace;

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            const std::size_t index = order[k];
            try {
                report.paths[index] = run_cell(system, report.cells[index], index, topts);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = worker_count(opts.threads, total);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<CVector> endpoints;
    std::vector<std::size_t> endpoint_cell;
    for (const TrackedPath& path : report.paths) {
        if (path.status == PathStatus::converged) {
            endpoints.push_back(path.endpoint);
            endpoint_cell.push_back(path.cell_id);
        }
    }
    report.paths_converged = endpoints.size();
    report.paths_failed = total - endpoints.size();

    const auto clusters = deduplicate(endpoints, opts.dedup_tol);
    report.duplicate_endpoints = endpoints.size() - clusters.size();
    for (const auto& members : clusters) {
        SolutionRecord record;
        record.x = endpoints[members.front()];
        record.cell_id = endpoint_cell[members.front()];
        record.multiplicity = members.size();
        record.residual_base = residual_norm(system->base, record.x);
        record.residual_unmixed = residual_norm(system->target, record.x);
        record.on_torus = is_on_torus(record.x);
        if (net && record.on_torus) record.theta = classify_real(record.x, *net);
        report.solutions.push_back(std::move(record));
    }

    report.min_pairwise_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        for (std::size_t j = i + 1; j < report.solutions.size(); ++j) {
            report.min_pairwise_distance = std::min(report.min_pairwise_distance,
                                                    log_distance(report.solutions[i].x, report.solutions[j].x));
        }
    }
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();

    const bool non_generic =
        net ? static_cast<double>(report.paths_failed) > opts.physical_failure_fraction * static_cast<double>(total)
            : report.paths_failed > 0 || report.duplicate_endpoints > 0;
    if (non_generic) {
        auto shared = std::make_shared<const SolveReport>(report);
        std::string message = std::to_string(report.paths_failed) + " of " + std::to_string(total) +
                              " paths failed and " + std::to_string(report.duplicate_endpoints) +
                              " endpoints coincide; ";
        // Equal frequencies zero every constant term; no seed helps.
        if (system->base.constants.isZero(0.0)) {
            message += "all natural frequencies are equal, so the constant terms vanish";
        } else if (net) {
            message += "physical inputs can have fewer isolated roots than the bound (e.g. even N with zero phase shifts)";
        } else {
            message += "rerun with a different --seed";
        }
        throw NonGenericInput(message, std::move(shared));
    }
    return report;
}

}  // namespace

double twist_angle_for_seed(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ kTwistSalt);
    std::uniform_real_distribution<double> magnitude(0.2, 1.0);
    std::bernoulli_distribution sign(0.5);
    const double tau = magnitude(rng);
    return sign(rng) ? tau : -tau;
}

SolveReport solve_all(const CycleNetwork& net, const SolveOptions& opts) {
    return solve_system(complexify(net), &net, opts);
}

SolveReport solve_all(const RandomSpec& spec, const SolveOptions& opts) {
    return solve_system(random_base_system(spec.N, opts.seed), nullptr, opts);
}

double log_distance(const CVector& a, const CVector& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double modulus = std::abs(std::log(std::abs(a[i])) - std::log(std::abs(b[i])));
        const double angle = std::abs(std::arg(a[i] / b[i]));
        worst = std::max({worst, modulus, angle});
    }
    return worst;
}

std::vector<std::vector<std::size_t>> deduplicate(std::span<const CVector> points, double tol) {
    const std::size_t m = points.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (log_distance(points[i], points[j]) < tol) {
                const std::size_t a = find(i);
                const std::size_t b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::ptrdiff_t> slot(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::ptrdiff_t>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    return clusters;
}

std::optional<std::vector<double>> classify_real(const CVector& x, const CycleNetwork& net) {
    if (x.size() != net.n() || !is_on_torus(x)) return std::nullopt;
    std::vector<double> theta(static_cast<std::size_t>(net.N), 0.0);
    for (int i = 1; i < net.N; ++i) theta[i] = std::arg(x[i - 1]);
    const std::vector<double> r = real_residual(net, theta, mean_frequency(net));
    for (double value : r) {
        if (!(std::abs(value) < kRealResidualTol)) return std::nullopt;
    }
    return theta;
}

}  // namespace apcycle
