#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "apcycle/errors.hpp"
#include "apcycle/homotopy.hpp"
#include "apcycle/network.hpp"
#include "apcycle/polytope.hpp"

namespace apcycle {

/// Random-coefficient problem: c_i, a_ij, b_ij drawn as complex Gaussians.
struct RandomSpec {
    int N = 0;
};

struct SolveOptions {
    std::uint64_t seed = 1;
    TrackOptions track;
    /// Random phase on the t-path, drawn from the seed.
    bool twist = true;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    double dedup_tol = 1e-6;
    /// Fraction of failed paths tolerated for physical networks.
    double physical_failure_fraction = 0.05;
    /// When set, cells are handed to workers in an order shuffled with this seed.
    std::optional<std::uint64_t> shuffle_seed;
    bool record_trace = false;
};

struct SolutionRecord {
    CVector x;
    double residual_base = 0.0;
    double residual_unmixed = 0.0;
    bool on_torus = false;
    std::optional<std::vector<double>> theta;
    std::size_t cell_id = 0;
    std::size_t multiplicity = 1;  // endpoints merged into this record
};

struct SolveReport {
    int N = 0;
    std::uint64_t seed = 0;
    bool physical = false;
    BigInt bound = 0;
    std::size_t paths_total = 0;
    std::size_t paths_converged = 0;
    std::size_t paths_failed = 0;
    std::size_t duplicate_endpoints = 0;
    double twist_angle = 0.0;
    std::uint64_t mixing_seed = 0;
    std::vector<SolutionRecord> solutions;
    std::vector<TrackedPath> paths;  // indexed by cell
    std::vector<Cell> cells;
    double min_pairwise_distance = 0.0;
    double wall_time = 0.0;
};

/// Raised when too many paths fail; carries the partial report.
class NonGenericInput : public Error {
public:
    NonGenericInput(const std::string& what, std::shared_ptr<const SolveReport> report)
        : Error(what), report_(std::move(report)) {}
    const SolveReport& report() const { return *report_; }

private:
    std::shared_ptr<const SolveReport> report_;
};

SolveReport solve_all(const CycleNetwork& net, const SolveOptions& opts);
SolveReport solve_all(const RandomSpec& spec, const SolveOptions& opts);

/// Distance in log coordinates: max_i max(|log|x_i| - log|y_i||, |arg(x_i / y_i)|).
double log_distance(const CVector& a, const CVector& b);

/// Groups points whose log distance is below tol (transitively). Clusters are
/// listed by smallest member index; members ascend.
std::vector<std::vector<std::size_t>> deduplicate(std::span<const CVector> points, double tol);

/// theta_i = arg x_i (theta_0 = 0) when every |x_i| is within 1e-6 of 1 and the
/// sine equations hold to 1e-7 with c = mean frequency; nullopt otherwise.
std::optional<std::vector<double>> classify_real(const CVector& x, const CycleNetwork& net);

/// Twist angle used by solve_all for a given seed.
double twist_angle_for_seed(std::uint64_t seed);

}  // namespace apcycle
