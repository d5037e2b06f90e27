#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "apcycle/decomposition.hpp"
#include "apcycle/network.hpp"
#include "apcycle/polytope.hpp"

namespace apcycle {

/// Cell homotopy H_T(y, t) = H(y_1 t^{a_1}, ..., y_n t^{a_n}, t) where
/// H(x, t) = c + sum_d C_d x^{e_d} t^{height_d}. After the substitution every
/// edge term carries t^{m_d} with m_d = height_d + a_from - a_to, which is zero
/// exactly on the cell edges. At t = 0 only the cell system survives; at t = 1
/// it is the unmixed target.
struct HomotopySystem {
    std::shared_ptr<const UnmixedSystem> system;
    IntVector normal;
    std::vector<int> heights;            // per directed edge index
    std::vector<int> shifted_exponents;  // per directed edge index
    std::vector<DirectedEdge> cell_edges;

    int N() const { return system->target.N; }
    int n() const { return system->target.n(); }
};

/// Throws CertificateViolation if an exponent is negative or the zero
/// exponents do not coincide with the cell edges.
HomotopySystem build(std::shared_ptr<const UnmixedSystem> system, const Cell& cell);

struct HomotopyValue {
    CVector value;
    CMatrix d_dy;
    CVector d_dt;
};

/// Value and derivatives at complex t. Throws ZeroCoordinate.
HomotopyValue eval_H(const HomotopySystem& h, const CVector& y, Complex t);

struct TrackOptions {
    double initial_step = 0.01;
    double min_step = 1e-10;
    double max_step = 0.1;
    int max_steps = 10000;
    double newton_tol = 1e-10;
    int newton_max_iters = 10;
    double step_expand = 2.0;
    double step_shrink = 0.5;
    int endpoint_refine_iters = 5;
    double endpoint_tol = 1e-8;
    /// Phase of the complex t-path t(s) = s exp(i tau (1 - s)); 0 tracks real t.
    double twist_angle = 0.0;
    bool record_trace = false;

    /// Throws Error if a field is out of range.
    void validate() const;
};

/// Path parameter t(s) and dt/ds for s in [0, 1]; t(0) = 0, t(1) = 1.
Complex path_t(double s, double twist_angle);
Complex path_dt(double s, double twist_angle);

enum class PathStatus { converged, diverged, step_limit, singular };

std::string_view to_string(PathStatus status);

struct TraceStep {
    double s = 0.0;
    double step = 0.0;
    int newton_iters = 0;
    bool accepted = false;
};

struct TrackedPath {
    CellSolution start;
    PathStatus status = PathStatus::singular;
    int steps = 0;
    int rejected_steps = 0;
    CVector endpoint;
    double endpoint_residual = 0.0;
    std::size_t cell_id = 0;
    /// Largest |H_T| seen right after an accepted step.
    double max_accepted_residual = 0.0;
    std::vector<TraceStep> trace;
};

/// Predictor-corrector continuation from s = 0 to s = 1: Euler predictor along
/// the implicit-function tangent, Newton corrector at fixed s, step halving on
/// failure. The endpoint is Newton-refined on the unmixed target; endpoints
/// within 1e-6 of the unit torus are refined once more on the base system.
/// Never throws for numerical trouble; the outcome is in `status`.
TrackedPath track(const HomotopySystem& h, const CellSolution& start, const TrackOptions& opts,
                  std::size_t cell_id = 0);

}  // namespace apcycle
