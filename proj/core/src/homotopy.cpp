#include "apcycle/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apcycle/errors.hpp"

namespace apcycle {

namespace {

constexpr double kMinModulus = 1e-8;
constexpr double kMaxModulus = 1e8;
constexpr double kTorusSnap = 1e-6;
constexpr double kSingularRcond = 1e-14;
// First Newton update may move each coordinate by at most this fraction of its modulus.
constexpr double kTrustRadius = 0.1;
constexpr double kContraction = 0.5;

Complex int_pow(Complex base, int exponent) {
    Complex result{1.0};
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double max_relative(const CVector& delta, const CVector& y) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) worst = std::max(worst, std::abs(delta[i]) / std::abs(y[i]));
    return worst;
}

bool in_range(const CVector& y) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = std::abs(y[i]);
        if (!(r >= kMinModulus && r <= kMaxModulus)) return false;
    }
    return true;
}

bool has_zero(const CVector& y) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] == Complex{0.0} || !std::isfinite(std::abs(y[i]))) return true;
    }
    return false;
}

// Plain Newton on a Laurent system; stops early once the update is negligible.
void refine(const LaurentSystem& sys, CVector& x, int iterations) {
    for (int it = 0; it < iterations; ++it) {
        if (has_zero(x)) return;
        const CMatrix jac = sys.jacobian(x);
        Eigen::PartialPivLU<CMatrix> lu(jac);
        if (!(lu.rcond() > kSingularRcond)) return;
        const CVector delta = lu.solve(-sys.evaluate(x));
        if (!delta.allFinite()) return;
        x += delta;
        if (max_abs(delta) <= 1e-15 * std::max(1.0, max_abs(x))) return;
    }
}

}  // namespace

HomotopySystem build(std::shared_ptr<const UnmixedSystem> system, const Cell& cell) {
    if (!system) throw Error("homotopy needs a target system");
    const int N = system->target.N;
    if (static_cast<int>(cell.normal.size()) != N - 1) throw Error("cell normal has the wrong dimension");

    HomotopySystem h;
    h.system = std::move(system);
    h.normal = cell.normal;
    h.cell_edges = cell.edges;
    const int edges = directed_edge_count(N);
    h.heights.resize(static_cast<std::size_t>(edges));
    h.shifted_exponents.resize(static_cast<std::size_t>(edges));

    std::vector<bool> in_cell(static_cast<std::size_t>(edges), false);
    for (const DirectedEdge& edge : cell.edges) {
        const int d = directed_edge_index(N, edge);
        if (d < 0) throw CertificateViolation("cell edge is not a cycle edge");
        in_cell[d] = true;
    }
    for (int d = 0; d < edges; ++d) {
        const DirectedEdge edge = directed_edge(N, d);
        const int alpha_from = edge.from == 0 ? 0 : cell.normal[edge.from - 1];
        const int alpha_to = edge.to == 0 ? 0 : cell.normal[edge.to - 1];
        h.heights[d] = lifting_height(N, edge);
        h.shifted_exponents[d] = h.heights[d] + alpha_from - alpha_to;
        const int m = h.shifted_exponents[d];
        if (m < 0 || (m == 0) != in_cell[d]) {
            throw CertificateViolation("edge (" + std::to_string(edge.from) + "," + std::to_string(edge.to) +
                                       ") has shifted exponent " + std::to_string(m) +
                                       " inconsistent with the cell");
        }
    }
    return h;
}

HomotopyValue eval_H(const HomotopySystem& h, const CVector& y, Complex t) {
    const LaurentSystem& target = h.system->target;
    const CVector m = target.monomials(y);
    const int n = target.n();
    HomotopyValue out{target.constants, CMatrix::Zero(n, n), CVector::Zero(n)};
    for (int d = 0; d < directed_edge_count(target.N); ++d) {
        const int power = h.shifted_exponents[d];
        const Complex tp = int_pow(t, power);
        const Complex dtp = power == 0 ? Complex{0.0} : static_cast<double>(power) * int_pow(t, power - 1);
        const auto column = target.coeffs.col(d);
        out.value += column * (m[d] * tp);
        out.d_dt += column * (m[d] * dtp);
        const DirectedEdge edge = directed_edge(target.N, d);
        if (edge.from != 0) out.d_dy.col(edge.from - 1) += column * (m[d] * tp / y[edge.from - 1]);
        if (edge.to != 0) out.d_dy.col(edge.to - 1) -= column * (m[d] * tp / y[edge.to - 1]);
    }
    return out;
}

void TrackOptions::validate() const {
    const bool ok = initial_step > 0 && min_step > 0 && max_step > 0 && min_step < initial_step &&
                    max_steps > 0 && newton_tol > 0 && newton_max_iters > 0 && step_expand > 1.0 &&
                    step_shrink > 0 && step_shrink < 1.0 && endpoint_refine_iters >= 0 && endpoint_tol > 0;
    if (!ok) throw Error("invalid tracker options");
}

Complex path_t(double s, double twist_angle) {
    return s * std::exp(Complex{0.0, twist_angle * (1.0 - s)});
}

Complex path_dt(double s, double twist_angle) {
    return std::exp(Complex{0.0, twist_angle * (1.0 - s)}) * Complex{1.0, -twist_angle * s};
}

std::string_view to_string(PathStatus status) {
    switch (status) {
        case PathStatus::converged: return "converged";
        case PathStatus::diverged: return "diverged";
        case PathStatus::step_limit: return "step_limit";
        case PathStatus::singular: return "singular";
    }
    return "unknown";
}

TrackedPath track(const HomotopySystem& h, const CellSolution& start, const TrackOptions& opts,
                  std::size_t cell_id) {
    opts.validate();
    TrackedPath path;
    path.start = start;
    path.cell_id = cell_id;

    const double tau = opts.twist_angle;
    CVector y = start.x;
    double s = 0.0;
    double step = std::min(opts.initial_step, opts.max_step);
    bool reached_end = false;
    int streak = 0;

    HomotopyValue here;
    try {
        here = eval_H(h, y, path_t(s, tau));
    } catch (const ZeroCoordinate&) {
        path.status = PathStatus::diverged;
        path.endpoint = y;
        return path;
    }

    while (!reached_end) {
        if (path.steps >= opts.max_steps) {
            path.status = PathStatus::step_limit;
            break;
        }
        ++path.steps;
        // Absorb round-off so s = 0.1 + ... + 0.1 does not leave a 1e-16 tail step.
        const bool last = s + step >= 1.0 - 1e-12;
        const double s_next = last ? 1.0 : s + step;
        const double ds = s_next - s;

        bool accepted = false;
        int iters = 0;
        CVector y_next;
        HomotopyValue there;
        try {
            Eigen::PartialPivLU<CMatrix> lu(here.d_dy);
            if (lu.rcond() > kSingularRcond) {
                const CVector tangent = -lu.solve(here.d_dt * path_dt(s, tau));
                y_next = y + ds * tangent;
                const Complex t_next = path_t(s_next, tau);
                double previous = 0.0;
                bool converged = false;
                for (iters = 1; iters <= opts.newton_max_iters; ++iters) {
                    const HomotopyValue v = eval_H(h, y_next, t_next);
                    Eigen::PartialPivLU<CMatrix> jl(v.d_dy);
                    if (!(jl.rcond() > kSingularRcond)) break;
                    const CVector delta = jl.solve(-v.value);
                    if (!delta.allFinite()) break;
                    if (iters == 1 && max_relative(delta, y_next) > kTrustRadius) break;
                    y_next += delta;
                    const double size = max_abs(delta);
                    const double scale = std::max(1.0, max_abs(y_next));
                    if (iters > 1 && size > kContraction * previous) break;
                    previous = size;
                    if (size <= opts.newton_tol * scale) {
                        converged = true;
                        break;
                    }
                }
                if (converged && !has_zero(y_next)) {
                    there = eval_H(h, y_next, t_next);
                    const double residual = max_abs(there.value);
                    accepted = residual < 10.0 * opts.newton_tol;
                    if (accepted) path.max_accepted_residual = std::max(path.max_accepted_residual, residual);
                }
            }
        } catch (const ZeroCoordinate&) {
            accepted = false;
        }

        if (opts.record_trace) path.trace.push_back({s_next, ds, iters, accepted});

        if (accepted) {
            y = std::move(y_next);
            here = std::move(there);
            s = s_next;
            reached_end = last;
            if (++streak >= 2) {
                step = std::min(step * opts.step_expand, opts.max_step);
                streak = 0;
            }
        } else {
            ++path.rejected_steps;
            streak = 0;
            step *= opts.step_shrink;
            if (step < opts.min_step) {
                path.status = in_range(y) ? PathStatus::singular : PathStatus::diverged;
                break;
            }
        }
    }

    path.endpoint = y;
    if (!reached_end) {
        path.endpoint_residual = std::numeric_limits<double>::infinity();
        return path;
    }

    refine(h.system->target, path.endpoint, opts.endpoint_refine_iters);
    bool near_torus = true;
    for (Eigen::Index i = 0; i < path.endpoint.size(); ++i) {
        near_torus = near_torus && std::abs(std::abs(path.endpoint[i]) - 1.0) < kTorusSnap;
    }
    if (near_torus) refine(h.system->base, path.endpoint, opts.endpoint_refine_iters);

    if (has_zero(path.endpoint) || !in_range(path.endpoint)) {
        path.status = PathStatus::diverged;
        path.endpoint_residual = std::numeric_limits<double>::infinity();
        return path;
    }
    path.endpoint_residual = residual_norm(h.system->target, path.endpoint);
    path.status = path.endpoint_residual < opts.endpoint_tol ? PathStatus::converged : PathStatus::singular;
    return path;
}

}  // namespace apcycle
