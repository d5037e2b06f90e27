#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apcycle/types.hpp"

namespace apcycle {

/// Physical parameters of a Kuramoto network on the cycle graph C_N.
///
/// Edge e joins nodes e and e+1 (mod N). couplings[e] and phase_shifts[e]
/// belong to that edge read in the forward direction; the reverse direction
/// carries the negated phase shift so that the N equilibrium equations sum
/// to zero and one of them can be dropped.
struct CycleNetwork {
    int N = 0;
    std::vector<double> couplings;
    std::vector<double> phase_shifts;
    std::vector<double> frequencies;

    int n() const { return N - 1; }

    /// Throws InvalidNetwork if N < 3, a list has the wrong length, or a coupling is zero.
    void validate() const;

    /// Uniform coupling, zero phase shift, zero frequency.
    static CycleNetwork homogeneous(int N, double coupling = 1.0);

    friend bool operator==(const CycleNetwork&, const CycleNetwork&) = default;
};

/// Laurent system on (C*)^n of the form
///
///     F_k(x) = constants[k] + sum_d coeffs(k, d) * x^{e_from(d) - e_to(d)}
///
/// for k = 0..n-1 (equation k belongs to node k+1) and directed edge index d.
/// Signs are folded into the stored coefficients. Variable k stands for
/// node k+1; node 0 is pinned to x_0 = 1.
struct LaurentSystem {
    int N = 0;
    CVector constants;
    CMatrix coeffs;  // n x 2N

    int n() const { return N - 1; }

    /// Values of the 2N edge monomials at x. Throws ZeroCoordinate.
    CVector monomials(const CVector& x) const;

    CVector evaluate(const CVector& x) const;
    CMatrix jacobian(const CVector& x) const;
};

/// Nonsingular complex n x n matrix used to mix the base equations.
struct MixingMatrix {
    CMatrix entries;
    std::uint64_t seed = 0;

    static constexpr double default_condition_limit = 1e6;

    /// 2-norm condition number.
    double condition() const;

    static MixingMatrix identity(int n);

    /// Complex Gaussian entries from a seeded generator. Draws are repeated with
    /// seed + 1, seed + 2, ... until the condition number is below the limit.
    static MixingMatrix random(int n, std::uint64_t seed,
                               double condition_limit = default_condition_limit);
};

/// Complexified equilibrium equations in the rotating frame (mean frequency
/// removed): c_i = omega_i - mean(omega), a_ij = k/(2i) e^{i delta_ij},
/// b_ij = k/(2i) e^{-i delta_ij}, F_i = c_i - sum_j (a_ij x_i/x_j - b_ij x_j/x_i).
LaurentSystem complexify(const CycleNetwork& net);

/// Base-form system with complex Gaussian c_i, a_ij, b_ij drawn independently
/// for every (equation, monomial) slot the physical system would occupy.
LaurentSystem random_base_system(int N, std::uint64_t seed);

/// R * F. Throws SingularMixing when R exceeds the condition limit.
LaurentSystem randomize(const LaurentSystem& sys, const MixingMatrix& mixing,
                        double condition_limit = MixingMatrix::default_condition_limit);

CVector evaluate(const LaurentSystem& sys, const CVector& x);
CMatrix jacobian(const LaurentSystem& sys, const CVector& x);

/// Base system, mixing matrix and their product R * F, shared read-only by
/// every homotopy built from it.
struct UnmixedSystem {
    LaurentSystem base;
    MixingMatrix mixing;
    LaurentSystem target;
};

UnmixedSystem make_unmixed(LaurentSystem base, MixingMatrix mixing);

/// omega_i - sum_j k_ij sin(theta_i - theta_j + delta_ij) - c for i = 0..N-1.
std::vector<double> real_residual(const CycleNetwork& net, std::span<const double> theta,
                                  double c);

double mean_frequency(const CycleNetwork& net);

/// max_i |F_i(x)|
double residual_norm(const LaurentSystem& sys, const CVector& x);

}  // namespace apcycle
