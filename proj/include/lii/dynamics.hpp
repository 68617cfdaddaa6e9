// Two qubits decaying into private zero-temperature reservoirs.
//
// A and B start in alpha|00> + beta|11>; each couples to its own reservoir
// qubit through the amplitude-damping isometry. The joint four-qubit state
// (A, B, R_A, R_B) stays pure, and (R_A R_B) plays the purifying party E.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lii/lii.hpp"
#include "lii/measures.hpp"
#include "lii/state.hpp"

namespace lii {

struct InitialAmplitudes {
    double alpha = 1.0 / std::sqrt(3.0);
    double beta = std::sqrt(2.0 / 3.0);

    static InitialAmplitudes from_alpha_sq(double alpha_sq) {
        if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) throw std::invalid_argument("alpha^2 must lie in [0, 1]");
        InitialAmplitudes a{std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq)};
        a.validate();
        return a;
    }

    void validate() const {
        if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("initial amplitudes must be non-negative");
        if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12) {
            throw std::invalid_argument("initial amplitudes must satisfy alpha^2 + beta^2 = 1");
        }
    }
};

/// Channel strength p = 1 - exp(-Gamma t).
struct DampingParams {
    double p = 0.0;

    static DampingParams from_decay(double gamma_t) {
        if (gamma_t < 0.0) throw std::invalid_argument("Gamma t must be non-negative");
        return {1.0 - std::exp(-gamma_t)};
    }

    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("damping strength p must lie in [0, 1]");
    }
};

/// 4x2 isometry from a qubit into (qubit, reservoir):
///   |0> -> |0>|0>,  |1> -> sqrt(1-p)|1>|0> + sqrt(p)|0>|1>.
inline ComplexMatrix damping_isometry(DampingParams params) {
    params.validate();
    ComplexMatrix v(4, 2);
    v(0, 0) = 1.0;                           // |00>
    v(2, 1) = std::sqrt(1.0 - params.p);     // |10>
    v(1, 1) = std::sqrt(params.p);           // |01>
    return v;
}

/// Joint state ordered (A, B, R_A, R_B).
inline PureState evolve_esd(const InitialAmplitudes& amps, DampingParams params) {
    amps.validate();
    const ComplexMatrix v = damping_isometry(params);
    const std::array<std::array<double, 2>, 2> psi0{{{amps.alpha, 0.0}, {0.0, amps.beta}}};

    // Ordered (A, R_A, B, R_B) while applying V (x) V.
    std::vector<cplx> out(16);
    for (std::size_t a_ra = 0; a_ra < 4; ++a_ra)
        for (std::size_t b_rb = 0; b_rb < 4; ++b_rb) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) acc += v(a_ra, i) * v(b_rb, j) * psi0[i][j];
            out[a_ra * 4 + b_rb] = acc;
        }
    const PureState grouped(std::move(out), {2, 2, 2, 2});
    return permute_subsystems(grouped, {0, 2, 1, 3});
}

/// Closed-form concurrence of rho_AB: 2 beta (1-p) max(0, alpha - beta p).
inline double analytic_concurrence_esd(const InitialAmplitudes& amps, DampingParams params) {
    amps.validate();
    params.validate();
    return 2.0 * amps.beta * (1.0 - params.p) * std::max(0.0, amps.alpha - amps.beta * params.p);
}

/// Death point alpha / beta; values >= 1 mean entanglement survives until p = 1.
inline double esd_death_point(const InitialAmplitudes& amps) {
    return amps.beta > 0.0 ? amps.alpha / amps.beta : INFINITY;
}

struct EsdRecord {
    double p = 0.0;
    double eof_ab = 0.0;
    double avg_lii_ab = 0.0;    // avg(A|B)
    double balance_sum = 0.0;   // balance(E|A) + balance(E|B), E = R_A R_B
    double concurrence_ab = 0.0;
    double eab2_residual = 0.0; // |E_AB - (avg(A|B) - balance_sum)|
};

/// One sweep point. Discords measured on the four-level E go through the
/// Koashi-Winter route; those measured on A or B are optimized directly.
inline EsdRecord esd_point(const InitialAmplitudes& amps, DampingParams params, const OptimizerConfig& cfg = {}) {
    using enum Party;
    const PureState psi = evolve_esd(amps, params).regrouped({2, 2, 4});
    const TripartiteLabels labels{{"A", "B", "E"}, {0, 1, 2}};
    const LiiOptions opts{cfg, false, 5e-3};

    const DensityMatrix rho_ab = partial_trace(psi, {0, 1});
    EsdRecord r;
    r.p = params.p;
    r.concurrence_ab = concurrence(rho_ab);
    r.eof_ab = eof_from_concurrence(r.concurrence_ab);

    const LiiReport ab = lii_pair(psi, labels, A, B, opts);
    const LiiReport ea = lii_pair(psi, labels, E, A, opts);
    const LiiReport eb = lii_pair(psi, labels, E, B, opts);
    r.avg_lii_ab = ab.avg;
    r.balance_sum = ea.balance + eb.balance;
    r.eab2_residual = std::abs(r.eof_ab - (r.avg_lii_ab - r.balance_sum));
    return r;
}

/// `steps` equally spaced values covering [0, 1].
inline std::vector<double> uniform_grid(std::size_t steps) {
    if (steps < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i) g[i] = static_cast<double>(i) / static_cast<double>(steps - 1);
    return g;
}

/// Records sorted by p.
inline std::vector<EsdRecord> esd_sweep(const InitialAmplitudes& amps, std::vector<double> grid,
                                        const OptimizerConfig& cfg = {}) {
    for (double p : grid) DampingParams{p}.validate();
    std::sort(grid.begin(), grid.end());
    std::vector<EsdRecord> out;
    out.reserve(grid.size());
    for (double p : grid) out.push_back(esd_point(amps, DampingParams{p}, cfg));
    return out;
}

}  // namespace lii
