// Entropic correlation measures: von Neumann entropy, mutual information,
// conditional entropy, measurement-optimized accessible information and
// quantum discord, plus two-qubit concurrence / entanglement of formation
// and the Koashi-Winter shortcuts for qubit-qudit pairs of rank two.
//
// All entropies are in bits. Discord is measured on a single qubit with
// rank-1 projective measurements parameterized by Bloch angles.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lii/matrix.hpp"
#include "lii/simplex.hpp"
#include "lii/state.hpp"

namespace lii {

// --------------------------------------------------------------------------
// Entropies

/// -sum l log2 l over eigenvalues, with 0 log 0 = 0. Values in [-1e-9, 0] are
/// round-off; anything lower is rejected.
inline double entropy_bits(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double l : eigenvalues) {
        if (l < -kNegativeEigenvalueTol) {
            throw std::domain_error("entropy: eigenvalue " + std::to_string(l) + " below -1e-9");
        }
        if (l > 0.0) s -= l * std::log2(l);
    }
    return std::max(0.0, s);
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return entropy_bits(rho.spectrum()); }

/// h(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x) {
    const double y = 1.0 - x;
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (y > 0.0) h -= y * std::log2(y);
    return h;
}

/// Two groups of subsystems of a multipartite state. Subsystems listed in
/// neither group are traced out.
struct Bipartition {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;

    static Bipartition pair() { return {{0}, {1}}; }

    void validate(std::size_t parties) const {
        if (a.empty() || b.empty()) throw std::invalid_argument("bipartition: both sides must be nonempty");
        std::vector<bool> used(parties, false);
        for (const auto* side : {&a, &b}) {
            for (std::size_t i = 0; i < side->size(); ++i) {
                const std::size_t k = (*side)[i];
                if (k >= parties) throw std::out_of_range("bipartition: subsystem index out of range");
                if (used[k]) throw std::invalid_argument("bipartition: sides overlap");
                if (i > 0 && k <= (*side)[i - 1]) {
                    throw std::invalid_argument("bipartition: indices must be increasing");
                }
                used[k] = true;
            }
        }
    }

    std::vector<std::size_t> joint() const {
        std::vector<std::size_t> all = a;
        all.insert(all.end(), b.begin(), b.end());
        std::sort(all.begin(), all.end());
        return all;
    }
};

struct BipartiteEntropies {
    double s_a, s_b, s_ab;
};

inline BipartiteEntropies bipartite_entropies(const DensityMatrix& rho, const Bipartition& cut) {
    cut.validate(rho.parties());
    const auto joint = cut.joint();
    const double s_ab = joint.size() == rho.parties() ? von_neumann_entropy(rho)
                                                       : von_neumann_entropy(partial_trace(rho, joint));
    return {von_neumann_entropy(partial_trace(rho, cut.a)), von_neumann_entropy(partial_trace(rho, cut.b)), s_ab};
}

/// I(A:B) = S_A + S_B - S_AB.
inline double mutual_information(const DensityMatrix& rho, const Bipartition& cut = Bipartition::pair()) {
    const auto e = bipartite_entropies(rho, cut);
    return e.s_a + e.s_b - e.s_ab;
}

/// S(A|B) = S_AB - S_B; negative for entangled pure states.
inline double conditional_entropy(const DensityMatrix& rho, const Bipartition& cut = Bipartition::pair()) {
    const auto e = bipartite_entropies(rho, cut);
    return e.s_ab - e.s_b;
}

// --------------------------------------------------------------------------
// Measurements on a qubit

/// Projective qubit measurement {|v><v|, 1 - |v><v|} with
/// |v> = (cos(theta/2), e^{i phi} sin(theta/2)).
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    /// Equivalent angles with theta in [0, pi] and phi in [0, 2 pi).
    static MeasurementBasis canonical(double theta, double phi) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        theta = std::fmod(theta, two_pi);
        if (theta < 0.0) theta += two_pi;
        if (theta > std::numbers::pi) {
            theta = two_pi - theta;
            phi += std::numbers::pi;
        }
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) phi += two_pi;
        if (phi >= two_pi) phi = 0.0;
        return {theta, phi};
    }

    /// Outcome vector: k = 0 gives |v>, k = 1 its orthogonal complement.
    std::array<cplx, 2> vector(int k) const {
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        const cplx e = std::polar(1.0, phi);
        if (k == 0) return {cplx(c), e * s};
        return {cplx(s), -e * c};
    }

    ComplexMatrix projector(int k) const {
        const auto v = vector(k);
        return ComplexMatrix::outer(v);
    }
};

struct PostMeasurementEnsemble {
    struct Outcome {
        double probability;
        DensityMatrix state;  // conditional state of the unmeasured subsystems
    };
    std::vector<Outcome> outcomes;
};

inline constexpr double kOutcomeCutoff = 1e-12;

namespace detail {

// rho reorganized as 2x2 blocks over the measured qubit:
// block[a][b](i, j) = <i, a| rho |j, b> with i, j ranging over the rest.
class MeasuredQubitBlocks {
public:
    MeasuredQubitBlocks(const DensityMatrix& rho, std::size_t measured) {
        if (measured >= rho.parties()) throw std::out_of_range("measured party index out of range");
        if (rho.dims()[measured] != 2) {
            throw std::invalid_argument("measured party must be a qubit (dimension 2)");
        }
        if (rho.parties() < 2) throw std::invalid_argument("measurement needs at least one unmeasured party");
        for (std::size_t k = 0; k < rho.parties(); ++k) {
            if (k != measured) {
                rest_.push_back(k);
                rest_dims_.push_back(rho.dims()[k]);
            }
        }
        std::vector<std::size_t> perm = rest_;
        perm.push_back(measured);
        const DensityMatrix ordered = permute_subsystems(rho, perm);
        d_ = ordered.dim() / 2;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                ComplexMatrix blk(d_, d_);
                for (std::size_t i = 0; i < d_; ++i)
                    for (std::size_t j = 0; j < d_; ++j) blk(i, j) = ordered(2 * i + a, 2 * j + b);
                blocks_[2 * a + b] = std::move(blk);
            }
        s_rest_ = von_neumann_entropy(partial_trace(rho, rest_));
        scratch_ = ComplexMatrix(d_, d_);
    }

    std::size_t rest_dim() const { return d_; }
    const Dims& rest_dims() const { return rest_dims_; }
    const std::vector<std::size_t>& rest() const { return rest_; }
    double rest_entropy() const { return s_rest_; }

    /// Unnormalized conditional state Tr_measured[(1 x P_k) rho (1 x P_k)].
    void conditional(const MeasurementBasis& basis, int k, ComplexMatrix& out) const {
        const auto v = basis.vector(k);
        const cplx w[4] = {std::norm(v[0]), std::conj(v[0]) * v[1], std::conj(v[1]) * v[0], std::norm(v[1])};
        auto e = out.entries();
        std::fill(e.begin(), e.end(), cplx{});
        for (int ab = 0; ab < 4; ++ab) {
            const auto src = blocks_[ab].entries();
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += w[ab] * src[i];
        }
    }

    /// sum_k p_k S(rho_{rest|k}); outcomes below the cutoff contribute nothing.
    double average_conditional_entropy(const MeasurementBasis& basis) const {
        double total = 0.0;
        for (int k = 0; k < 2; ++k) {
            conditional(basis, k, scratch_);
            const double p = scratch_.trace().real();
            if (p < kOutcomeCutoff) continue;
            // p S(sigma / p) = -sum mu log2(mu / p) over eigenvalues mu of sigma.
            for (double mu : eigvals_hermitian(scratch_)) {
                if (mu > 0.0) total -= mu * std::log2(mu / p);
            }
        }
        return total;
    }

private:
    std::vector<std::size_t> rest_;
    Dims rest_dims_;
    std::size_t d_ = 0;
    std::array<ComplexMatrix, 4> blocks_;
    double s_rest_ = 0.0;
    mutable ComplexMatrix scratch_;
};

}  // namespace detail

/// Outcome probabilities and conditional states of the unmeasured parties
/// after measuring the qubit `measured` in `basis`. Outcomes with probability
/// below 1e-12 carry a maximally mixed placeholder state.
inline PostMeasurementEnsemble post_measurement_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis,
                                                         std::size_t measured) {
    const detail::MeasuredQubitBlocks blocks(rho, measured);
    PostMeasurementEnsemble ens;
    ComplexMatrix sigma(blocks.rest_dim(), blocks.rest_dim());
    for (int k = 0; k < 2; ++k) {
        blocks.conditional(basis, k, sigma);
        const double p = sigma.trace().real();
        if (p < kOutcomeCutoff) {
            ens.outcomes.push_back({std::max(0.0, p), DensityMatrix::maximally_mixed(blocks.rest_dims())});
            continue;
        }
        ComplexMatrix normalized = sigma * cplx(1.0 / p);
        // Division by a small p amplifies round-off; restore exact Hermiticity.
        normalized = (normalized + normalized.adjoint()) * cplx(0.5);
        ens.outcomes.push_back({p, DensityMatrix(std::move(normalized), blocks.rest_dims())});
    }
    return ens;
}

// --------------------------------------------------------------------------
// Optimization over measurement bases

struct OptimizerConfig {
    std::size_t grid_theta = 60;
    std::size_t grid_phi = 120;
    int refine_iters = 200;
    double tol = 1e-7;

    void validate() const {
        if (grid_theta < 2 || grid_phi < 2) throw std::invalid_argument("optimizer grid counts must be >= 2");
        if (refine_iters < 0) throw std::invalid_argument("optimizer refine_iters must be >= 0");
        if (!(tol > 0.0)) throw std::invalid_argument("optimizer tolerance must be positive");
    }
};

struct AccessibleInformation {
    double bits;
    MeasurementBasis basis;
};

namespace detail {

// Minimizes the post-measurement conditional entropy: exhaustive grid in
// (theta, phi), first strict minimum wins (lowest theta index, then lowest phi
// index), then a simplex refinement from that point.
inline std::pair<double, MeasurementBasis> minimize_conditional_entropy(const MeasuredQubitBlocks& blocks,
                                                                         const OptimizerConfig& cfg) {
    cfg.validate();
    constexpr double pi = std::numbers::pi;
    const double dtheta = pi / static_cast<double>(cfg.grid_theta - 1);
    const double dphi = 2.0 * pi / static_cast<double>(cfg.grid_phi);

    double best = INFINITY;
    MeasurementBasis best_basis;
    for (std::size_t i = 0; i < cfg.grid_theta; ++i) {
        for (std::size_t j = 0; j < cfg.grid_phi; ++j) {
            const MeasurementBasis b{dtheta * static_cast<double>(i), dphi * static_cast<double>(j)};
            const double v = blocks.average_conditional_entropy(b);
            if (v < best) {
                best = v;
                best_basis = b;
            }
        }
    }
    if (cfg.refine_iters == 0) return {best, best_basis};

    auto objective = [&](const std::array<double, 2>& x) {
        return blocks.average_conditional_entropy(MeasurementBasis{x[0], x[1]});
    };
    SimplexOptions opt;
    opt.max_iterations = cfg.refine_iters;
    opt.f_tol = cfg.tol;
    const auto res = nelder_mead<2>(objective, {best_basis.theta, best_basis.phi}, {dtheta, dphi}, opt);
    if (res.value < best) {
        best = res.value;
        best_basis = MeasurementBasis::canonical(res.x[0], res.x[1]);
    }
    return {best, best_basis};
}

}  // namespace detail

/// J(rest|measured): the largest reduction of the unmeasured side's entropy
/// achievable by a projective measurement on qubit `measured`.
inline AccessibleInformation accessible_information(const DensityMatrix& rho, std::size_t measured,
                                                    const OptimizerConfig& cfg = {}) {
    const detail::MeasuredQubitBlocks blocks(rho, measured);
    const auto [cond, basis] = detail::minimize_conditional_entropy(blocks, cfg);
    return {blocks.rest_entropy() - cond, basis};
}

/// All pairwise scalars of a state split into (unmeasured side, measured qubit).
struct CorrelationReport {
    double s_a = 0.0;  // unmeasured side
    double s_b = 0.0;  // measured qubit
    double s_ab = 0.0;
    double mutual_info = 0.0;
    double accessible = 0.0;
    double discord = 0.0;
    double cond_entropy = 0.0;           // S(A|B)
    double cond_entropy_measured = 0.0;  // S_q(A|B), after the optimal measurement on B
    std::optional<double> eof;           // two-qubit states only
    MeasurementBasis basis_opt;
};

inline double concurrence(const DensityMatrix& rho);
inline double eof_two_qubit(const DensityMatrix& rho);

/// Computes discord with the measurement on `measured`. Discord values in
/// (-tol, 0) are reported as 0 (and the accessible information is pinned to the
/// mutual information so I = J + D still holds); values <= -tol throw.
inline CorrelationReport correlation_report(const DensityMatrix& rho, std::size_t measured,
                                            const OptimizerConfig& cfg = {}) {
    const detail::MeasuredQubitBlocks blocks(rho, measured);
    CorrelationReport r;
    r.s_a = blocks.rest_entropy();
    r.s_b = von_neumann_entropy(partial_trace(rho, {measured}));
    r.s_ab = von_neumann_entropy(rho);
    r.mutual_info = r.s_a + r.s_b - r.s_ab;
    r.cond_entropy = r.s_ab - r.s_b;

    const auto [cond, basis] = detail::minimize_conditional_entropy(blocks, cfg);
    r.basis_opt = basis;
    r.accessible = r.s_a - cond;
    r.discord = r.mutual_info - r.accessible;
    if (r.discord < 0.0) {
        if (r.discord <= -cfg.tol) {
            throw NumericalError("discord: value " + std::to_string(r.discord) + " below -tol");
        }
        r.discord = 0.0;
        r.accessible = r.mutual_info;
    }
    r.cond_entropy_measured = r.discord + r.cond_entropy;

    if (rho.dims() == Dims{2, 2}) r.eof = eof_two_qubit(rho);
    return r;
}

/// Discord with the measurement on qubit `measured`: I - J, clamped at zero
/// within the optimizer tolerance.
inline double discord(const DensityMatrix& rho, std::size_t measured, const OptimizerConfig& cfg = {}) {
    const detail::MeasuredQubitBlocks blocks(rho, measured);
    const double s_b = von_neumann_entropy(partial_trace(rho, {measured}));
    const double mi = blocks.rest_entropy() + s_b - von_neumann_entropy(rho);
    const double cond = detail::minimize_conditional_entropy(blocks, cfg).first;
    const double d = mi - (blocks.rest_entropy() - cond);
    if (d < 0.0) {
        if (d <= -cfg.tol) throw NumericalError("discord: value " + std::to_string(d) + " below -tol");
        return 0.0;
    }
    return d;
}

// --------------------------------------------------------------------------
// Two-qubit entanglement

namespace detail {
inline void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.dims() != Dims{2, 2}) throw std::invalid_argument(std::string(who) + ": state must be two qubits");
}
}  // namespace detail

/// Eigenvalues below this are dropped from the decomposition in concurrence().
inline constexpr double kConcurrenceRankCutoff = 1e-13;

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the
/// descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
///
/// The l_i are computed as the singular values of tau_ij = <v_i| sy x sy |v_j*>
/// with v_i = sqrt(p_i) e_i from the spectral decomposition of rho. This keeps
/// rank-deficient states exact: square roots of round-off eigenvalues of the
/// 4x4 product would otherwise leak ~1e-8 into the result.
inline double concurrence(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "concurrence");
    static const ComplexMatrix yy = kron(pauli::y(), pauli::y());
    const EigenSystem es = eig_hermitian(rho.matrix());

    std::vector<std::array<cplx, 4>> v;
    for (std::size_t k = 0; k < 4; ++k) {
        if (es.values[k] <= kConcurrenceRankCutoff) continue;
        const double w = std::sqrt(es.values[k]);
        std::array<cplx, 4> col;
        for (std::size_t i = 0; i < 4; ++i) col[i] = w * es.vectors(i, k);
        v.push_back(col);
    }
    const std::size_t r = v.size();
    ComplexMatrix tau(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            cplx acc = 0.0;
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b) acc += std::conj(v[i][a]) * yy(a, b) * std::conj(v[j][b]);
            tau(i, j) = acc;
        }

    std::vector<double> l;
    if (r == 1) {
        l = {std::abs(tau(0, 0))};
    } else if (r == 2) {
        // s1^2 + s2^2 = |tau|_F^2 and s1 s2 = |det tau|.
        const double f = std::norm(tau(0, 0)) + std::norm(tau(0, 1)) + std::norm(tau(1, 0)) + std::norm(tau(1, 1));
        const double det = std::abs(tau(0, 0) * tau(1, 1) - tau(0, 1) * tau(1, 0));
        const double s1 = std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0 * det * det))));
        l = {s1, s1 > 0.0 ? det / s1 : 0.0};
    } else if (r > 2) {
        ComplexMatrix g = tau * tau.adjoint();
        g = (g + g.adjoint()) * cplx(0.5);
        for (double e : eig_hermitian(g).values) l.push_back(std::sqrt(std::max(0.0, e)));
    }
    std::sort(l.begin(), l.end(), std::greater<>());
    double c = l.empty() ? 0.0 : l[0];
    for (std::size_t i = 1; i < l.size(); ++i) c -= l[i];
    return std::clamp(c, 0.0, 1.0);
}

/// h((1 + sqrt(1 - C^2)) / 2).
inline double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double eof_two_qubit(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

// --------------------------------------------------------------------------
// Koashi-Winter shortcuts for a qubit paired with a qudit, rank <= 2.
//
// For a pure state on (A, B, E) with A and B qubits, rho_AE has rank <= 2 and
//   E_AE = D(A|B) + S(A|B)      (discord measured on B, numeric)
//   D(A|E) = E_AB + S(A|B)      (discord measured on E, analytic)

namespace detail {

inline void check_kw_roles(const PureState& psi, std::size_t a, std::size_t e, std::size_t b, const char* who) {
    if (psi.parties() != 3) throw std::invalid_argument(std::string(who) + ": state must be tripartite");
    if (a > 2 || e > 2 || b > 2 || a == e || a == b || e == b) {
        throw std::invalid_argument(std::string(who) + ": roles must be distinct party indices");
    }
    if (psi.dims()[a] != 2 || psi.dims()[b] != 2) {
        throw std::invalid_argument(std::string(who) + ": target and bridge parties must be qubits");
    }
}

inline std::vector<std::size_t> sorted_pair(std::size_t x, std::size_t y) {
    return x < y ? std::vector<std::size_t>{x, y} : std::vector<std::size_t>{y, x};
}

// Position of party x within the sorted pair {x, y}.
inline std::size_t pos_in_pair(std::size_t x, std::size_t y) { return x < y ? 0 : 1; }

// rho_XY with X first, regardless of index order.
inline DensityMatrix ordered_pair_state(const PureState& psi, std::size_t x, std::size_t y) {
    DensityMatrix r = partial_trace(psi, sorted_pair(x, y));
    if (x > y) r = permute_subsystems(r, {1, 0});
    return r;
}

inline void check_rank2(const PureState& psi, std::size_t a, std::size_t e, const char* who) {
    const DensityMatrix rho_ae = partial_trace(psi, sorted_pair(a, e));
    if (rho_ae.numerical_rank(1e-8) > 2) {
        throw std::invalid_argument(std::string(who) + ": rank of the target pair exceeds 2");
    }
}

}  // namespace detail

/// E_AE through discord of the two-qubit bridge pair: D(A|B) + S(A|B).
inline double eof_qubit_qudit_rank2(const PureState& psi, std::size_t a, std::size_t e, std::size_t b,
                                    const OptimizerConfig& cfg = {}) {
    detail::check_kw_roles(psi, a, e, b, "eof_qubit_qudit_rank2");
    detail::check_rank2(psi, a, e, "eof_qubit_qudit_rank2");
    const DensityMatrix rho_ab = detail::ordered_pair_state(psi, a, b);
    return discord(rho_ab, 1, cfg) + conditional_entropy(rho_ab);
}

/// D(A|E), measured on E, from the bridge pair's EOF: E_AB + S(A|B).
inline double discord_qubit_qudit_rank2(const PureState& psi, std::size_t a, std::size_t e, std::size_t b) {
    detail::check_kw_roles(psi, a, e, b, "discord_qubit_qudit_rank2");
    detail::check_rank2(psi, a, e, "discord_qubit_qudit_rank2");
    const DensityMatrix rho_ab = detail::ordered_pair_state(psi, a, b);
    return std::max(0.0, eof_two_qubit(rho_ab) + conditional_entropy(rho_ab));
}

}  // namespace lii
