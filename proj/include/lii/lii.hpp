// Locally inaccessible information on tripartite pure states.
//
// Notation: D(X|Y) is the discord of the pair XY with the measurement on Y.
// For a pair (X, Y) the average and balance are
//   avg(X|Y)     = (D(X|Y) + D(Y|X)) / 2
//   balance(X|Y) = (D(X|Y) - D(Y|X)) / 2
// and a flow is a sum of pairwise discords along a sequence of measured parties.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lii/measures.hpp"
#include "lii/state.hpp"

namespace lii {

enum class Party : std::size_t { A = 0, B = 1, E = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::E};

inline std::size_t role(Party p) { return static_cast<std::size_t>(p); }

/// The third party of a pair.
inline Party other(Party x, Party y) {
    for (Party p : kParties) {
        if (p != x && p != y) return p;
    }
    throw std::invalid_argument("other: parties must be distinct");
}

/// Maps the roles A, B, E onto subsystem positions of a tripartite PureState.
struct TripartiteLabels {
    std::array<std::string, 3> names{"A", "B", "E"};
    std::array<std::size_t, 3> index{0, 1, 2};

    std::size_t of(Party p) const { return index[role(p)]; }
    const std::string& name(Party p) const { return names[role(p)]; }

    void validate(const PureState& psi) const {
        if (psi.parties() != 3) throw std::invalid_argument("TripartiteLabels: state must have three subsystems");
        for (std::size_t i = 0; i < 3; ++i) {
            if (index[i] > 2) throw std::out_of_range("TripartiteLabels: subsystem index out of range");
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (index[i] == index[j]) throw std::invalid_argument("TripartiteLabels: indices must be distinct");
                if (names[i] == names[j]) throw std::invalid_argument("TripartiteLabels: labels must be distinct");
            }
        }
    }
};

enum class Route { direct, koashi_winter, degenerate, wootters };

inline const char* to_string(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::koashi_winter: return "koashi-winter";
        case Route::degenerate: return "degenerate";
        case Route::wootters: return "wootters";
    }
    return "?";
}

struct LiiOptions {
    OptimizerConfig optimizer;
    /// Use D(X|Y) = E_XZ + S(X|Z) whenever X and the bridge Z are qubits, even
    /// if Y is a qubit that could be optimized directly.
    bool prefer_analytic = false;
    /// Budget for identity residuals.
    double tolerance = 2e-3;
};

struct RoutedValue {
    double bits = 0.0;
    Route route = Route::direct;
};

/// Entropy below which a party counts as pure (and decoupled from the rest).
inline constexpr double kPureEntropyTol = 1e-10;

namespace detail {

inline DensityMatrix pair_state(const PureState& psi, const TripartiteLabels& labels, Party x, Party y) {
    return ordered_pair_state(psi, labels.of(x), labels.of(y));
}

inline double party_entropy(const PureState& psi, const TripartiteLabels& labels, Party x) {
    return von_neumann_entropy(partial_trace(psi, {labels.of(x)}));
}

}  // namespace detail

/// D(X|Y) on rho_XY = Tr_Z |psi><psi|, measured on Y.
///
/// Direct optimization needs Y to be a qubit. The Koashi-Winter route
/// D(X|Y) = E_XZ + S(X|Z) needs X and Z to be qubits (then rho_XY has rank <= 2).
/// A pure party makes both discords of its pairs vanish.
inline RoutedValue pairwise_discord(const PureState& psi, const TripartiteLabels& labels, Party x, Party y,
                                    const LiiOptions& opts = {}) {
    labels.validate(psi);
    if (x == y) throw std::invalid_argument("pairwise_discord: parties must differ");
    const Party z = other(x, y);
    if (detail::party_entropy(psi, labels, x) < kPureEntropyTol ||
        detail::party_entropy(psi, labels, y) < kPureEntropyTol) {
        return {0.0, Route::degenerate};
    }
    const auto& dims = psi.dims();
    const bool direct_ok = dims[labels.of(y)] == 2;
    const bool analytic_ok = dims[labels.of(x)] == 2 && dims[labels.of(z)] == 2;
    if (analytic_ok && (opts.prefer_analytic || !direct_ok)) {
        return {discord_qubit_qudit_rank2(psi, labels.of(x), labels.of(y), labels.of(z)), Route::koashi_winter};
    }
    if (direct_ok) {
        return {discord(detail::pair_state(psi, labels, x, y), 1, opts.optimizer), Route::direct};
    }
    throw std::invalid_argument("pairwise_discord: measured party is not a qubit and no qubit bridge exists");
}

/// E_XY: Wootters for two qubits, otherwise Koashi-Winter through the third
/// party when it is a qubit: E_XY = D(X|Z) + S(X|Z) with X a qubit.
inline RoutedValue pairwise_eof(const PureState& psi, const TripartiteLabels& labels, Party x, Party y,
                                const LiiOptions& opts = {}) {
    labels.validate(psi);
    if (x == y) throw std::invalid_argument("pairwise_eof: parties must differ");
    const Party z = other(x, y);
    const auto& dims = psi.dims();
    const bool xq = dims[labels.of(x)] == 2;
    const bool yq = dims[labels.of(y)] == 2;
    const bool zq = dims[labels.of(z)] == 2;
    if (xq && yq) return {eof_two_qubit(detail::pair_state(psi, labels, x, y)), Route::wootters};
    if (zq && (xq || yq)) {
        const Party qubit = xq ? x : y;
        const Party qudit = xq ? y : x;
        return {eof_qubit_qudit_rank2(psi, labels.of(qubit), labels.of(qudit), labels.of(z), opts.optimizer),
                Route::koashi_winter};
    }
    throw std::invalid_argument("pairwise_eof: entanglement of formation is not computable for this pair");
}

struct LiiReport {
    double avg = 0.0;
    double balance = 0.0;
    double delta_xy = 0.0;
    double delta_yx = 0.0;
    Route route_xy = Route::direct;
    Route route_yx = Route::direct;
};

inline LiiReport make_lii_report(RoutedValue xy, RoutedValue yx) {
    return {0.5 * (xy.bits + yx.bits), 0.5 * (xy.bits - yx.bits), xy.bits, yx.bits, xy.route, yx.route};
}

/// Both directional discords of (X, Y) and their average and balance.
inline LiiReport lii_pair(const PureState& psi, const TripartiteLabels& labels, Party x, Party y,
                          const LiiOptions& opts = {}) {
    return make_lii_report(pairwise_discord(psi, labels, x, y, opts), pairwise_discord(psi, labels, y, x, opts));
}

/// Every discord, EOF and entropy of a tripartite pure state, computed once.
struct TripartiteAnalysis {
    std::array<std::array<RoutedValue, 3>, 3> delta{};  // delta[x][y] = D(X|Y)
    std::array<std::array<RoutedValue, 3>, 3> eof{};    // symmetric
    std::array<double, 3> s_single{};                   // S_X
    double s_ab = 0.0;                                  // S_AB directly from rho_AB
    bool ab_pure = false;

    double d(Party x, Party y) const { return delta[role(x)][role(y)].bits; }
    double e(Party x, Party y) const { return eof[role(x)][role(y)].bits; }
    double avg(Party x, Party y) const { return 0.5 * (d(x, y) + d(y, x)); }
    double balance(Party x, Party y) const { return 0.5 * (d(x, y) - d(y, x)); }
    /// S(X|Y) = S_XY - S_Y; for a pure tripartite state S_XY = S_Z.
    double cond(Party x, Party y) const { return s_single[role(other(x, y))] - s_single[role(y)]; }
};

inline TripartiteAnalysis analyze(const PureState& psi, const TripartiteLabels& labels, const LiiOptions& opts = {}) {
    labels.validate(psi);
    TripartiteAnalysis t;
    for (Party x : kParties) t.s_single[role(x)] = detail::party_entropy(psi, labels, x);
    for (Party x : kParties)
        for (Party y : kParties) {
            if (x == y) continue;
            t.delta[role(x)][role(y)] = pairwise_discord(psi, labels, x, y, opts);
            if (role(x) < role(y)) {
                t.eof[role(x)][role(y)] = pairwise_eof(psi, labels, x, y, opts);
                t.eof[role(y)][role(x)] = t.eof[role(x)][role(y)];
            }
        }
    const DensityMatrix rho_ab = detail::pair_state(psi, labels, Party::A, Party::B);
    t.s_ab = von_neumann_entropy(rho_ab);
    t.ab_pure = rho_ab.numerical_rank() == 1;
    return t;
}

struct FlowReport {
    double cw = 0.0;       // D(B|E) + D(A|B) + D(E|A)
    double ccw = 0.0;      // D(B|A) + D(E|B) + D(A|E)
    double e_a_b = 0.0;    // E->A->B: D(B|E) + D(A|E) + D(B|A)
    double b_a_e = 0.0;    // B->A->E: D(E|B) + D(A|B) + D(E|A)
    double e_b_a = 0.0;    // E->B->A: D(A|E) + D(B|E) + D(A|B)
    double a_b_e = 0.0;    // A->B->E: D(E|A) + D(B|A) + D(E|B)
    double e_to_ab = 0.0;  // E->(A,B): D(A|E) + D(B|E)
    double ab_to_e = 0.0;  // (A,B)->E: D(E|A) + D(E|B)

    /// Directed flows keyed by path, spelled with the given party names.
    std::map<std::string, double> directed(const TripartiteLabels& labels = {}) const {
        const auto& a = labels.name(Party::A);
        const auto& b = labels.name(Party::B);
        const auto& e = labels.name(Party::E);
        return {
            {e + "->" + a + "->" + b, e_a_b},
            {b + "->" + a + "->" + e, b_a_e},
            {e + "->" + b + "->" + a, e_b_a},
            {a + "->" + b + "->" + e, a_b_e},
            {e + "->(" + a + "," + b + ")", e_to_ab},
            {"(" + a + "," + b + ")->" + e, ab_to_e},
        };
    }
};

inline FlowReport flows_from(const TripartiteAnalysis& t) {
    using enum Party;
    FlowReport f;
    f.cw = t.d(B, E) + t.d(A, B) + t.d(E, A);
    f.ccw = t.d(B, A) + t.d(E, B) + t.d(A, E);
    f.e_a_b = t.d(B, E) + t.d(A, E) + t.d(B, A);
    f.b_a_e = t.d(E, B) + t.d(A, B) + t.d(E, A);
    f.e_b_a = t.d(A, E) + t.d(B, E) + t.d(A, B);
    f.a_b_e = t.d(E, A) + t.d(B, A) + t.d(E, B);
    f.e_to_ab = t.d(A, E) + t.d(B, E);
    f.ab_to_e = t.d(E, A) + t.d(E, B);
    return f;
}

inline FlowReport flows(const PureState& psi, const TripartiteLabels& labels = {}, const LiiOptions& opts = {}) {
    return flows_from(analyze(psi, labels, opts));
}

/// One identity evaluated on a state: both sides and |lhs - rhs|.
struct IdentityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    std::string route;  // routes of the discord / EOF terms involved, '+'-joined
};

struct IdentityResiduals {
    std::vector<IdentityCheck> checks;

    const IdentityCheck& worst() const {
        if (checks.empty()) throw std::logic_error("IdentityResiduals: no checks");
        return *std::max_element(checks.begin(), checks.end(),
                                 [](const auto& a, const auto& b) { return a.residual < b.residual; });
    }
    double max_residual() const { return worst().residual; }

    const IdentityCheck* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
    const IdentityCheck& at(const std::string& name) const {
        if (const auto* c = find(name)) return *c;
        throw std::out_of_range("IdentityResiduals: no identity named " + name);
    }
};

namespace detail {

struct Term {
    Party x, y;
    bool is_eof;
};

inline std::string routes_of(const TripartiteAnalysis& t, std::initializer_list<Term> terms) {
    std::vector<std::string> seen;
    for (const auto& term : terms) {
        const Route r = term.is_eof ? t.eof[role(term.x)][role(term.y)].route : t.delta[role(term.x)][role(term.y)].route;
        const std::string s = to_string(r);
        if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
    }
    std::string out;
    for (const auto& s : seen) out += (out.empty() ? "" : "+") + s;
    return out.empty() ? "entropy" : out;
}

}  // namespace detail

/// Evaluates every conservation identity from an analysis.
inline IdentityResiduals residuals_from(const TripartiteAnalysis& t) {
    using enum Party;
    const FlowReport f = flows_from(t);
    IdentityResiduals out;
    auto add = [&](std::string name, double lhs, double rhs, std::initializer_list<detail::Term> terms) {
        out.checks.push_back({std::move(name), lhs, rhs, std::abs(lhs - rhs), detail::routes_of(t, terms)});
    };
    const detail::Term dAB{A, B, false}, dBA{B, A, false}, dAE{A, E, false}, dEA{E, A, false}, dBE{B, E, false},
        dEB{E, B, false};
    const detail::Term eAB{A, B, true}, eAE{A, E, true}, eBE{B, E, true};
    const double e_sum = t.e(A, B) + t.e(A, E) + t.e(B, E);

    add("law1", t.e(A, B) + t.e(A, E), t.d(A, B) + t.d(A, E), {eAB, eAE, dAB, dAE});
    add("law2", t.e(A, B) + t.e(B, E), t.d(B, A) + t.d(B, E), {eAB, eBE, dBA, dBE});
    add("law3", t.e(A, E) + t.e(B, E), t.d(E, A) + t.d(E, B), {eAE, eBE, dEA, dEB});
    add("eab2", t.e(A, B), t.avg(A, B) - t.balance(E, A) - t.balance(E, B), {eAB, dAB, dBA, dEA, dAE, dEB, dBE});
    add("sum_avg", e_sum, t.avg(A, B) + t.avg(A, E) + t.avg(B, E), {eAB, eAE, eBE, dAB, dBA, dAE, dEA, dBE, dEB});
    add("sum_flows", e_sum, 0.5 * (f.cw + f.ccw), {eAB, eAE, eBE, dAB, dBA, dAE, dEA, dBE, dEB});
    add("sum_cycle", e_sum, f.cw, {eAB, eAE, eBE, dBE, dAB, dEA});
    add("flow_equality", f.cw, f.ccw, {dBE, dAB, dEA, dBA, dEB, dAE});
    add("cyclic_balance", t.balance(A, B) + t.balance(B, E) + t.balance(E, A), 0.0, {dAB, dBA, dBE, dEB, dEA, dAE});
    add("dif", t.e(A, B) - t.d(A, B), t.balance(B, A) + t.balance(A, E) + t.balance(B, E),
        {eAB, dAB, dBA, dAE, dEA, dBE, dEB});
    add("dif3", t.e(A, B) - t.d(A, B), 0.5 * (f.e_a_b - f.b_a_e), {eAB, dAB, dBE, dAE, dBA, dEB, dEA});
    add("dif3_swapped", t.e(A, B) - t.d(B, A), 0.5 * (f.e_b_a - f.a_b_e), {eAB, dBA, dAE, dBE, dAB, dEA, dEB});
    add("eab3", t.e(A, B) - t.avg(A, B), 0.5 * (f.e_to_ab - f.ab_to_e), {eAB, dAB, dBA, dAE, dBE, dEA, dEB});
    add("minimal", t.e(A, B), t.d(A, B) + t.d(B, E) - t.d(E, B), {eAB, dAB, dBE, dEB});
    add("minimal2", t.e(A, B), t.d(B, A) + t.d(A, E) - t.d(E, A), {eAB, dBA, dAE, dEA});
    add("monog", t.e(A, E), t.d(A, B) + t.cond(A, B), {eAE, dAB});
    add("monog2", t.d(A, E), t.e(A, B) + t.cond(A, B), {dAE, eAB});
    add("entropia", -t.cond(A, B), t.d(B, A) - t.d(E, A), {dBA, dEA});
    if (t.ab_pure) add("pure_cond", -t.cond(A, B), t.d(B, A), {dBA});
    return out;
}

/// Every identity residual of a tripartite pure state.
inline IdentityResiduals identity_residuals(const PureState& psi, const TripartiteLabels& labels = {},
                                            const LiiOptions& opts = {}) {
    return residuals_from(analyze(psi, labels, opts));
}

enum class Sign { negative, zero, positive };

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::negative: return "negative";
        case Sign::zero: return "zero";
        case Sign::positive: return "positive";
    }
    return "?";
}

inline constexpr double kSignThreshold = 1e-6;

inline Sign classify(double v, double threshold = kSignThreshold) {
    if (v < -threshold) return Sign::negative;
    if (v > threshold) return Sign::positive;
    return Sign::zero;
}

struct ConditionalEntropySign {
    double direct = 0.0;    // S(X|Y) = S_XY - S_Y
    double from_lii = 0.0;  // D(Z|X) - D(Y|X)
    Sign sign_direct = Sign::zero;
    Sign sign_lii = Sign::zero;
};

/// S(X|Y) computed directly and as D(Z|X) - D(Y|X), with Z the purifying third party.
inline ConditionalEntropySign conditional_entropy_sign(const PureState& psi, const TripartiteLabels& labels, Party x,
                                                       Party y, const LiiOptions& opts = {}) {
    labels.validate(psi);
    const Party z = other(x, y);
    ConditionalEntropySign out;
    out.direct = conditional_entropy(detail::pair_state(psi, labels, x, y));
    out.from_lii = pairwise_discord(psi, labels, z, x, opts).bits - pairwise_discord(psi, labels, y, x, opts).bits;
    out.sign_direct = classify(out.direct);
    out.sign_lii = classify(out.from_lii);
    return out;
}

}  // namespace lii
