#include <cmath>

#include "gtest/gtest.h"
#include "lii/lii.hpp"
#include "test_support.hpp"

using namespace lii;
using namespace lii::testing;
using enum Party;

namespace {

constexpr double kTol = 2e-3;

// |Phi+>_AB x |0>_E.
PureState bell_ab_decoupled_e() {
    std::vector<cplx> a(8);
    a[0b000] = a[0b110] = kInvSqrt2;
    return PureState(a, {2, 2, 2});
}

}  // namespace

TEST(pairwise_discord, product_state_is_degenerate_zero) {
    const auto psi = zero_state({2, 2, 2});
    const TripartiteLabels labels;
    for (Party x : kParties)
        for (Party y : kParties) {
            if (x == y) continue;
            const auto v = pairwise_discord(psi, labels, x, y);
            EXPECT_EQ(v.bits, 0.0);
            EXPECT_EQ(v.route, Route::degenerate);
        }
}

TEST(pairwise_discord, ghz_pairs_are_classical) {
    // rho_AB of GHZ is (|00><00| + |11><11|) / 2: zero discord either way.
    const auto psi = ghz();
    for (Party x : kParties)
        for (Party y : kParties) {
            if (x == y) continue;
            EXPECT_NEAR(pairwise_discord(psi, {}, x, y).bits, 0.0, 1e-9);
            EXPECT_NEAR(pairwise_eof(psi, {}, x, y).bits, 0.0, 1e-9);
        }
}

TEST(pairwise_discord, routes_agree_on_w_state) {
    const auto psi = w_state();
    LiiOptions analytic;
    analytic.prefer_analytic = true;
    for (Party x : kParties)
        for (Party y : kParties) {
            if (x == y) continue;
            const auto d = pairwise_discord(psi, {}, x, y);
            const auto k = pairwise_discord(psi, {}, x, y, analytic);
            EXPECT_EQ(d.route, Route::direct);
            EXPECT_EQ(k.route, Route::koashi_winter);
            EXPECT_NEAR(d.bits, k.bits, kTol);
        }
}

TEST(pairwise_discord, routes_agree_on_random_states) {
    LiiOptions analytic;
    analytic.prefer_analytic = true;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto psi = haar_random_pure({2, 2, 2}, 2000 + seed);
        for (Party x : kParties)
            for (Party y : kParties) {
                if (x == y) continue;
                EXPECT_NEAR(pairwise_discord(psi, {}, x, y).bits, pairwise_discord(psi, {}, x, y, analytic).bits,
                            kTol);
            }
    }
}

TEST(pairwise_discord, qudit_measured_party_uses_analytic_route) {
    const auto psi = haar_random_pure({2, 2, 4}, 3);
    EXPECT_EQ(pairwise_discord(psi, {}, A, E).route, Route::koashi_winter);
    EXPECT_EQ(pairwise_discord(psi, {}, E, A).route, Route::direct);
    EXPECT_EQ(pairwise_eof(psi, {}, A, E).route, Route::koashi_winter);
    EXPECT_EQ(pairwise_eof(psi, {}, A, B).route, Route::wootters);
}

TEST(pairwise_discord, uncomputable_pairs_are_rejected) {
    // Measuring a qutrit with a qutrit bridge has no route.
    const auto psi = haar_random_pure({2, 3, 3}, 4);
    EXPECT_THROW(pairwise_discord(psi, {}, A, B), std::invalid_argument);
    EXPECT_THROW(pairwise_eof(psi, {}, B, E), std::invalid_argument);
    EXPECT_THROW(pairwise_discord(psi, {}, A, A), std::invalid_argument);
}

TEST(TripartiteLabels, validation) {
    const auto psi = ghz();
    TripartiteLabels dup_index{{"A", "B", "E"}, {0, 0, 2}};
    EXPECT_THROW(dup_index.validate(psi), std::invalid_argument);
    TripartiteLabels dup_name{{"A", "A", "E"}, {0, 1, 2}};
    EXPECT_THROW(dup_name.validate(psi), std::invalid_argument);
    TripartiteLabels range{{"A", "B", "E"}, {0, 1, 3}};
    EXPECT_THROW(range.validate(psi), std::out_of_range);
    EXPECT_THROW(TripartiteLabels{}.validate(bell_pure()), std::invalid_argument);
}

TEST(lii_pair, bell_pair_with_decoupled_environment) {
    const auto psi = bell_ab_decoupled_e();
    const auto ab = lii_pair(psi, {}, A, B);
    EXPECT_NEAR(ab.avg, 1.0, 1e-9);
    EXPECT_NEAR(ab.balance, 0.0, 1e-9);
    const auto ae = lii_pair(psi, {}, A, E);
    EXPECT_EQ(ae.avg, 0.0);
    EXPECT_EQ(ae.route_xy, Route::degenerate);
}

TEST(lii_pair, balance_is_antisymmetric) {
    const auto psi = haar_random_pure({2, 2, 2}, 12);
    const auto xy = lii_pair(psi, {}, A, E);
    const auto yx = lii_pair(psi, {}, E, A);
    EXPECT_NEAR(xy.avg, yx.avg, 1e-12);
    EXPECT_NEAR(xy.balance, -yx.balance, 1e-12);
    EXPECT_NEAR(xy.delta_xy, yx.delta_yx, 1e-12);
}

TEST(identity_residuals, product_state_all_zero) {
    const auto res = identity_residuals(zero_state({2, 2, 2}));
    for (const auto& c : res.checks) {
        EXPECT_NEAR(c.lhs, 0.0, 1e-12) << c.name;
        EXPECT_NEAR(c.rhs, 0.0, 1e-12) << c.name;
    }
    EXPECT_NE(res.find("pure_cond"), nullptr);
}

TEST(identity_residuals, ghz_and_w_within_tolerance) {
    for (const auto& psi : {ghz(), w_state(), bell_ab_decoupled_e()}) {
        const auto res = identity_residuals(psi);
        EXPECT_LE(res.max_residual(), kTol) << res.worst().name;
    }
}

TEST(identity_residuals, named_lookup) {
    const auto res = identity_residuals(ghz());
    for (const char* name : {"law1", "law2", "law3", "eab2", "sum_avg", "sum_flows", "sum_cycle", "flow_equality",
                             "cyclic_balance", "dif", "dif3", "dif3_swapped", "eab3", "minimal", "minimal2", "monog",
                             "monog2", "entropia"}) {
        EXPECT_NE(res.find(name), nullptr) << name;
    }
    EXPECT_EQ(res.find("pure_cond"), nullptr);  // rho_AB of GHZ is mixed
    EXPECT_THROW(res.at("nope"), std::out_of_range);
    EXPECT_THROW(IdentityResiduals{}.worst(), std::logic_error);
}

TEST(identity_residuals, random_three_qubit_states) {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto res = identity_residuals(haar_random_pure({2, 2, 2}, 3000 + seed));
        worst = std::max(worst, res.max_residual());
        for (const auto& c : res.checks) EXPECT_NEAR(c.residual, std::abs(c.lhs - c.rhs), 1e-15);
    }
    EXPECT_LE(worst, kTol);
}

TEST(identity_residuals, qubit_qubit_qudit_states) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto res = identity_residuals(haar_random_pure({2, 2, 4}, 3100 + seed));
        EXPECT_LE(res.max_residual(), kTol) << res.worst().name;
    }
}

TEST(identity_residuals, pure_pair_condition) {
    // rho_AB pure: -S(A|B) = D(B|A) = S_A.
    const auto res = identity_residuals(bell_ab_decoupled_e());
    const auto& c = res.at("pure_cond");
    EXPECT_NEAR(c.lhs, 1.0, 1e-9);
    EXPECT_NEAR(c.rhs, 1.0, 1e-9);
}

TEST(flows, clockwise_equals_counterclockwise_equals_eof_sum) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto psi = haar_random_pure({2, 2, 2}, 4000 + seed);
        const auto t = analyze(psi, {});
        const auto f = flows_from(t);
        EXPECT_NEAR(f.cw, f.ccw, kTol);
        EXPECT_NEAR(f.cw, t.e(A, B) + t.e(A, E) + t.e(B, E), kTol);
    }
}

TEST(flows, directed_keys_use_labels) {
    const TripartiteLabels labels{{"Alice", "Bob", "Eve"}, {0, 1, 2}};
    const auto f = flows(ghz(), labels);
    const auto m = f.directed(labels);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_TRUE(m.count("Eve->Alice->Bob"));
    EXPECT_TRUE(m.count("(Alice,Bob)->Eve"));
}

TEST(analysis, eab2_balance_form) {
    // E_AB = avg(A|B) - balance(E|A) - balance(E|B), checked directly on the analysis.
    const auto t = analyze(haar_random_pure({2, 2, 2}, 77), {});
    EXPECT_NEAR(t.e(A, B), t.avg(A, B) - t.balance(E, A) - t.balance(E, B), kTol);
}

TEST(analysis, symmetric_under_b_e_exchange) {
    // A state invariant under swapping B and E: D(A|B) = D(A|E), E_AB = E_AE,
    // so the first conservation law forces E_AB = D(A|B).
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto raw = haar_random_pure({2, 2, 2}, 5000 + seed);
        const auto swapped = permute_subsystems(raw, {0, 2, 1});
        std::vector<cplx> sym(8);
        for (std::size_t i = 0; i < 8; ++i) sym[i] = raw[i] + swapped[i];
        const auto psi = PureState::normalized(sym, {2, 2, 2});
        const auto t = analyze(psi, {});
        EXPECT_NEAR(t.d(A, B), t.d(A, E), kTol);
        EXPECT_NEAR(t.e(A, B), t.e(A, E), 1e-9);
        EXPECT_NEAR(t.e(A, B), t.d(A, B), kTol);
    }
}

TEST(analysis, relabeling_invariance) {
    // Moving the subsystems and the labels together leaves every quantity unchanged.
    const auto psi = haar_random_pure({2, 2, 2}, 91);
    const auto moved = permute_subsystems(psi, {2, 0, 1});  // new order: E, A, B
    const TripartiteLabels labels{{"A", "B", "E"}, {1, 2, 0}};
    const auto t0 = analyze(psi, {});
    const auto t1 = analyze(moved, labels);
    for (Party x : kParties) {
        EXPECT_NEAR(t0.s_single[role(x)], t1.s_single[role(x)], 1e-10);
        for (Party y : kParties) {
            if (x == y) continue;
            EXPECT_NEAR(t0.d(x, y), t1.d(x, y), 1e-6);
            EXPECT_NEAR(t0.e(x, y), t1.e(x, y), 1e-9);
        }
    }
}

TEST(analysis, dif_sign_tracks_flow_difference) {
    // E_AB - D(A|B) is positive exactly when E->A->B carries more than B->A->E.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto t = analyze(haar_random_pure({2, 2, 2}, 6000 + seed), {});
        const auto f = flows_from(t);
        const double lhs = t.e(A, B) - t.d(A, B);
        const double rhs = 0.5 * (f.e_a_b - f.b_a_e);
        if (std::abs(lhs) > 10 * kTol) {
            EXPECT_EQ(classify(lhs), classify(rhs));
        }
    }
}

TEST(conditional_entropy_sign, reference_states) {
    // Bell pair with decoupled E: S(A|B) = -1.
    const auto bell_e = conditional_entropy_sign(bell_ab_decoupled_e(), {}, A, B);
    EXPECT_NEAR(bell_e.direct, -1.0, 1e-9);
    EXPECT_NEAR(bell_e.from_lii, -1.0, 1e-9);
    EXPECT_EQ(bell_e.sign_direct, Sign::negative);
    EXPECT_EQ(bell_e.sign_lii, Sign::negative);

    const auto g = conditional_entropy_sign(ghz(), {}, A, B);
    EXPECT_NEAR(g.direct, 0.0, 1e-9);
    EXPECT_EQ(g.sign_direct, Sign::zero);
    EXPECT_EQ(g.sign_lii, Sign::zero);

    // |0>_A x |Phi+>_BE: S(A|B) = S_E - S_B = 0 with pure A.
    std::vector<cplx> a(8);
    a[0b000] = a[0b011] = kInvSqrt2;
    const auto p = conditional_entropy_sign(PureState(a, {2, 2, 2}), {}, B, A);
    EXPECT_NEAR(p.direct, 1.0, 1e-9);  // S(B|A) = S_BA - S_A = 1
    EXPECT_NEAR(p.from_lii, 1.0, 1e-9);
}

TEST(conditional_entropy_sign, random_states_agree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = conditional_entropy_sign(haar_random_pure({2, 2, 2}, 7000 + seed), {}, A, B);
        EXPECT_NEAR(c.direct, c.from_lii, kTol);
        if (std::abs(c.direct) > kTol) {
            EXPECT_EQ(c.sign_direct, c.sign_lii);
        }
    }
}

TEST(classify, thresholds) {
    EXPECT_EQ(classify(-1e-3), Sign::negative);
    EXPECT_EQ(classify(5e-7), Sign::zero);
    EXPECT_EQ(classify(2e-6), Sign::positive);
    EXPECT_STREQ(to_string(Sign::zero), "zero");
    EXPECT_STREQ(to_string(Route::koashi_winter), "koashi-winter");
}
