#include <cmath>

#include "gtest/gtest.h"
#include "lii/measures.hpp"
#include "lii/state.hpp"

using namespace lii;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState bell() { return PureState({kInvSqrt2, 0, 0, kInvSqrt2}, {2, 2}); }

DensityMatrix qubit_state(double x, double y, double z) {
    return DensityMatrix(
        (ComplexMatrix::identity(2) + pauli::x() * cplx(x) + pauli::y() * cplx(y) + pauli::z() * cplx(z)) *
        cplx(0.5));
}

}  // namespace

TEST(DensityMatrix, validates_invariants) {
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.5})));
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.6})), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({1.2, -0.2})), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4) * cplx(0.25), {2, 3}), std::invalid_argument);
    try {
        DensityMatrix(ComplexMatrix::diagonal({1.2, -0.2}));
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
    }
}

TEST(PureState, validates_norm_and_size) {
    EXPECT_THROW(PureState({1.0, 1.0}, {2}), std::invalid_argument);
    EXPECT_THROW(PureState({1.0, 0.0, 0.0}, {2}), std::invalid_argument);
    EXPECT_NO_THROW(PureState::normalized({1.0, 1.0}, {2}));
}

TEST(partial_trace, bell_reduction_is_maximally_mixed) {
    const auto rho = bell().density();
    const auto a = partial_trace(rho, {0});
    EXPECT_LE(max_abs_diff(a.matrix(), ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
    const auto from_pure = partial_trace(bell(), {1});
    EXPECT_LE(max_abs_diff(from_pure.matrix(), ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
}

TEST(partial_trace, product_state_factorizes) {
    const auto ra = qubit_state(0.3, -0.1, 0.5);
    const auto rb = qubit_state(-0.2, 0.4, 0.1);
    const auto ab = tensor(ra, rb);
    EXPECT_LE(max_abs_diff(partial_trace(ab, {1}).matrix(), rb.matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(ab, {0}).matrix(), ra.matrix()), 1e-15);
}

TEST(partial_trace, nested_reductions_agree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto psi = haar_random_pure({2, 2, 2}, seed);
        const auto rho = psi.density();
        const auto nested = partial_trace(partial_trace(rho, {0, 2}), {0});
        const auto direct = partial_trace(rho, {0});
        EXPECT_LE(max_abs_diff(nested.matrix(), direct.matrix()), 1e-12);
        EXPECT_LE(max_abs_diff(partial_trace(psi, {0, 2}).matrix(), partial_trace(rho, {0, 2}).matrix()), 1e-12);
    }
}

TEST(partial_trace, every_single_party_reduction_has_unit_trace) {
    const auto psi = haar_random_pure({2, 3, 2}, 5);
    const auto rho = psi.density();
    for (std::size_t k = 0; k < 3; ++k) {
        const std::vector<std::size_t> keep{k};
        EXPECT_NEAR(partial_trace(rho, keep).matrix().trace().real(), 1.0, 1e-10);
    }
}

TEST(partial_trace, errors) {
    const auto rho = bell().density();
    EXPECT_THROW(partial_trace(rho, {2}), std::out_of_range);
    EXPECT_THROW(partial_trace(rho, std::vector<std::size_t>{}), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {1, 0}), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST(permute_subsystems, identity_swap_and_involution) {
    const auto ra = qubit_state(0.3, -0.1, 0.5);
    const auto rb = DensityMatrix::maximally_mixed({3});
    const auto ab = tensor(ra, rb);
    EXPECT_LE(max_abs_diff(permute_subsystems(ab, {0, 1}).matrix(), ab.matrix()), 0.0);
    const auto ba = permute_subsystems(ab, {1, 0});
    EXPECT_EQ(ba.dims(), (Dims{3, 2}));
    EXPECT_LE(max_abs_diff(ba.matrix(), tensor(rb, ra).matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(permute_subsystems(ba, {1, 0}).matrix(), ab.matrix()), 0.0);
}

TEST(permute_subsystems, preserves_spectrum) {
    const auto rho = partial_trace(haar_random_pure({2, 2, 2, 2}, 11), {0, 1, 2});
    const auto moved = permute_subsystems(rho, {2, 0, 1});
    for (std::size_t i = 0; i < rho.spectrum().size(); ++i) {
        EXPECT_NEAR(rho.spectrum()[i], moved.spectrum()[i], 1e-10);
    }
    EXPECT_NEAR(von_neumann_entropy(rho), von_neumann_entropy(moved), 1e-10);
}

TEST(permute_subsystems, malformed_permutations) {
    const auto rho = bell().density();
    EXPECT_THROW(permute_subsystems(rho, {0}), std::invalid_argument);
    EXPECT_THROW(permute_subsystems(rho, {0, 0}), std::invalid_argument);
    EXPECT_THROW(permute_subsystems(rho, {0, 2}), std::invalid_argument);
}

TEST(purify, pure_input_gets_one_dimensional_ancilla) {
    const auto rho = DensityMatrix(ComplexMatrix::diagonal({1.0, 0.0}));
    const auto psi = purify(rho);
    EXPECT_EQ(psi.dims(), (Dims{2, 1}));
    EXPECT_NEAR(std::abs(psi[0]), 1.0, 1e-12);
}

TEST(purify, maximally_mixed_qubit_gives_maximally_entangled_pair) {
    const auto psi = purify(DensityMatrix::maximally_mixed({2}));
    EXPECT_EQ(psi.dims(), (Dims{2, 2}));
    // Schmidt coefficients 1/sqrt(2): the ancilla is maximally mixed as well.
    const auto anc = partial_trace(psi, {1});
    EXPECT_NEAR(anc.spectrum()[0], 0.5, 1e-12);
    EXPECT_NEAR(anc.spectrum()[1], 0.5, 1e-12);
}

TEST(purify, rank_two_round_trip) {
    // Mix of two orthogonal two-qubit pure states -> rank 2.
    const auto a = haar_random_pure({2, 2, 2}, 3);
    const auto rho = partial_trace(a, {0, 1});
    ASSERT_EQ(rho.numerical_rank(), 2u);
    const auto psi = purify(rho);
    EXPECT_EQ(psi.dims(), (Dims{2, 2, 2}));
    EXPECT_LE(max_abs_diff(partial_trace(psi, {0, 1}).matrix(), rho.matrix()), 1e-9);
}

TEST(purify, generic_round_trip_property) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rho = partial_trace(haar_random_pure({2, 3, 4}, 50 + seed), {0, 1});
        const auto psi = purify(rho);
        EXPECT_EQ(psi.dims().back(), rho.numerical_rank());
        EXPECT_LE(max_abs_diff(partial_trace(psi, {0, 1}).matrix(), rho.matrix()), 1e-9);
    }
}

TEST(haar_random_pure, normalized_and_deterministic) {
    const auto a = haar_random_pure({2}, 17);
    double n2 = 0;
    for (const auto& z : a.amplitudes()) n2 += std::norm(z);
    EXPECT_NEAR(n2, 1.0, 1e-12);
    EXPECT_EQ(a.amplitudes(), haar_random_pure({2}, 17).amplitudes());
    EXPECT_NE(a.amplitudes(), haar_random_pure({2}, 18).amplitudes());
    EXPECT_THROW(haar_random_pure({1, 2}, 0), std::invalid_argument);
}

TEST(haar_random_pure, first_moment_monte_carlo) {
    // E|<0|psi>|^2 = 1/d for Haar states.
    double sum = 0;
    const int n = 10000;
    for (int s = 0; s < n; ++s) sum += std::norm(haar_random_pure({2}, static_cast<std::uint64_t>(s))[0]);
    EXPECT_NEAR(sum / n, 0.5, 0.02);
}

TEST(PureState, regrouping_merges_adjacent_factors) {
    const auto psi = haar_random_pure({2, 2, 2, 2}, 4);
    const auto merged = psi.regrouped({2, 2, 4});
    EXPECT_LE(max_abs_diff(partial_trace(merged, {0, 1}).matrix(), partial_trace(psi, {0, 1}).matrix()), 1e-14);
    EXPECT_THROW(psi.regrouped({2, 2, 2}), std::invalid_argument);
}
