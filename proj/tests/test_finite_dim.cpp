#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eur/finite_dim.hpp"
#include "eur/random_states.hpp"

using namespace eur;

namespace {

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

}  // namespace

TEST_CASE("an observable is its own best estimate") {
    Rng rng(4);
    const FiniteObservable a(random_hermitian(rng, 4));
    const FiniteState rho(random_density_matrix(rng, 4));
    const FiniteClassicalComponent cl = classical_component(a, a, rho);
    for (int i = 0; i < 4; ++i)
        CHECK(cl.values[i] == doctest::Approx(a.eigenvalues[i]).epsilon(1e-12));
    const DecompStats st = finite_decomposition_stats(a, a, rho);
    CHECK(st.min_error == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("qubit ground state: x-estimate from z vanishes on support") {
    Eigen::VectorXcd ket0(2);
    ket0 << 1.0, 0.0;
    const FiniteClassicalComponent cl = classical_component(
        FiniteObservable(pauli_z()), FiniteObservable(pauli_x()), FiniteState::pure(ket0));
    int supported = 0;
    for (int i = 0; i < 2; ++i)
        if (cl.mask[static_cast<std::size_t>(i)]) {
            ++supported;
            CHECK(cl.values[i] == doctest::Approx(0.0).epsilon(1e-14));
        }
    CHECK(supported == 1);  // the zero-probability eigenket is excluded
}

TEST_CASE("circular qubit superposition: the build oracle worked step by step") {
    // psi = (|0> + i|1>)/sqrt2, A = sigma_z, B = sigma_x:
    // B rho has Re<a|B rho|a> = 0 for both kets, so B_cl = 0 and
    // Var B_nc = <B^2> = 1; i[B, rho] is diag(-1, +1), each term squared
    // over p_a = 1/2 gives (delta_B A)^{-2} = 4.
    Eigen::VectorXcd psi(2);
    psi << cdouble{1.0, 0.0}, cdouble{0.0, 1.0};
    const FiniteState rho = FiniteState::pure(psi);
    const FiniteObservable a(pauli_z()), b(pauli_x());

    const FiniteClassicalComponent cl = classical_component(a, b, rho);
    CHECK(cl.values[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cl.values[1] == doctest::Approx(0.0).epsilon(1e-14));

    const GeneralizedURResult r = generalized_ur(a, b, rho);
    CHECK(r.delta_ba == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.spread_nc == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.check.status == CheckStatus::pass);
    CHECK(r.check.lhs == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("real qubit states are indeterminate") {
    for (double theta : {0.3, 1.0, 1.4}) {
        Eigen::VectorXcd psi(2);
        psi << std::cos(theta), std::sin(theta);
        const GeneralizedURResult r =
            generalized_ur(FiniteObservable(pauli_z()), FiniteObservable(pauli_x()),
                           FiniteState::pure(psi));
        CHECK(r.indeterminate);
        CHECK(r.check.status == CheckStatus::indeterminate);
    }
}

TEST_CASE("equality for random pure states, inequality for mixtures") {
    Rng rng(8);
    for (int d : {2, 3}) {
        int collected = 0;
        while (collected < 100) {
            const FiniteObservable a(random_hermitian(rng, d));
            const FiniteObservable b(random_hermitian(rng, d));
            const FiniteState rho = FiniteState::pure(random_pure_vector(rng, d));
            const GeneralizedURResult r = generalized_ur(a, b, rho, 1.0, 1e-8);
            if (r.indeterminate) continue;
            ++collected;
            CHECK(r.check.status == CheckStatus::pass);
            CHECK(r.check.lhs == doctest::Approx(0.5).epsilon(1e-8));
        }
        for (int trial = 0; trial < 50; ++trial) {
            const FiniteObservable a(random_hermitian(rng, d));
            const FiniteObservable b(random_hermitian(rng, d));
            const FiniteState rho(random_density_matrix(rng, d));
            const GeneralizedURResult r = generalized_ur(a, b, rho);
            if (r.indeterminate) continue;
            CHECK(r.check.lhs >= r.check.rhs - 1e-10);
        }
    }
}

TEST_CASE("variance additivity for random pairs and states") {
    Rng rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 4;
        const FiniteObservable a(random_hermitian(rng, d));
        const FiniteObservable b(random_hermitian(rng, d));
        const FiniteState rho(random_density_matrix(rng, d));
        const DecompStats st = finite_decomposition_stats(a, b, rho);
        CHECK(st.var_obs == doctest::Approx(st.var_cl + st.var_nc).epsilon(1e-10));
        CHECK(st.mean_obs == doctest::Approx(st.mean_cl).epsilon(1e-10));
    }
}

TEST_CASE("degenerate reference spectra are rejected") {
    Rng rng(2);
    const FiniteState rho(random_density_matrix(rng, 2));
    CHECK_THROWS_AS(
        classical_component(FiniteObservable(Eigen::MatrixXcd::Identity(2, 2)),
                            FiniteObservable(pauli_x()), rho),
        std::invalid_argument);
}

TEST_CASE("mub construction") {
    SUBCASE("d = 2: the three Pauli eigenbases") {
        const MubSet m = mub_bases(2);
        REQUIRE(m.bases.size() == 3);
        CHECK(m.max_overlap_deviation() < 1e-12);
    }
    SUBCASE("d = 3 and d = 5: overlaps exactly 1/d") {
        for (int d : {3, 5}) {
            const MubSet m = mub_bases(d);
            REQUIRE(m.bases.size() == static_cast<std::size_t>(d + 1));
            CHECK(m.max_overlap_deviation() < 1e-12);
            // each basis is orthonormal
            for (const auto& basis : m.bases)
                CHECK((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(d, d))
                          .cwiseAbs()
                          .maxCoeff() < 1e-12);
        }
    }
    SUBCASE("non-prime dimension unsupported") {
        CHECK_THROWS_AS(mub_bases(4), std::invalid_argument);
        CHECK_THROWS_AS(mub_bases(6), std::invalid_argument);
    }
}

TEST_CASE("collision-length sum rule") {
    Rng rng(10);
    SUBCASE("qubit |0>: lengths (1, 2, 2)") {
        Eigen::VectorXcd ket0(2);
        ket0 << 1.0, 0.0;
        const IvanovicResult r = ivanovic_check(FiniteState::pure(ket0), mub_bases(2));
        CHECK(r.collision_lengths[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(r.collision_lengths[1] == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(r.collision_lengths[2] == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(r.equality.lhs == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("equality for 100 random states per dimension") {
        for (int d : {2, 3, 5}) {
            const MubSet m = mub_bases(d);
            for (int trial = 0; trial < 100; ++trial) {
                const FiniteState rho = (trial % 2 == 0)
                                            ? FiniteState::pure(random_pure_vector(rng, d))
                                            : FiniteState(random_density_matrix(rng, d));
                const IvanovicResult r = ivanovic_check(rho, m, 1e-12);
                CHECK(r.equality.status == CheckStatus::pass);
                CHECK(r.bound.passed());
                for (double len : r.collision_lengths) {
                    CHECK(len >= 1.0 - 1e-12);
                    CHECK(len <= d + 1e-12);
                }
            }
        }
    }
    SUBCASE("maximal certainty in one basis forces maximal uncertainty in the rest") {
        Eigen::VectorXcd ket0(3);
        ket0 << 1.0, 0.0, 0.0;
        const IvanovicResult r = ivanovic_check(FiniteState::pure(ket0), mub_bases(3));
        CHECK(r.collision_lengths[0] == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i < r.collision_lengths.size(); ++i)
            CHECK(r.collision_lengths[i] == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("state validation") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 1.0, cdouble{0.0, 0.4}, cdouble{0.0, 0.4}, -0.2;
    CHECK_THROWS(FiniteState(bad));  // negative eigenvalue
    CHECK(FiniteState::maximally_mixed(3).purity() == doctest::Approx(1.0 / 3.0));
}
