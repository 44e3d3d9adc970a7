#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "solkms/campaigns.hpp"
#include "solkms/errors.hpp"
#include "solkms/kms.hpp"
#include "solkms/rng.hpp"

using namespace solkms;

TEST_CASE("parameter packs") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 3, 1.0);
    CHECK(seq.rate(0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(seq.rate(1) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(seq.rate(2) == doctest::Approx(12.0).epsilon(1e-15));
    for (int j = 0; j + 1 <= seq.depth(); ++j) {
        CHECK(seq.rate(j + 1) == 2.0 * seq.rate(j));  // exact by construction
        CHECK(seq.theta(j) == 4.0 * seq.theta(j + 1));
    }

    const ThetaSeq flat = make_theta_seq(3, 0.123, 4, 0.0);
    for (int j = 0; j <= flat.depth(); ++j) CHECK(flat.rate(j) == 0.0);

    CHECK_THROWS_AS(make_theta_seq(2, 1.0 / 3.0, 3, -0.25), NoKmsStatesError);
    CHECK_THROWS_AS(make_theta_seq(2, 0.0, 3, 1.0), DegenerateThetaError);
    CHECK_THROWS_AS(make_theta_seq(1, 0.5, 3, 1.0), std::invalid_argument);
}

TEST_CASE("solenoid points") {
    const SolenoidPoint p = SolenoidPoint::from_deepest(CirclePoint(0.21), 2, 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(p.coord(j).value() ==
              doctest::Approx(CirclePoint::wrap(2.0 * p.coord(j + 1).value())).epsilon(1e-14));
    }
    CHECK_THROWS_AS(SolenoidPoint({CirclePoint(0.3), CirclePoint(0.3)}, 2),
                    std::invalid_argument);

    const SolenoidPoint q = SolenoidPoint::from_deepest(CirclePoint(0.68), 2, 4);
    const SolenoidPoint d = p - q;
    for (int j = 0; j <= 4; ++j) {
        CHECK(d.coord(j).value() ==
              doctest::Approx(CirclePoint::wrap(p.coord(j).value() - q.coord(j).value()))
                  .epsilon(1e-14));
    }
}

TEST_CASE("extreme states and tower compatibility") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 4, 1.0);
    const KmsState base = extreme_state_from_solenoid(SolenoidPoint::zero(2, 4), seq);
    for (int j = 0; j <= 4; ++j) {
        // zero rotation: the tower is exactly m_{r_j}
        CHECK(base.tower.levels[static_cast<std::size_t>(j)].density(CirclePoint(0.0)) ==
              doctest::Approx(make_mr(seq.rate(j)).density(CirclePoint(0.0))).epsilon(1e-14));
    }
    CHECK(tower_compatibility_defect(base) < 1e-10);

    Rng rng(51);
    for (int trial = 0; trial < 5; ++trial) {
        const KmsState st =
            extreme_state_from_solenoid(random_solenoid_point(rng, 2, 4), seq);
        CHECK(tower_compatibility_defect(st) < 1e-10);
    }

    // distinct points produce towers that differ on some dyadic arc
    const KmsState a =
        extreme_state_from_solenoid(SolenoidPoint::from_deepest(CirclePoint(0.1), 2, 4), seq);
    const KmsState b =
        extreme_state_from_solenoid(SolenoidPoint::from_deepest(CirclePoint(0.4), 2, 4), seq);
    double best = 0.0;
    for (int j = 0; j <= 4; ++j) {
        for (const auto& arc : dyadic_partition(6)) {
            best = std::max(best,
                            std::abs(measure_arc(a.tower.levels[static_cast<std::size_t>(j)], arc) -
                                     measure_arc(b.tower.levels[static_cast<std::size_t>(j)], arc)));
        }
    }
    CHECK(best > 1e-3);

    CHECK_THROWS_AS(
        extreme_state_from_solenoid(SolenoidPoint::zero(2, 4), make_theta_seq(2, 0.3, 4, 0.0)),
        std::invalid_argument);
}

TEST_CASE("state evaluation") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 4, 1.0);
    const KmsState phi = extreme_state_from_solenoid(SolenoidPoint::zero(2, 4), seq);

    CHECK(evaluate(phi, elem_identity(seq.level(0))).real() ==
          doctest::Approx(1.0).epsilon(1e-14));

    // phi(s s*) at level 0 is e^{-beta}
    const auto S = elem_isometry(seq.level(0));
    const auto range_proj = elem_mul(S, elem_adjoint(S));
    CHECK(evaluate(phi, range_proj).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    // and e^{-beta/N^j} at deeper levels
    const auto S2 = elem_isometry(seq.level(2));
    CHECK(evaluate(phi, elem_mul(S2, elem_adjoint(S2))).real() ==
          doctest::Approx(std::exp(-0.25)).epsilon(1e-13));

    // off-diagonal terms vanish
    CHECK(std::abs(evaluate(phi, S)) < 1e-15);

    SUBCASE("embedding leaves evaluation unchanged") {
        Rng rng(52);
        for (int trial = 0; trial < 100; ++trial) {
            const int j = rng.int_in(0, 3);
            const auto x = random_element(rng, seq.level(j));
            const auto lifted = embed(x, seq.level(j + 1));
            CHECK(std::abs(evaluate(phi, lifted) - evaluate(phi, x)) < 1e-12);
        }
    }
    SUBCASE("levels beyond the tower are rejected") {
        const AlgebraLevel deep = make_level(5, seq.theta(4) / 4.0, 2);
        CHECK_THROWS_AS(evaluate(phi, elem_identity(deep)), LevelMismatchError);
    }
}

TEST_CASE("KMS identity") {
    const ThetaSeq seq = make_theta_seq(3, 0.123, 3, 0.7);
    Rng rng(53);
    const auto states = build_state_family(seq, 6, 99);

    SUBCASE("hand-checked pairs have zero residual") {
        const auto& phi = states.front();
        const auto S = elem_isometry(seq.level(1));
        CHECK(verify_kms_identity(phi, S, elem_adjoint(S)) < 1e-15);
        const auto f = elem_function(seq.level(1), TrigPoly::harmonic(1));
        const auto g = elem_function(seq.level(1), TrigPoly::harmonic(-2));
        CHECK(verify_kms_identity(phi, f, g) < 1e-15);
    }
    SUBCASE("random spanning pairs stay within 1e-9") {
        for (int trial = 0; trial < 300; ++trial) {
            const auto& phi = states[static_cast<std::size_t>(trial) % states.size()];
            const int j = rng.int_in(0, seq.depth());
            const auto x = random_element(rng, seq.level(j));
            const auto y = random_element(rng, seq.level(j));
            CHECK(verify_kms_identity(phi, x, y) <= 1e-9);
        }
    }
}

TEST_CASE("positivity of gap sandwiches") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 3, 1.0);
    const KmsState phi = extreme_state_from_solenoid(SolenoidPoint::zero(2, 3), seq);

    // identity sandwich evaluates the gap itself
    for (int j = 0; j <= 3; ++j) {
        const double expected = -std::expm1(-1.0 / std::pow(2.0, j));
        CHECK(verify_positivity_gap(phi, elem_identity(seq.level(j))) ==
              doctest::Approx(expected).epsilon(1e-13));
    }

    SUBCASE("function sandwiches match the two-integral form") {
        Rng rng(54);
        for (int trial = 0; trial < 50; ++trial) {
            const int j = rng.int_in(0, 3);
            TrigPoly::Coeffs c;
            for (int h = 0; h < 2; ++h) {
                c[rng.int_in(-3, 3)] +=
                    std::complex<double>(rng.uniform(-1, 1), rng.uniform(-1, 1));
            }
            const TrigPoly f{std::move(c)};
            const auto x = elem_function(seq.level(j), f);
            const double direct = verify_positivity_gap(phi, x);

            const CircleMeasure& m = phi.tower.levels[static_cast<std::size_t>(j)];
            const TrigPoly f2 = trig_mul(f, trig_conj(f));
            const double w = std::exp(-1.0 / std::pow(2.0, j));
            const double via_integrals =
                (integrate(m, f2) -
                 w * integrate(m, trig_compose_rotation(f2, -seq.theta(j))))
                    .real();
            CHECK(direct == doctest::Approx(via_integrals).epsilon(1e-11));
            CHECK(direct >= -1e-9);
        }
    }
    SUBCASE("random sandwiches on valid states stay nonnegative") {
        Rng rng(55);
        const auto states = build_state_family(seq, 8, 77);
        for (int trial = 0; trial < 200; ++trial) {
            const auto& st = states[static_cast<std::size_t>(trial) % states.size()];
            const int j = rng.int_in(0, 3);
            const auto x = random_element(rng, seq.level(j), 2, 3, 2);
            CHECK(verify_positivity_gap(st, x) >= -1e-9);
        }
    }
}

TEST_CASE("the beta = 0 trace") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 4, 0.0);
    const KmsState phi = trace_state(seq);
    Rng rng(56);

    SUBCASE("tracial symmetry over random pairs") {
        for (int trial = 0; trial < 1000; ++trial) {
            const int j = rng.int_in(0, 4);
            const auto x = random_element(rng, seq.level(j));
            const auto y = random_element(rng, seq.level(j));
            CHECK(std::abs(evaluate(phi, elem_mul(x, y)) - evaluate(phi, elem_mul(y, x))) <=
                  1e-10);
        }
    }
    SUBCASE("kills the gap and factors through") {
        for (int j = 0; j <= 4; ++j) CHECK(std::abs(gap_value(phi, j)) < 1e-14);
        CHECK(factors_through_solenoid(phi));
    }
    SUBCASE("diagonal evaluation is the plain integral, independent of the power") {
        const TrigPoly f = trig_add(TrigPoly::one(), TrigPoly::harmonic(2, {0.3, 0.1}));
        const std::complex<double> expected = integrate(lebesgue(), f);
        for (int a = 0; a <= 2; ++a) {
            const auto x = elem_term(seq.level(1), a, f, a);
            CHECK(std::abs(evaluate(phi, x) - expected) < 1e-14);
        }
    }
    CHECK_THROWS_AS(trace_state(make_theta_seq(2, 1.0 / 3.0, 4, 1.0)), std::invalid_argument);
}

TEST_CASE("factor test separates beta = 0 from beta > 0") {
    const ThetaSeq warm = make_theta_seq(2, 1.0 / 3.0, 4, 0.8);
    Rng rng(57);
    const auto states = build_state_family(warm, 5, 31);
    for (const auto& st : states) {
        CHECK_FALSE(factors_through_solenoid(st));
        for (int j = 0; j <= 4; ++j) {
            const double expected = -std::expm1(-0.8 / std::pow(2.0, j));
            CHECK(gap_value(st, j) == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    // the embedded gap dominates the next level's gap under every state
    for (const auto& st : states) {
        for (int j = 0; j < 4; ++j) {
            const auto lifted = embed(gap_element(warm.level(j)), warm.level(j + 1));
            CHECK(evaluate(st, lifted).real() >=
                  evaluate(st, gap_element(warm.level(j + 1))).real() - 1e-13);
        }
    }
}

TEST_CASE("negative temperature is impossible two ways") {
    // construction refuses outright
    CHECK_THROWS_AS(make_theta_seq(2, 1.0 / 3.0, 4, -0.5), NoKmsStatesError);

    // and independently: any state would assign the positive element 1 - ss*
    // the value 1 - e^{-beta}, which is negative for beta < 0, contradicting
    // the positivity every constructed state exhibits.
    for (double beta : {-2.0, -0.5, -1e-3}) {
        CHECK(1.0 - std::exp(-beta) < 0.0);
    }
    for (double beta : {0.0, 0.5, 2.0}) {
        const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 3, beta);
        const KmsState phi = beta == 0.0
                                 ? trace_state(seq)
                                 : extreme_state_from_solenoid(SolenoidPoint::zero(2, 3), seq);
        CHECK(gap_value(phi, 0) >= 0.0);
        CHECK(gap_value(phi, 0) == doctest::Approx(1.0 - std::exp(-beta)).epsilon(1e-13));
    }
}

TEST_CASE("state invariance under the dynamics") {
    const ThetaSeq seq = make_theta_seq(3, 0.123, 3, 1.5);
    const auto states = build_state_family(seq, 4, 13);
    Rng rng(58);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& st = states[static_cast<std::size_t>(trial) % states.size()];
        const int j = rng.int_in(0, 3);
        const auto x = random_element(rng, seq.level(j));
        CHECK(verify_state_invariance(st, x, rng.uniform(0.0, 10.0)) <= 1e-10);
    }
}

TEST_CASE("convex states evaluate affinely") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 3, 1.0);
    Rng rng(59);
    const KmsState a = extreme_state_from_solenoid(random_solenoid_point(rng, 2, 3), seq);
    const KmsState b = extreme_state_from_solenoid(random_solenoid_point(rng, 2, 3), seq);

    const KmsState single = convex_state({1.0}, {a});
    const KmsState mix = convex_state({0.3, 0.7}, {a, b});

    for (int trial = 0; trial < 50; ++trial) {
        const int j = rng.int_in(0, 3);
        const auto x = random_element(rng, seq.level(j));
        CHECK(std::abs(evaluate(single, x) - evaluate(a, x)) < 1e-15);
        CHECK(std::abs(evaluate(mix, x) -
                       (0.3 * evaluate(a, x) + 0.7 * evaluate(b, x))) < 1e-12);
    }

    SUBCASE("a proper mixture stops being extreme at some resolution") {
        const KmsState mid = convex_state({0.5, 0.5}, {a, b});
        bool exceeded = false;
        for (int n = 1; n <= 32 && !exceeded; ++n) {
            try {
                exceeded = extremality_probe(mid.tower.levels[0], seq.rate(0), n) ==
                           ProbeVerdict::Exceeds;
            } catch (const NotSubinvariantError&) {
                FAIL("mixture tower must stay subinvariant");
            }
        }
        CHECK(exceeded);
    }
    CHECK_THROWS_AS(convex_state({0.5, 0.5}, {a}), std::invalid_argument);
}

TEST_CASE("solenoid equivariance") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 4, 1.0);
    Rng rng(60);
    const SolenoidPoint p = random_solenoid_point(rng, 2, 4);
    const SolenoidPoint zero = SolenoidPoint::zero(2, 4);

    const auto x = random_element(rng, seq.level(2));
    CHECK(verify_solenoid_equivariance(p, zero, seq, x) < 1e-14);

    for (int trial = 0; trial < 100; ++trial) {
        const SolenoidPoint q = random_solenoid_point(rng, 2, 4);
        const int j = rng.int_in(0, 4);
        const auto y = random_element(rng, seq.level(j));
        CHECK(verify_solenoid_equivariance(p, q, seq, y) <= 1e-10);
    }
}

TEST_CASE("deep towers stay compatible despite fast-growing rates") {
    // N = 3 at depth 5 pushes rates to r_0 * 243; compatibility must survive
    const ThetaSeq seq = make_theta_seq(3, 0.123, 5, 2.0);
    Rng rng(63);
    for (int trial = 0; trial < 3; ++trial) {
        const KmsState st =
            extreme_state_from_solenoid(random_solenoid_point(rng, 3, 5), seq);
        CHECK(tower_compatibility_defect(st) < 1e-10);
    }
}

TEST_CASE("every tower level is subinvariant at its own rate") {
    const ThetaSeq seq = make_theta_seq(2, 1.0 / 3.0, 3, 1.0);
    Rng rng(62);
    const auto states = build_state_family(seq, 4, 21);
    for (const auto& st : states) {
        for (int j = 0; j <= seq.depth(); ++j) {
            CHECK(check_subinvariance(st.tower.levels[static_cast<std::size_t>(j)],
                                      seq.rate(j))
                      .satisfied);
        }
    }
    // and the reversed control fails at every level it is built for
    const ThetaSeq shallow = make_theta_seq(2, 1.0 / 3.0, 2, 1.0);
    const KmsState rev = reversed_density_state(shallow);
    for (int j = 0; j <= shallow.depth(); ++j) {
        CHECK_FALSE(check_subinvariance(rev.tower.levels[static_cast<std::size_t>(j)],
                                        shallow.rate(j))
                        .satisfied);
    }
}

TEST_CASE("towers satisfy the scale-hypothesis bridge") {
    for (int N : {2, 3}) {
        const ThetaSeq seq = make_theta_seq(N, 1.0 / 3.0, 4, 1.25);
        Rng rng(61);
        const KmsState st = extreme_state_from_solenoid(random_solenoid_point(rng, N, 4), seq);
        const auto probes = dyadic_partition(3);
        for (int j = 0; j <= 4; ++j) {
            const double s = seq.beta() / std::pow(N, j);
            CHECK(certify_from_scales(st.tower.levels[static_cast<std::size_t>(j)],
                                      seq.theta(j), s, 6, N, probes));
        }
    }
}
