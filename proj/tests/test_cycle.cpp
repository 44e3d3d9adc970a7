#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "solkms/cycle.hpp"
#include "solkms/errors.hpp"
#include "solkms/rng.hpp"

using namespace solkms;

namespace {
const double kLn4 = 2.0 * std::numbers::ln2;
}

TEST_CASE("extreme vectors at n = 1, r = 2 ln 2") {
    const auto vs = cycle::extreme_vectors(1, kLn4);
    REQUIRE(vs.size() == 2);
    CHECK(vs[0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(vs[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(vs[1][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(vs[1][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("extreme vector structure") {
    for (int n : {1, 2, 3, 4}) {
        for (double r : {0.1, 1.0, kLn4, 5.0}) {
            const auto vs = cycle::extreme_vectors(n, r);
            const double k = static_cast<double>(cycle::size_at_level(n));
            const double own = -std::expm1(-r / k) / -std::expm1(-r);
            for (std::size_t j = 0; j < vs.size(); ++j) {
                CHECK(vs[j][j] == doctest::Approx(own).epsilon(1e-14));
                double sum = 0.0;
                for (double v : vs[j]) sum += v;
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(cycle::is_subinvariant_vector(vs[j], n, r));
            }
        }
    }
}

TEST_CASE("geometric normalization identity") {
    // the row sums equal 1 because q^{2^n} = e^{-r}; pin that identity itself
    for (int n : {1, 2, 3, 4}) {
        for (double r : {0.1, 1.0, kLn4, 5.0}) {
            const double q = std::exp(-r / static_cast<double>(cycle::size_at_level(n)));
            CHECK(std::pow(q, static_cast<double>(cycle::size_at_level(n))) ==
                  doctest::Approx(std::exp(-r)).epsilon(1e-14));
        }
    }
}

TEST_CASE("resolvent identity maps extreme vectors to scaled indicators") {
    for (int n : {1, 2, 3, 4}) {
        for (double r : {0.1, 1.0, kLn4, 5.0}) {
            const auto vs = cycle::extreme_vectors(n, r);
            const double one_minus_q =
                -std::expm1(-r / static_cast<double>(cycle::size_at_level(n)));
            for (std::size_t j = 0; j < vs.size(); ++j) {
                const auto eps = cycle::resolvent_apply(vs[j], n, r);
                for (std::size_t i = 0; i < eps.size(); ++i) {
                    const double expected = (i == j) ? one_minus_q : 0.0;
                    CHECK(std::abs(eps[i] - expected) < 1e-14);
                }
            }
        }
    }
}

TEST_CASE("resolvent on the uniform vector") {
    const int n = 3;
    const double r = 1.7;
    const std::int64_t k = cycle::size_at_level(n);
    const std::vector<double> uniform(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
    const auto eps = cycle::resolvent_apply(uniform, n, r);
    const double expected =
        -std::expm1(-r / static_cast<double>(k)) / static_cast<double>(k);
    for (double e : eps) CHECK(e == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("subinvariant vectors have nonnegative resolvent") {
    Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.int_in(1, 4);
        const double r = rng.uniform(0.2, 4.0);
        const auto vs = cycle::extreme_vectors(n, r);
        std::vector<double> weights(vs.size());
        double sum = 0.0;
        for (double& w : weights) {
            w = rng.uniform();
            sum += w;
        }
        std::vector<double> x(vs[0].size(), 0.0);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += (weights[j] / sum) * vs[j][i];
        }
        for (double e : cycle::resolvent_apply(x, n, r)) CHECK(e >= -1e-12);
    }
}

TEST_CASE("decomposition recovers indicators and symmetric splits") {
    const auto vs = cycle::extreme_vectors(2, 1.3);
    for (std::size_t j = 0; j < vs.size(); ++j) {
        const auto lambda = cycle::decompose_subinvariant(vs[j], 2, 1.3);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            CHECK(lambda[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }

    const auto lambda = cycle::decompose_subinvariant({0.5, 0.5}, 1, kLn4);
    CHECK(lambda[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lambda[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single-vector accessor agrees with the full family") {
    for (int n : {1, 3}) {
        const double r = 1.7;
        const auto vs = cycle::extreme_vectors(n, r);
        for (std::int64_t j = 0; j < cycle::size_at_level(n); ++j) {
            CHECK(cycle::extreme_vector(n, r, j) == vs[static_cast<std::size_t>(j)]);
        }
    }
    // the single-vector form scales to deep levels without quadratic storage
    const auto deep = cycle::extreme_vector(14, 2.0, 0);
    CHECK(deep.size() == 16384);
    double sum = 0.0;
    for (double v : deep) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(cycle::decompose_subinvariant({0.5, 0.5}, 1, 0.0),
                    std::invalid_argument);
}

TEST_CASE("non-subinvariant vectors are rejected with the offending index") {
    try {
        cycle::decompose_subinvariant({0.9, 0.1}, 1, kLn4);
        FAIL("expected NotSubinvariantError");
    } catch (const NotSubinvariantError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("round trip through random simplex points") {
    Rng rng(16);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.int_in(1, 4);
        const double r = rng.uniform(0.1, 5.0);
        const auto vs = cycle::extreme_vectors(n, r);
        std::vector<double> lambda(vs.size());
        double sum = 0.0;
        for (double& l : lambda) {
            l = rng.uniform();
            sum += l;
        }
        for (double& l : lambda) l /= sum;
        std::vector<double> x(vs[0].size(), 0.0);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += lambda[j] * vs[j][i];
        }
        const auto rec = cycle::decompose_subinvariant(x, n, r);
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            CHECK(std::abs(rec[j] - lambda[j]) < 1e-10);
        }
        // reconstruction matches in sup norm as well
        std::vector<double> back(x.size(), 0.0);
        for (std::size_t j = 0; j < rec.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) back[i] += rec[j] * vs[j][i];
        }
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
    }
}

TEST_CASE("extreme vectors admit no proper convex splits") {
    CHECK(cycle::verify_extremality_bruteforce(1, 0.7, 1000));
    CHECK(cycle::verify_extremality_bruteforce(2, 1.0, 300));
    CHECK(cycle::verify_extremality_bruteforce(3, kLn4, 100));
}

TEST_CASE("midpoints of distinct extreme vectors are not extreme") {
    const auto vs = cycle::extreme_vectors(2, 0.9);
    std::vector<double> mid(vs[0].size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (vs[0][i] + vs[1][i]);
    const auto lambda = cycle::decompose_subinvariant(mid, 2, 0.9);
    int nonzero = 0;
    for (double l : lambda) {
        if (l > 1e-6) ++nonzero;
    }
    CHECK(nonzero == 2);
}

TEST_CASE("measure arc masses land on the discrete simplex") {
    CHECK(cycle::measure_to_vector(lebesgue(), 2) ==
          std::vector<double>{0.25, 0.25, 0.25, 0.25});

    for (double r : {0.5, kLn4, 3.0}) {
        for (int n : {1, 2, 3}) {
            const auto vs = cycle::extreme_vectors(n, r);
            const auto x0 = cycle::measure_to_vector(make_mr(r), n);
            for (std::size_t i = 0; i < x0.size(); ++i) {
                CHECK(x0[i] == doctest::Approx(vs[0][i]).epsilon(1e-13));
            }
            // a dyadic rotate shifts the mass vector cyclically
            const std::int64_t k = cycle::size_at_level(n);
            for (std::int64_t j = 0; j < k; ++j) {
                const auto xj = cycle::measure_to_vector(
                    rotate_measure(make_mr(r), static_cast<double>(j) / static_cast<double>(k)),
                    n);
                for (std::size_t i = 0; i < xj.size(); ++i) {
                    CHECK(std::abs(xj[i] - vs[static_cast<std::size_t>(j)][i]) < 1e-13);
                }
            }
        }
    }
}
