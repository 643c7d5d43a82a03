#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/toeplitz.hpp"

using namespace sqgp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("spectral density closed forms") {
    auto white = KernelSpec::white();
    CHECK(spectral_density(white, 0.0) == 1.0);
    CHECK(spectral_density(white, 2.1) == 1.0);

    auto ar = KernelSpec::ar1(0.5);
    CHECK(spectral_density(ar, 0.0) == Catch::Approx(4.0).margin(1e-14));
    CHECK(spectral_density(ar, kPi) == Catch::Approx(1.0 / 2.25).margin(1e-14));
}

TEST_CASE("spectral density equals the truncated cosine sum") {
    // ar1 has the only infinite-support kernel; truncate where the tail of
    // sum |k| drops below 1e-12 and compare against the closed form.
    for (double theta : {-0.9, -0.5, 0.3, 0.9}) {
        auto ar = KernelSpec::ar1(theta);
        const double a = std::abs(theta);
        std::int64_t trunc = 1;
        while (2.0 * std::pow(a, static_cast<double>(trunc + 1)) /
                   ((1.0 - theta * theta) * (1.0 - a)) >=
               1e-12)
            ++trunc;
        for (int j = 0; j < 4096; ++j) {
            const double lambda = 2.0 * kPi * j / 4096;
            double sum = ar.k(0);
            for (std::int64_t s = 1; s <= trunc; ++s)
                sum += 2.0 * ar.k(s) * std::cos(lambda * static_cast<double>(s));
            REQUIRE(std::abs(sum - ar.f(lambda)) < 1e-10);
        }
    }
}

TEST_CASE("ma spectral density matches the squared transfer function") {
    auto ma = KernelSpec::ma({1.0, 1.0});
    CHECK(ma.k(0) == 2.0);
    CHECK(ma.k(1) == 1.0);
    CHECK(ma.k(2) == 0.0);
    CHECK(ma.k(-1) == 1.0);
    for (int j = 0; j < 64; ++j) {
        const double lambda = 2.0 * kPi * j / 64;
        const double re = 1.0 + std::cos(lambda);
        const double im = std::sin(lambda);
        CHECK(ma.f(lambda) == Catch::Approx(re * re + im * im).margin(1e-12));
    }
}

TEST_CASE("spectral density symmetry on the grid") {
    auto kernels = {KernelSpec::white(), KernelSpec::ar1(-0.7),
                    KernelSpec::ma({0.5, 1.0, -0.25}), KernelSpec::table({1.0, 0.4, 0.1})};
    for (const auto& kernel : kernels)
        for (int j = 1; j < 2048; ++j) {
            const double lambda = 2.0 * kPi * j / 4096;
            REQUIRE(std::abs(kernel.f(lambda) - kernel.f(2.0 * kPi - lambda)) < 1e-12);
        }
}

TEST_CASE("spectral density is nonnegative on the grid") {
    auto kernels = {KernelSpec::white(), KernelSpec::ar1(0.9), KernelSpec::ar1(-0.9),
                    KernelSpec::ma({1.0, -1.0}), KernelSpec::table({1.0, 0.4, 0.1})};
    for (const auto& kernel : kernels)
        for (int j = 0; j < 4096; ++j)
            REQUIRE(kernel.f(2.0 * kPi * j / 4096) >= -1e-12);
}

TEST_CASE("kernel absolute sums") {
    CHECK(KernelSpec::white().abs_sum() == 1.0);
    CHECK(KernelSpec::ar1(0.5).abs_sum() == Catch::Approx(4.0).margin(1e-14));
    CHECK(KernelSpec::ma({1.0, 1.0}).abs_sum() == Catch::Approx(4.0).margin(1e-14));
    CHECK(KernelSpec::table({1.0, 0.4, 0.1}).abs_sum() == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("kernel construction rejects bad parameters") {
    CHECK_THROWS_AS(KernelSpec::ar1(1.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::ar1(-1.2), DomainError);
    CHECK_THROWS_AS(KernelSpec::ma({}), DomainError);
    // f(pi) = 1 - 1.8 < 0: fails the positive-definiteness proxy
    CHECK_THROWS_AS(KernelSpec::table({1.0, 0.9}), DomainError);
    CHECK_THROWS_AS(MeanSpec::decaying(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Perturbation::separable(1.0, 0.0), DomainError);
}

TEST_CASE("covariance matrix assembly") {
    ProcessModel white{MeanSpec::constant(0.0), KernelSpec::white()};
    const SymMatrix id = covariance_matrix(white, 2);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(id(1, 1) == 1.0);

    ProcessModel ar{MeanSpec::constant(0.0), KernelSpec::ar1(0.5)};
    const SymMatrix k2 = covariance_matrix(ar, 2);
    CHECK(k2(0, 0) == Catch::Approx(4.0 / 3.0).margin(1e-15));
    CHECK(k2(0, 1) == Catch::Approx(2.0 / 3.0).margin(1e-15));
    CHECK(k2(1, 0) == k2(0, 1));

    // no perturbation: exactly the Toeplitz matrix
    const SymMatrix k3 = covariance_matrix(ar, 3);
    const SymMatrix h3 = toeplitz(ar.kernel, 3);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t r = 0; r < 3; ++r) REQUIRE(k3(s, r) == h3(s, r));

    ProcessModel pert{MeanSpec::constant(0.0), KernelSpec::ar1(0.5),
                      Perturbation::separable(2.0, 0.5)};
    const SymMatrix kp = covariance_matrix(pert, 3);
    CHECK(kp(1, 2) == Catch::Approx(ar.kernel.k(1) + 2.0 * 0.5 * 0.25).margin(1e-15));
}

TEST_CASE("conditioning on the start value") {
    SECTION("conditioning at the mean is neutral") {
        ProcessModel ar{MeanSpec::constant(1.0), KernelSpec::ar1(0.5)};
        const auto cs = condition_on_start(ar, 1.0, 4);
        CHECK(cs.mean[0] == 1.0);
        for (std::size_t r = 0; r < 4; ++r) {
            REQUIRE(cs.cov(0, r) == 0.0);
            REQUIRE(cs.cov(r, 0) == 0.0);
        }
    }

    SECTION("white kernel pins only the first coordinate") {
        ProcessModel white{MeanSpec::constant(0.0), KernelSpec::white()};
        const auto cs = condition_on_start(white, 3.0, 2);
        CHECK(cs.mean[0] == 3.0);
        CHECK(cs.mean[1] == 0.0);
        CHECK(cs.cov(0, 0) == 0.0);
        CHECK(cs.cov(0, 1) == 0.0);
        CHECK(cs.cov(1, 1) == 1.0);
    }

    SECTION("ar1 values against the rank-one update by hand") {
        ProcessModel ar{MeanSpec::constant(0.0), KernelSpec::ar1(0.5)};
        const auto cs = condition_on_start(ar, 1.0, 2);
        CHECK(cs.mean[0] == 1.0);
        CHECK(cs.mean[1] == Catch::Approx(0.5).margin(1e-15));
        // K*(1,1) = 4/3 - (2/3)^2 / (4/3) = 1
        CHECK(cs.cov(1, 1) == Catch::Approx(1.0).margin(1e-15));
    }

    SECTION("conditioned covariance factorizes with a degenerate first pivot") {
        ProcessModel ar{MeanSpec::constant(1.0), KernelSpec::ar1(0.5),
                        Perturbation::separable(0.5, 0.6)};
        const auto cs = condition_on_start(ar, 2.0, 16);
        const Factorization f = factorize(cs.cov);
        CHECK(f.degenerate(0));
        CHECK(f.degenerate_count() == 1);
        for (std::size_t tau = 1; tau < 16; ++tau) REQUIRE(f.pivot(tau) > 0.0);
    }

    SECTION("zero start variance is rejected") {
        ProcessModel degenerate{MeanSpec::constant(0.0), KernelSpec::table({0.0})};
        CHECK_THROWS_AS(condition_on_start(degenerate, 1.0, 2), ZeroStartVariance);
    }
}

TEST_CASE("hypothesis diagnostics") {
    SECTION("stationary model has zero weak gap") {
        ProcessModel ar{MeanSpec::constant(1.0), KernelSpec::ar1(0.5)};
        CHECK(hypothesis_report(ar, 32).h5_weak_gap == 0.0);
    }

    SECTION("white noise values") {
        ProcessModel white{MeanSpec::constant(0.0), KernelSpec::white()};
        const auto rep = hypothesis_report(white, 10);
        CHECK(rep.h1_sup_mean_abs == 0.0);
        CHECK(rep.h2_max_row_abs_sum == 1.0);
        CHECK(rep.h3_kernel_abs_sum == 1.0);
        CHECK(rep.h4_mean_avg_dev == 0.0);
    }

    SECTION("decaying mean geometric average") {
        ProcessModel dec{MeanSpec::decaying(1.0, 1.0, 0.5), KernelSpec::white()};
        const auto rep = hypothesis_report(dec, 100);
        CHECK(rep.h4_mean_avg_dev == Catch::Approx(0.02).margin(1e-12));
        CHECK(rep.h1_sup_mean_abs == 2.0);
    }

    SECTION("summable perturbation gap decreases in t") {
        ProcessModel pert{MeanSpec::constant(1.0), KernelSpec::ar1(0.5),
                          Perturbation::separable(1.0, 0.5)};
        double prev = 1e300;
        for (std::size_t t : {64, 128, 256, 512}) {
            const double gap = hypothesis_report(pert, t).h5_weak_gap;
            REQUIRE(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("mean specifications") {
    auto alt = MeanSpec::alternating(1.5);
    CHECK(alt.m(0) == 1.5);
    CHECK(alt.m(1) == -1.5);
    CHECK(alt.lambda_star() == Catch::Approx(kPi));
    CHECK(alt.sup_abs() == 1.5);

    auto dec = MeanSpec::decaying(1.0, -3.0, 0.5);
    CHECK(dec.m(0) == -2.0);
    CHECK(dec.m(2) == Catch::Approx(0.25).margin(1e-15));
    CHECK(dec.sup_abs() == 2.0);
    CHECK(dec.lambda_star() == 0.0);
}
