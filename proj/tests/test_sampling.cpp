#include <limits>

#include <catch2/catch_amalgamated.hpp>

#include "kf/sampling.hpp"

#include "support.hpp"

using namespace kf;
using kftest::random_function;
using kftest::random_measure;

TEST_CASE("bandlimited cache matches fhat") {
    SplitMix64 rng(70);
    AtomicMeasure m = random_measure(rng);
    const FunctionOnSupport f = random_function(m, rng);
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, 16);
    for (int j = 0; j <= 16; ++j)
        CHECK(std::abs(bf.samples[j] - fhat(f, double(j))) < 1e-12);
}

TEST_CASE("point mass reconstructs exactly from one sample") {
    AtomicMeasure d({{0.6, 1.0}});
    FunctionOnSupport f(d, {cplx(1.4, 0.3)});
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, 1);
    SplitMix64 rng(71);
    for (int i = 0; i < 50; ++i) {
        const double y = rng.uniform(-20.0, 20.0);
        CHECK(std::abs(reconstruct(bf, y, 1) - fhat(f, y)) < 1e-12);
    }
}

TEST_CASE("two-atom e_1 reconstructs as muhat(y-1) at N = 2") {
    AtomicMeasure two({{0.0, 0.5}, {0.5, 0.5}});
    FunctionOnSupport f(two, {cplx(1.0), cplx(-1.0)});
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, 2);
    SplitMix64 rng(72);
    for (int i = 0; i < 50; ++i) {
        const double y = rng.uniform(-30.0, 30.0);
        const cplx recon = reconstruct(bf, y, 2);
        CHECK(std::abs(recon - fourier_stieltjes(two, y - 1.0)) < 1e-12);
        CHECK(std::abs(recon - fhat(f, y)) < 1e-12);
    }
}

TEST_CASE("reconstruction self-consistency at integer samples after convergence") {
    SplitMix64 rng(73);
    AtomicMeasure m = random_measure(rng, 3, 4);
    const FunctionOnSupport f = random_function(m, rng);
    const KaczmarzTrace tr = kaczmarz_to_residual(f, 1e-10 * norm(f), 20000);
    const int n_reached = tr.steps();
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, n_reached);
    for (int y : {0, 1, 2, 5, 8}) {
        CHECK(std::abs(reconstruct(bf, double(y), n_reached) - bf.samples[y]) < 1e-9);
    }
}

TEST_CASE("uniform error report: bound, monotonicity, trivial case") {
    AtomicMeasure two({{0.0, 0.5}, {0.5, 0.5}});
    const FunctionOnSupport e0 = exp_vector(two, 0);
    const BandlimitedFunction b0 = BandlimitedFunction::from_function(e0, 4);
    const auto rows0 = uniform_error_report(b0, {0.25, 1.5, 7.0}, {0});
    CHECK(rows0[0].sup_error < 1e-12);

    SplitMix64 rng(74);
    for (int t = 0; t < 3; ++t) {
        AtomicMeasure m = random_measure(rng, 5, 5);
        const FunctionOnSupport f = random_function(m, rng);
        const std::vector<int> ladder = {4, 16, 64};
        const BandlimitedFunction bf = BandlimitedFunction::from_function(f, 64);
        std::vector<double> grid;
        for (int i = 0; i < 40; ++i) grid.push_back(rng.uniform(-5.0, 70.0));

        const auto rows = uniform_error_report(bf, grid, ladder);
        const KaczmarzTrace tr = kaczmarz_iterate(f, 64);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& row : rows) {
            CHECK(row.sup_error <= tr.residuals[row.order] + 1e-9);
            CHECK(row.sup_error <= prev + 1e-9);
            prev = row.sup_error;
        }
    }

    CHECK_THROWS_AS(uniform_error_report(b0, {}, {0}), validation_error);
}

TEST_CASE("reconstruction is the transform of the coefficient partial sum") {
    SplitMix64 rng(75);
    AtomicMeasure m = random_measure(rng, 4, 4);
    const FunctionOnSupport f = random_function(m, rng);
    const int n_max = 24;
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, n_max);
    const Expansion e = coefficients_via_alpha(f, n_max);
    for (double y : {0.3, -2.7, 11.0, 40.25}) {
        cplx manual = 0.0;
        for (int n = 0; n <= n_max; ++n)
            manual += e.coefficients[n] * fourier_stieltjes(m, y - double(n));
        CHECK(std::abs(reconstruct(bf, y, n_max) - manual) < 1e-14);
    }
}

TEST_CASE("sample-driven entry needs no function object") {
    AtomicMeasure two({{0.0, 0.5}, {0.5, 0.5}});
    FunctionOnSupport f(two, {cplx(1.0), cplx(-1.0)});
    // hand samples: fhat(j) = (1 - (-1)^j)/2
    const std::vector<cplx> samples = {cplx(0.0), cplx(1.0), cplx(0.0)};
    const cplx v = reconstruct_from_samples(Measure(two), samples, 0.7, 2);
    CHECK(std::abs(v - fhat(f, 0.7)) < 1e-13);

    CHECK_THROWS_AS(reconstruct_from_samples(Measure(two), samples, 0.7, 5), validation_error);
}
