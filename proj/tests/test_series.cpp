#include <catch2/catch_amalgamated.hpp>

#include "kf/series.hpp"

#include "support.hpp"

using namespace kf;
using kftest::random_function;
using kftest::random_measure;
using Catch::Approx;

namespace {

AtomicMeasure two_atom() { return AtomicMeasure({{0.0, 0.5}, {0.5, 0.5}}); }

FunctionOnSupport two_atom_e1() {
    return FunctionOnSupport(two_atom(), {cplx(1.0), cplx(-1.0)});
}

} // namespace

TEST_CASE("fhat: exact sums and the operator-norm bound") {
    const FunctionOnSupport e0 = exp_vector(two_atom(), 0);
    CHECK(std::abs(fhat(e0, 0.0) - cplx(1.0)) < 1e-15);

    const FunctionOnSupport f = two_atom_e1();
    CHECK(std::abs(fhat(f, 0.0)) < 1e-15);
    CHECK(std::abs(fhat(f, 1.0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(fhat(f, 2.0)) < 1e-15);

    SplitMix64 rng(40);
    for (int t = 0; t < 6; ++t) {
        AtomicMeasure m = random_measure(rng);
        const FunctionOnSupport g = random_function(m, rng);
        for (int k = 0; k < 12; ++k)
            CHECK(std::abs(fhat(g, rng.uniform(-40.0, 40.0))) <= norm(g) + 1e-12);
    }
}

TEST_CASE("coefficients: closed forms on the two-atom measure") {
    // f = e_0 is finished at step 0, so c = (1, 0, 0, ...)
    const Expansion e0c = coefficients_via_g(exp_vector(two_atom(), 0), 8);
    CHECK(std::abs(e0c.coefficients[0] - cplx(1.0)) < 1e-10);
    for (int n = 1; n <= 8; ++n)
        CHECK(std::abs(e0c.coefficients[n]) < 1e-10);

    // f = (1,-1): c = (0, 1, 0, 0, ...)
    const Expansion ec = coefficients_via_g(two_atom_e1(), 8);
    CHECK(std::abs(ec.coefficients[0]) < 1e-12);
    CHECK(std::abs(ec.coefficients[1] - cplx(1.0)) < 1e-12);
    for (int n = 2; n <= 8; ++n)
        CHECK(std::abs(ec.coefficients[n]) < 1e-12);
    CHECK(ec.residual < 1e-12);

    // same instance through the alpha route, including the hand-checked c_2
    const Expansion ea = coefficients_via_alpha(two_atom_e1(), 8);
    CHECK(std::abs(ea.coefficients[2]) < 1e-12);
    CHECK(kftest::max_abs_diff(ec.coefficients, ea.coefficients) < 1e-12);
}

TEST_CASE("coefficient routes agree and c_0 = fhat(0)") {
    SplitMix64 rng(41);
    for (int t = 0; t < 6; ++t) {
        AtomicMeasure m = random_measure(rng);
        const FunctionOnSupport f = random_function(m, rng);
        const Expansion via_g = coefficients_via_g(f, 24);
        const Expansion via_a = coefficients_via_alpha(f, 24);
        const Expansion via_t = coefficients_via_trace(f, 24);
        CHECK(kftest::max_abs_diff(via_g.coefficients, via_a.coefficients) < 1e-10);
        CHECK(kftest::max_abs_diff(via_g.coefficients, via_t.coefficients) < 1e-10);
        CHECK(std::abs(via_a.coefficients[0] - fhat(f, 0.0)) < 1e-13);
        CHECK(via_g.parseval_partial <= norm(f) * norm(f) + 1e-9);
    }
}

TEST_CASE("coefficients are linear in f") {
    SplitMix64 rng(43);
    AtomicMeasure m = random_measure(rng);
    const FunctionOnSupport f = random_function(m, rng);
    const FunctionOnSupport h = random_function(m, rng);
    const cplx a(0.7, -0.2), b(-1.1, 0.5);

    const Expansion combined = coefficients_via_alpha(a * f + b * h, 16);
    const Expansion ef = coefficients_via_alpha(f, 16);
    const Expansion eh = coefficients_via_alpha(h, 16);
    for (int n = 0; n <= 16; ++n)
        CHECK(std::abs(combined.coefficients[n] -
                       (a * ef.coefficients[n] + b * eh.coefficients[n])) < 1e-12);
}

TEST_CASE("synthesize evaluates partial sums pointwise") {
    const FunctionOnSupport ones = synthesize({cplx(1.0)}, two_atom());
    CHECK(ones.values()[0] == cplx(1.0));
    CHECK(ones.values()[1] == cplx(1.0));

    const FunctionOnSupport e1 = synthesize({cplx(0.0), cplx(1.0)}, two_atom());
    CHECK(std::abs(e1.values()[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(e1.values()[1] + cplx(1.0)) < 1e-15);
}

TEST_CASE("synthesis residual tracks the kaczmarz residual") {
    SplitMix64 rng(44);
    for (int t = 0; t < 4; ++t) {
        AtomicMeasure m = random_measure(rng);
        const FunctionOnSupport f = random_function(m, rng);
        const KaczmarzTrace tr = kaczmarz_iterate(f, 48);
        for (int n : {0, 8, 24, 48}) {
            const Expansion e = coefficients_via_g(f, n);
            CHECK(std::abs(norm(f - synthesize(e, m)) - tr.residuals[n]) < 1e-9);
        }
    }
}

TEST_CASE("parseval gap is controlled by the residual") {
    SplitMix64 rng(45);
    for (int t = 0; t < 4; ++t) {
        AtomicMeasure m = random_measure(rng);
        const FunctionOnSupport f = random_function(m, rng);
        const Expansion e = expansion_to_residual(f, 1e-4 * norm(f), 20000);
        const double eps = e.residual;
        CHECK(std::abs(e.parseval_partial - norm(f) * norm(f)) <=
              2.0 * eps * norm(f) + eps * eps + 1e-9);
    }
}

TEST_CASE("mixture expansion: eta = 1 reduces to the plain expansion") {
    SplitMix64 rng(46);
    AtomicMeasure mu = random_measure(rng, 3, 3);
    AtomicMeasure nu({{0.012345, 1.0}});
    const FunctionOnSupport f = random_function(mu, rng);
    const Expansion plain = coefficients_via_g(f, 16);
    const Expansion mixed = mixture_h_expansion(mu, nu, 1.0, f, 16);
    CHECK(kftest::max_abs_diff(plain.coefficients, mixed.coefficients) < 1e-10);
}

TEST_CASE("mixture expansion: delta/delta closed form") {
    AtomicMeasure mu({{0.0, 1.0}});
    AtomicMeasure nu({{0.5, 1.0}});
    FunctionOnSupport f(mu, {cplx(1.0)});

    const Expansion e = mixture_h_expansion(mu, nu, 0.5, f, 8);
    CHECK(std::abs(e.coefficients[0] - cplx(0.5)) < 1e-12);
    CHECK(std::abs(e.coefficients[1] - cplx(0.5)) < 1e-12);
    for (int n = 2; n <= 8; ++n)
        CHECK(std::abs(e.coefficients[n]) < 1e-12);

    // synthesis at x = 0 sums to f(0) = 1
    cplx at0 = 0.0;
    for (const cplx& c : e.coefficients) at0 += c;
    CHECK(std::abs(at0 - cplx(1.0)) < 1e-12);
}

TEST_CASE("mixture error bound against the lambda norm") {
    SplitMix64 rng(47);
    AtomicMeasure mu = random_measure(rng, 3, 3);
    AtomicMeasure nu({{0.98765, 1.0}});
    const double eta = 0.6;
    const FunctionOnSupport f = random_function(mu, rng);

    const AtomicMeasure lambda = mix(mu, nu, eta);
    for (int n_cut : {4, 16, 64}) {
        const Expansion e = mixture_h_expansion(mu, nu, eta, f, n_cut);
        // f~ = f on mu's atoms, 0 on nu's
        std::vector<cplx> tilde(lambda.size(), cplx(0.0));
        for (std::size_t a = 0; a < lambda.size(); ++a)
            for (std::size_t b = 0; b < mu.size(); ++b)
                if (lambda.atoms()[a].x == mu.atoms()[b].x) tilde[a] = f.values()[b];
        const FunctionOnSupport ftilde(lambda, tilde);
        const double lambda_err = norm(ftilde - synthesize(e.coefficients, lambda));
        CHECK(e.residual <= lambda_err / std::sqrt(eta) + 1e-12);
    }
}

TEST_CASE("mixture distinctness indices") {
    AtomicMeasure mu({{0.0, 1.0}});
    AtomicMeasure nu3({{1.0 / 3.0, 1.0}});
    AtomicMeasure nu2({{0.5, 1.0}});

    // different eta shows up at index 0
    CHECK(mixture_distinctness(mu, nu2, 0.5, nu2, 1.0 / 3.0, 16) == 0);

    // identical parameters are indistinguishable
    CHECK(!mixture_distinctness(mu, nu2, 0.5, nu2, 0.5, 16).has_value());

    // same eta, different nu: first differing alpha, here n = 1
    CHECK(mixture_distinctness(mu, nu3, 0.5, nu2, 0.5, 16) == 1);
}

TEST_CASE("mu4 spectrum enumeration") {
    CHECK(mu4_spectrum_below(22) == std::vector<long>{0, 1, 4, 5, 16, 17, 20, 21});
    CHECK(mu4_spectrum_below(1) == std::vector<long>{0});
}

TEST_CASE("spectral expansion on a mu4 flattening") {
    const AtomicMeasure m = flatten_ifs(mu4(), 8);
    SplitMix64 rng(48);
    const FunctionOnSupport f = random_function(m, rng);

    const Expansion spec = spectral_expansion_mu4(f, 8);
    const Expansion kacz = coefficients_via_trace(f, 8);

    // h_0 = g_0 = e_0 and h_1 = g_1 = e_1, so the first two coefficients match
    CHECK(std::abs(spec.coefficients[0] - kacz.coefficients[0]) < 1e-8);
    CHECK(std::abs(spec.coefficients[1] - kacz.coefficients[1]) < 1e-8);

    // h_2 = 0 (2 is not in the spectrum) while g_2 is a genuine vector
    CHECK(spec.coefficients[2] == cplx(0.0));
    const GTriangle tri = g_triangle(alpha_recursive(Measure(mu4()), 2));
    CHECK(norm(g_function(tri, m, 2)) > 0.1);

    // near-orthonormality of the spectral exponentials on the flattening
    const auto lambdas = mu4_spectrum_below(22);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const cplx ip = inner_product(exp_vector(m, double(lambdas[i])),
                                          exp_vector(m, double(lambdas[j])));
            CHECK(std::abs(ip) < 1e-6);
        }

    // anything that is not a mu4 flattening is rejected
    SplitMix64 rng2(49);
    const AtomicMeasure wrong = random_measure(rng2, 4, 4);
    const FunctionOnSupport g = random_function(wrong, rng2);
    CHECK_THROWS_AS(spectral_expansion_mu4(g, 8), validation_error);
}

TEST_CASE("convex combinations of reproducing sequences reproduce") {
    SplitMix64 rng(50);
    AtomicMeasure mu = random_measure(rng, 3, 3);
    AtomicMeasure nu({{0.955, 1.0}});
    const FunctionOnSupport f = random_function(mu, rng);

    const Expansion direct = coefficients_via_alpha(f, 200);
    const Expansion mixed = mixture_h_expansion(mu, nu, 0.5, f, 200);
    const std::vector<cplx> avg =
        convex_combination({direct.coefficients, mixed.coefficients}, {0.3, 0.7});

    const double err = norm(f - synthesize(avg, mu));
    const double worst = std::max(direct.residual, mixed.residual);
    CHECK(err <= worst + 1e-9);

    CHECK_THROWS_AS(convex_combination({direct.coefficients}, {0.5}), validation_error);
    CHECK_THROWS_AS(convex_combination({direct.coefficients}, {0.5, 0.5}), validation_error);
}
