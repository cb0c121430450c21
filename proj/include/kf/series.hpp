/*
 * series.hpp — Fourier coefficients, synthesis, and non-uniqueness
 *
 * Every f in L2(mu) (mu singular) has a nonharmonic Fourier series
 *
 *     f = sum_n c_n e_n,        c_n = <f, g_n>,
 *
 * with Parseval's identity sum |c_n|^2 = ||f||^2.  Two computational routes
 * for the same c_n:
 *
 *   coefficients_via_g      c_n = <f, g_n> with g_n from the triangle
 *   coefficients_via_alpha  c_n = sum_{j<=n} alpha_{n-j} fhat(j)
 *
 * where fhat(y) = <f, e_y> is the Fourier transform of f (a contraction from
 * L2(mu) into L-infinity).
 *
 * The coefficients are nothing like unique.  Mixing mu with any mutually
 * singular nu — lambda = eta*mu + (1-eta)*nu — and running the same machinery
 * in L2(lambda) yields d_n = <f, eta*h_n>_mu with sum d_n e_n = f in L2(mu)
 * again, and different (nu, eta) give genuinely different coefficient
 * sequences.  For the quaternary Cantor measure the exponential orthonormal
 * basis indexed by Lambda = {sums of distinct powers of 4} provides yet
 * another expansion.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"

namespace kf {

struct Expansion {
    std::string measure_id;
    std::vector<cplx> coefficients; // c_0 .. c_N
    double parseval_partial = 0.0;  // sum |c_n|^2
    double residual = 0.0;          // ||f - sum c_n e_n||

    int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

// fhat(y) = <f, e_y> = integral f(x) e^{-2 pi i y x} dmu(x).
inline cplx fhat(const FunctionOnSupport& f, double y) {
    cplx s = 0.0;
    const auto& atoms = f.measure().atoms();
    for (std::size_t j = 0; j < atoms.size(); ++j)
        s += atoms[j].w * f.values()[j] * cis_prod(-y, atoms[j].x);
    return s;
}

// Pointwise partial sum sum_{n<=N} c_n e^{2 pi i n x} on the atoms.
inline FunctionOnSupport synthesize(const std::vector<cplx>& coefficients,
                                    const AtomicMeasure& m) {
    std::vector<cplx> vals(m.size(), cplx(0.0));
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t n = 0; n < coefficients.size(); ++n)
            vals[a] += coefficients[n] * cis_prod(static_cast<double>(n), m.atoms()[a].x);
    return {m, std::move(vals)};
}

inline FunctionOnSupport synthesize(const Expansion& e, const AtomicMeasure& m) {
    return synthesize(e.coefficients, m);
}

namespace detail {

inline Expansion finish_expansion(const FunctionOnSupport& f, std::vector<cplx> coeffs) {
    Expansion e;
    e.measure_id = f.measure().id();
    e.coefficients = std::move(coeffs);
    for (const cplx& c : e.coefficients) e.parseval_partial += std::norm(c);
    e.residual = norm(f - synthesize(e.coefficients, f.measure()));
    return e;
}

} // namespace detail

// c_n = <f, g_n> with the g triangle evaluated on the atoms.
inline Expansion coefficients_via_g(const FunctionOnSupport& f, int n_max) {
    const AlphaSequence alpha = alpha_recursive(f.measure(), n_max);
    const GTriangle tri = g_triangle(alpha);
    std::vector<cplx> coeffs(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        coeffs[n] = inner_product(f, g_function(tri, f.measure(), n));
    return detail::finish_expansion(f, std::move(coeffs));
}

// c_n = sum_{j<=n} alpha_{n-j} fhat(j): a triangular convolution of the alpha
// sequence with the transform samples.
inline Expansion coefficients_via_alpha(const FunctionOnSupport& f, int n_max) {
    const AlphaSequence alpha = alpha_recursive(f.measure(), n_max);
    std::vector<cplx> fh(static_cast<std::size_t>(n_max) + 1);
    for (int j = 0; j <= n_max; ++j)
        fh[j] = fhat(f, static_cast<double>(j));
    std::vector<cplx> coeffs(static_cast<std::size_t>(n_max) + 1, cplx(0.0));
    for (int n = 0; n <= n_max; ++n)
        for (int j = 0; j <= n; ++j)
            coeffs[n] += alpha.values[n - j] * fh[j];
    return detail::finish_expansion(f, std::move(coeffs));
}

// Coefficients harvested from the iteration itself (<f - x_{n-1}, e_n> equals
// <f, g_n> identically); the numerically steadiest route for large N since
// every term is bounded by the current residual.
inline Expansion coefficients_via_trace(const FunctionOnSupport& f, int n_max) {
    KaczmarzTrace tr = kaczmarz_iterate(f, n_max);
    return detail::finish_expansion(f, std::move(tr.coeffs));
}

// Smallest N with Kaczmarz residual <= target (or n_cap), plus those
// coefficients.  The honest adaptive interface: no convergence rate is
// available a priori.
inline Expansion expansion_to_residual(const FunctionOnSupport& f, double target, int n_cap) {
    KaczmarzTrace tr = kaczmarz_to_residual(f, target, n_cap);
    return detail::finish_expansion(f, std::move(tr.coeffs));
}

// ---------------------------------------------------------------------------
// Mixture expansions (non-uniqueness)
// ---------------------------------------------------------------------------

// d_n = <f, eta*h_n>_mu where {h_n} is the auxiliary sequence of
// lambda = eta*mu + (1-eta)*nu.  Synthesis over mu converges to f with
// ||f - S_N||_mu <= eta^{-1/2} ||f~ - S_N||_lambda.
inline Expansion mixture_h_expansion(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                     double eta, const FunctionOnSupport& f, int n_max) {
    if (!(f.measure() == mu))
        throw validation_error("mixture: f must live on mu");
    const AtomicMeasure lambda = mix(mu, nu, eta);
    const AlphaSequence alpha = alpha_recursive(lambda, n_max);
    const GTriangle tri = g_triangle(alpha);

    std::vector<cplx> coeffs(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        // h_n restricted to mu's atoms
        cplx d = 0.0;
        for (std::size_t a = 0; a < mu.size(); ++a) {
            cplx hn = 0.0;
            for (std::size_t j = 0; j < tri.row(n).size(); ++j)
                hn += tri.row(n)[j] * cis_prod(static_cast<double>(j), mu.atoms()[a].x);
            d += mu.atoms()[a].w * f.values()[a] * std::conj(eta * hn);
        }
        coeffs[n] = d;
    }

    Expansion e;
    e.measure_id = lambda.id();
    e.coefficients = std::move(coeffs);
    for (const cplx& c : e.coefficients) e.parseval_partial += std::norm(c);
    e.residual = norm(f - synthesize(e.coefficients, mu));
    return e;
}

// First index n <= n_max at which eta*h_n and eta'*h'_n differ as elements of
// L2(mu) by more than tol, or nullopt.  When eta != eta' this is 0; when
// eta = eta' it is the first index where the two alpha sequences differ.
inline std::optional<int> mixture_distinctness(const AtomicMeasure& mu,
                                               const AtomicMeasure& nu, double eta,
                                               const AtomicMeasure& nu2, double eta2,
                                               int n_max, double tol = 1e-9) {
    const AtomicMeasure lambda1 = mix(mu, nu, eta);
    const AtomicMeasure lambda2 = mix(mu, nu2, eta2);
    const GTriangle t1 = g_triangle(alpha_recursive(lambda1, n_max));
    const GTriangle t2 = g_triangle(alpha_recursive(lambda2, n_max));

    for (int n = 0; n <= n_max; ++n) {
        double dev2 = 0.0;
        for (std::size_t a = 0; a < mu.size(); ++a) {
            cplx h1 = 0.0, h2 = 0.0;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
                const cplx ej = cis_prod(static_cast<double>(j), mu.atoms()[a].x);
                h1 += t1.row(n)[j] * ej;
                h2 += t2.row(n)[j] * ej;
            }
            dev2 += mu.atoms()[a].w * std::norm(eta * h1 - eta2 * h2);
        }
        if (std::sqrt(dev2) > tol) return n;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The quaternary Cantor measure's orthonormal exponential basis
// ---------------------------------------------------------------------------

// Elements of Lambda = { sum_k b_k 4^k : b_k in {0,1} } below `limit`,
// ascending: 0, 1, 4, 5, 16, 17, 20, 21, ...
inline std::vector<long> mu4_spectrum_below(long limit) {
    std::vector<long> out;
    for (long i = 0;; ++i) {
        long lam = 0, bit = 1;
        for (long rest = i; rest > 0; rest >>= 1, bit *= 4)
            if (rest & 1) lam += bit;
        if (lam >= limit) break;
        out.push_back(lam);
    }
    return out;
}

namespace detail {

inline int mu4_depth_of(const AtomicMeasure& m) {
    std::size_t count = m.size();
    int depth = 0;
    while (count > 1) {
        if (count % 2 != 0) return -1;
        count /= 2;
        ++depth;
    }
    return depth >= 1 ? depth : -1;
}

} // namespace detail

// Expansion of f against h_n = e_n when n is in the mu4 spectrum, 0 otherwise.
// f must live on a flattening of mu4; anything else is rejected.
inline Expansion spectral_expansion_mu4(const FunctionOnSupport& f, int n_max) {
    const AtomicMeasure& m = f.measure();
    const int depth = detail::mu4_depth_of(m);
    if (depth < 0 || !(m == flatten_ifs(mu4(), depth)))
        throw validation_error("spectral_expansion_mu4: measure is not a mu4 flattening");

    std::vector<cplx> coeffs(static_cast<std::size_t>(n_max) + 1, cplx(0.0));
    for (long lam : mu4_spectrum_below(n_max + 1))
        coeffs[lam] = inner_product(f, exp_vector(m, static_cast<double>(lam)));
    return detail::finish_expansion(f, std::move(coeffs));
}

// Convex combinations of reproducing coefficient sequences reproduce as well.
inline std::vector<cplx> convex_combination(const std::vector<std::vector<cplx>>& sequences,
                                            const std::vector<double>& weights) {
    if (sequences.empty() || sequences.size() != weights.size())
        throw validation_error("convex_combination: need one weight per sequence");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw validation_error("convex_combination: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > mass_tolerance)
        throw validation_error("convex_combination: weights must sum to 1");
    std::size_t len = 0;
    for (const auto& s : sequences) len = std::max(len, s.size());
    std::vector<cplx> out(len, cplx(0.0));
    for (std::size_t i = 0; i < sequences.size(); ++i)
        for (std::size_t n = 0; n < sequences[i].size(); ++n)
            out[n] += weights[i] * sequences[i][n];
    return out;
}

} // namespace kf
