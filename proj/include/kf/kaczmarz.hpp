/*
 * kaczmarz.hpp — the Kaczmarz algorithm over the exponentials {e_n} in L2(mu)
 *
 * For a singular Borel probability measure mu the sequence e_n(x) = e^{2 pi i n x},
 * n = 0,1,2,..., is effective: the row-action iteration
 *
 *     x_0 = <f, e_0> e_0,      x_n = x_{n-1} + <f - x_{n-1}, e_n> e_n
 *
 * converges to f in L2(mu) for every f.  The auxiliary sequence
 *
 *     g_0 = e_0,               g_n = e_n - sum_{i<n} <e_n, e_i> g_i
 *
 * is a Parseval frame, carries the partial sums via x_n = sum_{i<=n} <f, g_i> e_i,
 * and has the closed form
 *
 *     g_n = sum_{j<=n} conj(alpha_{n-j}) e_j,
 *
 * where the scalars alpha_n depend only on mu through its moments:
 *
 *     alpha_0 = 1,   alpha_n = -sum_{j<n} muhat(n-j) alpha_j.
 *
 * Everything in this header is that package: the alpha sequence, the g
 * triangle (rows of e-basis coefficients), the iteration itself, and the
 * partial-sum identity used as a cross-check.
 */

#pragma once

#include <string>
#include <vector>

#include "kf/core.hpp"
#include "kf/measures.hpp"

namespace kf {

inline constexpr double alpha_conditioning_limit = 1e12;

struct AlphaSequence {
    std::string measure_id;
    std::vector<cplx> values; // alpha_0 .. alpha_N

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    // The linear recursion can amplify rounding when the moments sit near the
    // unit circle; past this point the values are suspect and callers should
    // surface a warning (they are still returned unchanged).
    bool conditioning_warning() const { return max_abs() > alpha_conditioning_limit; }
};

// alpha from a moment vector muhat(0..N); muhat[0] must be 1.
inline AlphaSequence alpha_from_moments(const std::vector<cplx>& muhat, std::string measure_id) {
    AlphaSequence a;
    a.measure_id = std::move(measure_id);
    a.values.resize(muhat.size());
    if (muhat.empty()) return a;
    a.values[0] = 1.0;
    for (std::size_t n = 1; n < muhat.size(); ++n) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += muhat[n - j] * a.values[j];
        a.values[n] = -s;
    }
    return a;
}

inline AlphaSequence alpha_recursive(const Measure& m, int n_max) {
    if (n_max < 0) throw validation_error("alpha: N must be >= 0");
    const std::string id = std::visit([](const auto& mm) { return mm.id(); }, m);
    return alpha_from_moments(moments(m, n_max), id);
}

inline AlphaSequence alpha_recursive(const AtomicMeasure& m, int n_max) {
    return alpha_recursive(Measure(m), n_max);
}

inline AlphaSequence alpha_recursive(const SelfSimilarMeasure& m, int n_max) {
    return alpha_recursive(Measure(m), n_max);
}

// ---------------------------------------------------------------------------
// The g triangle: row n holds the e-basis coefficients of g_n
// ---------------------------------------------------------------------------

struct GTriangle {
    // rows[n][j] = coefficient of e_j in g_n, j = 0..n
    std::vector<std::vector<cplx>> rows;

    std::size_t size() const { return rows.size(); }
    const std::vector<cplx>& row(std::size_t n) const { return rows[n]; }
};

// row n = (conj(alpha_n), conj(alpha_{n-1}), ..., conj(alpha_0))
inline GTriangle g_triangle(const AlphaSequence& alpha) {
    GTriangle t;
    t.rows.resize(alpha.values.size());
    for (std::size_t n = 0; n < alpha.values.size(); ++n) {
        t.rows[n].resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j)
            t.rows[n][j] = std::conj(alpha.values[n - j]);
    }
    return t;
}

// g_n computed directly from the defining recursion, entirely in e-basis
// coordinates: row_n = delta_n - sum_{i<n} <e_n, e_i> row_i with
// <e_n, e_i> = muhat(i - n).  Independent route used to cross-check
// g_triangle(alpha_recursive(...)).
inline GTriangle g_by_recursion(const AtomicMeasure& m, int n_max) {
    if (n_max < 0) throw validation_error("g_by_recursion: N must be >= 0");
    std::vector<cplx> mh(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        mh[n] = fourier_stieltjes(m, static_cast<double>(n));

    GTriangle t;
    t.rows.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        std::vector<cplx>& row = t.rows[n];
        row.assign(n + 1, cplx(0.0));
        row[n] = 1.0;
        for (int i = 0; i < n; ++i) {
            const cplx c = std::conj(mh[n - i]); // <e_n, e_i> = muhat(i-n)
            const std::vector<cplx>& prev = t.rows[i];
            for (int j = 0; j <= i; ++j)
                row[j] -= c * prev[j];
        }
    }
    return t;
}

// Pointwise values of g_n on the atoms.
inline FunctionOnSupport g_function(const GTriangle& t, const AtomicMeasure& m, std::size_t n) {
    const std::vector<cplx>& row = t.row(n);
    std::vector<cplx> vals(m.size(), cplx(0.0));
    for (std::size_t j = 0; j < row.size(); ++j) {
        for (std::size_t a = 0; a < m.size(); ++a)
            vals[a] += row[j] * cis_prod(static_cast<double>(j), m.atoms()[a].x);
    }
    return {m, std::move(vals)};
}

// ---------------------------------------------------------------------------
// The iteration
// ---------------------------------------------------------------------------

struct KaczmarzTrace {
    std::vector<double> residuals; // residuals[n] = ||f - x_n||
    std::vector<cplx> coeffs;      // coeffs[n] = <f - x_{n-1}, e_n> = <f, g_n>
    std::vector<FunctionOnSupport> iterates; // filled only when requested
    std::vector<cplx> final_values;          // x_N on the atoms
    double f_norm = 0.0;

    int steps() const { return static_cast<int>(residuals.size()) - 1; }
};

inline KaczmarzTrace kaczmarz_iterate(const FunctionOnSupport& f, int n_max,
                                      bool store_iterates = false) {
    if (n_max < 0) throw validation_error("kaczmarz: N must be >= 0");
    const AtomicMeasure& m = f.measure();
    const std::size_t d = m.size();

    KaczmarzTrace tr;
    tr.f_norm = norm(f);
    tr.residuals.reserve(n_max + 1);
    tr.coeffs.reserve(n_max + 1);
    if (store_iterates) tr.iterates.reserve(n_max + 1);

    std::vector<cplx> x(d, cplx(0.0));
    std::vector<cplx> en(d);
    for (int n = 0; n <= n_max; ++n) {
        for (std::size_t j = 0; j < d; ++j)
            en[j] = cis_prod(static_cast<double>(n), m.atoms()[j].x);
        cplx gamma = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            gamma += m.atoms()[j].w * (f.values()[j] - x[j]) * std::conj(en[j]);
        for (std::size_t j = 0; j < d; ++j)
            x[j] += gamma * en[j];

        double r2 = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            r2 += m.atoms()[j].w * std::norm(f.values()[j] - x[j]);
        tr.residuals.push_back(std::sqrt(r2));
        tr.coeffs.push_back(gamma);
        if (store_iterates) tr.iterates.emplace_back(m, x);
    }
    tr.final_values = std::move(x);
    return tr;
}

// Runs until ||f - x_n|| <= target or n_max steps, whichever first.
inline KaczmarzTrace kaczmarz_to_residual(const FunctionOnSupport& f, double target, int n_max) {
    const AtomicMeasure& m = f.measure();
    const std::size_t d = m.size();

    KaczmarzTrace tr;
    tr.f_norm = norm(f);
    std::vector<cplx> x(d, cplx(0.0));
    std::vector<cplx> en(d);
    for (int n = 0; n <= n_max; ++n) {
        for (std::size_t j = 0; j < d; ++j)
            en[j] = cis_prod(static_cast<double>(n), m.atoms()[j].x);
        cplx gamma = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            gamma += m.atoms()[j].w * (f.values()[j] - x[j]) * std::conj(en[j]);
        for (std::size_t j = 0; j < d; ++j)
            x[j] += gamma * en[j];
        double r2 = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            r2 += m.atoms()[j].w * std::norm(f.values()[j] - x[j]);
        tr.residuals.push_back(std::sqrt(r2));
        tr.coeffs.push_back(gamma);
        if (tr.residuals.back() <= target) break;
    }
    tr.final_values = std::move(x);
    return tr;
}

// Max pointwise deviation between the iterates x_n and the partial sums
// sum_{i<=n} <f, g_i> e_i over n = 0..N and all atoms.
inline double partial_sum_identity_check(const FunctionOnSupport& f, int n_max) {
    const AtomicMeasure& m = f.measure();
    const std::size_t d = m.size();

    KaczmarzTrace tr = kaczmarz_iterate(f, n_max, /*store_iterates=*/true);

    const AlphaSequence alpha = alpha_recursive(m, n_max);
    const GTriangle tri = g_triangle(alpha);

    double max_dev = 0.0;
    std::vector<cplx> partial(d, cplx(0.0));
    for (int n = 0; n <= n_max; ++n) {
        const FunctionOnSupport gn = g_function(tri, m, n);
        const cplx cn = inner_product(f, gn);
        for (std::size_t j = 0; j < d; ++j) {
            partial[j] += cn * cis_prod(static_cast<double>(n), m.atoms()[j].x);
            max_dev = std::max(max_dev, std::abs(partial[j] - tr.iterates[n].values()[j]));
        }
    }
    return max_dev;
}

// Diagnostic only: sum_{n<=N} |<f, e_n>|^2 / ||f||^2.  The exponentials are
// never Bessel in L2(mu) for singular mu, so this ratio admits no uniform
// bound as N grows; no finite computation certifies that, hence no assert.
inline double bessel_ratio(const FunctionOnSupport& f, int n_max) {
    double s = 0.0;
    for (int n = 0; n <= n_max; ++n)
        s += std::norm(inner_product(f, exp_vector(f.measure(), n)));
    const double nf = norm(f);
    return nf > 0.0 ? s / (nf * nf) : 0.0;
}

} // namespace kf
