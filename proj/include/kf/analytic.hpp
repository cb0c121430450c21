/*
 * analytic.hpp — Cauchy integral and normalized Cauchy transform on the disk
 *
 * F(z) = integral (1 - z e^{-2 pi i x})^{-1} dmu(x) is analytic on |z| < 1,
 * has the moment series F(z) = sum muhat(n) z^n, and satisfies Re F > 1/2
 * (each Cauchy kernel maps the disk into that half-plane).  Consequently 1/F
 * is analytic too, and its Taylor coefficients are exactly the alpha sequence:
 * 1/F(z) = sum alpha_n z^n.
 *
 * The normalized Cauchy transform
 *
 *     V f(z) = [ integral f(x) (1 - z e^{-2 pi i x})^{-1} dmu(x) ] / F(z)
 *
 * coincides on the disk with the power series sum <f, g_n> z^n, i.e. with the
 * Fourier coefficients of f read as Taylor coefficients.  Truncation error is
 * controlled by Cauchy-Schwarz + Parseval:
 *
 *     |tail after N| <= ||f|| |z|^{N+1} / sqrt(1 - |z|^2).
 *
 * Evaluation stays strictly inside the disk (|z| <= 1 - 1e-9); boundary
 * behavior is out of numerical scope.
 */

#pragma once

#include <vector>

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"
#include "kf/series.hpp"

namespace kf {

inline constexpr double disk_margin = 1e-9;

// A point of the open unit disk, kept away from the boundary so geometric
// tail bounds stay finite.
class DiskPoint {
  public:
    explicit DiskPoint(cplx z) : z_(z) {
        if (!(std::abs(z) <= 1.0 - disk_margin))
            throw validation_error("disk point: |z| must be <= 1 - 1e-9");
    }
    cplx value() const { return z_; }
    double abs() const { return std::abs(z_); }

  private:
    cplx z_;
};

// F(z) as the exact atomic sum.
inline cplx cauchy_integral(const AtomicMeasure& m, const DiskPoint& z) {
    cplx s = 0.0;
    for (const auto& a : m.atoms())
        s += a.w / (1.0 - z.value() * cis_prod(-1.0, a.x));
    return s;
}

// F(z) via the moment series sum_{n<=K} muhat(n) z^n; works for any measure
// family.  Truncation K is chosen from the geometric tail |z|^{K+1}/(1-|z|).
inline cplx cauchy_integral_series(const Measure& m, const DiskPoint& z,
                                   double tail_target = 1e-12) {
    const double r = z.abs();
    int K = 0;
    if (r > 0.0) {
        const double t = tail_target * (1.0 - r);
        K = static_cast<int>(std::ceil(std::log(t) / std::log(r)));
        K = std::max(K, 1);
    }
    cplx s = 0.0, zn = 1.0;
    for (int n = 0; n <= K; ++n) {
        s += fourier_stieltjes(m, static_cast<double>(n)) * zn;
        zn *= z.value();
    }
    return s;
}

inline double cauchy_series_tail_bound(const DiskPoint& z, int K) {
    const double r = z.abs();
    return std::pow(r, K + 1) / (1.0 - r);
}

// Taylor coefficients of 1/F by power-series division of 1 by the moment
// sequence; the result must match the alpha sequence entrywise.
inline std::vector<cplx> reciprocal_series(const Measure& m, int n_max) {
    if (n_max < 0) throw validation_error("reciprocal_series: N must be >= 0");
    const std::vector<cplx> mh = moments(m, n_max);
    std::vector<cplx> q(static_cast<std::size_t>(n_max) + 1, cplx(0.0));
    q[0] = 1.0 / mh[0]; // muhat(0) = 1 for probability measures
    for (int n = 1; n <= n_max; ++n) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k)
            s += q[k] * mh[n - k];
        q[n] = -s / mh[0];
    }
    return q;
}

// V f(z) as a ratio of two exact atomic sums; the denominator never vanishes
// since Re F > 1/2.
inline cplx normalized_cauchy_direct(const FunctionOnSupport& f, const DiskPoint& z) {
    cplx num = 0.0, den = 0.0;
    const auto& atoms = f.measure().atoms();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const cplx kernel = 1.0 / (1.0 - z.value() * cis_prod(-1.0, atoms[j].x));
        num += atoms[j].w * f.values()[j] * kernel;
        den += atoms[j].w * kernel;
    }
    return num / den;
}

struct CauchySeriesValue {
    cplx value;
    double tail_bound; // ||f|| |z|^{N+1} / sqrt(1-|z|^2)
};

// Truncated sum_{n<=N} <f, g_n> z^n with its Cauchy-Schwarz tail bound.
// Coefficients are taken from the iteration trace (each is bounded by the
// running residual, so the route stays stable at large N).
inline CauchySeriesValue normalized_cauchy_series(const FunctionOnSupport& f,
                                                  const DiskPoint& z, int n_max) {
    const Expansion e = coefficients_via_trace(f, n_max);
    cplx s = 0.0, zn = 1.0;
    for (const cplx& c : e.coefficients) {
        s += c * zn;
        zn *= z.value();
    }
    const double r = z.abs();
    const double tail = norm(f) * std::pow(r, n_max + 1) / std::sqrt(1.0 - r * r);
    return {s, tail};
}

// Truncation order that certifies |tail| <= eps at radius r.
inline int cauchy_series_order_for(double f_norm, double r, double eps) {
    if (r <= 0.0) return 0;
    const double t = eps * std::sqrt(1.0 - r * r) / std::max(f_norm, 1e-300);
    if (t >= 1.0) return 0;
    return static_cast<int>(std::ceil(std::log(t) / std::log(r)));
}

} // namespace kf
