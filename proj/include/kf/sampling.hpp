/*
 * sampling.hpp — Shannon-type reconstruction of mu-bandlimited functions
 *
 * A function F on the reals is mu-bandlimited when F(y) = fhat(y) for some
 * f in L2(mu).  Its nonnegative-integer samples F(0), F(1), ... determine it
 * everywhere:
 *
 *     F(y) = sum_n ( sum_{j<=n} alpha_{n-j} F(j) ) muhat(y - n),
 *
 * uniformly in y.  The inner sums are the Fourier coefficients c_n of f, so
 * the N-truncated reconstruction is the transform of the Kaczmarz iterate x_N
 * and its sup error is bounded by the L2 residual ||f - x_N||.
 *
 * Note sum_n |muhat(y-n)|^2 may diverge; no Cauchy-Schwarz argument on the
 * kernel is used anywhere here.
 */

#pragma once

#include <algorithm>
#include <vector>

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"
#include "kf/series.hpp"

namespace kf {

struct BandlimitedFunction {
    FunctionOnSupport f;
    std::vector<cplx> samples; // samples[j] = fhat(f, j), j = 0..N

    static BandlimitedFunction from_function(const FunctionOnSupport& f, int n_max) {
        BandlimitedFunction bf{f, {}};
        bf.samples.reserve(static_cast<std::size_t>(n_max) + 1);
        for (int j = 0; j <= n_max; ++j)
            bf.samples.push_back(fhat(f, static_cast<double>(j)));
        return bf;
    }
};

// Sample-driven entry point: integer samples plus the measure are all the
// theorem needs.
inline cplx reconstruct_from_samples(const Measure& m, const std::vector<cplx>& samples,
                                     double y, int n_max) {
    if (n_max < 0) throw validation_error("reconstruct: N must be >= 0");
    if (static_cast<std::size_t>(n_max) + 1 > samples.size())
        throw validation_error("reconstruct: N exceeds available samples");
    const AlphaSequence alpha =
        alpha_from_moments(moments(m, n_max), std::visit([](const auto& mm) { return mm.id(); }, m));
    cplx s = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        cplx cn = 0.0;
        for (int j = 0; j <= n; ++j)
            cn += alpha.values[n - j] * samples[j];
        s += cn * fourier_stieltjes(m, y - static_cast<double>(n));
    }
    return s;
}

inline cplx reconstruct(const BandlimitedFunction& bf, double y, int n_max) {
    return reconstruct_from_samples(Measure(bf.f.measure()), bf.samples, y, n_max);
}

struct SamplingErrorRow {
    int order;        // truncation N
    double sup_error; // sup over the grid of |reconstruct - fhat|
};

// For each N in n_list, the sup over y_grid of the reconstruction error.
inline std::vector<SamplingErrorRow> uniform_error_report(const BandlimitedFunction& bf,
                                                          const std::vector<double>& y_grid,
                                                          const std::vector<int>& n_list) {
    if (y_grid.empty() || n_list.empty())
        throw validation_error("uniform_error_report: empty grid");
    const Measure m{bf.f.measure()};
    const int n_top = *std::max_element(n_list.begin(), n_list.end());
    const AlphaSequence alpha = alpha_from_moments(moments(m, n_top), bf.f.measure().id());

    // c_n once, reused across the grid and across the N ladder
    std::vector<cplx> coeffs(static_cast<std::size_t>(n_top) + 1, cplx(0.0));
    for (int n = 0; n <= n_top; ++n)
        for (int j = 0; j <= n; ++j)
            coeffs[n] += alpha.values[n - j] * bf.samples[j];

    std::vector<SamplingErrorRow> rows;
    for (int n_cut : n_list) {
        double sup = 0.0;
        for (double y : y_grid) {
            cplx s = 0.0;
            for (int n = 0; n <= n_cut; ++n)
                s += coeffs[n] * fourier_stieltjes(m, y - static_cast<double>(n));
            sup = std::max(sup, std::abs(s - fhat(bf.f, y)));
        }
        rows.push_back({n_cut, sup});
    }
    return rows;
}

} // namespace kf
