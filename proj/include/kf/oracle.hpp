/*
 * oracle.hpp — deliberately naive ground-truth routes
 *
 * Everything here exists to cross-check the fast paths, so each routine takes
 * the most literal road available:
 *
 *   compositions(n)            exact enumeration of the 2^{n-1} ordered tuples
 *   alpha_by_compositions      alpha_n = sum_{p} (-1)^{l(p)} prod_j muhat(p_j)
 *   alpha_by_gram_inversion    forward substitution on the lower-triangular
 *                              Toeplitz Gram matrix G_ij = muhat(j-i), i >= j
 *   projection_oracle          rank-revealing QR projection onto span(e_0..e_N)
 *
 * Hard caps keep the whole suite at seconds: n <= 20 for enumeration, N <= 18
 * for the composition sum, N <= 512 for the Gram route.
 */

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"

namespace kf::oracle {

using Composition = std::vector<int>; // ordered positive parts

// All compositions of n in lexicographic order; |P_n| = 2^{n-1}.
inline std::vector<Composition> compositions(int n) {
    if (n < 1) throw validation_error("compositions: n must be >= 1");
    if (n > 20) throw resource_error("compositions: n > 20 (2^{n-1} growth)");
    std::vector<Composition> out;
    out.reserve(std::size_t{1} << (n - 1));
    Composition cur;
    // first part ascending + recursion on the remainder = lexicographic order
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int first = 1; first <= rest; ++first) {
            cur.push_back(first);
            self(self, rest - first);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

inline AlphaSequence alpha_by_compositions(const Measure& m, int n_max) {
    if (n_max > 18) throw resource_error("alpha_by_compositions: N > 18");
    if (n_max < 0) throw validation_error("alpha: N must be >= 0");
    const std::vector<cplx> mh = moments(m, n_max);

    AlphaSequence a;
    a.measure_id = std::visit([](const auto& mm) { return mm.id(); }, m);
    a.values.resize(static_cast<std::size_t>(n_max) + 1);
    a.values[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        cplx s = 0.0;
        for (const Composition& p : compositions(n)) {
            cplx prod = (p.size() % 2 == 0) ? 1.0 : -1.0;
            for (int part : p) prod *= mh[part];
            s += prod;
        }
        a.values[n] = s;
    }
    return a;
}

// The Gram matrix of (e_0..e_N) in L2(mu), read lower-triangular:
// G_ij = <e_i, e_j> = muhat(j-i) for i >= j (unit diagonal).  Solving
// G x = delta_0 by forward substitution gives the first column of G^{-1},
// and alpha_n = conj((G^{-1})_{n0}).
inline AlphaSequence alpha_by_gram_inversion(const Measure& m, int n_max) {
    if (n_max > 512) throw resource_error("alpha_by_gram_inversion: N > 512");
    if (n_max < 0) throw validation_error("alpha: N must be >= 0");
    const std::size_t n = static_cast<std::size_t>(n_max) + 1;

    std::vector<cplx> mh(n);
    for (std::size_t k = 0; k < n; ++k)
        mh[k] = fourier_stieltjes(m, static_cast<double>(k));

    std::vector<cplx> x(n, cplx(0.0));
    x[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < i; ++j)
            s += std::conj(mh[i - j]) * x[j]; // G_ij = muhat(j-i) = conj(muhat(i-j))
        x[i] = -s;
    }

    AlphaSequence a;
    a.measure_id = std::visit([](const auto& mm) { return mm.id(); }, m);
    a.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        a.values[i] = std::conj(x[i]);
    return a;
}

// Orthogonal projection of f onto span(e_0..e_N) in L2(mu), via column-pivoted
// QR on the weighted coordinate matrix.  Least-squares optimal, so it bounds
// the Kaczmarz residual from below at every N.
inline FunctionOnSupport projection_oracle(const FunctionOnSupport& f, int n_max) {
    if (n_max < 0) throw validation_error("projection: N must be >= 0");
    const AtomicMeasure& m = f.measure();
    const Eigen::Index d = static_cast<Eigen::Index>(m.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(n_max) + 1;

    Eigen::MatrixXcd A(d, cols);
    Eigen::VectorXcd b(d);
    std::vector<double> sqw(m.size());
    for (Eigen::Index j = 0; j < d; ++j) {
        sqw[j] = std::sqrt(m.atoms()[j].w);
        b(j) = sqw[j] * f.values()[j];
        for (Eigen::Index c = 0; c < cols; ++c)
            A(j, c) = sqw[j] * cis_prod(static_cast<double>(c), m.atoms()[j].x);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    const Eigen::Index r = qr.rank();
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, std::max<Eigen::Index>(r, 0));
    Eigen::VectorXcd proj = Q * (Q.adjoint() * b);

    std::vector<cplx> vals(m.size());
    for (Eigen::Index j = 0; j < d; ++j)
        vals[j] = proj(j) / sqw[j];
    return {m, std::move(vals)};
}

} // namespace kf::oracle
