// Minimal tour: expand a function over a two-atom measure, then show that a
// mixture through an unrelated point mass reproduces it with different
// coefficients.

#include <cstdio>

#include "kf/kf.hpp"

int main() {
    using namespace kf;

    const AtomicMeasure m({{0.0, 0.5}, {0.5, 0.5}});
    const FunctionOnSupport f(m, {cplx(1.0), cplx(-1.0)});

    const Expansion e = coefficients_via_alpha(f, 8);
    std::printf("plain expansion (residual %.2e):\n", e.residual);
    for (int n = 0; n <= 4; ++n)
        std::printf("  c_%d = %+.4f %+.4fi\n", n, e.coefficients[n].real(),
                    e.coefficients[n].imag());

    const AtomicMeasure nu({{0.25, 1.0}});
    const Expansion d = mixture_h_expansion(m, nu, 0.5, f, 64);
    std::printf("mixture expansion through 0.5*mu + 0.5*delta_{1/4} (residual %.2e):\n",
                d.residual);
    for (int n = 0; n <= 4; ++n)
        std::printf("  d_%d = %+.4f %+.4fi\n", n, d.coefficients[n].real(),
                    d.coefficients[n].imag());
    return 0;
}
