// Shared generators for the property-style tests.  Everything is seeded
// splitmix64 so failures reproduce exactly.

#pragma once

#include <vector>

#include "kf/core.hpp"
#include "kf/measures.hpp"

namespace kftest {

using kf::cplx;

// Random atomic probability measure with circular min separation between
// atoms (the conditioning-relevant notion for exponentials).
inline kf::AtomicMeasure random_measure(kf::SplitMix64& rng, int min_atoms = 2,
                                        int max_atoms = 6, double min_sep = 0.05) {
    const int count =
        min_atoms + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_atoms - min_atoms + 1));
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < count) {
        const double x = rng.uniform01();
        bool ok = true;
        for (double other : xs) {
            const double d = std::abs(x - other);
            if (std::min(d, 1.0 - d) < min_sep) ok = false;
        }
        if (ok) xs.push_back(x);
    }
    std::vector<double> ws(xs.size());
    double total = 0.0;
    for (double& w : ws) {
        w = rng.uniform(0.2, 1.0);
        total += w;
    }
    std::vector<kf::AtomicMeasure::Atom> atoms;
    for (std::size_t j = 0; j < xs.size(); ++j)
        atoms.push_back({xs[j], ws[j] / total});
    return kf::AtomicMeasure(std::move(atoms));
}

inline kf::FunctionOnSupport random_function(const kf::AtomicMeasure& m, kf::SplitMix64& rng) {
    std::vector<cplx> vals;
    vals.reserve(m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        vals.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return {m, std::move(vals)};
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

} // namespace kftest
