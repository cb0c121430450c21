/*
 * measures.hpp — singular probability measures on [0,1)
 *
 * Two families are representable:
 *
 *   AtomicMeasure       finitely many atoms (x_j, w_j), w_j > 0, sum w_j = 1
 *   SelfSimilarMeasure  Cantor-type IFS measure: scale R, digit set D with
 *                       |D| < R, probabilities p_d; invariant under
 *                       x -> (x + d)/R.  mu3 = (3,{0,2}), mu4 = (4,{0,2}).
 *
 * The Fourier-Stieltjes transform drives everything downstream:
 *
 *   muhat(y) = integral e^{-2 pi i x y} dmu(x)
 *            = sum_j w_j e^{-2 pi i y x_j}                      (atomic)
 *            = prod_{k>=1} sum_d p_d e^{-2 pi i y d / R^k}      (IFS)
 *
 * The IFS product is truncated at K = max(ceil(log_R(max(|y|,1)/eps0)), 20)
 * with eps0 = 1e-14; each dropped factor differs from 1 by at most
 * 2 pi |y| max(D) / R^k, so the tail is certified geometric.
 *
 * L2(mu) structure for atomic measures: <f,g> = sum_j w_j f(x_j) conj(g(x_j)),
 * and the exponentials e_n(x) = e^{2 pi i n x} satisfy <e_k,e_l> = muhat(l-k).
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kf/core.hpp"

namespace kf {

inline constexpr double mass_tolerance = 1e-12;

class AtomicMeasure {
  public:
    struct Atom {
        double x;
        double w;
    };

    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty())
            throw validation_error("atomic measure: needs at least one atom");
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.x < b.x; });
        double mass = 0.0;
        for (std::size_t j = 0; j < atoms_.size(); ++j) {
            const Atom& a = atoms_[j];
            if (!(a.x >= 0.0 && a.x < 1.0))
                throw validation_error("atomic measure: atom position " + std::to_string(a.x) +
                                       " outside [0,1)");
            if (!(a.w > 0.0))
                throw validation_error("atomic measure: atom weight " + std::to_string(a.w) +
                                       " not strictly positive");
            if (j > 0 && atoms_[j - 1].x == a.x)
                throw validation_error("atomic measure: duplicate atom position " +
                                       std::to_string(a.x));
            mass += a.w;
        }
        if (std::abs(mass - 1.0) > mass_tolerance)
            throw validation_error("atomic measure: total mass " + std::to_string(mass) +
                                   " != 1 (inputs are not auto-normalized)");
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    bool operator==(const AtomicMeasure& other) const {
        if (atoms_.size() != other.atoms_.size()) return false;
        for (std::size_t j = 0; j < atoms_.size(); ++j)
            if (atoms_[j].x != other.atoms_[j].x || atoms_[j].w != other.atoms_[j].w)
                return false;
        return true;
    }

    // Content id; stable across recomputation of the same measure.
    std::string id() const {
        std::uint64_t h = 1469598103934665603ULL; // FNV-1a over the raw doubles
        auto mix = [&h](double v) {
            std::uint64_t bits;
            static_assert(sizeof bits == sizeof v);
            std::memcpy(&bits, &v, sizeof bits);
            for (int i = 0; i < 8; ++i) {
                h ^= (bits >> (8 * i)) & 0xffULL;
                h *= 1099511628211ULL;
            }
        };
        for (const Atom& a : atoms_) {
            mix(a.x);
            mix(a.w);
        }
        std::ostringstream os;
        os << "atomic[" << atoms_.size() << "]:" << std::hex << h;
        return os.str();
    }

  private:
    std::vector<Atom> atoms_;
};

class SelfSimilarMeasure {
  public:
    SelfSimilarMeasure(int scale, std::vector<int> digits, std::vector<double> probs)
        : scale_(scale), digits_(std::move(digits)), probs_(std::move(probs)) {
        if (scale_ < 2) throw validation_error("ifs measure: scale R must be >= 2");
        if (digits_.size() < 2)
            throw validation_error("ifs measure: needs at least two digits");
        if (static_cast<int>(digits_.size()) >= scale_)
            throw validation_error("ifs measure: |digits| must be < R (no-overlap support)");
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (digits_[i] < 0 || digits_[i] >= scale_)
                throw validation_error("ifs measure: digit " + std::to_string(digits_[i]) +
                                       " outside [0,R)");
            if (i > 0 && digits_[i] <= digits_[i - 1])
                throw validation_error("ifs measure: digits must be strictly increasing");
        }
        if (probs_.size() != digits_.size())
            throw validation_error("ifs measure: probs and digits must have equal length");
        double mass = 0.0;
        for (double p : probs_) {
            if (!(p > 0.0)) throw validation_error("ifs measure: probabilities must be positive");
            mass += p;
        }
        if (std::abs(mass - 1.0) > mass_tolerance)
            throw validation_error("ifs measure: probabilities sum to " + std::to_string(mass) +
                                   " != 1");
    }

    int scale() const { return scale_; }
    const std::vector<int>& digits() const { return digits_; }
    const std::vector<double>& probs() const { return probs_; }
    int max_digit() const { return digits_.back(); }

    std::string id() const {
        std::ostringstream os;
        os << "ifs:R=" << scale_ << ":d=";
        for (std::size_t i = 0; i < digits_.size(); ++i)
            os << (i ? "," : "") << digits_[i];
        os << ":p=";
        os.precision(17);
        for (std::size_t i = 0; i < probs_.size(); ++i)
            os << (i ? "," : "") << probs_[i];
        return os.str();
    }

  private:
    int scale_;
    std::vector<int> digits_;
    std::vector<double> probs_;
};

using Measure = std::variant<AtomicMeasure, SelfSimilarMeasure>;

inline SelfSimilarMeasure mu3() { return SelfSimilarMeasure(3, {0, 2}, {0.5, 0.5}); }
inline SelfSimilarMeasure mu4() { return SelfSimilarMeasure(4, {0, 2}, {0.5, 0.5}); }

// ---------------------------------------------------------------------------
// Fourier-Stieltjes transform
// ---------------------------------------------------------------------------

inline cplx fourier_stieltjes(const AtomicMeasure& m, double y) {
    cplx s = 0.0;
    for (const auto& a : m.atoms())
        s += a.w * cis_prod(-y, a.x);
    return s;
}

namespace detail {

// One IFS product factor: sum_d p_d e^{-2 pi i y d / R^k}.
inline cplx ifs_factor(const SelfSimilarMeasure& m, double y_over_rk) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < m.digits().size(); ++i)
        s += m.probs()[i] * cis_prod(-y_over_rk, static_cast<double>(m.digits()[i]));
    return s;
}

inline int ifs_truncation_depth(const SelfSimilarMeasure& m, double y) {
    constexpr double eps0 = 1e-14;
    constexpr int k_min = 20;
    const double target = std::max(std::abs(y), 1.0) / eps0;
    const int k = static_cast<int>(std::ceil(std::log(target) / std::log(double(m.scale()))));
    return std::max(k, k_min);
}

} // namespace detail

// Certified bound on |muhat_truncated@K - muhat|: sum of per-factor deviations
// 2 pi |y| max(D) / R^k over k > K.
inline double ifs_tail_bound(const SelfSimilarMeasure& m, double y, int K) {
    const double R = m.scale();
    return two_pi * std::abs(y) * m.max_digit() * std::pow(R, -K) / (R - 1.0);
}

inline cplx fourier_stieltjes(const SelfSimilarMeasure& m, double y) {
    const int K = detail::ifs_truncation_depth(m, y);
    cplx prod = 1.0;
    double scale_k = m.scale();
    for (int k = 1; k <= K; ++k) {
        prod *= detail::ifs_factor(m, y / scale_k);
        scale_k *= m.scale();
    }
    return prod;
}

inline cplx fourier_stieltjes(const Measure& m, double y) {
    return std::visit([y](const auto& mm) { return fourier_stieltjes(mm, y); }, m);
}

// muhat(0..N) as a vector; index n holds muhat(n).
inline std::vector<cplx> moments(const Measure& m, int n_max) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        out.push_back(fourier_stieltjes(m, static_cast<double>(n)));
    return out;
}

// ---------------------------------------------------------------------------
// Functions on the support of an atomic measure
// ---------------------------------------------------------------------------

class FunctionOnSupport {
  public:
    FunctionOnSupport(AtomicMeasure measure, std::vector<cplx> values)
        : measure_(std::move(measure)), values_(std::move(values)) {
        if (values_.size() != measure_.size())
            throw validation_error("function: " + std::to_string(values_.size()) +
                                   " values for " + std::to_string(measure_.size()) + " atoms");
    }

    const AtomicMeasure& measure() const { return measure_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    std::size_t size() const { return values_.size(); }

  private:
    AtomicMeasure measure_;
    std::vector<cplx> values_;
};

inline void require_same_support(const FunctionOnSupport& f, const FunctionOnSupport& g) {
    if (!(f.measure() == g.measure()))
        throw validation_error("functions live on different measures");
}

inline cplx inner_product(const FunctionOnSupport& f, const FunctionOnSupport& g) {
    require_same_support(f, g);
    cplx s = 0.0;
    const auto& atoms = f.measure().atoms();
    for (std::size_t j = 0; j < atoms.size(); ++j)
        s += atoms[j].w * f.values()[j] * std::conj(g.values()[j]);
    return s;
}

inline double norm(const FunctionOnSupport& f) {
    double s = 0.0;
    const auto& atoms = f.measure().atoms();
    for (std::size_t j = 0; j < atoms.size(); ++j)
        s += atoms[j].w * std::norm(f.values()[j]);
    return std::sqrt(s);
}

// e_y restricted to the atoms; frequency may be any real.
inline FunctionOnSupport exp_vector(const AtomicMeasure& m, double y) {
    std::vector<cplx> vals;
    vals.reserve(m.size());
    for (const auto& a : m.atoms())
        vals.push_back(cis_prod(y, a.x));
    return {m, std::move(vals)};
}

inline FunctionOnSupport operator+(const FunctionOnSupport& f, const FunctionOnSupport& g) {
    require_same_support(f, g);
    std::vector<cplx> vals(f.size());
    for (std::size_t j = 0; j < vals.size(); ++j)
        vals[j] = f.values()[j] + g.values()[j];
    return {f.measure(), std::move(vals)};
}

inline FunctionOnSupport operator-(const FunctionOnSupport& f, const FunctionOnSupport& g) {
    require_same_support(f, g);
    std::vector<cplx> vals(f.size());
    for (std::size_t j = 0; j < vals.size(); ++j)
        vals[j] = f.values()[j] - g.values()[j];
    return {f.measure(), std::move(vals)};
}

inline FunctionOnSupport operator*(cplx c, const FunctionOnSupport& f) {
    std::vector<cplx> vals(f.size());
    for (std::size_t j = 0; j < vals.size(); ++j)
        vals[j] = c * f.values()[j];
    return {f.measure(), std::move(vals)};
}

// ---------------------------------------------------------------------------
// IFS flattening and mixtures
// ---------------------------------------------------------------------------

inline constexpr std::size_t default_atom_cap = std::size_t{1} << 20;

// Depth-d IFS iterate: one atom per digit string (d_1..d_depth), position
// sum d_k R^{-k}, weight prod p_{d_k}.  The flattened transform equals the
// IFS product truncated at exactly `depth` factors.
inline AtomicMeasure flatten_ifs(const SelfSimilarMeasure& m, int depth,
                                 std::size_t atom_cap = default_atom_cap) {
    if (depth < 1) throw validation_error("flatten: depth must be >= 1");
    const double bits = depth * std::log2(double(m.scale()));
    if (bits > 52.0)
        throw validation_error("flatten: depth " + std::to_string(depth) +
                               " exceeds double position precision");
    double count_d = std::pow(double(m.digits().size()), depth);
    if (count_d > static_cast<double>(atom_cap))
        throw resource_error("flatten: atom count " + std::to_string(count_d) +
                             " exceeds cap " + std::to_string(atom_cap));
    const std::size_t count = static_cast<std::size_t>(count_d + 0.5);
    const std::size_t base = m.digits().size();

    std::vector<AtomicMeasure::Atom> atoms;
    atoms.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        double x = 0.0, w = 1.0, rk = 1.0;
        std::size_t rest = idx;
        for (int k = 1; k <= depth; ++k) {
            const std::size_t which = rest % base;
            rest /= base;
            rk /= m.scale();
            x += m.digits()[which] * rk;
            w *= m.probs()[which];
        }
        atoms.push_back({x, w});
    }
    return AtomicMeasure(std::move(atoms));
}

// eta*mu + (1-eta)*nu for mutually singular atomic measures (disjoint atoms).
inline AtomicMeasure mix(const AtomicMeasure& mu, const AtomicMeasure& nu, double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw validation_error("mix: eta must lie in (0,1]");
    if (eta == 1.0) return mu;
    std::vector<AtomicMeasure::Atom> atoms;
    atoms.reserve(mu.size() + nu.size());
    for (const auto& a : mu.atoms()) atoms.push_back({a.x, eta * a.w});
    for (const auto& b : nu.atoms()) {
        for (const auto& a : mu.atoms())
            if (a.x == b.x)
                throw validation_error("mix: measures share atom at x=" + std::to_string(b.x) +
                                       " (mutual singularity violated)");
        atoms.push_back({b.x, (1.0 - eta) * b.w});
    }
    return AtomicMeasure(std::move(atoms));
}

} // namespace kf
