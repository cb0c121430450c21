// kfour — command-line front end
//
// Subcommands: transform, alpha, gtriangle, kaczmarz, coeffs, synth, mixture,
// cauchy, sample, verify.  Exit codes: 0 success, 1 numerical contract
// violation (a cross-check exceeded its tolerance; the offending quantity is
// printed), 2 validation error (bad file, bad option, bad measure).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kf/kf.hpp"
#include "kf/verify.hpp"

namespace {

using namespace kf;

struct GridSpec {
    double start = 0.0, stop = 0.0, step = 1.0;

    std::vector<double> points() const {
        std::vector<double> out;
        // inclusive stop, with a half-ulp-ish cushion against step rounding
        for (double y = start; y <= stop + 1e-9 * step; y += step)
            out.push_back(y);
        return out;
    }
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw validation_error("grid: expected START:STOP:STEP, got \"" + s + "\"");
    try {
        g.start = std::stod(s.substr(0, c1));
        g.stop = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        g.step = std::stod(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw validation_error("grid: non-numeric field in \"" + s + "\"");
    }
    if (!(g.step > 0.0)) throw validation_error("grid: STEP must be > 0");
    if (g.stop < g.start) throw validation_error("grid: STOP must be >= START");
    return g;
}

// Atoms for commands that need a function space; IFS measures are flattened.
AtomicMeasure atoms_of(const Measure& m, int depth) {
    if (std::holds_alternative<AtomicMeasure>(m)) return std::get<AtomicMeasure>(m);
    return flatten_ifs(std::get<SelfSimilarMeasure>(m), depth);
}

struct CommonOpts {
    std::vector<std::string> measure_paths;
    std::string function_path;
    std::string out;
    std::string grid;
    int n = 64;
    int depth = 6;
    double eta = 0.5;
    double tol = 1e-8;
    std::uint64_t seed = 1;
};

int cmd_transform(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    std::vector<std::vector<double>> rows;
    for (double y : parse_grid(o.grid).points()) {
        const cplx v = fourier_stieltjes(m, y);
        rows.push_back({y, v.real(), v.imag()});
    }
    io::write_csv(o.out.empty() ? "transform.csv" : o.out, "y,re,im", rows);
    return 0;
}

int cmd_alpha(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AlphaSequence a = alpha_recursive(m, o.n);
    if (a.conditioning_warning())
        std::cerr << "warning: max|alpha| = " << a.max_abs()
                  << " exceeds 1e12; values are numerically suspect\n";
    io::write_alpha_csv(o.out.empty() ? "alpha.csv" : o.out, a);
    return 0;
}

int cmd_gtriangle(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    io::write_gtriangle_csv(o.out.empty() ? "gtriangle.csv" : o.out,
                            g_triangle(alpha_recursive(m, o.n)));
    return 0;
}

int cmd_kaczmarz(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AtomicMeasure am = atoms_of(m, o.depth);
    const FunctionOnSupport f = io::read_function(o.function_path, am, o.seed);
    const KaczmarzTrace tr = kaczmarz_iterate(f, o.n);
    io::write_residuals_csv(o.out.empty() ? "residuals.csv" : o.out, tr);
    std::cout << "residual after N=" << o.n << ": " << tr.residuals.back() << "\n";
    return 0;
}

int cmd_coeffs(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AtomicMeasure am = atoms_of(m, o.depth);
    const FunctionOnSupport f = io::read_function(o.function_path, am, o.seed);
    const Expansion e = coefficients_via_alpha(f, o.n);

    // guard: both coefficient routes must agree on a prefix
    const int guard_n = std::min(o.n, 64);
    const Expansion via_g = coefficients_via_g(f, guard_n);
    double dev = 0.0;
    for (int n = 0; n <= guard_n; ++n)
        dev = std::max(dev, std::abs(e.coefficients[n] - via_g.coefficients[n]));
    if (dev > 1e-10 * std::max(1.0, norm(f))) {
        std::cerr << "contract violation: coefficient routes disagree by " << dev << "\n";
        return 1;
    }
    io::write_json(o.out.empty() ? "expansion.json" : o.out, io::expansion_to_json(e, m));
    return 0;
}

int cmd_synth(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AtomicMeasure am = atoms_of(m, o.depth);
    std::ifstream in(o.function_path);
    if (!in) throw validation_error("cannot open expansion file " + o.function_path);
    io::json j;
    try {
        in >> j;
    } catch (const io::json::parse_error& err) {
        throw validation_error(std::string("expansion file: ") + err.what());
    }
    const Expansion e = io::expansion_from_json(j);
    const FunctionOnSupport s = synthesize(e, am);
    io::write_json(o.out.empty() ? "synth.json" : o.out, io::function_to_json(s));
    return 0;
}

int cmd_mixture(const CommonOpts& o) {
    if (o.measure_paths.size() != 2)
        throw validation_error("mixture: pass --measure twice (mu first, nu second)");
    const Measure m1 = io::read_measure(o.measure_paths[0]);
    const Measure m2 = io::read_measure(o.measure_paths[1]);
    const AtomicMeasure mu = atoms_of(m1, o.depth);
    const AtomicMeasure nu = atoms_of(m2, o.depth);
    const FunctionOnSupport f = io::read_function(o.function_path, mu, o.seed);
    const Expansion e = mixture_h_expansion(mu, nu, o.eta, f, o.n);
    io::write_json(o.out.empty() ? "mixture.json" : o.out,
                   io::expansion_to_json(e, Measure(mix(mu, nu, o.eta))));
    std::cout << "mixture expansion residual over mu: " << e.residual << "\n";
    return 0;
}

int cmd_cauchy(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AtomicMeasure am = atoms_of(m, o.depth);
    const FunctionOnSupport f = io::read_function(o.function_path, am, o.seed);

    std::vector<std::vector<double>> rows;
    constexpr int angles = 16;
    for (double r : parse_grid(o.grid).points()) {
        if (r < 0.0 || r > 1.0 - disk_margin)
            throw validation_error("cauchy: radius " + std::to_string(r) +
                                   " outside [0, 1-1e-9]");
        for (int k = 0; k < angles; ++k) {
            const DiskPoint z(std::polar(r, two_pi * k / angles));
            const int order = std::max(cauchy_series_order_for(norm(f), r, o.tol), 8);
            const CauchySeriesValue sv = normalized_cauchy_series(f, z, order);
            const cplx direct = normalized_cauchy_direct(f, z);
            if (std::abs(direct - sv.value) > sv.tail_bound + 1e-12) {
                std::cerr << "contract violation: |direct - series| = "
                          << std::abs(direct - sv.value) << " exceeds tail bound "
                          << sv.tail_bound << " at z = " << z.value() << "\n";
                return 1;
            }
            rows.push_back({z.value().real(), z.value().imag(), sv.value.real(),
                            sv.value.imag(), sv.tail_bound});
        }
    }
    io::write_csv(o.out.empty() ? "cauchy_grid.csv" : o.out,
                  "re_z,im_z,re_V,im_V,tail_bound", rows);
    return 0;
}

int cmd_sample(const CommonOpts& o) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    const AtomicMeasure am = atoms_of(m, o.depth);
    const FunctionOnSupport f = io::read_function(o.function_path, am, o.seed);
    const BandlimitedFunction bf = BandlimitedFunction::from_function(f, o.n);
    const std::vector<double> ys = parse_grid(o.grid).points();

    std::vector<int> ladder;
    for (int n = 4; n < o.n; n *= 4) ladder.push_back(n);
    ladder.push_back(o.n);

    const KaczmarzTrace tr = kaczmarz_iterate(f, o.n);
    std::vector<std::vector<double>> rows;
    for (int n_cut : ladder) {
        double sup = 0.0;
        for (double y : ys) {
            const cplx recon = reconstruct(bf, y, n_cut);
            const cplx truth = fhat(f, y);
            const double err = std::abs(recon - truth);
            sup = std::max(sup, err);
            rows.push_back({double(n_cut), y, recon.real(), recon.imag(), truth.real(),
                            truth.imag(), err});
        }
        if (sup > tr.residuals[n_cut] + 1e-9) {
            std::cerr << "contract violation: sup reconstruction error " << sup
                      << " exceeds residual " << tr.residuals[n_cut] << " at N = " << n_cut
                      << "\n";
            return 1;
        }
    }
    io::write_csv(o.out.empty() ? "sampling_report.csv" : o.out,
                  "N,y,re_recon,im_recon,re_true,im_true,abs_err", rows);
    return 0;
}

int cmd_verify(const CommonOpts& o, int n_max, double residual_factor) {
    const Measure m = io::read_measure(o.measure_paths.at(0));
    VerifyOptions opt;
    opt.seed = o.seed;
    opt.n_max = n_max;
    opt.residual_factor = residual_factor;
    opt.depth = o.depth;

    const auto results = run_verify(m, opt);
    bool all = true;
    for (const auto& r : results) {
        const char* tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
        std::printf("%-4s  %-22s %s\n", tag, r.name.c_str(), r.detail.c_str());
        if (!r.informational && !r.pass) all = false;
    }
    int checked = 0, passed = 0;
    for (const auto& r : results)
        if (!r.informational) {
            ++checked;
            passed += r.pass;
        }
    std::printf("%s  %d/%d checks passed\n", all ? "OK" : "FAIL", passed, checked);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier expansions in L2(mu) for singular measures on [0,1)"};
    app.require_subcommand(1);

    CommonOpts o;
    int verify_nmax = 20000;
    double verify_tol = 1e-3;

    auto add_measure = [&](CLI::App* c, int count = 1) {
        c->add_option("--measure", o.measure_paths, "measure file (JSON)")
            ->required()
            ->expected(count);
    };
    auto add_function = [&](CLI::App* c) {
        c->add_option("--function", o.function_path,
                      "function file (JSON values or generator string)")
            ->required();
    };
    auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "output path"); };
    auto add_seed = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "PRNG seed for generated functions");
    };
    auto add_depth = [&](CLI::App* c) {
        c->add_option("--depth", o.depth, "IFS flattening depth (atoms = |digits|^depth)");
    };

    CLI::App* transform = app.add_subcommand("transform", "Fourier-Stieltjes transform on a grid");
    add_measure(transform);
    transform->add_option("--grid", o.grid, "START:STOP:STEP")->required();
    add_out(transform);

    CLI::App* alpha = app.add_subcommand("alpha", "alpha sequence of the measure");
    add_measure(alpha);
    alpha->add_option("--N", o.n, "truncation order")->required();
    add_out(alpha);

    CLI::App* gtriangle = app.add_subcommand("gtriangle", "e-basis coefficients of g_0..g_N");
    add_measure(gtriangle);
    gtriangle->add_option("--N", o.n, "truncation order")->required();
    add_out(gtriangle);

    CLI::App* kacz = app.add_subcommand("kaczmarz", "run the iteration, emit residuals");
    add_measure(kacz);
    add_function(kacz);
    kacz->add_option("--N", o.n, "iteration count")->required();
    add_depth(kacz);
    add_seed(kacz);
    add_out(kacz);

    CLI::App* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of a function");
    add_measure(coeffs);
    add_function(coeffs);
    coeffs->add_option("--N", o.n, "truncation order")->required();
    add_depth(coeffs);
    add_seed(coeffs);
    add_out(coeffs);

    CLI::App* synth = app.add_subcommand("synth", "evaluate an expansion on the atoms");
    add_measure(synth);
    synth->add_option("--function", o.function_path, "expansion.json artifact")->required();
    add_depth(synth);
    add_out(synth);

    CLI::App* mixture = app.add_subcommand("mixture", "expansion through eta*mu + (1-eta)*nu");
    add_measure(mixture, 2);
    add_function(mixture);
    mixture->add_option("--N", o.n, "truncation order")->required();
    mixture->add_option("--eta", o.eta, "mixture weight in (0,1]")->required();
    add_depth(mixture);
    add_seed(mixture);
    add_out(mixture);

    CLI::App* cauchy = app.add_subcommand("cauchy", "normalized Cauchy transform on a polar grid");
    add_measure(cauchy);
    add_function(cauchy);
    cauchy->add_option("--grid", o.grid, "radii as START:STOP:STEP (16 angles per circle)")
        ->required();
    cauchy->add_option("--tol", o.tol, "series tail target");
    add_depth(cauchy);
    add_seed(cauchy);
    add_out(cauchy);

    CLI::App* sample = app.add_subcommand("sample", "sampling reconstruction error report");
    add_measure(sample);
    add_function(sample);
    sample->add_option("--N", o.n, "max truncation order")->required();
    sample->add_option("--grid", o.grid, "y grid as START:STOP:STEP")->required();
    add_depth(sample);
    add_seed(sample);
    add_out(sample);

    CLI::App* verify = app.add_subcommand("verify", "run the full cross-check suite");
    add_measure(verify);
    verify->add_option("--N", verify_nmax, "iteration cap (default 20000)");
    verify->add_option("--tol", verify_tol, "relative residual target (default 1e-3)");
    add_depth(verify);
    add_seed(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // option/usage problems are validation errors
    }

    try {
        if (transform->parsed()) return cmd_transform(o);
        if (alpha->parsed()) return cmd_alpha(o);
        if (gtriangle->parsed()) return cmd_gtriangle(o);
        if (kacz->parsed()) return cmd_kaczmarz(o);
        if (coeffs->parsed()) return cmd_coeffs(o);
        if (synth->parsed()) return cmd_synth(o);
        if (mixture->parsed()) return cmd_mixture(o);
        if (cauchy->parsed()) return cmd_cauchy(o);
        if (sample->parsed()) return cmd_sample(o);
        if (verify->parsed()) {
            CommonOpts vo = o;
            if (verify->get_option("--depth")->count() == 0) vo.depth = 3;
            return cmd_verify(vo, verify_nmax, verify_tol);
        }
    } catch (const kf::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kf::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kf::contract_error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
