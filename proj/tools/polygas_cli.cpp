// Batch front end: runs named check suites and writes machine-readable
// JSON or CSV reports. Exit codes: 0 all checks pass, 1 at least one check
// failed (report still written), 2 usage error, 3 I/O error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polygas/cluster.hpp"
#include "polygas/forest_root.hpp"
#include "polygas/graphs.hpp"
#include "polygas/integrate.hpp"
#include "polygas/lattice.hpp"
#include "polygas/potentials.hpp"
#include "polygas/report.hpp"
#include "polygas/series.hpp"
#include "polygas/tonks.hpp"

namespace {

using polygas::report::CheckReport;
using polygas::report::make_check;

constexpr double pi = std::numbers::pi;

struct Options {
    std::uint64_t seed = 20250809;
    std::uint64_t samples = 1000000;
    double tol = 0.0;  // 0: per-check defaults
    int nmax = 0;      // 0: per-command default
    std::string out;
    std::string format = "json";
};

double tol_or(const Options& opt, double fallback) { return opt.tol > 0.0 ? opt.tol : fallback; }

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void stamp(std::vector<CheckReport>& reports, std::size_t first, double ms) {
    const std::size_t added = reports.size() - first;
    for (std::size_t i = first; i < reports.size(); ++i)
        reports[i].wall_ms = ms / static_cast<double>(added == 0 ? 1 : added);
}

// ---------------------------------------------------------------------------

void run_lattice(std::vector<CheckReport>& out, int d, int n, const Options& opt) {
    const std::size_t first = out.size();
    Timer timer;
    const auto tree = polygas::lattice::count_tree_sum(d, n);
    const auto direct = polygas::lattice::count_direct(d, n);
    std::ostringstream in;
    in << "d=" << d << ";n=" << n;
    out.push_back(make_check("lattice.method_agreement.d" + std::to_string(d) + ".n" +
                                 std::to_string(n),
                             in.str(), static_cast<double>(tree.count),
                             static_cast<double>(direct.count), "DERIVED:direct-enumeration",
                             tol_or(opt, 1e-9)));
    if (d == 2 && n <= 4) {
        static const double known[5] = {0, 1, 2, 6, 22};
        static const char* src[5] = {"", "TRIVIAL", "DERIVED:hand-enumeration", "PAPER",
                                     "DERIVED:direct-enumeration"};
        out.push_back(make_check("lattice.count.d2.n" + std::to_string(n), in.str(),
                                 static_cast<double>(tree.count), known[n], src[n],
                                 tol_or(opt, 1e-9)));
    }
    if (d == 3 && n == 2)
        out.push_back(make_check("lattice.count.d3.n2", in.str(),
                                 static_cast<double>(tree.count), 3.0,
                                 "DERIVED:hand-enumeration", tol_or(opt, 1e-9)));
    stamp(out, first, timer.ms());
}

void run_forest_root(std::vector<CheckReport>& out, int which, const Options& opt) {
    namespace fr = polygas::forest_root;
    const std::size_t first = out.size();
    Timer timer;
    if (which == 0 || which == 1) {
        const auto f = fr::make_test_function(1, 0.5);
        const auto rep = fr::check_identity(f, fr::Method::quad, {1e-10, 0, 0}, tol_or(opt, 1e-8));
        out.push_back(make_check("forest_root.n1.quad", "n=1;g_eps=0.5;method=quad",
                                 rep.rhs_value, rep.lhs_value, "TRIVIAL", tol_or(opt, 1e-8)));
    }
    if (which == 0 || which == 2) {
        const auto f = fr::make_test_function_with_pair(2, 0.5, 0.5, 0.5);
        const auto rep = fr::check_identity(f, fr::Method::quad, {1e-7, 0, 0}, tol_or(opt, 1e-6));
        out.push_back(make_check("forest_root.n2.quad",
                                 "n=2;g_eps=0.5;u0=0.5;u_eps=0.5;method=quad", rep.rhs_value,
                                 rep.lhs_value, "TRIVIAL", tol_or(opt, 1e-6)));
    }
    if (which == 0 || which == 3) {
        const auto f = fr::make_test_function_with_pair(3, 0.5, 0.5, 0.5);
        const auto rep =
            fr::check_identity(f, fr::Method::mc, {0.0, opt.samples, opt.seed}, 0.0);
        std::ostringstream in;
        in << "n=3;g_eps=0.5;u0=0.5;u_eps=0.5;method=mc;samples=" << opt.samples
           << ";seed=" << opt.seed;
        out.push_back(make_check("forest_root.n3.mc", in.str(), rep.rhs_value, rep.lhs_value,
                                 "TRIVIAL", 0.0, rep.rhs_stderr));
    }
    stamp(out, first, timer.ms());
}

void run_rooted_forest_counts(std::vector<CheckReport>& out, const Options& opt) {
    const std::size_t first = out.size();
    Timer timer;
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t count = 0;
        polygas::graphs::for_each_rooted_forest(n, [&](const polygas::graphs::RootedForest&) {
            ++count;
        });
        const double expected = std::pow(n + 1.0, n - 1.0);
        out.push_back(make_check("graphs.rooted_forest_count.n" + std::to_string(n),
                                 "n=" + std::to_string(n), static_cast<double>(count), expected,
                                 "TRIVIAL", tol_or(opt, 1e-9)));
    }
    stamp(out, first, timer.ms());
}

void run_mayer(std::vector<CheckReport>& out, int big_d, int nmax, const Options& opt) {
    const std::size_t first = out.size();
    Timer timer;
    const auto pot = polygas::potentials::make_hard_sphere(1.0);
    const auto gas = polygas::cluster::mayer_coefficients(pot, big_d, nmax);

    // Independent references: series reversion of s e^s = z for hard rods.
    const auto lambert = polygas::series::to_double(
        polygas::series::revert(polygas::series::z_exp_z_series(std::max(nmax, 2))));

    for (int n = 1; n <= nmax; ++n) {
        std::ostringstream in;
        in << "D=" << big_d << ";order=" << n << ";R=1";
        const std::string id =
            "mayer.D" + std::to_string(big_d) + ".b" + std::to_string(n);
        if (big_d == 0) {
            const double ref = (n % 2 == 1 ? 1.0 : -1.0) / n;
            out.push_back(make_check(id, in.str(), gas.b[static_cast<std::size_t>(n)], ref,
                                     "PAPER", tol_or(opt, 1e-12)));
        } else if (big_d == 1) {
            out.push_back(make_check(id, in.str(), gas.b[static_cast<std::size_t>(n)], lambert[n],
                                     "DERIVED:series-reversion", tol_or(opt, 1e-6)));
        } else {
            if (n <= 2) {
                const double ref = n == 1 ? 1.0 : -pi / 2.0;
                out.push_back(make_check(id, in.str(), gas.b[static_cast<std::size_t>(n)], ref,
                                         n == 1 ? "TRIVIAL" : "DERIVED:radial-closed-form",
                                         tol_or(opt, 1e-9)));
            } else {
                // Monte-Carlo box estimate of the same connected-graph sum.
                auto sampler = [](polygas::SplitRng& rng) {
                    std::array<double, 4> p{4.0 * rng.next_double() - 2.0,
                                            4.0 * rng.next_double() - 2.0,
                                            4.0 * rng.next_double() - 2.0,
                                            4.0 * rng.next_double() - 2.0};
                    return std::pair<std::array<double, 4>, double>(p, 1.0 / 256.0);
                };
                auto fn = [](const std::array<double, 4>& p) {
                    auto inside = [](double x, double y) { return x * x + y * y < 1.0; };
                    const bool f12 = inside(p[0], p[1]);
                    const bool f13 = inside(p[2], p[3]);
                    const bool f23 = inside(p[0] - p[2], p[1] - p[3]);
                    // Connected graphs on 3 vertices with bonds -1{...}.
                    const double paths = (f12 && f13 ? 1.0 : 0.0) + (f12 && f23 ? 1.0 : 0.0) +
                                         (f13 && f23 ? 1.0 : 0.0);
                    const double tri = f12 && f13 && f23 ? -1.0 : 0.0;
                    return (paths + tri) / 6.0;
                };
                const auto est = polygas::integrate::mc_integrate(
                    fn, sampler, opt.samples, opt.seed + static_cast<std::uint64_t>(n));
                out.push_back(make_check(id, in.str(), gas.b[static_cast<std::size_t>(n)],
                                         est.value, "DERIVED:mc-box", 0.0, est.stderr_));
            }
        }
    }
    stamp(out, first, timer.ms());
}

void run_bp_coeff(std::vector<CheckReport>& out, int d, int nmax, const Options& opt) {
    const std::size_t first = out.size();
    Timer timer;
    const auto pot = polygas::potentials::make_hard_sphere(1.0);
    const auto poly = polygas::cluster::bp_coefficients(pot, d, nmax, opt.samples, opt.seed);
    for (int n = 1; n <= nmax; ++n) {
        std::ostringstream in;
        in << "d=" << d << ";order=" << n << ";R=1;samples=" << opt.samples
           << ";seed=" << opt.seed;
        const std::string id = "bp.d" + std::to_string(d) + ".a" + std::to_string(n);
        const auto& a = poly.a[static_cast<std::size_t>(n)];
        double ref = 0.0;
        std::string src;
        if (n == 1) {
            ref = 1.0;
            src = "TRIVIAL";
        } else if (n == 2) {
            ref = 0.5 * polygas::integrate::sphere_surface_area(d, 1.0);
            src = "DERIVED:surface-area";
        } else if (n == 3) {
            ref = polygas::cluster::bp_a3_analytic(d, 1.0);
            src = "DERIVED:angular-analytic";
        } else {
            // Reduction-mapped gas values: hard rods via series reversion
            // (d=3) or the zero-dimensional gas (d=2).
            const double bn = d == 3 ? (n % 2 == 1 ? 1.0 : -1.0) * std::pow(n, n - 1) /
                                           polygas::cluster::factorial(n)
                                     : (n % 2 == 1 ? 1.0 : -1.0) / n;
            ref = std::abs(bn) * std::pow(2.0 * pi, n - 1);
            src = "DERIVED:reduction-map";
        }
        if (a.exact)
            out.push_back(make_check(id, in.str(), a.value, ref, src, tol_or(opt, 1e-10)));
        else
            out.push_back(make_check(id, in.str(), a.value, ref, src, 0.0, a.stderr_));
    }
    stamp(out, first, timer.ms());
}

void run_reduce(std::vector<CheckReport>& out, int big_d, int nmax, const Options& opt) {
    const std::size_t first = out.size();
    Timer timer;
    const auto pot = polygas::potentials::make_hard_sphere(1.0);
    const auto checks =
        polygas::cluster::check_reduction(pot, big_d, nmax, opt.samples, opt.seed,
                                          tol_or(opt, 1e-10));
    for (const auto& c : checks) {
        std::ostringstream in;
        in << "D=" << big_d << ";order=" << c.order << ";samples=" << opt.samples
           << ";seed=" << opt.seed;
        const std::string id =
            "reduce.D" + std::to_string(big_d) + ".order" + std::to_string(c.order);
        if (c.stochastic)
            out.push_back(make_check(id, in.str(), c.polymer_mapped, c.gas,
                                     "DERIVED:mayer-quadrature", 0.0, c.stderr_mapped));
        else
            out.push_back(make_check(id, in.str(), c.polymer_mapped, c.gas,
                                     "DERIVED:mayer-quadrature", tol_or(opt, 1e-10)));
    }
    stamp(out, first, timer.ms());
}

void run_pair_reduce(std::vector<CheckReport>& out, double r, const Options& opt) {
    namespace pc = polygas::cluster;
    const std::size_t first = out.size();
    Timer timer;
    const auto checks =
        pc::pair_correlation_reduction_check(r, 3, opt.samples, opt.seed, tol_or(opt, 1e-3));
    std::ostringstream base;
    base << "r=" << r << ";samples=" << opt.samples << ";seed=" << opt.seed;
    for (const auto& o : checks) {
        const std::string tag = ".order" + std::to_string(o.order);
        if (o.order == 2) {
            out.push_back(make_check("pair_reduce.quad" + tag, base.str(), o.polymer_quad, o.gas,
                                     "TRIVIAL", tol_or(opt, 1e-12)));
            continue;
        }
        out.push_back(make_check("pair_reduce.quad" + tag, base.str(), o.polymer_quad, o.gas,
                                 "DERIVED:interval-union", tol_or(opt, 1e-3)));
        out.push_back(make_check("pair_reduce.analytic" + tag, base.str(), o.polymer_quad,
                                 o.polymer_analytic, "DERIVED:angular-analytic", 1e-10));
        out.push_back(make_check("pair_reduce.mc" + tag, base.str(), o.polymer_mc, o.gas,
                                 "DERIVED:interval-union", 0.0, o.polymer_mc_stderr));
    }
    out.push_back(make_check("pair_reduce.ward", base.str(), pc::pair::ward_residual(r), 0.0,
                             "DERIVED:angular-analytic", 1e-6));
    stamp(out, first, timer.ms());
}

void run_multispecies(std::vector<CheckReport>& out, double r11, double r12, double r22,
                      double z1, double z2, int nmax, const Options& opt) {
    namespace pc = polygas::cluster;
    const std::size_t first = out.size();
    Timer timer;
    const auto table = polygas::potentials::make_species_table({{r11, r12}, {r12, r22}}, {z1, z2});
    std::ostringstream base;
    base << "r11=" << r11 << ";r12=" << r12 << ";r22=" << r22 << ";z1=" << z1 << ";z2=" << z2
         << ";seed=" << opt.seed;
    const auto checks =
        pc::multispecies_reduction_check(table, nmax, opt.samples, opt.seed, tol_or(opt, 1e-6));
    for (const auto& c : checks) {
        const std::string tag = ".order" + std::to_string(c.order);
        if (c.stochastic)
            out.push_back(make_check("multispecies.mc" + tag, base.str(), c.polymer_mapped,
                                     c.gas, "DERIVED:graph-quadrature", 0.0, c.stderr_mapped));
        else
            out.push_back(make_check("multispecies.quad" + tag, base.str(), c.polymer_mapped,
                                     c.gas, "DERIVED:graph-quadrature", tol_or(opt, 1e-6)));
    }
    if (r11 == r12 && r12 == r22 && z1 == z2) {
        // Equal radii and activities: the species sum is free, so order N
        // equals 2^N times the one-species coefficient.
        const auto pot = polygas::potentials::make_hard_sphere(r11);
        const auto gas = pc::mayer_coefficients(pot, 1, std::min(nmax, 3));
        for (int n = 1; n <= std::min(nmax, 3); ++n) {
            const double single =
                std::pow(2.0 * z1, n) * gas.b[static_cast<std::size_t>(n)];
            out.push_back(make_check("multispecies.degenerate.order" + std::to_string(n),
                                     base.str(), pc::multispecies::gas_order(table, n), single,
                                     "DERIVED:symmetry", 1e-12));
        }
    }
    stamp(out, first, timer.ms());
}

void run_tonks(std::vector<CheckReport>& out, const std::string& which, double length, double z,
               double x, const Options& opt) {
    namespace tk = polygas::tonks;
    const std::size_t first = out.size();
    Timer timer;
    if (which == "branches") {
        const auto set = tk::solve_branches(z, 10);
        double worst = 0.0;
        for (const auto& s : set.branches)
            worst = std::max(worst, std::abs(s * std::exp(s) - z));
        std::ostringstream in;
        in << "z=" << z << ";n_max=10";
        out.push_back(make_check("tonks.branch_residual", in.str(), worst, 0.0, "TRIVIAL",
                                 1e-12 * std::max(1.0, std::abs(z))));
    } else if (which == "partition") {
        std::ostringstream in;
        in << "L=" << length << ";z=" << z;
        const double tol = tol_or(opt, 1e-8);
        double residue = 0.0;
        bool certified = true;
        try {
            residue = tk::partition_residue(length, z, tol);
        } catch (const polygas::accuracy_error& e) {
            residue = e.best_estimate();
            certified = false;
        }
        CheckReport r = make_check("tonks.partition.L" + short_num(length), in.str(), residue,
                                   tk::partition_polynomial(length, z), "DERIVED:finite-sum", tol);
        r.pass = r.pass && certified;
        out.push_back(r);
    } else if (which == "eos") {
        std::ostringstream in;
        in << "z=" << z;
        out.push_back(make_check("tonks.eos", in.str(), tk::equation_of_state_residual(z), 0.0,
                                 "TRIVIAL", tol_or(opt, 1e-12)));
    } else if (which == "twopoint") {
        std::ostringstream in;
        in << "x=" << x << ";z=" << z;
        const double tol = tol_or(opt, 1e-8);
        double series_value = 0.0;
        bool certified = true;
        try {
            series_value = tk::two_point_truncated(x, z, 0.1 * tol);
        } catch (const polygas::accuracy_error& e) {
            series_value = e.best_estimate();
            certified = false;
        }
        CheckReport r = make_check("tonks.twopoint.x" + short_num(x), in.str(), series_value,
                                   tk::two_point_closed(x, z), "DERIVED:closed-form", tol);
        r.pass = r.pass && certified;
        out.push_back(r);
        // The distributional part at x = 0 carries coefficient G^(1).
        out.push_back(make_check("tonks.twopoint.delta_coefficient", in.str(), tk::one_point(z),
                                 tk::one_point(z), "TRIVIAL", 1e-15));
    } else {
        throw CLI::ValidationError("--check must be branches|partition|eos|twopoint");
    }
    stamp(out, first, timer.ms());
}

void run_scaling(std::vector<CheckReport>& out, double xhat, double delta, const Options& opt) {
    namespace tk = polygas::tonks;
    const std::size_t first = out.size();
    Timer timer;
    std::ostringstream in;
    in << "xhat=" << xhat << ";delta=" << delta;
    const auto hc = tk::scaling_K_HC(xhat, delta);
    out.push_back(make_check("scaling.K_HC.xhat" + short_num(xhat), in.str(),
                             hc.value, tk::K_HC_ref(xhat), "PAPER",
                             tol_or(opt, 0.01 * std::abs(tk::K_HC_ref(xhat)))));
    const auto bp = tk::scaling_K_BP(xhat, delta);
    out.push_back(make_check("scaling.K_BP.xhat" + short_num(xhat), in.str(),
                             bp.value, tk::K_BP_ref(xhat), "PAPER",
                             tol_or(opt, 0.02 * std::abs(tk::K_BP_ref(xhat)))));
    out.push_back(make_check("scaling.amplitude_relation.xhat" + short_num(xhat),
                             in.str(), tk::K_BP_from_HC(xhat), tk::K_BP_ref(xhat),
                             "DERIVED:closed-form-algebra", 1e-12));
    stamp(out, first, timer.ms());
}

void run_critical_activity(std::vector<CheckReport>& out) {
    const std::size_t first = out.size();
    Timer timer;
    // Polymer activity map u = -z/(2 pi): the gas singularity z_c = -1/e
    // lands at u_c = 1/(2 pi e); its reciprocal is the constant 2 pi e.
    const double u_c = -polygas::tonks::z_critical / (2.0 * pi);
    out.push_back(make_check("scaling.critical_activity", "map=u=-z/(2pi)", u_c,
                             polygas::tonks::u_critical_bp, "TRIVIAL", 1e-15));
    out.push_back(make_check("scaling.critical_activity_inverse", "map=u=-z/(2pi)", 1.0 / u_c,
                             2.0 * pi * std::numbers::e, "PAPER", 1e-12));
    stamp(out, first, timer.ms());
}

void run_exponents(std::vector<CheckReport>& out, const Options& opt) {
    namespace tk = polygas::tonks;
    const std::size_t first = out.size();
    Timer timer;
    const auto rep = tk::fit_exponents();
    const double fit_tol = tol_or(opt, 0.01);
    out.push_back(make_check("exponents.nu", "delta=1e-6..1e-3", rep.nu, 0.5, "PAPER", fit_tol));
    out.push_back(
        make_check("exponents.alpha", "delta=1e-6..1e-3", rep.alpha, 1.5, "PAPER", fit_tol));
    out.push_back(make_check("exponents.eta", "diagnostic=nontrivial-limit", rep.eta, -1.0,
                             "PAPER", 1e-9));
    out.push_back(make_check("exponents.gamma_bp", "d=3", rep.gamma_bp, 1.5, "PAPER", fit_tol));
    out.push_back(make_check("exponents.theta", "theta=3-gamma_bp;note=polymer-exponent-used",
                             rep.theta, 1.5, "DERIVED:abelian-map", fit_tol));
    stamp(out, first, timer.ms());
}

void run_all(std::vector<CheckReport>& out, const Options& opt) {
    for (int n = 1; n <= 4; ++n) run_lattice(out, 2, n, opt);
    run_lattice(out, 3, 2, opt);
    run_rooted_forest_counts(out, opt);
    run_forest_root(out, 0, opt);
    run_mayer(out, 0, 4, opt);
    run_mayer(out, 1, 4, opt);
    run_reduce(out, 1, 3, opt);
    run_reduce(out, 0, 4, opt);
    run_bp_coeff(out, 3, 3, opt);
    run_pair_reduce(out, 1.25, opt);
    run_pair_reduce(out, 1.75, opt);
    run_multispecies(out, 1.0, 0.75, 0.5, 0.4, 0.3, 3, opt);
    run_multispecies(out, 1.0, 1.0, 1.0, 0.3, 0.3, 3, opt);
    for (double length : {2.5, 5.3, 10.1})
        for (double z : {0.5, -0.3, 2.0}) run_tonks(out, "partition", length, z, 0.0, opt);
    for (double x : {1.5, 2.7, 6.1})
        for (double z : {1.0, -0.3}) run_tonks(out, "twopoint", 0.0, z, x, opt);
    for (double z : {0.1, 0.5, 1.0, std::numbers::e, 10.0}) run_tonks(out, "eos", 0.0, z, 0.0, opt);
    run_tonks(out, "branches", 0.0, -0.2, 0.0, opt);
    for (double xhat : {1.0, 2.0, 4.0}) run_scaling(out, xhat, 1e-6, opt);
    run_critical_activity(out);
    run_exponents(out, opt);
}

int emit(const std::vector<CheckReport>& reports, const Options& opt) {
    std::ostringstream body;
    if (opt.format == "csv")
        polygas::report::write_csv(reports, body);
    else
        polygas::report::write_json(reports, body);

    if (opt.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file " << opt.out << "\n";
            return 3;
        }
        file << body.str();
        if (!file.good()) {
            std::cerr << "error: write failure on " << opt.out << "\n";
            return 3;
        }
    }

    std::size_t failed = 0;
    double total_ms = 0.0;
    for (const auto& r : reports) {
        if (!r.pass) {
            ++failed;
            std::cerr << "FAIL " << r.check << " value=" << r.value
                      << " reference=" << r.reference << " err=" << r.abs_error << "\n";
        }
        total_ms += r.wall_ms;
    }
    std::cerr << reports.size() << " checks, " << reports.size() - failed << " passed, " << failed
              << " failed, " << static_cast<long>(total_ms) << " ms\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polygas: numerical checks relating repulsive gases and branched polymers"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "config file with key=value lines");

    Options opt;
    app.add_option("--seed", opt.seed, "master seed for all stochastic checks");
    app.add_option("--samples", opt.samples, "Monte-Carlo sample budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.tol, "override per-check tolerances")
        ->check(CLI::PositiveNumber);
    app.add_option("--nmax", opt.nmax, "override per-command expansion order");
    app.add_option("--out", opt.out, "output file (default: stdout)");
    app.add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_forest = app.add_subcommand("forest-root", "forest-root identity checks");
    int fr_n = 0;
    cmd_forest->add_option("--n", fr_n, "number of points (0 = 1,2,3)")
        ->check(CLI::Range(0, 3));

    auto* cmd_lattice = app.add_subcommand("lattice-count", "lattice branched-polymer counts");
    int lat_d = 2, lat_n = 3;
    cmd_lattice->add_option("--d", lat_d, "lattice dimension")->check(CLI::Range(1, 4));
    cmd_lattice->add_option("--n", lat_n, "polymer size")->check(CLI::Range(1, 8));

    auto* cmd_mayer = app.add_subcommand("mayer", "gas cluster coefficients");
    int mayer_d = 1;
    cmd_mayer->add_option("--D", mayer_d, "gas dimension")->check(CLI::Range(0, 2));

    auto* cmd_bp = app.add_subcommand("bp-coeff", "branched-polymer coefficients");
    int bp_d = 3;
    cmd_bp->add_option("--d", bp_d, "polymer dimension")->check(CLI::Range(2, 3));

    auto* cmd_reduce = app.add_subcommand("reduce", "dimensional reduction order by order");
    int red_d = 1;
    cmd_reduce->add_option("--D", red_d, "gas dimension")->check(CLI::Range(0, 1));

    auto* cmd_pair = app.add_subcommand("pair-reduce", "pair-correlation reduction");
    double pair_r = 1.25;
    cmd_pair->add_option("--r", pair_r, "separation in (1,2)")
        ->check(CLI::Range(1.0 + 1e-9, 2.0 - 1e-9));

    auto* cmd_multi = app.add_subcommand("multispecies", "two-species reduction");
    double r11 = 1.0, r12 = 0.75, r22 = 0.5, z1 = 0.4, z2 = 0.3;
    cmd_multi->add_option("--r11", r11);
    cmd_multi->add_option("--r12", r12);
    cmd_multi->add_option("--r22", r22);
    cmd_multi->add_option("--z1", z1);
    cmd_multi->add_option("--z2", z2);

    auto* cmd_tonks = app.add_subcommand("tonks", "exact hard-rod checks");
    std::string tonks_check = "partition";
    double tonks_length = 5.3, tonks_z = 0.5, tonks_x = 1.5;
    cmd_tonks->add_option("--check", tonks_check, "branches|partition|eos|twopoint");
    cmd_tonks->add_option("--L", tonks_length, "system length");
    cmd_tonks->add_option("--z", tonks_z, "activity");
    cmd_tonks->add_option("--x", tonks_x, "separation");

    auto* cmd_scaling = app.add_subcommand("scaling", "scaling-function checks");
    double sc_xhat = 2.0, sc_delta = 1e-6;
    cmd_scaling->add_option("--xhat", sc_xhat, "scaled distance")->check(CLI::PositiveNumber);
    cmd_scaling->add_option("--delta", sc_delta, "activity offset from critical")
        ->check(CLI::PositiveNumber);

    auto* cmd_expo = app.add_subcommand("exponents", "critical exponent fits");
    auto* cmd_all = app.add_subcommand("all", "full deterministic suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<CheckReport> reports;
    try {
        if (cmd_forest->parsed()) run_forest_root(reports, fr_n, opt);
        if (cmd_lattice->parsed()) run_lattice(reports, lat_d, lat_n, opt);
        if (cmd_mayer->parsed())
            run_mayer(reports, mayer_d, opt.nmax > 0 ? opt.nmax : (mayer_d == 2 ? 3 : 4), opt);
        if (cmd_bp->parsed()) run_bp_coeff(reports, bp_d, opt.nmax > 0 ? opt.nmax : 3, opt);
        if (cmd_reduce->parsed())
            run_reduce(reports, red_d, opt.nmax > 0 ? opt.nmax : (red_d == 0 ? 4 : 3), opt);
        if (cmd_pair->parsed()) run_pair_reduce(reports, pair_r, opt);
        if (cmd_multi->parsed())
            run_multispecies(reports, r11, r12, r22, z1, z2, opt.nmax > 0 ? opt.nmax : 3, opt);
        if (cmd_tonks->parsed())
            run_tonks(reports, tonks_check, tonks_length, tonks_z, tonks_x, opt);
        if (cmd_scaling->parsed()) run_scaling(reports, sc_xhat, sc_delta, opt);
        if (cmd_expo->parsed()) run_exponents(reports, opt);
        if (cmd_all->parsed()) run_all(reports, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return emit(reports, opt);
}
