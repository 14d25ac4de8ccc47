// Command-line front end: every module surfaced as a subcommand, caches under
// a user-overridable directory, JSON summaries plus plot-ready CSV tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "haarlin/charfun.hpp"
#include "haarlin/cumulants.hpp"
#include "haarlin/montecarlo.hpp"
#include "haarlin/selftest.hpp"
#include "haarlin/smoothing.hpp"
#include "haarlin/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace haarlin;

namespace {

struct Common {
    std::string out_dir = "out";
    std::string family = "identity";
    std::vector<long> Ns{8};
    unsigned m_max = 6;
    std::uint64_t M = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;
    double delta = 0.5;
    double gamma = 2.5;
    double eps = 1.0;
};

std::string config_fingerprint(const CLI::App& app) {
    // fingerprint the experiment, not the execution detail: results are
    // independent of the output path and of the worker-pool size
    std::istringstream in(app.config_to_str(true, false));
    std::string line, kept;
    while (std::getline(in, line))
        if (line.rfind("out=", 0) != 0 && line.rfind("threads=", 0) != 0 &&
            line.rfind("config=", 0) != 0)
            kept += line + '\n';
    std::ostringstream os;
    os << std::hex << fnv1a64(kept);
    return os.str();
}

json meta(const CLI::App& app) {
    return json{{"tool_version", kVersion}, {"config_hash", config_fingerprint(app)}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path, const CLI::App& app) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.precision(17);
    out << "# haarlin " << kVersion << " config=" << config_fingerprint(app) << '\n';
    return out;
}

std::string cache_file(unsigned m) {
    fs::path dir = default_cache_dir();
    fs::create_directories(dir);
    return (dir / ("chartable-m" + std::to_string(m) + ".txt")).string();
}

int cmd_wg(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    long N = c.Ns.front();
    auto table = character_table(c.m_max, cache_file(c.m_max));
    auto rec = weingarten_recursive_map(c.m_max, N);
    auto csv = open_csv(fs::path(c.out_dir) / "wg.csv", app);
    csv << "lambda,M_character,M_recursive\n";
    json rows = json::array();
    for (const auto& lam : enumerate_partitions(c.m_max)) {
        Rational a = weingarten_character(lam, N, table.get());
        const Rational& b = rec.at(lam);
        csv << lam.str() << ',' << a.get_str() << ',' << b.get_str() << '\n';
        rows.push_back({{"lambda", lam.str()},
                        {"value", a.get_str()},
                        {"routes_agree", a == b}});
    }
    json j = meta(app);
    j["command"] = "wg";
    j["m"] = c.m_max;
    j["N"] = N;
    j["coefficients"] = rows;
    write_json(fs::path(c.out_dir) / "wg.json", j);
    std::cout << "wrote " << c.out_dir << "/wg.{csv,json}\n";
    return 0;
}

int cmd_moments(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    long N = c.Ns.front();
    auto spec = make_spectrum(c.family, N);
    auto mt = moment_table(spec, c.m_max);
    auto csv = open_csv(fs::path(c.out_dir) / "moments.csv", app);
    csv << "m,I_N^m,mu_2m,normal_mu_2m,mu_over_normal\n";
    for (unsigned m = 1; m <= c.m_max; ++m) {
        Rational I = trace_moment_integral(spec, m);
        Rational ratio = mt.mu[m] / Rational(normal_moment(2 * m));
        csv << m << ',' << I.get_str() << ',' << mt.mu[m].get_str() << ','
            << normal_moment(2 * m).get_str() << ',' << to_double(ratio) << '\n';
    }
    json j = meta(app);
    j["command"] = "moments";
    j["family"] = c.family;
    j["N"] = N;
    j["sigma_sq"] = to_string(spec.sigma_sq);
    j["m_max"] = c.m_max;
    write_json(fs::path(c.out_dir) / "moments.json", j);
    std::cout << "wrote " << c.out_dir << "/moments.{csv,json}\n";
    return 0;
}

int cmd_cumulants(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    long N = c.Ns.front();
    auto spec = make_spectrum(c.family, N);
    auto ct = cumulants_from_moments(moment_table(spec, c.m_max));
    auto csv = open_csv(fs::path(c.out_dir) / "cumulants.csv", app);
    csv << "m,kappa_2m,kappa_2m_float\n";
    for (unsigned m = 1; m <= c.m_max; ++m)
        csv << m << ',' << ct.kappa[m].get_str() << ',' << to_double(ct.kappa[m]) << '\n';
    json j = meta(app);
    j["command"] = "cumulants";
    j["family"] = c.family;
    j["N"] = N;
    j["kappa_4"] = to_double(ct.kappa[std::min(2u, c.m_max)]);
    write_json(fs::path(c.out_dir) / "cumulants.json", j);
    std::cout << "wrote " << c.out_dir << "/cumulants.{csv,json}\n";
    return 0;
}

int cmd_charfun(const CLI::App& app, const Common& c, double xi_lo, double xi_hi, unsigned pts) {
    fs::create_directories(c.out_dir);
    long N = c.Ns.front();
    auto spec = make_spectrum(c.family, N);
    std::vector<double> grid;
    for (unsigned i = 0; i < pts; ++i)
        grid.push_back(xi_lo + (xi_hi - xi_lo) * i / std::max(1u, pts - 1));
    auto ev = charfun_eval(spec, grid, c.m_max > 6 ? c.m_max : 0);
    write_charfun_csv(ev, (fs::path(c.out_dir) / "charfun.csv").string(),
                      std::string("haarlin ") + kVersion + " config=" + config_fingerprint(app) +
                          " family=" + c.family + " N=" + std::to_string(N));
    json j = meta(app);
    j["command"] = "charfun";
    j["family"] = c.family;
    j["N"] = N;
    j["points"] = pts;
    write_json(fs::path(c.out_dir) / "charfun.json", j);
    std::cout << "wrote " << c.out_dir << "/charfun.{csv,json}\n";
    return 0;
}

int cmd_bebound(const CLI::App& app, const Common& c, double xi_lo, double xi_hi, unsigned pts) {
    fs::create_directories(c.out_dir);
    auto csv = open_csv(fs::path(c.out_dir) / "bebound.csv", app);
    csv << "N,xi,ratio\n";
    json sups = json::array();
    for (long N : c.Ns) {
        auto spec = make_spectrum(c.family, N);
        double sup = 0;
        for (unsigned i = 0; i < pts; ++i) {
            double xi = xi_lo + (xi_hi - xi_lo) * i / std::max(1u, pts - 1);
            double r = be_ratio(spec, xi, c.delta);
            sup = std::max(sup, r);
            csv << N << ',' << xi << ',' << r << '\n';
        }
        sups.push_back({{"N", N}, {"sup_ratio", sup}});
    }
    json j = meta(app);
    j["command"] = "bebound";
    j["family"] = c.family;
    j["sup_ratios"] = sups;
    write_json(fs::path(c.out_dir) / "bebound.json", j);
    std::cout << "wrote " << c.out_dir << "/bebound.{csv,json}\n";
    return 0;
}

int cmd_upperbound(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    json rows = json::array();
    for (long N : c.Ns) {
        auto spec = make_spectrum(c.family, N);
        auto kb = kolmogorov_upper_bound(spec, c.delta, c.gamma);
        rows.push_back({{"N", N},
                        {"total", kb.total},
                        {"term_berry_esseen", kb.term_berry_esseen},
                        {"term_gauss_tail", kb.term_gauss_tail},
                        {"term_psi_tail", kb.term_psi_tail},
                        {"term_feller", kb.term_feller},
                        {"C", kb.C},
                        {"S_N", kb.S_N},
                        {"T_N", kb.T_N},
                        {"degraded", kb.degraded}});
    }
    json j = meta(app);
    j["command"] = "upperbound";
    j["family"] = c.family;
    j["delta"] = c.delta;
    j["gamma"] = c.gamma;
    j["bounds"] = rows;
    write_json(fs::path(c.out_dir) / "upperbound.json", j);
    std::cout << "wrote " << c.out_dir << "/upperbound.json\n";
    return 0;
}

int cmd_rate(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    std::vector<RatePoint> pts;
    auto csv = open_csv(fs::path(c.out_dir) / "rate.csv", app);
    csv << "N,e_estimate,stderr\n";
    for (long N : c.Ns) {
        auto spec = make_spectrum(c.family, N);
        auto batch = sample_trace_stat(spec, c.M, c.seed, c.threads, /*with_imag=*/false);
        auto [est, se] = kolmogorov_distance(batch);
        pts.push_back({static_cast<double>(N), est, se});
        csv << N << ',' << est << ',' << se << '\n';
        std::cout << "N=" << N << "  e=" << est << "  (stderr " << se << ")\n";
    }
    auto rep = rate_fit(pts);
    json j = meta(app);
    j["command"] = "rate";
    j["family"] = c.family;
    j["M"] = c.M;
    j["seed"] = c.seed;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["slope_stderr"] = rep.slope_stderr;
    j["slope_ci"] = {rep.slope_ci_lo, rep.slope_ci_hi};
    j["target_exponent"] = -(2.0 - make_spectrum(c.family, c.Ns.front()).b);
    write_json(fs::path(c.out_dir) / "rate.json", j);
    std::cout << "slope = " << rep.slope << "  95% CI [" << rep.slope_ci_lo << ", "
              << rep.slope_ci_hi << "]\n";
    std::cout << "wrote " << c.out_dir << "/rate.{csv,json}\n";
    return 0;
}

int cmd_tv(const CLI::App& app, const Common& c, const std::string& method) {
    fs::create_directories(c.out_dir);
    TvMethod m = method == "histogram" ? TvMethod::histogram : TvMethod::psi_inversion;
    json rows = json::array();
    for (long N : c.Ns) {
        auto spec = make_spectrum(c.family, N);
        auto tv = tv_estimate(spec, m, c.M, c.seed, c.threads);
        rows.push_back({{"N", N}, {"tv", tv.value}, {"method", tv.method},
                        {"err_hint", tv.err_hint}});
        std::cout << "N=" << N << "  TV=" << tv.value << "  (" << tv.method << ")\n";
    }
    json j = meta(app);
    j["command"] = "tv";
    j["family"] = c.family;
    j["estimates"] = rows;
    write_json(fs::path(c.out_dir) / "tv.json", j);
    std::cout << "wrote " << c.out_dir << "/tv.json\n";
    return 0;
}

int cmd_smooth(const CLI::App& app, const Common& c, const std::vector<double>& anchors) {
    fs::create_directories(c.out_dir);
    auto csv = open_csv(fs::path(c.out_dir) / "smooth.csv", app);
    csv << "eps_xi,numeric,asymptotic,rel_error,cos_phase\n";
    for (double anchor : anchors) {
        for (int k = 0; k < 16; ++k) {
            double u = anchor + 2.0 * M_PI * k / 16.0;
            double num = bump_ft_numeric(u, 1.0);
            double asym = u >= 25.0 ? bump_ft_asymptotic(u, 1.0) : 0.0;
            double rel = num != 0 ? std::abs(num - asym) / std::abs(num) : 0.0;
            csv << u << ',' << num << ',' << asym << ',' << rel << ','
                << bump_ft_phase_cos(u) << '\n';
        }
    }
    json j = meta(app);
    j["command"] = "smooth";
    j["g"] = bump_norm_constant();
    j["h_two_thirds"] = smoothing_floor(2.0 / 3.0);
    j["eps"] = c.eps;
    write_json(fs::path(c.out_dir) / "smooth.json", j);
    std::cout << "g = " << bump_norm_constant() << ", h(2/3) = " << smoothing_floor(2.0 / 3.0)
              << "\nwrote " << c.out_dir << "/smooth.{csv,json}\n";
    return 0;
}

int cmd_selftest(const CLI::App& app, const Common& c) {
    fs::create_directories(c.out_dir);
    auto results = selftest(c.seed);
    json rows = json::array();
    int fails = 0;
    for (const auto& r : results) {
        rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
        if (!r.pass) ++fails;
    }
    json j = meta(app);
    j["command"] = "selftest";
    j["results"] = rows;
    j["failures"] = fails;
    write_json(fs::path(c.out_dir) / "selftest.json", j);
    return fails ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"haarlin: exact moments, cumulants and convergence-rate experiments for "
                 "Re tr(A_N U) over the unitary group"};
    app.set_config("--config", "", "Read options from an INI config file");
    app.set_version_flag("--version", kVersion);

    Common c;
    app.add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    app.add_option("--family", c.family,
                   "Spectrum family: identity|spike|sparse[:q=..,h=..]|ramp[:lo=..,hi=..]|"
                   "random[:lo=..,hi=..,seed=..]|explicit:v1,v2,...")
        ->capture_default_str();
    app.add_option("--N", c.Ns, "Matrix size(s)")->capture_default_str();
    app.add_option("--mmax", c.m_max, "Largest m (weight / half moment order)")
        ->capture_default_str();
    app.add_option("--M", c.M, "Monte Carlo sample count")->capture_default_str();
    app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--delta", c.delta, "Berry-Esseen cutoff constant")->capture_default_str();
    app.add_option("--gamma", c.gamma, "Feller cutoff exponent (> 2)")->capture_default_str();
    app.add_option("--eps", c.eps, "Mollifier width")->capture_default_str();

    double xi_lo = 0.25, xi_hi = 2.5;
    unsigned xi_pts = 32;
    std::string tv_method = "psi-inversion";
    std::vector<double> anchors{100, 200, 400, 800};

    auto* wg = app.add_subcommand("wg", "Weingarten coefficient table, both routes");
    auto* moments = app.add_subcommand("moments", "Exact moment table for a spectrum");
    auto* cumulants = app.add_subcommand("cumulants", "Exact cumulant table for a spectrum");
    auto* charfun = app.add_subcommand("charfun", "Characteristic function sweep");
    charfun->add_option("--xi-lo", xi_lo)->capture_default_str();
    charfun->add_option("--xi-hi", xi_hi)->capture_default_str();
    charfun->add_option("--points", xi_pts)->capture_default_str();
    auto* bebound = app.add_subcommand("bebound", "Berry-Esseen ratio sweep over N");
    bebound->add_option("--xi-lo", xi_lo)->capture_default_str();
    bebound->add_option("--xi-hi", xi_hi)->capture_default_str();
    bebound->add_option("--points", xi_pts)->capture_default_str();
    auto* upperbound = app.add_subcommand("upperbound", "Deterministic Kolmogorov upper bound");
    auto* rate = app.add_subcommand("rate", "Monte Carlo convergence-rate fit");
    auto* tv = app.add_subcommand("tv", "Total-variation estimates");
    tv->add_option("--method", tv_method, "histogram | psi-inversion")->capture_default_str();
    auto* smooth = app.add_subcommand("smooth", "Mollifier transform tables and constants");
    smooth->add_option("--anchors", anchors, "eps*xi anchor points")->capture_default_str();
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite");
    app.require_subcommand(0, 1);
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (wg->parsed()) return cmd_wg(app, c);
        if (moments->parsed()) return cmd_moments(app, c);
        if (cumulants->parsed()) return cmd_cumulants(app, c);
        if (charfun->parsed()) return cmd_charfun(app, c, xi_lo, xi_hi, xi_pts);
        if (bebound->parsed()) return cmd_bebound(app, c, xi_lo, xi_hi, xi_pts);
        if (upperbound->parsed()) return cmd_upperbound(app, c);
        if (rate->parsed()) return cmd_rate(app, c);
        if (tv->parsed()) return cmd_tv(app, c, tv_method);
        if (smooth->parsed()) return cmd_smooth(app, c, anchors);
        if (selftest_cmd->parsed()) return cmd_selftest(app, c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::cout << app.help();
    return 0;
}
