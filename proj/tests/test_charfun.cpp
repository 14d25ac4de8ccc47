#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "haarlin/charfun.hpp"
#include "haarlin/cumulants.hpp"
#include "haarlin/montecarlo.hpp"

using namespace haarlin;

namespace {

SpectrumSpec sqrt2_singleton() {
    SpectrumSpec s;
    s.N = 1;
    s.nu_sq = {Rational(2)};
    s.nu = {std::sqrt(2.0)};
    s.sigma_sq = Rational(1);
    s.b = 0;
    s.k = Rational(2);
    s.family = "explicit-sqrt2";
    return s;
}

// (1/2pi) int_0^{2pi} cos(xi * sqrt(2) cos t) dt, trapezoid on the circle
double circle_quadrature_psi1(double xi) {
    const int n = 4096;
    double s = 0;
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * i / n;
        s += std::cos(xi * std::sqrt(2.0) * std::cos(t));
    }
    return s / n;
}

}  // namespace

TEST_CASE("psi_normal") {
    CHECK(psi_normal(0) == 1.0);
    CHECK(psi_normal(1.0) == doctest::Approx(0.606530659712633).epsilon(1e-12));
    CHECK(psi_normal(-1.7) == psi_normal(1.7));
}

TEST_CASE("psi_series basics") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 4);
    auto p0 = psi_series(spec, 0.0, 4);
    CHECK(p0.value == 1.0);
    CHECK(p0.error_bound == 0.0);

    // identity: coefficients match e^{-xi^2/2} term by term through order 2N
    auto id = make_spectrum("identity", 6);
    Rational xi(1, 2);
    for (unsigned mm = 1; mm <= 6; ++mm) {
        Rational ours = psi_series_exact(id, xi, mm);
        Rational gauss(0);
        for (unsigned m = 0; m <= mm; ++m) {
            Rational term = pow_rational(xi * xi / 2, m) / Rational(factorial(m));
            gauss += m % 2 ? -term : term;
        }
        CHECK(ours == gauss);
    }

    // hand-evaluated partial sum for nu = {2, 0}: mu_2 = 1, mu_4 = 2
    auto ex = make_spectrum("explicit:2,0", 2);
    Rational s2 = psi_series_exact(ex, Rational(1), 2);
    CHECK(s2 == Rational(1) - Rational(1, 2) + Rational(2, 24));
    // the reported error bound is the first omitted term
    auto pt = psi_series(ex, 1.0, 2);
    Rational mu6 = moment_schur(ex, 6);
    CHECK(pt.error_bound ==
          doctest::Approx(std::abs(to_double(mu6 / Rational(factorial(6u))))).epsilon(1e-12));
}

TEST_CASE("|psi| <= 1 and evenness on evaluated grids") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 5);
    for (double xi : {0.1, 0.7, 1.9, 3.3, 7.0}) {
        double v = psi_bessel(spec, xi);
        CHECK(std::abs(v) <= 1.0);
        CHECK(psi_bessel(spec, -xi) == v);  // even by construction
    }
}

TEST_CASE("N=1 determinant degenerates to the single Bessel factor") {
    auto spec = sqrt2_singleton();
    for (double xi : {0.3, 1.0, 2.5}) {
        double det = psi_bessel(spec, xi);
        CHECK(det == doctest::Approx(std::cyl_bessel_j(0, std::sqrt(2.0) * xi)).epsilon(1e-10));
        CHECK(det == doctest::Approx(circle_quadrature_psi1(xi)).epsilon(1e-9));
    }
}

TEST_CASE("route agreement at N=4, distinct singular values") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 4);
    for (int i = 1; i <= 8; ++i) {
        double xi = 0.25 * i;
        double a = psi_bessel(spec, xi);
        double b = psi_series(spec, xi, 20).value;
        CHECK(std::abs(a - b) <= 1e-8);
    }
}

TEST_CASE("degenerate spectrum rejected by the determinant route") {
    CHECK_THROWS_AS(psi_bessel(make_spectrum("identity", 3), 1.0), near_degenerate_error);
    CHECK_THROWS_AS(psi_bessel(make_spectrum("explicit:2,0", 2), 1.0), near_degenerate_error);
    CHECK(psi_value(make_spectrum("identity", 3), 0.8) ==
          doctest::Approx(psi_series(make_spectrum("identity", 3), 0.8, 24).value)
              .epsilon(1e-9));
}

TEST_CASE("large-xi decay of the determinant route") {
    // envelope slope over [50, 200] at N=3 must be at most -N^2/2 + 1
    auto spec = make_spectrum("ramp:lo=1,hi=2", 3);
    std::vector<double> lx, lv;
    for (double xi = 50; xi <= 200; xi *= 1.12) {
        // local envelope: max |psi| over half a period
        double peak = 0;
        for (int j = 0; j < 24; ++j)
            peak = std::max(peak, std::abs(psi_bessel(spec, xi + j * 0.1, 1e-11)));
        lx.push_back(std::log(xi));
        lv.push_back(std::log(peak));
    }
    double n = static_cast<double>(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += lv[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * lv[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= -3.5);
}

TEST_CASE("be_ratio: domain, small-xi cumulant limit, identity smallness") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 8);
    CHECK_THROWS_AS(be_ratio(spec, 0.0), std::domain_error);
    CHECK_THROWS_AS(be_ratio(spec, 5.0, 0.5), std::domain_error);  // above delta sqrt(N)

    // xi -> 0: ratio approaches |kappa_4| N^2 / 4!
    auto ct = cumulants_from_moments(moment_table(spec, 2));
    double limit = std::abs(to_double(ct.kappa[2])) * 64.0 / 24.0;
    double r = be_ratio(spec, 0.1, 1.0);
    CHECK(r == doctest::Approx(limit).epsilon(0.05));

    // identity case: orders of magnitude below a generic b=0 family
    auto id = make_spectrum("identity", 8);
    CHECK(be_ratio(id, 1.0, 1.0) < 1e-6 * be_ratio(spec, 1.0, 1.0) + 1e-12);
}

TEST_CASE("be_ratio bounded and non-increasing across N (b=0)") {
    double prev = 0;
    for (long N : {8L, 12L, 16L}) {
        auto spec = make_spectrum("ramp:lo=1,hi=2", N);
        double sup = 0;
        for (double xi = 0.5; xi <= 2.5; xi += 0.25) sup = std::max(sup, be_ratio(spec, xi, 1.0));
        if (prev > 0) CHECK(sup <= 1.05 * prev);
        prev = sup;
    }
}

TEST_CASE("identity superexponential contrast") {
    // |psi_N - psi| at xi=1 under C xi^{2(N+1)} / N^{N+1} with small C
    for (long N : {4L, 5L, 6L}) {
        auto spec = make_spectrum("identity", N);
        Rational xi(1);
        Rational s = psi_series_exact(spec, xi, static_cast<unsigned>(N) + 10);
        double diff = std::abs(to_double(s) - psi_normal(1.0));
        double bound = std::pow(static_cast<double>(N), -(static_cast<double>(N) + 1.0)) *
                       psi_normal(1.0);
        CHECK(diff <= 10.0 * bound);
        CHECK(diff > 0.0);  // it is a genuine departure, not numerical zero
    }
}

TEST_CASE("density recovery") {
    CHECK_THROWS_AS(density_from_psi(sqrt2_singleton(), {0.0}), std::domain_error);

    auto id = make_spectrum("identity", 8);
    std::vector<double> grid;
    for (double x = -4.0; x <= 4.0 + 1e-9; x += 0.125) grid.push_back(x);
    auto dens = density_from_psi(id, grid);
    CHECK(dens.route == "series");
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double phi = std::exp(-0.5 * grid[i] * grid[i]) / std::sqrt(2.0 * M_PI);
        worst = std::max(worst, std::abs(dens.f[i] - phi));
        CHECK(dens.f[i] >= -1e-6);
    }
    CHECK(worst <= 1e-3);
    // evenness
    auto sym = density_from_psi(id, {1.25, -1.25});
    CHECK(sym.f[0] == doctest::Approx(sym.f[1]).epsilon(1e-12));
    // support: negligible beyond alpha
    auto far = density_from_psi(id, {id.alpha() + 1.0});
    CHECK(std::abs(far.f[0]) <= 1e-6);

    // mass on a non-degenerate spectrum, against 1 and against a histogram
    auto ramp = make_spectrum("ramp:lo=1,hi=2", 4);
    std::vector<double> wide;
    for (double x = -7.0; x <= 7.0 + 1e-9; x += 0.05) wide.push_back(x);
    auto d2 = density_from_psi(ramp, wide);
    CHECK(d2.route == "bessel");
    double mass = 0;
    for (std::size_t i = 0; i + 1 < wide.size(); ++i)
        mass += 0.5 * (d2.f[i] + d2.f[i + 1]) * 0.05;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));

    auto batch = sample_trace_stat(ramp, 200000, 5, 0, false);
    for (double x0 : {0.0, 0.8, 1.6}) {
        double bin = 0.2;
        long cnt = 0;
        for (double v : batch.x)
            if (v >= x0 - bin / 2 && v < x0 + bin / 2) ++cnt;
        double emp = static_cast<double>(cnt) / (200000.0 * bin);
        auto dv = density_from_psi(ramp, {x0});
        CHECK(std::abs(dv.f[0] - emp) < 0.02);
    }
}

TEST_CASE("erfc sandwich used by the gauss-tail term") {
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        double mid = std::exp(t * t) * (std::sqrt(M_PI) / 2.0) * std::erfc(t);
        CHECK(1.0 / (t + std::sqrt(t * t + 2.0)) < mid);
        CHECK(mid <= 1.0 / (t + std::sqrt(t * t + 4.0 / M_PI)));
    }
}

TEST_CASE("kolmogorov upper bound: structure and consistency with Monte Carlo") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 8);
    auto kb = kolmogorov_upper_bound(spec, 1.0, 2.5);
    CHECK_FALSE(kb.degraded);
    CHECK(kb.term_berry_esseen > 0);
    CHECK(kb.total >= kb.term_berry_esseen + kb.term_feller);
    // first term alone is at most 4C/(pi N^{2-b})
    CHECK(kb.term_berry_esseen <= 4.0 * kb.C / (M_PI * 64.0) * (1 + 1e-12));

    auto batch = sample_trace_stat(spec, 400000, 9, 0, false);
    auto [e_mc, se] = kolmogorov_distance(batch);
    CHECK(kb.total >= e_mc - 3 * se);

    // degenerate spectrum: psi-tail falls back to the trivial bound, flagged
    auto kb2 = kolmogorov_upper_bound(make_spectrum("identity", 8), 1.0, 2.5);
    CHECK(kb2.degraded);
    CHECK(kb2.total >= kb.total);

    CHECK_THROWS_AS(kolmogorov_upper_bound(spec, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("upper bound decreases with the doubling of N") {
    // log2 decrement in [1.3, 2.2]. delta = 1.5 keeps the erfc terms
    // subdominant at these N (the default 1/2 leaves them in charge) and
    // gamma = 2.1 keeps the Feller cutoff term inside the window; the
    // Berry-Esseen term itself halves at rate 2 - b = 2.
    double prev = 0;
    for (long N : {8L, 16L, 32L}) {
        auto spec = make_spectrum("ramp:lo=1,hi=2", N);
        double total = kolmogorov_upper_bound(spec, 1.5, 2.1).total;
        if (prev > 0) {
            double dec = std::log2(prev / total);
            CHECK(dec >= 1.3);
            CHECK(dec <= 2.2);
        }
        prev = total;
    }
}

TEST_CASE("charfun eval and csv") {
    auto spec = make_spectrum("ramp:lo=1,hi=2", 4);
    auto ev = charfun_eval(spec, {0.0, 0.5, 1.0});
    CHECK(ev.psi_N[0] == 1.0);
    CHECK(ev.psi[2] == doctest::Approx(psi_normal(1.0)));
    std::string path = "/tmp/haarlin-test-charfun.csv";
    write_charfun_csv(ev, path, "test");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# test");
    std::getline(in, line);
    CHECK(line == "xi,psi_N,psi_normal,be_ratio,error_bound");
    std::remove(path.c_str());
}
