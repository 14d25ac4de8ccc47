#include "haarlin/charfun.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>

namespace haarlin {

namespace {

// ---------------------------------------------------------------- series ---

class SeriesEngine {
  public:
    explicit SeriesEngine(const SpectrumSpec& spec) : spec_(spec) {}

    // c_m = (-1)^m mu_{2m}/(2m)!; builds through m_max inclusive
    const std::vector<Rational>& coefficients(unsigned m_max) {
        std::lock_guard<std::mutex> lock(mtx_);
        if (coeff_.empty()) {
            coeff_.push_back(Rational(1));
        }
        while (coeff_.size() <= m_max) {
            unsigned m = static_cast<unsigned>(coeff_.size());
            Rational mu = moment_schur(spec_, 2 * m);
            Rational c = mu / Rational(factorial(2 * m));
            if (m % 2) c = -c;
            coeff_.push_back(c);
        }
        return coeff_;
    }

  private:
    SpectrumSpec spec_;
    std::vector<Rational> coeff_;
    std::mutex mtx_;
};

std::shared_ptr<SeriesEngine> series_engine(const SpectrumSpec& spec) {
    static std::mutex mtx;
    static std::map<std::uint64_t, std::shared_ptr<SeriesEngine>> engines;
    std::lock_guard<std::mutex> lock(mtx);
    auto& e = engines[spec.hash()];
    if (!e) e = std::make_shared<SeriesEngine>(spec);
    return e;
}

// ------------------------------------------------------------------ mpfr ---

// Minimal RAII wrapper; just enough for the determinant evaluation.
class Real {
  public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

double bessel_det_once(const SpectrumSpec& spec, double xi, mpfr_prec_t prec,
                       const Rational& vandermonde) {
    const long N = spec.N;
    auto R = [&] { return Real(prec); };

    Real sigma = R();
    mpfr_set_q(sigma.get(), spec.sigma_sq.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(sigma.get(), sigma.get(), MPFR_RNDN);

    std::vector<Real> nu;
    nu.reserve(N);
    for (long j = 0; j < N; ++j) {
        Real x = R();
        mpfr_set_q(x.get(), spec.nu_sq[j].get_mpq_t(), MPFR_RNDN);
        mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
        nu.push_back(x);
    }

    // B[j][k] = nu_j^k J_k(xi nu_j / sigma)
    std::vector<std::vector<Real>> B(N, std::vector<Real>(N, R()));
    Real arg = R(), t = R();
    for (long j = 0; j < N; ++j) {
        mpfr_set_d(arg.get(), xi, MPFR_RNDN);
        mpfr_mul(arg.get(), arg.get(), nu[j].get(), MPFR_RNDN);
        mpfr_div(arg.get(), arg.get(), sigma.get(), MPFR_RNDN);
        Real pw = R();
        mpfr_set_ui(pw.get(), 1, MPFR_RNDN);
        for (long k = 0; k < N; ++k) {
            mpfr_jn(t.get(), k, arg.get(), MPFR_RNDN);
            mpfr_mul(B[j][k].get(), t.get(), pw.get(), MPFR_RNDN);
            mpfr_mul(pw.get(), pw.get(), nu[j].get(), MPFR_RNDN);
        }
    }

    // LU determinant with partial pivoting
    Real det = R(), f = R();
    mpfr_set_ui(det.get(), 1, MPFR_RNDN);
    for (long c = 0; c < N; ++c) {
        long piv = c;
        for (long r = c + 1; r < N; ++r)
            if (mpfr_cmpabs(B[r][c].get(), B[piv][c].get()) > 0) piv = r;
        if (piv != c) {
            std::swap(B[piv], B[c]);
            mpfr_neg(det.get(), det.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(B[c][c].get())) return 0.0;
        mpfr_mul(det.get(), det.get(), B[c][c].get(), MPFR_RNDN);
        for (long r = c + 1; r < N; ++r) {
            mpfr_div(f.get(), B[r][c].get(), B[c][c].get(), MPFR_RNDN);
            for (long cc = c; cc < N; ++cc) {
                mpfr_mul(t.get(), f.get(), B[c][cc].get(), MPFR_RNDN);
                mpfr_sub(B[r][cc].get(), B[r][cc].get(), t.get(), MPFR_RNDN);
            }
        }
    }

    // prefactor (2 sigma / xi)^{N(N-1)/2} prod_{j<N} j!
    Real pref = R();
    mpfr_mul_ui(pref.get(), sigma.get(), 2, MPFR_RNDN);
    mpfr_div_d(pref.get(), pref.get(), xi, MPFR_RNDN);
    mpfr_pow_ui(pref.get(), pref.get(), static_cast<unsigned long>(N * (N - 1) / 2), MPFR_RNDN);
    for (long j = 1; j < N; ++j) {
        Int fj = factorial(j);
        Real ff = R();
        mpfr_set_z(ff.get(), fj.get_mpz_t(), MPFR_RNDN);
        mpfr_mul(pref.get(), pref.get(), ff.get(), MPFR_RNDN);
    }

    Real den = R();
    mpfr_set_q(den.get(), vandermonde.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(det.get(), det.get(), pref.get(), MPFR_RNDN);
    mpfr_div(det.get(), det.get(), den.get(), MPFR_RNDN);
    return mpfr_get_d(det.get(), MPFR_RNDN);
}

double exp_half_neg_sq(double xi) { return std::exp(-0.5 * xi * xi); }

// int_a^b e^{-xi^2/2} dxi via erfc, stable for large a
double gauss_tail_integral(double a, double b) {
    const double s = std::sqrt(0.5);
    double hi = b == std::numeric_limits<double>::infinity() ? 0.0 : std::erfc(b * s);
    return std::sqrt(M_PI / 2.0) * (std::erfc(a * s) - hi);
}

struct GaussLegendre16 {
    static constexpr int n = 16;
    double x[16], w[16];
    GaussLegendre16() {
        // nodes/weights on [-1,1]
        static const double xs[8] = {0.0950125098376374, 0.2816035507792589,
                                     0.4580167776572274, 0.6178762444026438,
                                     0.7554044083550030, 0.8656312023878318,
                                     0.9445750230732326, 0.9894009349916499};
        static const double ws[8] = {0.1894506104550685, 0.1826034150449236,
                                     0.1691565193950025, 0.1495959888165767,
                                     0.1246289712555339, 0.0951585116824928,
                                     0.0622535239386479, 0.0271524594117541};
        for (int i = 0; i < 8; ++i) {
            x[i] = -xs[7 - i];
            w[i] = ws[7 - i];
            x[8 + i] = xs[i];
            w[8 + i] = ws[i];
        }
    }
};
const GaussLegendre16 kGL;

unsigned auto_m_max(const SpectrumSpec& spec, double xi, double tol, unsigned cap = 64) {
    // grow until the next-term bound at xi drops under tol
    auto engine = series_engine(spec);
    unsigned m = 8;
    while (true) {
        const auto& c = engine->coefficients(m + 1);
        double t_next = std::abs(to_double(c[m + 1])) * std::pow(xi, 2.0 * (m + 1));
        double t_cur = std::abs(to_double(c[m])) * std::pow(xi, 2.0 * m);
        if (t_next < tol && t_next <= t_cur) return m;
        if (m >= cap) return cap;
        m = std::min(cap, m + (m < 24 ? 8u : 12u));
    }
}

}  // namespace

Rational psi_series_exact(const SpectrumSpec& spec, const Rational& xi, unsigned m_max,
                          Rational* next_term) {
    auto engine = series_engine(spec);
    const auto& c = engine->coefficients(m_max + 1);
    Rational xi2 = xi * xi;
    Rational pw(1), sum(0);
    for (unsigned m = 0; m <= m_max; ++m) {
        sum += c[m] * pw;
        pw *= xi2;
    }
    if (next_term) *next_term = c[m_max + 1] * pw;
    return sum;
}

PsiPoint psi_series(const SpectrumSpec& spec, double xi, unsigned m_max) {
    auto engine = series_engine(spec);
    const auto& c = engine->coefficients(m_max + 1);
    const double xi2 = xi * xi;
    double sum = 0, comp = 0, max_term = 0, pw = 1;
    for (unsigned m = 0; m <= m_max; ++m) {
        double term = to_double(c[m]) * pw;
        max_term = std::max(max_term, std::abs(term));
        double y = term - comp;  // Kahan
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        pw *= xi2;
    }
    PsiPoint out;
    out.error_bound = std::abs(to_double(c[m_max + 1])) * pw;
    double prev_term = std::abs(to_double(c[m_max])) * (pw / std::max(xi2, 1e-300));
    out.truncated = xi2 > 0 && out.error_bound > prev_term;
    out.value = sum;
    // floating cancellation guard: redo exactly when roundoff could matter
    if (max_term * 1e-15 > std::max(std::abs(sum) * 1e-9, out.error_bound * 0.01)) {
        Rational exact = psi_series_exact(spec, rational_from_double(xi), m_max, nullptr);
        out.value = to_double(exact);
    }
    return out;
}

double psi_normal(double xi) { return exp_half_neg_sq(xi); }

double psi_bessel(const SpectrumSpec& spec, double xi, double rel_tol, double degeneracy_tol) {
    if (spec.degenerate(degeneracy_tol))
        throw near_degenerate_error("psi_bessel: spectrum degenerate or near-degenerate "
                                    "(confluent determinants not supported)");
    if (xi == 0) return 1.0;
    xi = std::abs(xi);  // psi_N is even
    const long N = spec.N;
    Rational vdm(1);
    for (long j = 0; j < N; ++j)
        for (long k = j + 1; k < N; ++k) vdm *= (spec.nu_sq[k] - spec.nu_sq[j]);

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (mpfr_prec_t prec = 128; prec <= 16384; prec *= 2) {
        double val = bessel_det_once(spec, xi, prec, vdm);
        if (!std::isnan(prev)) {
            double scale = std::max({std::abs(val), std::abs(prev), 1e-300});
            if (std::abs(val - prev) <= rel_tol * scale) return val;
        }
        prev = val;
    }
    throw std::runtime_error("psi_bessel: precision escalation exhausted at xi=" +
                             std::to_string(xi));
}

double psi_value(const SpectrumSpec& spec, double xi, double tol) {
    if (xi == 0) return 1.0;
    xi = std::abs(xi);
    if (!spec.degenerate()) return psi_bessel(spec, xi, std::min(tol, 1e-12));
    unsigned m = auto_m_max(spec, xi, tol);
    return psi_series(spec, xi, m).value;
}

double be_ratio(const SpectrumSpec& spec, double xi, double delta) {
    const double limit = delta * std::pow(static_cast<double>(spec.N), (1.0 - spec.b) / 2.0);
    if (!(xi > 0) || xi >= limit)
        throw std::domain_error("be_ratio: xi outside (0, delta N^{(1-b)/2})");
    const double weight = std::pow(xi, 4) * exp_half_neg_sq(xi);
    if (weight < 1e-280) throw std::domain_error("be_ratio: xi^4 e^{-xi^2/2} underflows");
    double diff;
    if (!spec.degenerate()) {
        diff = std::abs(psi_bessel(spec, xi) - psi_normal(xi));
    } else {
        // exact series difference: subtract the normal series term by term to
        // dodge the 1 - xi^2/2 + ... cancellation
        unsigned m_max = auto_m_max(spec, xi, 1e-16);
        Rational x = rational_from_double(xi);
        Rational xi2 = x * x;
        auto engine = series_engine(spec);
        const auto& c = engine->coefficients(m_max + 1);
        Rational pw(1), sum(0);
        for (unsigned m = 0; m <= m_max; ++m) {
            Rational normal_cm = make_rational(normal_moment(2 * m), factorial(2 * m));
            if (m % 2) normal_cm = -normal_cm;
            sum += (c[m] - normal_cm) * pw;
            pw *= xi2;
        }
        // the residual normal tail beyond m_max is negligible at these xi
        diff = std::abs(to_double(sum));
    }
    return diff * std::pow(static_cast<double>(spec.N), 2.0 - spec.b) / weight;
}

DensityResult density_from_psi(const SpectrumSpec& spec, const std::vector<double>& xgrid,
                               double xi_cut, double tol) {
    if (spec.N < 2)
        throw std::domain_error("density_from_psi: N >= 2 required (f_1 is unbounded)");
    DensityResult out;
    out.x = xgrid;
    const bool bessel = !spec.degenerate();
    out.route = bessel ? "bessel" : "series";

    unsigned m_series = 0;
    if (xi_cut <= 0) {
        if (bessel) {
            xi_cut = 4.0;
            while (xi_cut < 60.0 && std::abs(psi_bessel(spec, xi_cut)) > tol * 0.1) xi_cut += 2.0;
        } else {
            // largest xi the series still certifies
            m_series = 64;
            auto engine = series_engine(spec);
            const auto& c = engine->coefficients(m_series + 1);
            double lo = 0.5, hi = 40.0;
            auto certified = [&](double xi) {
                double t_next = std::abs(to_double(c[m_series + 1])) *
                                std::pow(xi, 2.0 * (m_series + 1));
                double t_prev = std::abs(to_double(c[m_series])) * std::pow(xi, 2.0 * m_series);
                return t_next < tol * 0.1 && t_next <= t_prev;
            };
            while (hi - lo > 0.05) {
                double mid = 0.5 * (lo + hi);
                (certified(mid) ? lo : hi) = mid;
            }
            xi_cut = lo;
        }
    } else if (!bessel) {
        m_series = auto_m_max(spec, xi_cut, tol * 0.1);
    }

    double xmax = 1.0;
    for (double x : xgrid) xmax = std::max(xmax, std::abs(x));
    const double width = M_PI / (2.0 * xmax);
    const int panels = std::max(8, static_cast<int>(std::ceil(xi_cut / width)));
    const double h = xi_cut / panels;

    std::vector<double> nodes, weights, psi_vals;
    nodes.reserve(panels * kGL.n);
    for (int p = 0; p < panels; ++p) {
        double a = p * h;
        for (int i = 0; i < kGL.n; ++i) {
            nodes.push_back(a + 0.5 * h * (kGL.x[i] + 1.0));
            weights.push_back(0.5 * h * kGL.w[i]);
        }
    }
    psi_vals.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        psi_vals[i] = bessel ? psi_bessel(spec, nodes[i])
                             : psi_series(spec, nodes[i], m_series).value;

    out.f.resize(xgrid.size());
    for (std::size_t j = 0; j < xgrid.size(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * std::cos(nodes[i] * xgrid[j]) * psi_vals[i];
        out.f[j] = s / M_PI;
    }
    double psi_at_cut = std::abs(psi_vals.back());
    out.tail_bound = (gauss_tail_integral(xi_cut, std::numeric_limits<double>::infinity()) +
                      psi_at_cut * xi_cut) /
                     M_PI;
    out.xi_cut = xi_cut;
    return out;
}

KolmogorovBound kolmogorov_upper_bound(const SpectrumSpec& spec, double delta, double gamma) {
    if (gamma <= 2.0) throw std::invalid_argument("kolmogorov_upper_bound: gamma > 2 required");
    KolmogorovBound out;
    const double N = static_cast<double>(spec.N);
    out.S_N = delta * std::pow(N, (1.0 - spec.b) / 2.0);
    out.T_N = std::pow(N, gamma);

    // empirical Berry-Esseen constant over (0, S_N]
    double C = 0;
    for (int i = 1; i <= 48; ++i) {
        double xi = out.S_N * i / 48.0 * 0.999;
        if (!(xi > 0)) continue;
        if (std::pow(xi, 4) * exp_half_neg_sq(xi) < 1e-280) continue;
        C = std::max(C, be_ratio(spec, xi, delta * 1.0000001));
    }
    out.C = C;

    const double S2 = out.S_N * out.S_N;
    double int_xi3 = 2.0 - (S2 + 2.0) * std::exp(-0.5 * S2);
    out.term_berry_esseen = 2.0 * C / (M_PI * std::pow(N, 2.0 - spec.b)) * int_xi3;

    out.term_gauss_tail = 2.0 / (M_PI * out.S_N) * gauss_tail_integral(out.S_N, out.T_N);

    if (!spec.degenerate()) {
        // adaptive geometric panels; |psi_N| decays like a power of xi
        double acc = 0, a = out.S_N;
        while (a < out.T_N) {
            double bseg = std::min(out.T_N, a * 1.6 + 0.5);
            int sub = std::max(4, static_cast<int>(std::ceil((bseg - a) / (M_PI / 4.0))));
            double hh = (bseg - a) / sub;
            double seg = 0;
            for (int s = 0; s < sub; ++s) {
                double lo = a + s * hh;
                for (int i = 0; i < kGL.n; ++i) {
                    double xi = lo + 0.5 * hh * (kGL.x[i] + 1.0);
                    seg += 0.5 * hh * kGL.w[i] * std::abs(psi_bessel(spec, xi, 1e-10));
                }
            }
            acc += seg;
            if (seg < 1e-16 * std::max(acc, 1e-12)) {
                a = bseg;
                break;
            }
            a = bseg;
        }
        out.term_psi_tail = 2.0 / (M_PI * out.S_N) * acc;
    } else {
        out.degraded = true;
        out.term_psi_tail = 2.0 / (M_PI * out.S_N) * (out.T_N - out.S_N);
    }

    out.term_feller = 24.0 / (std::sqrt(2.0 * M_PI) * M_PI * out.T_N);
    out.total = out.term_berry_esseen + out.term_gauss_tail + out.term_psi_tail + out.term_feller;
    return out;
}

CharFunEval charfun_eval(const SpectrumSpec& spec, const std::vector<double>& xi_grid,
                         unsigned m_max) {
    CharFunEval ev;
    ev.spec = spec;
    ev.xi = xi_grid;
    const bool bessel = !spec.degenerate();
    for (double xi : xi_grid) {
        double pn, err = 0;
        if (xi == 0) {
            pn = 1.0;
        } else if (bessel && m_max == 0) {
            pn = psi_bessel(spec, xi);
            err = std::abs(pn) * 1e-12;
        } else {
            unsigned m = m_max ? m_max : auto_m_max(spec, xi, 1e-12);
            auto pt = psi_series(spec, xi, m);
            pn = pt.value;
            err = pt.error_bound;
        }
        double p = psi_normal(xi);
        double weight = std::pow(xi, 4) * exp_half_neg_sq(xi);
        double ratio = (xi > 0 && weight > 1e-280)
                           ? std::abs(pn - p) * std::pow(static_cast<double>(spec.N),
                                                         2.0 - spec.b) / weight
                           : std::numeric_limits<double>::quiet_NaN();
        ev.psi_N.push_back(pn);
        ev.psi.push_back(p);
        ev.ratio.push_back(ratio);
        ev.error_bound.push_back(err);
    }
    return ev;
}

void write_charfun_csv(const CharFunEval& ev, const std::string& path,
                       const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "xi,psi_N,psi_normal,be_ratio,error_bound\n";
    out.precision(17);
    for (std::size_t i = 0; i < ev.xi.size(); ++i)
        out << ev.xi[i] << ',' << ev.psi_N[i] << ',' << ev.psi[i] << ',' << ev.ratio[i] << ','
            << ev.error_bound[i] << '\n';
}

}  // namespace haarlin
