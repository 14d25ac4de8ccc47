#include "haarlin/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace haarlin {

namespace {

// 16-point Gauss-Legendre on [-1,1], long double
struct GL16L {
    long double x[16], w[16];
    GL16L() {
        static const long double xs[8] = {0.0950125098376374401853193L,
                                          0.2816035507792589132304605L,
                                          0.4580167776572273863424194L,
                                          0.6178762444026437484466718L,
                                          0.7554044083550030338951012L,
                                          0.8656312023878317438804679L,
                                          0.9445750230732325760779884L,
                                          0.9894009349916499325961542L};
        static const long double ws[8] = {0.1894506104550684962853967L,
                                          0.1826034150449235888667637L,
                                          0.1691565193950025381893121L,
                                          0.1495959888165767320815017L,
                                          0.1246289712555338720524763L,
                                          0.0951585116824927848099251L,
                                          0.0622535239386478928628438L,
                                          0.0271524594117540948517806L};
        for (int i = 0; i < 8; ++i) {
            x[i] = -xs[7 - i];
            w[i] = ws[7 - i];
            x[8 + i] = xs[i];
            w[8 + i] = ws[i];
        }
    }
};
const GL16L kGL;

long double bump_core(long double t) {
    // exp(-1/(1-t^2)) on (-1,1), zero outside
    if (t <= -1.0L || t >= 1.0L) return 0.0L;
    return expl(-1.0L / (1.0L - t * t));
}

long double panel_integral(long double a, long double b, long double xi) {
    long double mid = 0.5L * (a + b), half = 0.5L * (b - a);
    long double s = 0.0L;
    for (int i = 0; i < 16; ++i) {
        long double t = mid + half * kGL.x[i];
        s += kGL.w[i] * cosl(xi * t) * bump_core(t);
    }
    return s * half;
}

long double integrate_core(long double lo, long double hi, long double xi, int min_panels) {
    // panels no wider than a half period of cos(xi t)
    long double width_cap = xi > 0.0L ? static_cast<long double>(M_PI) / (2.0L * xi) : (hi - lo);
    int n = std::max<int>(min_panels,
                          static_cast<int>(ceill((hi - lo) / width_cap)));
    long double h = (hi - lo) / n, s = 0.0L;
    for (int p = 0; p < n; ++p) s += panel_integral(lo + p * h, lo + (p + 1) * h, xi);
    return s;
}

}  // namespace

double bump_norm_constant() {
    static const double g = [] {
        // symmetric integrand; refine panel count until stable
        long double prev = 0.0L, cur = 0.0L;
        for (int n = 32; n <= 4096; n *= 2) {
            cur = 2.0L * integrate_core(0.0L, 1.0L, 0.0L, n);
            if (n > 32 && fabsl(cur - prev) < 1e-16L * fabsl(cur)) break;
            prev = cur;
        }
        return static_cast<double>(cur);
    }();
    return g;
}

double bump(double x, double eps) {
    if (eps <= 0) throw std::domain_error("bump: eps > 0 required");
    return static_cast<double>(bump_core(static_cast<long double>(x / eps))) /
           (bump_norm_constant() * eps);
}

double bump_ft_numeric(double xi, double eps) {
    if (eps <= 0) throw std::domain_error("bump_ft_numeric: eps > 0 required");
    long double u = fabsl(static_cast<long double>(eps) * static_cast<long double>(xi));
    // hat{chi}_1(u) = (2/g) int_0^1 cos(u t) exp(-1/(1-t^2)) dt
    long double val = integrate_core(0.0L, 1.0L, u, 64);
    return static_cast<double>(2.0L * val / static_cast<long double>(bump_norm_constant()));
}

double bump_ft_phase_cos(double xi, double eps) {
    double u = std::abs(eps * xi);
    return std::cos(u - std::sqrt(u) - 3.0 * M_PI / 8.0);
}

double bump_ft_asymptotic(double xi, double eps) {
    double u = std::abs(eps * xi);
    if (u < 25.0)
        throw std::domain_error("bump_ft_asymptotic: eps*xi >= 25 required (asymptotic regime)");
    double amp = 2.0 / (bump_norm_constant() * std::pow(u, 0.75)) * std::sqrt(M_PI / std::sqrt(2.0));
    return amp * std::cos(u - std::sqrt(u) - 3.0 * M_PI / 8.0) * std::exp(-std::sqrt(u) - 0.25);
}

double smoothing_floor(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("smoothing_floor: 0 < r < 1 required");
    long double rl = static_cast<long double>(r);
    long double prev = 0.0L, inner = 0.0L;
    for (int n = 32; n <= 4096; n *= 2) {
        inner = integrate_core(rl, 1.0L, 0.0L, n);
        if (n > 32 && fabsl(inner - prev) < 1e-16L * std::max(fabsl(inner), 1e-30L)) break;
        prev = inner;
    }
    double g = bump_norm_constant();
    return r + 2.0 / g * (2.0 - r) * static_cast<double>(inner);
}

TabulatedDensity convolve_density(const TabulatedDensity& f, double eps) {
    if (eps <= 0) throw std::domain_error("convolve_density: eps > 0 required");
    if (!(f.dx > 0) || f.f.size() < 2)
        throw std::invalid_argument("convolve_density: need a uniform grid with dx > 0");
    if (f.dx > eps / 8.0)
        throw std::invalid_argument("convolve_density: grid step must be <= eps/8");
    const long half = static_cast<long>(std::ceil(eps / f.dx));
    std::vector<double> kernel(2 * half + 1);
    double ksum = 0;
    for (long j = -half; j <= half; ++j) {
        double v = bump(static_cast<double>(j) * f.dx, eps);
        kernel[j + half] = v;
        ksum += v;
    }
    for (double& v : kernel) v /= ksum;  // discrete normalization preserves mass

    TabulatedDensity out;
    out.x0 = f.x0;
    out.dx = f.dx;
    out.f.assign(f.f.size(), 0.0);
    const long n = static_cast<long>(f.f.size());
    for (long i = 0; i < n; ++i) {
        double s = 0;
        for (long j = -half; j <= half; ++j) {
            long src = i - j;
            if (src < 0 || src >= n) continue;  // density treated as 0 outside
            s += kernel[j + half] * f.f[src];
        }
        out.f[i] = s;
    }
    return out;
}

}  // namespace haarlin
