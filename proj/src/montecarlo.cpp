#include "haarlin/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "haarlin/charfun.hpp"
#include "haarlin/smoothing.hpp"

namespace haarlin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 2;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : eng_(splitmix64(seed ^ splitmix64(stream))) {}

double RngStream::uniform01() {
    // 53-bit mantissa, shifted into (0, 1]
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::gauss() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    double u1 = uniform01(), u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
}

Eigen::MatrixXcd haar_unitary(int N, RngStream& rng) {
    Eigen::MatrixXcd G(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) G(i, j) = std::complex<double>(rng.gauss(), rng.gauss());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; ++j) {
        std::complex<double> d = R(j, j);
        double mag = std::abs(d);
        Q.col(j) *= (mag == 0 ? std::complex<double>(1, 0) : d / mag);
    }
    return Q;
}

namespace {

// One worker fills whole chunks; chunk c uses stream c, so the layout is
// reproducible for any worker count.
template <typename Fill>
void run_chunked(std::uint64_t M, std::uint64_t chunk, int threads, Fill fill) {
    const std::uint64_t nchunks = (M + chunk - 1) / chunk;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        while (true) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::uint64_t begin = c * chunk;
            std::uint64_t end = std::min(M, begin + chunk);
            fill(c, begin, end);
        }
    };
    int nt = resolve_threads(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace

SampleBatch sample_trace_stat(const SpectrumSpec& spec, std::uint64_t M, std::uint64_t seed,
                              int threads, bool with_imag, std::uint64_t chunk) {
    if (M < 1) throw std::invalid_argument("sample_trace_stat: M >= 1 required");
    SampleBatch batch;
    batch.spec_hash = spec.hash();
    batch.N = spec.N;
    batch.alpha = spec.alpha();
    batch.seed = seed;
    batch.chunk = chunk;
    batch.M = M;
    batch.x.resize(M);
    if (with_imag) batch.y.resize(M);

    const int N = static_cast<int>(spec.N);
    const double inv_sigma = 1.0 / spec.sigma();
    const std::vector<double> nu = spec.nu;

    run_chunked(M, chunk, threads, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
        RngStream rng(seed, c);
        for (std::uint64_t i = begin; i < end; ++i) {
            Eigen::MatrixXcd U = haar_unitary(N, rng);
            std::complex<double> tr(0, 0);
            for (int j = 0; j < N; ++j) tr += nu[j] * U(j, j);
            batch.x[i] = tr.real() * inv_sigma;
            if (with_imag) batch.y[i] = tr.imag() * inv_sigma;
        }
    });
    return batch;
}

SampleBatch sample_trace_stat_rotated(const SpectrumSpec& spec, std::uint64_t M,
                                      std::uint64_t seed, std::uint64_t aux_seed, int threads) {
    const int N = static_cast<int>(spec.N);
    RngStream aux(aux_seed, 0);
    Eigen::MatrixXcd V = haar_unitary(N, aux);
    Eigen::MatrixXcd W = haar_unitary(N, aux);
    Eigen::VectorXd d(N);
    for (int j = 0; j < N; ++j) d(j) = spec.nu[j];
    Eigen::MatrixXcd A = V * d.asDiagonal() * W;

    SampleBatch batch;
    batch.spec_hash = spec.hash();
    batch.N = spec.N;
    batch.alpha = spec.alpha();
    batch.seed = seed;
    batch.chunk = 1 << 14;
    batch.M = M;
    batch.x.resize(M);
    batch.y.resize(M);
    const double inv_sigma = 1.0 / spec.sigma();
    run_chunked(M, batch.chunk, threads, [&](std::uint64_t c, std::uint64_t begin,
                                             std::uint64_t end) {
        RngStream rng(seed, c);
        for (std::uint64_t i = begin; i < end; ++i) {
            Eigen::MatrixXcd U = haar_unitary(N, rng);
            std::complex<double> tr = (A * U).trace();
            batch.x[i] = tr.real() * inv_sigma;
            batch.y[i] = tr.imag() * inv_sigma;
        }
    });
    return batch;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::pair<double, double> kolmogorov_distance(std::vector<double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("kolmogorov_distance: need M >= 2");
    std::sort(xs.begin(), xs.end());
    const double M = static_cast<double>(xs.size());
    double sup = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double F = standard_normal_cdf(xs[i]);
        sup = std::max(sup, std::abs((static_cast<double>(i) + 1.0) / M - F));
        sup = std::max(sup, std::abs(static_cast<double>(i) / M - F));
    }
    double stderr_est = std::sqrt(std::log(2.0 / 0.05) / (2.0 * M));
    return {sup, stderr_est};
}

std::pair<double, double> kolmogorov_distance(const SampleBatch& batch) {
    return kolmogorov_distance(batch.x);
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double sup = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double Fa = static_cast<double>(i) / a.size();
        double Fb = static_cast<double>(j) / b.size();
        sup = std::max(sup, std::abs(Fa - Fb));
    }
    return sup;
}

double two_sample_ks_critical(std::size_t n, std::size_t m, double alpha) {
    double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

TvResult tv_estimate(const SpectrumSpec& spec, TvMethod method, std::uint64_t M,
                     std::uint64_t seed, int threads) {
    TvResult out;
    const double L = std::min(spec.alpha(), 9.0);
    if (method == TvMethod::psi_inversion) {
        out.method = "psi-inversion";
        const double step = 0.02;
        std::vector<double> grid;
        for (double x = 0; x <= L; x += step) grid.push_back(x);
        auto dens = density_from_psi(spec, grid);
        // f_N is even; integrate |f - phi| over [-L, L] = 2 * [0, L]
        double acc = 0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double d0 = std::abs(dens.f[i] - std::exp(-0.5 * grid[i] * grid[i]) /
                                                  std::sqrt(2.0 * M_PI));
            double d1 = std::abs(dens.f[i + 1] - std::exp(-0.5 * grid[i + 1] * grid[i + 1]) /
                                                     std::sqrt(2.0 * M_PI));
            acc += 0.5 * (d0 + d1) * step;
        }
        out.value = 2.0 * acc + 2.0 * (1.0 - standard_normal_cdf(L));
        out.err_hint = 2.0 * dens.tail_bound * L + 1e-4 * out.value;
        return out;
    }
    out.method = "histogram";
    auto batch = sample_trace_stat(spec, M, seed, threads, /*with_imag=*/false);
    // bandwidth from the smoothing-parameter scaling eta = 1/(C delta sqrt(N))
    const double eta = 1.0 / (5.0 * 0.5 * std::sqrt(static_cast<double>(spec.N)));
    const double step = eta / 8.0;
    const long nbins = static_cast<long>(std::ceil(2 * (L + eta) / step)) + 1;
    std::vector<double> f(nbins, 0.0);
    const double x0 = -(L + eta);
    const double inv_m = 1.0 / static_cast<double>(M);
    const long half = static_cast<long>(std::ceil(eta / step));
    for (double xv : batch.x) {
        long center = static_cast<long>(std::floor((xv - x0) / step + 0.5));
        for (long j = -half; j <= half; ++j) {
            long idx = center + j;
            if (idx < 0 || idx >= nbins) continue;
            double u = x0 + idx * step - xv;
            f[idx] += bump(u, eta) * inv_m;
        }
    }
    double acc = 0;
    for (long i = 0; i + 1 < nbins; ++i) {
        double xa = x0 + i * step, xb = x0 + (i + 1) * step;
        double pa = std::exp(-0.5 * xa * xa) / std::sqrt(2.0 * M_PI);
        double pb = std::exp(-0.5 * xb * xb) / std::sqrt(2.0 * M_PI);
        acc += 0.5 * (std::abs(f[i] - pa) + std::abs(f[i + 1] - pb)) * step;
    }
    out.value = acc + 2.0 * (1.0 - standard_normal_cdf(L));
    // kernel bias ~ eta^2/2 max|phi''| plus L1 sampling noise
    out.err_hint = 0.5 * eta * eta * 0.4 +
                   std::sqrt(2.0 * (2 * L / eta) / (M_PI * static_cast<double>(M)));
    return out;
}

RateReport rate_fit(const std::vector<RatePoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("rate_fit: need at least 3 points");
    RateReport rep;
    rep.points = points;
    rep.usable.resize(points.size());
    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        bool ok = p.estimate > p.stderr_est && p.estimate > 0 && p.N > 0;
        rep.usable[i] = ok;
        if (!ok) continue;
        double sigma_log = p.stderr_est / p.estimate;
        x.push_back(std::log(p.N));
        y.push_back(std::log(p.estimate));
        w.push_back(1.0 / (sigma_log * sigma_log));
    }
    if (x.size() < 3)
        throw std::runtime_error("rate_fit: fewer than 3 usable points (estimates at the "
                                 "noise floor)");
    double sw = 0, swx = 0, swy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    rep.slope = sxy / sxx;
    rep.intercept = ybar - rep.slope * xbar;
    rep.slope_stderr = std::sqrt(1.0 / sxx);
    rep.slope_ci_lo = rep.slope - 1.96 * rep.slope_stderr;
    rep.slope_ci_hi = rep.slope + 1.96 * rep.slope_stderr;
    return rep;
}

void save_batch(const SampleBatch& batch, const std::string& path_prefix) {
    {
        std::ofstream bin(path_prefix + ".bin", std::ios::binary);
        if (!bin) throw std::runtime_error("save_batch: cannot write " + path_prefix + ".bin");
        auto put = [&](const std::vector<double>& v) {
            bin.write(reinterpret_cast<const char*>(v.data()),
                      static_cast<std::streamsize>(v.size() * sizeof(double)));
        };
        put(batch.x);
        put(batch.y);
    }
    std::ofstream js(path_prefix + ".json");
    js << "{\n"
       << "  \"spec_hash\": \"" << std::hex << batch.spec_hash << std::dec << "\",\n"
       << "  \"N\": " << batch.N << ",\n"
       << "  \"alpha\": " << batch.alpha << ",\n"
       << "  \"seed\": " << batch.seed << ",\n"
       << "  \"chunk\": " << batch.chunk << ",\n"
       << "  \"M\": " << batch.M << ",\n"
       << "  \"has_imag\": " << (batch.y.empty() ? "false" : "true") << "\n"
       << "}\n";
}

SampleBatch load_batch(const std::string& path_prefix) {
    std::ifstream js(path_prefix + ".json");
    if (!js) throw std::runtime_error("load_batch: missing sidecar " + path_prefix + ".json");
    std::string text((std::istreambuf_iterator<char>(js)), std::istreambuf_iterator<char>());
    SampleBatch b;
    auto field = [&](const std::string& key) -> std::string {
        auto pos = text.find('"' + key + '"');
        if (pos == std::string::npos) throw std::runtime_error("load_batch: missing " + key);
        pos = text.find(':', pos);
        auto end = text.find_first_of(",}\n", pos);
        std::string raw = text.substr(pos + 1, end - pos - 1);
        raw.erase(std::remove_if(raw.begin(), raw.end(),
                                 [](char c) { return c == ' ' || c == '"'; }),
                  raw.end());
        return raw;
    };
    b.spec_hash = std::stoull(field("spec_hash"), nullptr, 16);
    b.N = std::stol(field("N"));
    b.alpha = std::stod(field("alpha"));
    b.seed = std::stoull(field("seed"));
    b.chunk = std::stoull(field("chunk"));
    b.M = std::stoull(field("M"));
    bool has_imag = field("has_imag") == "true";
    b.x.resize(b.M);
    std::ifstream bin(path_prefix + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("load_batch: missing payload " + path_prefix + ".bin");
    bin.read(reinterpret_cast<char*>(b.x.data()),
             static_cast<std::streamsize>(b.M * sizeof(double)));
    if (has_imag) {
        b.y.resize(b.M);
        bin.read(reinterpret_cast<char*>(b.y.data()),
                 static_cast<std::streamsize>(b.M * sizeof(double)));
    }
    return b;
}

}  // namespace haarlin
