#include "haarlin/moments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace haarlin {

double SpectrumSpec::sigma() const { return std::sqrt(to_double(sigma_sq)); }

double SpectrumSpec::alpha() const {
    double s = 0;
    for (double v : nu) s += v;
    return s / sigma();
}

bool SpectrumSpec::degenerate(double rel_gap_tol) const {
    if (nu_sq.empty() || nu_sq.front() == 0) return true;
    for (std::size_t i = 0; i + 1 < nu_sq.size(); ++i) {
        double gap = to_double(nu_sq[i + 1] - nu_sq[i]);
        double scale = to_double(nu_sq[i + 1]);
        if (gap <= rel_gap_tol * scale) return true;
    }
    return false;
}

std::uint64_t SpectrumSpec::hash() const {
    std::ostringstream os;
    os << N << '|' << b << '|' << k.get_str();
    for (const auto& v : nu_sq) os << '|' << v.get_str();
    return fnv1a64(os.str());
}

namespace {

struct Descriptor {
    std::string name;
    std::map<std::string, std::string> kv;
    std::vector<std::string> list;
};

Descriptor parse_descriptor(const std::string& s) {
    Descriptor d;
    auto colon = s.find(':');
    d.name = s.substr(0, colon);
    if (colon == std::string::npos) return d;
    std::string rest = s.substr(colon + 1);
    std::istringstream in(rest);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            d.list.push_back(tok);
        else
            d.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return d;
}

SpectrumSpec finalize(long N, std::vector<Rational> nu_sq, double b, Rational k,
                      const std::string& family) {
    if (N < 1) throw std::invalid_argument("make_spectrum: N must be >= 1");
    SpectrumSpec spec;
    spec.N = N;
    std::sort(nu_sq.begin(), nu_sq.end());
    Rational total(0);
    for (const auto& v : nu_sq) {
        if (v < 0) throw std::invalid_argument("make_spectrum: negative squared singular value");
        total += v;
    }
    if (total == 0) throw std::invalid_argument("make_spectrum: zero total mass");
    spec.nu_sq = std::move(nu_sq);
    spec.nu.reserve(spec.nu_sq.size());
    for (const auto& v : spec.nu_sq) spec.nu.push_back(std::sqrt(to_double(v)));
    spec.sigma_sq = total / Rational(2 * N);
    spec.b = b;
    spec.k = k;
    spec.family = family;
    // declared growth bound must hold at this N
    Rational cap = (b == 0.0)  ? k
                   : (b == 1.0) ? k * Rational(N)
                                : Rational(rational_from_double(to_double(k) * std::pow(N, b)));
    if (spec.nu_sq.back() > cap)
        throw std::invalid_argument("make_spectrum: nu_N^2 exceeds declared k N^b at N=" +
                                    std::to_string(N));
    return spec;
}

}  // namespace

SpectrumSpec make_spectrum(const std::string& descriptor, long N) {
    Descriptor d = parse_descriptor(descriptor);
    if (d.name == "identity") {
        return finalize(N, std::vector<Rational>(N, Rational(1)), 0.0, Rational(1), descriptor);
    }
    if (d.name == "spike") {
        // diag(sqrt(2N), 0, ..., 0): b = 1, k = 2
        std::vector<Rational> v(N, Rational(0));
        v.back() = Rational(2 * N);
        return finalize(N, std::move(v), 1.0, Rational(2), descriptor);
    }
    if (d.name == "sparse") {
        Rational q = d.kv.count("q") ? parse_rational(d.kv.at("q")) : Rational(1, 4);
        Rational h = d.kv.count("h") ? parse_rational(d.kv.at("h")) : Rational(2);
        long count = static_cast<long>(to_double(q * Rational(N)) + 1e-9);
        count = std::max<long>(1, count);
        if (count > N) count = N;
        std::vector<Rational> v(N, Rational(0));
        Rational h2 = h * h;
        for (long i = 0; i < count; ++i) v[N - 1 - i] = h2;
        return finalize(N, std::move(v), 0.0, h2, descriptor);
    }
    if (d.name == "ramp") {
        Rational lo = d.kv.count("lo") ? parse_rational(d.kv.at("lo")) : Rational(1);
        Rational hi = d.kv.count("hi") ? parse_rational(d.kv.at("hi")) : Rational(2);
        std::vector<Rational> v;
        v.reserve(N);
        for (long j = 0; j < N; ++j) {
            Rational nu = N == 1 ? lo : lo + (hi - lo) * make_rational(Int(j), Int(N - 1));
            v.push_back(nu * nu);
        }
        return finalize(N, std::move(v), 0.0, hi * hi, descriptor);
    }
    if (d.name == "random") {
        Rational lo = d.kv.count("lo") ? parse_rational(d.kv.at("lo")) : Rational(1, 2);
        Rational hi = d.kv.count("hi") ? parse_rational(d.kv.at("hi")) : Rational(3, 2);
        std::uint64_t seed = d.kv.count("seed") ? std::stoull(d.kv.at("seed")) : 1;
        std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
        std::vector<Rational> v;
        v.reserve(N);
        for (long j = 0; j < N; ++j) {
            // 53-bit dyadic rational in [0,1); exact
            Rational u(static_cast<long>(eng() >> 11));
            u /= Rational(Int(1) << 53);
            Rational nu = lo + (hi - lo) * u;
            v.push_back(nu * nu);
        }
        return finalize(N, std::move(v), 0.0, hi * hi, descriptor);
    }
    if (d.name == "explicit") {
        std::vector<Rational> v;
        for (const auto& tok : d.list) {
            Rational nu = parse_rational(tok);
            if (nu < 0) throw std::invalid_argument("make_spectrum: negative singular value");
            v.push_back(nu * nu);
        }
        if (static_cast<long>(v.size()) != N)
            throw std::invalid_argument("make_spectrum: explicit list length != N");
        Rational kmax(0);
        for (const auto& x : v) kmax = std::max(kmax, x);
        double b = d.kv.count("b") ? std::stod(d.kv.at("b")) : 0.0;
        Rational k = d.kv.count("k") ? parse_rational(d.kv.at("k")) : kmax;
        return finalize(N, std::move(v), b, k, descriptor);
    }
    throw std::invalid_argument("make_spectrum: unknown family '" + d.name + "'");
}

Rational trace_moment_integral(const SpectrumSpec& spec, unsigned m) {
    if (m < 1 || static_cast<long>(m) > spec.N)
        throw std::domain_error("trace_moment_integral: requires 1 <= m <= N (correct only "
                                "for m <= N); got m=" + std::to_string(m) +
                                ", N=" + std::to_string(spec.N));
    const auto& wg = WeingartenCache::global().get(m, spec.N);
    Rational sum(0);
    for (const auto& [lam, M] : wg)
        sum += Rational(class_size(lam)) * M * power_sum_product(lam, spec.nu_sq);
    return Rational(factorial(m)) * sum;
}

Rational trace_moment_integral_schur(const SpectrumSpec& spec, unsigned m) {
    if (m == 0) return Rational(1);
    auto h = complete_homogeneous_table(spec.nu_sq, m);
    Rational sum(0);
    for (const auto& lam : enumerate_partitions_bounded(m, static_cast<std::size_t>(spec.N))) {
        Rational f = f_lambda_product(lam, spec.N);
        sum += Rational(irrep_dimension(lam)) / f *
               schur_eval_jacobi_trudi(lam, h, static_cast<std::size_t>(spec.N));
    }
    return Rational(factorial(m)) * sum;
}

namespace {

Rational normalize_moment(const SpectrumSpec& spec, unsigned m, const Rational& integral) {
    Rational denom = Rational(factorial(m)) * pow_rational(2 * spec.sigma_sq, m);
    return Rational(double_factorial(2 * static_cast<long>(m) - 1)) * integral / denom;
}

}  // namespace

Rational moment(const SpectrumSpec& spec, unsigned two_m) {
    if (two_m % 2) return Rational(0);  // odd moments vanish by symmetry
    if (two_m == 0) return Rational(1);
    unsigned m = two_m / 2;
    return normalize_moment(spec, m, trace_moment_integral(spec, m));
}

Rational moment_schur(const SpectrumSpec& spec, unsigned two_m) {
    if (two_m % 2) return Rational(0);
    if (two_m == 0) return Rational(1);
    unsigned m = two_m / 2;
    return normalize_moment(spec, m, trace_moment_integral_schur(spec, m));
}

Int normal_moment(unsigned two_m) {
    if (two_m % 2) return 0;
    return double_factorial(static_cast<long>(two_m) - 1);
}

MomentTable moment_table(const SpectrumSpec& spec, unsigned m_max, bool allow_extended) {
    if (!allow_extended && static_cast<long>(m_max) > spec.N)
        throw std::domain_error("moment_table: m_max > N (pass allow_extended for the Schur tail)");
    MomentTable t;
    t.spec = spec;
    t.mu.resize(m_max + 1);
    t.mu[0] = 1;
    for (unsigned m = 1; m <= m_max; ++m) {
        t.mu[m] = static_cast<long>(m) <= spec.N
                      ? normalize_moment(spec, m, trace_moment_integral(spec, m))
                      : normalize_moment(spec, m, trace_moment_integral_schur(spec, m));
    }
    return t;
}

}  // namespace haarlin
