#include "haarlin/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace haarlin {

namespace {

// full even/odd sequence from a table of even entries
std::vector<Rational> full_sequence(const std::vector<Rational>& even, unsigned n_max) {
    std::vector<Rational> s(n_max + 1, Rational(0));
    for (unsigned i = 0; 2 * i <= n_max && i < even.size(); ++i) s[2 * i] = even[i];
    return s;
}

}  // namespace

CumulantTable cumulants_from_moments(const MomentTable& moments) {
    const unsigned n_max = 2 * moments.m_max();
    auto mu = full_sequence(moments.mu, n_max);
    std::vector<Rational> kappa(n_max + 1, Rational(0));
    for (unsigned n = 1; n <= n_max; ++n) {
        Rational s = mu[n];
        for (unsigned k = 1; k < n; ++k)
            s -= Rational(binomial(n - 1, k - 1)) * kappa[k] * mu[n - k];
        kappa[n] = s;
    }
    CumulantTable t;
    t.spec = moments.spec;
    t.kappa.resize(moments.m_max() + 1);
    for (unsigned i = 0; i <= moments.m_max(); ++i) t.kappa[i] = kappa[2 * i];
    return t;
}

Rational cumulant_closed_form(const MomentTable& moments, unsigned n) {
    auto mu = full_sequence(moments.mu, 2 * moments.m_max());
    if (n > 2 * moments.m_max()) throw std::invalid_argument("cumulant_closed_form: n too large");
    Rational s(0);
    for (const auto& lam : enumerate_partitions(n)) {
        Rational prod(1);
        for (unsigned p : lam.parts()) prod *= mu[p];
        if (prod == 0) continue;
        Rational term = Rational(set_partition_count(lam) * factorial(lam.length() - 1)) * prod;
        if (lam.length() % 2 == 0) term = -term;
        s += term;
    }
    return s;
}

MomentTable moments_from_cumulants(const CumulantTable& cumulants) {
    const unsigned n_max = 2 * cumulants.m_max();
    auto kappa = full_sequence(cumulants.kappa, n_max);
    MomentTable t;
    t.spec = cumulants.spec;
    t.mu.assign(cumulants.m_max() + 1, Rational(0));
    t.mu[0] = 1;
    for (unsigned m = 1; m <= cumulants.m_max(); ++m) {
        Rational s(0);
        for (const auto& lam : enumerate_partitions(2 * m)) {
            Rational prod(1);
            for (unsigned p : lam.parts()) prod *= kappa[p];
            if (prod == 0) continue;
            s += Rational(set_partition_count(lam)) * prod;
        }
        t.mu[m] = s;
    }
    return t;
}

KCoefficients k_coefficients(unsigned m, long N) {
    if (static_cast<long>(m) > N)
        throw std::domain_error("k_coefficients: m must not exceed N");
    KCoefficients out;
    out.N = N;
    out.m_max = m;
    for (unsigned w = 1; w <= m; ++w) {
        const auto& wg = WeingartenCache::global().get(w, N);
        for (const auto& lam : enumerate_partitions(w)) {
            Rational correction(0);
            for (const auto& dec : decompositions(lam)) {
                if (dec.blocks.size() == 1) continue;  // the K_lambda term itself
                Rational prod(1);
                for (const auto& mu : dec.blocks) prod *= out.values.at(mu);
                correction += Rational(dec.multiplicity) * prod;
            }
            out.values[lam] = wg.at(lam) - correction;
            out.leading[lam] = k_leading(lam, N);
        }
    }
    return out;
}

Rational k_leading(const Partition& lambda, long N) {
    if (N < 1) throw std::domain_error("k_leading: N >= 1 required");
    const unsigned m = lambda.weight();
    const unsigned l = static_cast<unsigned>(lambda.length());
    if (m == 0) return Rational(1);
    Rational r = make_rational(Int(1) << l, pow_int(N, 2 * m + l - 2));  // 2^l / N^{2m+l-2}
    r *= make_rational(factorial(2 * m + l - 3), factorial(2 * m));
    auto freq = lambda.frequencies();
    for (unsigned j = 1; j < freq.size(); ++j) {
        if (!freq[j]) continue;
        Int num, den;
        mpz_pow_ui(num.get_mpz_t(), factorial(2 * j - 1).get_mpz_t(), freq[j]);
        mpz_pow_ui(den.get_mpz_t(), factorial(j - 1).get_mpz_t(), 2 * freq[j]);
        r *= make_rational(num, den);
    }
    if ((m + l) % 2) r = -r;
    return r;
}

Rational kappa_closed_form(const SpectrumSpec& spec, unsigned order) {
    const long N = spec.N;
    const Rational two_sig_sq = 2 * spec.sigma_sq;
    switch (order) {
        case 2:
            return Rational(1);
        case 4: {
            if (N < 2) throw std::domain_error("kappa_closed_form: order 4 needs N >= 2");
            Rational t2(0);
            for (const auto& v : spec.nu_sq) t2 += pow_rational(v - two_sig_sq, 2);
            Rational den = 4 * pow_rational(spec.sigma_sq, 2) * Rational(N) * Rational(N * N - 1);
            return Rational(-3) * t2 / den;
        }
        case 6: {
            if (N < 3) throw std::domain_error("kappa_closed_form: order 6 needs N >= 3");
            Rational t3(0);
            for (const auto& v : spec.nu_sq) t3 += pow_rational(v - two_sig_sq, 3);
            Rational den = 2 * pow_rational(spec.sigma_sq, 3) * Rational(N) *
                           Rational(N * N - 1) * Rational(N * N - 4);
            return Rational(15) * t3 / den;
        }
        default:
            throw std::invalid_argument("kappa_closed_form: order must be 2, 4 or 6");
    }
}

double kappa_closed_form_uncorrected(const SpectrumSpec& spec, unsigned order) {
    const double N = static_cast<double>(spec.N);
    const double sig = spec.sigma();
    double t = 0;
    switch (order) {
        case 2:
            return 1.0;
        case 4:
            for (const auto& v : spec.nu_sq) t += std::pow(to_double(v) - 2 * sig, 2);
            return -3.0 * t / (4 * sig * sig * N * N * N * (1 - 1 / (N * N)));
        case 6:
            for (const auto& v : spec.nu_sq) t += std::pow(to_double(v) - 2 * sig, 3);
            return 15.0 * t /
                   (2 * std::pow(N, 5) * std::pow(sig, 3) * (1 - 1 / (N * N)) *
                    (1 - 4 / (N * N)));
        default:
            throw std::invalid_argument("kappa_closed_form_uncorrected: order must be 2, 4 or 6");
    }
}

Rational kappa_2m_partition_form(const SpectrumSpec& spec, unsigned m) {
    if (static_cast<long>(m) > spec.N)
        throw std::domain_error("kappa_2m_partition_form: m must not exceed N");
    auto K = k_coefficients(m, spec.N);
    Rational sum(0);
    for (const auto& lam : enumerate_partitions(m))
        sum += Rational(class_size(lam)) * K.values.at(lam) *
               power_sum_product(lam, spec.nu_sq);
    return Rational(double_factorial(2 * static_cast<long>(m) - 1)) * sum /
           pow_rational(2 * spec.sigma_sq, m);
}

std::map<Partition, Rational> k_recursion_experimental(unsigned m, long N) {
    // Same weight-consistent split reading as the M recursion, but without a
    // source term; everything solves to zero. Kept to document the
    // inconsistency.
    std::map<Partition, Rational> known;  // weights < current
    std::map<Partition, Rational> out;
    for (unsigned w = 1; w <= m; ++w) {
        auto order = enumerate_partitions(w);
        const std::size_t n = order.size();
        std::map<Partition, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index[order[i]] = i;
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& parts = order[i].parts();
            const std::size_t kk = parts.size();
            const unsigned last = parts.back();
            a[i][index.at(order[i])] += Rational(N);
            for (unsigned p = 1; p < last; ++p) {
                std::vector<unsigned> split(parts.begin(), parts.end() - 1);
                split.push_back(p);
                split.push_back(last - p);
                a[i][index.at(Partition(std::move(split)))] += 1;
            }
            for (std::size_t j = 0; j + 1 < kk; ++j) {
                std::vector<unsigned> merged(parts.begin(), parts.end() - 1);
                merged[j] += last;
                a[i][index.at(Partition(std::move(merged)))] += Rational(parts[j]);
            }
            // quadratic term: products of strictly lower weights, all known
            if (kk >= 2) {
                std::vector<std::size_t> idx(kk - 1);
                std::iota(idx.begin(), idx.end(), 0u);
                std::sort(idx.begin(), idx.end());
                for (unsigned p = 1; p < last; ++p) {
                    unsigned q = last - p;
                    for (std::size_t j = 1; j <= kk - 1; ++j) {
                        Rational fac = Rational(1) / Rational(factorial(j) * factorial(kk - 1 - j));
                        std::vector<std::size_t> perm = idx;
                        Rational acc(0);
                        do {
                            std::vector<unsigned> left, right;
                            for (std::size_t t = 0; t < j; ++t) left.push_back(parts[perm[t]]);
                            for (std::size_t t = j; t < kk - 1; ++t)
                                right.push_back(parts[perm[t]]);
                            left.push_back(p);
                            right.push_back(q);
                            acc += known.at(Partition(std::move(left))) *
                                   known.at(Partition(std::move(right)));
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        a[i][n] -= fac * acc;  // move to the right-hand side
                    }
                }
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a[piv][c] == 0) ++piv;
            if (piv == n) throw pole_error("k_recursion_experimental: singular system");
            if (piv != c) std::swap(a[piv], a[c]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a[r][c] == 0) continue;
                Rational f = a[r][c] / a[c][c];
                for (std::size_t cc = c; cc <= n; ++cc) a[r][cc] -= f * a[c][cc];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            out[order[i]] = a[i][n] / a[i][i];
            known[order[i]] = out[order[i]];
        }
    }
    return out;
}

}  // namespace haarlin
