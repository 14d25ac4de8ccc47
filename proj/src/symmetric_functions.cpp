#include "haarlin/symmetric_functions.hpp"

#include <algorithm>
#include <stdexcept>

namespace haarlin {

Rational power_sum(unsigned j, const SpectrumValues& x) {
    Rational s(0);
    for (const auto& v : x) s += pow_rational(v, j);
    return s;
}

Rational power_sum_product(const Partition& lambda, const SpectrumValues& x) {
    Rational r(1);
    for (unsigned p : lambda.parts()) r *= power_sum(p, x);
    return r;
}

Rational schur_at_identity(const Partition& lambda, long N) {
    if (N < static_cast<long>(lambda.length())) return Rational(0);
    if (N <= 0) return lambda.empty() ? Rational(1) : Rational(0);
    const auto& parts = lambda.parts();
    Rational r(1);
    for (long j = 0; j < N; ++j) {
        long lj = j < static_cast<long>(parts.size()) ? parts[j] : 0;
        for (long k = j + 1; k < N; ++k) {
            long lk = k < static_cast<long>(parts.size()) ? parts[k] : 0;
            r *= make_rational(Int(lj - lk + k - j), Int(k - j));
        }
    }
    return r;
}

Rational schur_eval(const Partition& lambda, const SpectrumValues& x,
                    const CharacterTable* table) {
    const unsigned m = lambda.weight();
    if (m == 0) return Rational(1);
    std::shared_ptr<const CharacterTable> owned;
    if (!table) {
        owned = cached_character_table(m);
        table = owned.get();
    }
    Rational sum(0);
    std::size_t li = table->index_of(lambda);
    for (std::size_t j = 0; j < table->order.size(); ++j) {
        const Partition& mu = table->order[j];
        sum += Rational(class_size(mu) * table->chi[li][j]) * power_sum_product(mu, x);
    }
    return sum / Rational(factorial(m));
}

Rational schur_eval_bialternant(const Partition& lambda, const SpectrumValues& x) {
    const std::size_t n = x.size();
    if (lambda.length() > n) return Rational(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[i] == x[j])
                throw std::domain_error("schur_eval_bialternant: repeated entries");
    // det(x_i^{l_j + n - j}) / Vandermonde
    auto det = [&](const std::vector<long>& exps) {
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = pow_rational(x[i], exps[j]);
        // exact Gaussian elimination
        Rational d(1);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a[piv][c] == 0) ++piv;
            if (piv == n) return Rational(0);
            if (piv != c) {
                std::swap(a[piv], a[c]);
                d = -d;
            }
            d *= a[c][c];
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a[r][c] == 0) continue;
                Rational f = a[r][c] / a[c][c];
                for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
            }
        }
        return d;
    };
    std::vector<long> num_exp(n), den_exp(n);
    const auto& l = lambda.parts();
    for (std::size_t j = 0; j < n; ++j) {
        long lj = j < l.size() ? l[j] : 0;
        num_exp[j] = lj + static_cast<long>(n - 1 - j);
        den_exp[j] = static_cast<long>(n - 1 - j);
    }
    Rational den = det(den_exp);
    return det(num_exp) / den;
}

std::vector<Rational> complete_homogeneous_table(const SpectrumValues& x, unsigned kmax) {
    std::vector<Rational> p(kmax + 1), h(kmax + 1);
    for (unsigned j = 1; j <= kmax; ++j) p[j] = power_sum(j, x);
    h[0] = 1;
    for (unsigned k = 1; k <= kmax; ++k) {
        Rational s(0);
        for (unsigned i = 1; i <= k; ++i) s += p[i] * h[k - i];
        h[k] = s / Rational(k);
    }
    return h;
}

Rational schur_eval_jacobi_trudi(const Partition& lambda, const std::vector<Rational>& h,
                                 std::size_t nvars) {
    if (lambda.length() > nvars) return Rational(0);
    const auto& l = lambda.parts();
    const std::size_t L = l.size();
    if (L == 0) return Rational(1);
    std::vector<std::vector<Rational>> a(L, std::vector<Rational>(L));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            long idx = static_cast<long>(l[i]) - static_cast<long>(i) + static_cast<long>(j);
            a[i][j] = (idx < 0) ? Rational(0) : h[static_cast<std::size_t>(idx)];
        }
    Rational d(1);
    for (std::size_t c = 0; c < L; ++c) {
        std::size_t piv = c;
        while (piv < L && a[piv][c] == 0) ++piv;
        if (piv == L) return Rational(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < L; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < L; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return d;
}

Rational schur_eval_jacobi_trudi(const Partition& lambda, const SpectrumValues& x) {
    auto h = complete_homogeneous_table(x, lambda.empty() ? 0 : lambda.parts()[0] + lambda.length());
    return schur_eval_jacobi_trudi(lambda, h, x.size());
}

Rational f_lambda_sum(const Partition& lambda, long N, const CharacterTable* table) {
    const unsigned m = lambda.weight();
    if (m == 0) return Rational(1);
    std::shared_ptr<const CharacterTable> owned;
    if (!table) {
        owned = cached_character_table(m);
        table = owned.get();
    }
    Rational sum(0);
    std::size_t li = table->index_of(lambda);
    for (std::size_t j = 0; j < table->order.size(); ++j) {
        const Partition& mu = table->order[j];
        Int npow = pow_int(N, mu.length());
        sum += Rational(class_size(mu) * table->chi[li][j] * npow);
    }
    return sum / Rational(irrep_dimension(lambda));
}

Rational f_lambda_product(const Partition& lambda, long N) {
    Rational r(1);
    for (int c : contents(lambda)) r *= Rational(N + c);
    return r;
}

}  // namespace haarlin
