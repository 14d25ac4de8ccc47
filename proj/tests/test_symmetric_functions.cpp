#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "haarlin/symmetric_functions.hpp"
#include "oracles.hpp"

using namespace haarlin;

namespace {

SpectrumValues identity_spectrum(std::size_t n) { return SpectrumValues(n, Rational(1)); }

SpectrumValues random_rational_spectrum(std::size_t n, unsigned seed) {
    // small deterministic rationals, some repeated on purpose
    SpectrumValues x;
    unsigned state = seed;
    for (std::size_t i = 0; i < n; ++i) {
        state = state * 1103515245u + 12345u;
        x.push_back(make_rational(Int((state >> 16) % 7), Int(1 + (state >> 8) % 4)));
    }
    return x;
}

}  // namespace

TEST_CASE("power sums") {
    CHECK(power_sum_product(Partition({1}), identity_spectrum(9)) == Rational(9));
    CHECK(power_sum_product(Partition({2, 1}), SpectrumValues{Rational(4), Rational(0)}) ==
          Rational(64));
    for (unsigned m = 1; m <= 4; ++m)
        for (const auto& lam : enumerate_partitions(m))
            CHECK(power_sum_product(lam, identity_spectrum(7)) ==
                  Rational(pow_int(7, lam.length())));
}

TEST_CASE("schur at identity vs SSYT counting") {
    CHECK(schur_at_identity(Partition({1}), 5) == Rational(5));
    CHECK(schur_at_identity(Partition({2, 1}), 3) == Rational(8));
    CHECK(schur_at_identity(Partition({2}), 2) == Rational(3));
    CHECK(schur_at_identity(Partition({2, 2}), 2) == Rational(1));  // single tableau
    CHECK(schur_at_identity(Partition({2, 2, 1}), 2) == Rational(0));  // too few variables
    for (unsigned m = 1; m <= 5; ++m)
        for (const auto& lam : enumerate_partitions(m))
            for (long N = 1; N <= 4; ++N)
                CHECK(schur_at_identity(lam, N) ==
                      Rational(Int(oracles::count_ssyt(lam.parts(),
                                                       static_cast<unsigned>(N)))));
}

TEST_CASE("schur_eval worked examples") {
    CHECK(schur_eval(Partition({2}), SpectrumValues{Rational(1), Rational(1)}) == Rational(3));
    CHECK(schur_eval(Partition({1, 1}), SpectrumValues{Rational(4), Rational(0)}) == Rational(0));
    CHECK(schur_eval(Partition({2, 1}), identity_spectrum(3)) == Rational(8));
}

TEST_CASE("schur_eval equals identity product formula") {
    for (unsigned m = 1; m <= 6; ++m)
        for (const auto& lam : enumerate_partitions(m))
            for (long N = 1; N <= 8; ++N)
                CHECK(schur_eval(lam, identity_spectrum(N)) == schur_at_identity(lam, N));
}

TEST_CASE("three schur routes agree on random spectra") {
    for (unsigned m = 1; m <= 5; ++m) {
        auto x = random_rational_spectrum(4, 100 + m);
        SpectrumValues distinct{Rational(1, 3), Rational(2), Rational(7, 2), Rational(5)};
        for (const auto& lam : enumerate_partitions(m)) {
            CHECK(schur_eval(lam, x) == schur_eval_jacobi_trudi(lam, x));
            CHECK(schur_eval(lam, distinct) == schur_eval_bialternant(lam, distinct));
        }
    }
    CHECK_THROWS_AS(
        schur_eval_bialternant(Partition({2}), SpectrumValues{Rational(1), Rational(1)}),
        std::domain_error);
}

TEST_CASE("power sums from schur: second character relation") {
    for (unsigned m = 1; m <= 5; ++m) {
        auto x = random_rational_spectrum(5, 7 * m + 1);
        auto table = cached_character_table(m);
        for (const auto& mu : enumerate_partitions(m)) {
            Rational sum(0);
            for (const auto& lam : enumerate_partitions(m))
                sum += Rational(table->value(lam, mu)) * schur_eval(lam, x, table.get());
            CHECK(sum == power_sum_product(mu, x));
        }
    }
}

TEST_CASE("homogeneity") {
    Rational c(3, 7);
    for (unsigned m = 1; m <= 4; ++m) {
        auto x = random_rational_spectrum(4, 31 + m);
        auto cx = x;
        for (auto& v : cx) v *= c;
        for (const auto& lam : enumerate_partitions(m))
            CHECK(schur_eval(lam, cx) == pow_rational(c, m) * schur_eval(lam, x));
    }
}

TEST_CASE("f_lambda examples") {
    CHECK(f_lambda_product(Partition({1}), 9) == Rational(9));
    CHECK(f_lambda_product(Partition({2}), 5) == Rational(30));
    CHECK(f_lambda_sum(Partition({2}), 5) == Rational(30));
    CHECK(f_lambda_product(Partition({1, 1}), 1) == Rational(0));
    CHECK(f_lambda_product(Partition({2, 1}), 4) == Rational(60));
}

TEST_CASE("f_lambda sum form equals product form, m <= 6, N in [-3, 12]") {
    for (unsigned m = 1; m <= 6; ++m) {
        auto table = cached_character_table(m);
        for (const auto& lam : enumerate_partitions(m))
            for (long N = -3; N <= 12; ++N)
                CHECK(f_lambda_sum(lam, N, table.get()) == f_lambda_product(lam, N));
    }
}

TEST_CASE("f_lambda roots are the negated contents; greatest root over weight is m-1") {
    // the full-column shape attains the extreme root m-1; no shape exceeds it
    for (unsigned m = 2; m <= 7; ++m) {
        Partition column(std::vector<unsigned>(m, 1));
        CHECK(f_lambda_product(column, static_cast<long>(m) - 1) == Rational(0));
        for (const auto& lam : enumerate_partitions(m)) {
            for (int c : contents(lam)) {
                CHECK(-c <= static_cast<int>(m) - 1);
                CHECK(f_lambda_product(lam, -c) == Rational(0));
            }
            CHECK(f_lambda_product(lam, static_cast<long>(m)) != Rational(0));
        }
    }
    // the displayed 17-cell example: roots exactly the tableau values
    Partition big({5, 4, 4, 3, 1});
    std::multiset<int> roots;
    for (int c : contents(big)) roots.insert(-c);
    std::multiset<int> want{0, -1, -2, -3, -4, 1, 0, -1, -2, 2, 1, 0, -1, 3, 2, 1, 4};
    CHECK(roots == want);
}

TEST_CASE("f_lambda via schur at identity") {
    for (unsigned m = 1; m <= 6; ++m)
        for (const auto& lam : enumerate_partitions(m))
            for (long N = 1; N <= 10; ++N)
                CHECK(f_lambda_product(lam, N) * Rational(irrep_dimension(lam)) ==
                      Rational(factorial(m)) * schur_at_identity(lam, N));
}
