#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "haarlin/characters.hpp"
#include "oracles.hpp"

using namespace haarlin;

TEST_CASE("trivial and identity columns") {
    for (unsigned m = 1; m <= 6; ++m) {
        Partition id(std::vector<unsigned>(m, 1));
        for (const auto& mu : enumerate_partitions(m)) {
            CHECK(character(mu, id) == irrep_dimension(mu));       // identity element
            CHECK(character(Partition({m}), mu) == 1);             // trivial irrep
        }
    }
}

TEST_CASE("standard rep of S3") {
    // trace of a 3-cycle in the defining permutation rep is 0, minus the
    // trivial part leaves -1
    CHECK(character(Partition({2, 1}), Partition({3})) == -1);
    CHECK(character(Partition({2, 1}), Partition({2, 1})) == 0);
    CHECK(character(Partition({2, 1}), Partition({1, 1, 1})) == 2);
}

TEST_CASE("weight mismatch rejected") {
    CHECK_THROWS_AS(character(Partition({2}), Partition({3})), std::invalid_argument);
}

TEST_CASE("against the Frobenius coefficient-extraction oracle, m <= 5") {
    for (unsigned m = 1; m <= 5; ++m)
        for (const auto& mu : enumerate_partitions(m))
            for (const auto& lam : enumerate_partitions(m))
                CHECK(character(mu, lam) ==
                      Int(static_cast<long>(
                          oracles::frobenius_character(mu.parts(), lam.parts()))));
}

TEST_CASE("m=3 table") {
    auto t = character_table(3);
    // rows (3), (2,1), (1^3); columns in the same order
    CHECK(t->value(Partition({3}), Partition({3})) == 1);
    CHECK(t->value(Partition({2, 1}), Partition({3})) == -1);
    CHECK(t->value(Partition({1, 1, 1}), Partition({3})) == 1);
    CHECK(t->value(Partition({1, 1, 1}), Partition({2, 1})) == -1);
    CHECK(t->value(Partition({1, 1, 1}), Partition({1, 1, 1})) == 1);
}

TEST_CASE("orthogonality exact for m <= 10") {
    for (unsigned m = 1; m <= 10; ++m) {
        auto t = cached_character_table(m);
        const auto& ord = t->order;
        const std::size_t n = ord.size();
        std::vector<Int> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = class_size(ord[i]);
        // row orthogonality
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                Int s = 0;
                for (std::size_t l = 0; l < n; ++l) s += g[l] * t->chi[a][l] * t->chi[b][l];
                CHECK(s == (a == b ? factorial(m) : Int(0)));
            }
        // column orthogonality
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t l2 = l; l2 < n; ++l2) {
                Int s = 0;
                for (std::size_t a = 0; a < n; ++a) s += t->chi[a][l] * t->chi[a][l2];
                CHECK(s == (l == l2 ? factorial(m) / g[l] : Int(0)));
            }
        // unitarity bound |chi| <= dim
        for (std::size_t a = 0; a < n; ++a) {
            Int dim = irrep_dimension(ord[a]);
            for (std::size_t l = 0; l < n; ++l) CHECK(abs(t->chi[a][l]) <= dim);
        }
    }
}

TEST_CASE("table ceiling") {
    CHECK_THROWS_AS(character_table(25), std::length_error);
    CHECK_THROWS_AS(character_table(0), std::length_error);
}

TEST_CASE("cache round trip, tamper detection, recompute fallback") {
    std::string path = "/tmp/haarlin-test-chartable-m5.txt";
    std::remove(path.c_str());

    CacheStatus st;
    auto fresh = character_table(5, path, &st);
    CHECK_FALSE(st.from_cache);
    CHECK_FALSE(st.cache_corrupt);

    auto loaded = character_table(5, path, &st);
    CHECK(st.from_cache);
    CHECK_FALSE(st.cache_corrupt);
    for (std::size_t i = 0; i < fresh->chi.size(); ++i) CHECK(loaded->chi[i] == fresh->chi[i]);

    // flip one digit in the payload
    {
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.rfind(" 1");
        text[pos + 1] = '7';
        std::ofstream out(path);
        out << text;
    }
    auto recovered = character_table(5, path, &st);
    CHECK(st.cache_corrupt);
    CHECK_FALSE(st.from_cache);
    for (std::size_t i = 0; i < fresh->chi.size(); ++i) CHECK(recovered->chi[i] == fresh->chi[i]);

    // the recompute rewrote a good cache
    character_table(5, path, &st);
    CHECK(st.from_cache);
    std::remove(path.c_str());
}
