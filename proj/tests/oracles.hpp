// Test-only oracles, kept independent of the library implementation paths
// they check.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <vector>

#include "haarlin/partition.hpp"

namespace oracles {

using haarlin::Int;

// Partitions of m as non-increasing lists, by filtering descending-sorted
// compositions recursively (not the library's generator).
inline void brute_partitions_rec(unsigned m, unsigned cap, std::vector<unsigned>& cur,
                                 std::vector<std::vector<unsigned>>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned p = 1; p <= std::min(m, cap); ++p) {
        cur.push_back(p);
        brute_partitions_rec(m - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<unsigned>> brute_partitions(unsigned m) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    brute_partitions_rec(m, m == 0 ? 1 : m, cur, out);
    return out;
}

// Standard Young tableaux of a shape, counted by direct backtracking.
inline long count_syt_rec(const std::vector<unsigned>& shape, std::vector<unsigned>& fill,
                          unsigned placed, unsigned total) {
    if (placed == total) return 1;
    long count = 0;
    for (std::size_t r = 0; r < shape.size(); ++r) {
        if (fill[r] >= shape[r]) continue;
        if (r > 0 && fill[r - 1] <= fill[r]) continue;  // column strictness
        fill[r]++;
        count += count_syt_rec(shape, fill, placed + 1, total);
        fill[r]--;
    }
    return count;
}

inline long count_syt(const std::vector<unsigned>& shape) {
    unsigned total = std::accumulate(shape.begin(), shape.end(), 0u);
    std::vector<unsigned> fill(shape.size(), 0);
    return count_syt_rec(shape, fill, 0, total);
}

// Semistandard Young tableaux with entries <= max_entry; evaluates
// s_shape(1^max_entry) by brute force.
inline long count_ssyt_rec(const std::vector<unsigned>& shape,
                           std::vector<std::vector<unsigned>>& t, std::size_t r, std::size_t c,
                           unsigned max_entry) {
    if (r == shape.size()) return 1;
    std::size_t nr = r, nc = c + 1;
    if (nc >= shape[r]) {
        nr = r + 1;
        nc = 0;
    }
    unsigned lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);          // rows weakly increase
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);      // columns strictly increase
    long count = 0;
    for (unsigned v = lo; v <= max_entry; ++v) {
        t[r][c] = v;
        count += count_ssyt_rec(shape, t, nr, nc, max_entry);
    }
    return count;
}

inline long count_ssyt(const std::vector<unsigned>& shape, unsigned max_entry) {
    if (shape.empty()) return 1;
    std::vector<std::vector<unsigned>> t;
    for (unsigned len : shape) t.emplace_back(len, 0u);
    return count_ssyt_rec(shape, t, 0, 0, max_entry);
}

// All permutations of S_m with their cycle types.
inline std::vector<std::vector<unsigned>> cycle_types_of_sm(unsigned m) {
    std::vector<unsigned> perm(m);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<std::vector<unsigned>> types;
    do {
        std::vector<bool> seen(m, false);
        std::vector<unsigned> type;
        for (unsigned s = 0; s < m; ++s) {
            if (seen[s]) continue;
            unsigned len = 0, cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = perm[cur];
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.begin(), type.end(), std::greater<unsigned>());
        types.push_back(type);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return types;
}

// All set partitions of {0..n-1} as block lists.
inline void set_partitions_rec(unsigned next, unsigned n,
                               std::vector<std::vector<unsigned>>& blocks,
                               std::vector<std::vector<std::vector<unsigned>>>& out) {
    if (next == n) {
        out.push_back(blocks);
        return;
    }
    const std::size_t existing = blocks.size();  // recursion grows the vector
    for (std::size_t i = 0; i < existing; ++i) {
        blocks[i].push_back(next);
        set_partitions_rec(next + 1, n, blocks, out);
        blocks[i].pop_back();
    }
    blocks.push_back({next});
    set_partitions_rec(next + 1, n, blocks, out);
    blocks.pop_back();
}

inline std::vector<std::vector<std::vector<unsigned>>> set_partitions(unsigned n) {
    std::vector<std::vector<std::vector<unsigned>>> out;
    std::vector<std::vector<unsigned>> blocks;
    set_partitions_rec(0, n, blocks, out);
    return out;
}

// Frobenius character formula by literal coefficient extraction:
// chi^lambda_mu = [x^{lambda+delta}] (prod_{i<j}(x_i - x_j)) p_mu(x)
// in m variables. Entirely separate from the border-strip recursion.
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, long long>;

inline Poly vandermonde_poly(unsigned n) {
    Poly v;
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    // expand as the alternating sum over permutations of x^{sigma(delta)}
    std::vector<unsigned> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    do {
        // sign of the permutation
        int sign = 1;
        std::vector<bool> seen(n, false);
        for (unsigned s = 0; s < n; ++s) {
            if (seen[s]) continue;
            unsigned len = 0, cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = idx[cur];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        Monomial mono(n, 0);
        for (unsigned i = 0; i < n; ++i) mono[i] = static_cast<int>(n - 1 - idx[i]);
        v[mono] += sign;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return v;
}

inline Poly multiply_power_sum(const Poly& p, unsigned j, unsigned n) {
    Poly out;
    for (const auto& [mono, coeff] : p)
        for (unsigned v = 0; v < n; ++v) {
            Monomial m2 = mono;
            m2[v] += static_cast<int>(j);
            out[m2] += coeff;
        }
    return out;
}

inline long long frobenius_character(const std::vector<unsigned>& lambda,
                                     const std::vector<unsigned>& mu) {
    unsigned m = std::accumulate(lambda.begin(), lambda.end(), 0u);
    Poly p = vandermonde_poly(m);
    for (unsigned part : mu) p = multiply_power_sum(p, part, m);
    Monomial target(m, 0);
    for (unsigned i = 0; i < m; ++i) {
        unsigned li = i < lambda.size() ? lambda[i] : 0;
        target[i] = static_cast<int>(li + (m - 1 - i));
    }
    auto it = p.find(target);
    return it == p.end() ? 0 : it->second;
}

}  // namespace oracles
