#include "haarlin/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace haarlin {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<unsigned>());
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0u);
}

std::vector<unsigned> Partition::frequencies() const {
    std::vector<unsigned> r(weight_ + 1, 0);
    for (unsigned p : parts_) r[p]++;
    return r;
}

std::string Partition::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ')';
    return os.str();
}

namespace {

void emit_partitions(unsigned remaining, unsigned max_part, std::size_t max_len,
                     std::vector<unsigned>& stack, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    if (stack.size() >= max_len) return;
    // the remaining slots must be able to absorb `remaining`
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
        if (static_cast<std::size_t>((remaining + p - 1) / p) > max_len - stack.size()) break;
        stack.push_back(p);
        emit_partitions(remaining - p, p, max_len, stack, out);
        stack.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(unsigned m, unsigned ceiling) {
    if (m > ceiling)
        throw std::length_error("enumerate_partitions: m=" + std::to_string(m) +
                                " exceeds ceiling " + std::to_string(ceiling));
    std::vector<Partition> out;
    std::vector<unsigned> stack;
    emit_partitions(m, m == 0 ? 1 : m, m + 1, stack, out);
    return out;
}

std::vector<Partition> enumerate_partitions_bounded(unsigned m, std::size_t max_len) {
    std::vector<Partition> out;
    std::vector<unsigned> stack;
    emit_partitions(m, m == 0 ? 1 : m, max_len, stack, out);
    return out;
}

Int class_size(const Partition& lambda) {
    Int den = 1;
    auto freq = lambda.frequencies();
    for (unsigned j = 1; j < freq.size(); ++j) {
        if (!freq[j]) continue;
        den *= pow_int(j, freq[j]) * factorial(freq[j]);
    }
    return factorial(lambda.weight()) / den;
}

Int irrep_dimension(const Partition& lambda) {
    // m! prod_{i<j}(l_i - l_j + j - i) / prod_j (l_j + L - j)!
    const auto& l = lambda.parts();
    const long L = static_cast<long>(l.size());
    if (L == 0) return 1;
    Int num = factorial(lambda.weight());
    for (long i = 0; i < L; ++i)
        for (long j = i + 1; j < L; ++j)
            num *= Int(static_cast<long>(l[i]) - static_cast<long>(l[j]) + j - i);
    Int den = 1;
    for (long j = 0; j < L; ++j) den *= factorial(l[j] + L - j - 1);
    return num / den;
}

std::vector<int> contents(const Partition& lambda) {
    std::vector<int> out;
    out.reserve(lambda.weight());
    const auto& l = lambda.parts();
    for (std::size_t i = 0; i < l.size(); ++i)
        for (unsigned j = 0; j < l[i]; ++j)
            out.push_back(static_cast<int>(j) - static_cast<int>(i));
    return out;
}

Int set_partition_count(const Partition& lambda) {
    Int den = 1;
    auto freq = lambda.frequencies();
    for (unsigned j = 1; j < freq.size(); ++j) {
        if (!freq[j]) continue;
        Int f = factorial(j);
        Int p;
        mpz_pow_ui(p.get_mpz_t(), f.get_mpz_t(), freq[j]);
        den *= p * factorial(freq[j]);
    }
    return factorial(lambda.weight()) / den;
}

Int decomposition_multiplicity(const Partition& lambda, const std::vector<Partition>& blocks) {
    Int a = 1;
    auto freq = lambda.frequencies();
    for (unsigned j = 1; j < freq.size(); ++j)
        if (freq[j]) a *= factorial(freq[j]);
    std::map<Partition, unsigned> pi;  // repetition count per distinct block
    for (const auto& mu : blocks) pi[mu]++;
    Int den = 1;
    for (const auto& [mu, rep] : pi) {
        Int s = 1;
        auto sf = mu.frequencies();
        for (unsigned j = 1; j < sf.size(); ++j)
            if (sf[j]) s *= factorial(sf[j]);
        Int sp;
        mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), rep);
        den *= sp * factorial(rep);
    }
    return a / den;
}

namespace {

// Enumerate multiset partitions of `rest` (a descending multiset of parts):
// the block containing the first remaining element is chosen, the rest is
// partitioned recursively. Ties between equal parts can re-create the same
// block multiset, so results are deduplicated by the caller.
void emit_decompositions(std::vector<unsigned> rest, std::vector<Partition>& blocks,
                         std::set<std::vector<Partition>>& out) {
    if (rest.empty()) {
        auto sorted = blocks;
        std::sort(sorted.begin(), sorted.end(), std::greater<Partition>());
        out.insert(std::move(sorted));
        return;
    }
    unsigned head = rest.front();
    std::vector<unsigned> tail(rest.begin() + 1, rest.end());
    // choose a sub-multiset of tail to join `head`; iterate via counts per value
    std::vector<std::pair<unsigned, unsigned>> vals;  // (value, available)
    for (unsigned v : tail) {
        if (!vals.empty() && vals.back().first == v)
            vals.back().second++;
        else
            vals.emplace_back(v, 1);
    }
    std::vector<unsigned> take(vals.size(), 0);
    while (true) {
        std::vector<unsigned> block{head}, remaining;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            for (unsigned c = 0; c < take[i]; ++c) block.push_back(vals[i].first);
            for (unsigned c = take[i]; c < vals[i].second; ++c) remaining.push_back(vals[i].first);
        }
        blocks.emplace_back(block);
        emit_decompositions(remaining, blocks, out);
        blocks.pop_back();
        // next count vector
        std::size_t i = 0;
        while (i < take.size() && take[i] == vals[i].second) take[i++] = 0;
        if (i == take.size()) break;
        take[i]++;
    }
}

}  // namespace

std::vector<Decomposition> decompositions(const Partition& lambda) {
    std::vector<Decomposition> out;
    if (lambda.empty()) {
        out.push_back({{}, Int(1)});
        return out;
    }
    std::set<std::vector<Partition>> unique;
    std::vector<Partition> blocks;
    emit_decompositions(lambda.parts(), blocks, unique);
    for (const auto& dec : unique)
        out.push_back({dec, decomposition_multiplicity(lambda, dec)});
    // trivial decomposition {lambda} first, then descending block count
    std::sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
        if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
        return a.blocks > b.blocks;
    });
    return out;
}

}  // namespace haarlin
