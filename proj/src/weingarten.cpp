#include "haarlin/weingarten.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

namespace haarlin {

Rational weingarten_character(const Partition& lambda, long N, const CharacterTable* table) {
    const unsigned m = lambda.weight();
    if (m == 0) return Rational(1);
    if (N < static_cast<long>(m))
        throw std::domain_error("weingarten_character: N=" + std::to_string(N) + " < m=" +
                                std::to_string(m) + " (outside the validity domain; the "
                                "coefficients develop spurious poles there)");
    std::shared_ptr<const CharacterTable> owned;
    if (!table) {
        owned = cached_character_table(m);
        table = owned.get();
    }
    std::size_t li = table->index_of(lambda);
    Rational sum(0);
    for (std::size_t j = 0; j < table->order.size(); ++j) {
        const Partition& mu = table->order[j];
        Rational f = f_lambda_product(mu, N);
        if (f == 0)
            throw pole_error("weingarten_character: f_mu(N)=0 at mu=" + mu.str() +
                             ", N=" + std::to_string(N));
        sum += Rational(irrep_dimension(mu) * table->chi[j][li]) / f;
    }
    return sum / Rational(factorial(m));
}

namespace {

// Left-hand side of the recursion for one ordering of the parts. The terms
// live at weight m; the source term lives at weight m-1.
struct RecursionRow {
    std::map<Partition, Rational> coeffs;  // weight-m unknowns
    Rational rhs;                          // from weight m-1
};

RecursionRow build_row(const std::vector<unsigned>& parts,
                       const std::map<Partition, Rational>& prev, long N) {
    RecursionRow row;
    row.rhs = 0;
    const std::size_t k = parts.size();
    const unsigned last = parts.back();

    auto add = [&row](std::vector<unsigned> p, const Rational& c) {
        row.coeffs[Partition(std::move(p))] += c;
    };

    add(parts, Rational(N));
    for (unsigned p = 1; p < last; ++p) {  // ordered splits (p, last - p)
        std::vector<unsigned> split(parts.begin(), parts.end() - 1);
        split.push_back(p);
        split.push_back(last - p);
        add(std::move(split), Rational(1));
    }
    for (std::size_t j = 0; j + 1 < k; ++j) {
        std::vector<unsigned> merged(parts.begin(), parts.end() - 1);
        merged[j] += last;
        add(std::move(merged), Rational(parts[j]));
    }
    if (last == 1) {
        Partition rest(std::vector<unsigned>(parts.begin(), parts.end() - 1));
        row.rhs = rest.empty() ? Rational(1) : prev.at(rest);
    }
    return row;
}

std::map<Partition, Rational> solve_weight(unsigned w, const std::map<Partition, Rational>& prev,
                                           long N) {
    auto order = enumerate_partitions(w);
    const std::size_t n = order.size();
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[order[i]] = i;

    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        RecursionRow row = build_row(order[i].parts(), prev, N);
        for (const auto& [p, c] : row.coeffs) a[i][index.at(p)] += c;
        a[i][n] = row.rhs;
    }
    // exact Gaussian elimination
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n)
            throw pole_error("weingarten_recursive: singular system at weight " +
                             std::to_string(w) + ", N=" + std::to_string(N));
        if (piv != c) std::swap(a[piv], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc <= n; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    std::map<Partition, Rational> out;
    for (std::size_t i = 0; i < n; ++i) out[order[i]] = a[i][n] / a[i][i];
    return out;
}

}  // namespace

std::map<Partition, Rational> weingarten_recursive_map(unsigned m, long N) {
    std::map<Partition, Rational> prev;  // weight m-1
    std::map<Partition, Rational> cur;
    if (m == 0) {
        cur[Partition()] = 1;
        return cur;
    }
    for (unsigned w = 1; w <= m; ++w) {
        cur = solve_weight(w, prev, N);
        prev = cur;
    }
    return cur;
}

Rational weingarten_recursive(const Partition& lambda, long N) {
    if (lambda.empty()) return Rational(1);
    return weingarten_recursive_map(lambda.weight(), N).at(lambda);
}

Rational recursion_residual(const std::vector<unsigned>& parts_in_order,
                            const std::map<Partition, Rational>& weight_m,
                            const std::map<Partition, Rational>& weight_m_minus_1, long N) {
    RecursionRow row = build_row(parts_in_order, weight_m_minus_1, N);
    Rational lhs(0);
    for (const auto& [p, c] : row.coeffs) lhs += c * weight_m.at(p);
    return lhs - row.rhs;
}

const std::map<Partition, Rational>& WeingartenCache::get(unsigned m, long N,
                                                          WgProvenance route) {
    std::lock_guard<std::mutex> lock(mtx_);
    auto key = std::make_pair(m, N);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    std::map<Partition, Rational> map;
    if (route == WgProvenance::character_formula) {
        auto table = cached_character_table(m);
        for (const auto& lam : enumerate_partitions(m))
            map[lam] = weingarten_character(lam, N, table.get());
    } else {
        map = weingarten_recursive_map(m, N);
    }
    provenance_[key] = route;
    return entries_.emplace(key, std::move(map)).first->second;
}

WeingartenCache& WeingartenCache::global() {
    static WeingartenCache cache;
    return cache;
}

void save_weingarten_map(const std::map<Partition, Rational>& map, unsigned m, long N,
                         const std::string& path) {
    std::ostringstream body;
    auto order = enumerate_partitions(m);
    for (std::size_t i = 0; i < order.size(); ++i)
        body << i << ' ' << map.at(order[i]).get_str() << '\n';
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write weingarten cache: " + path);
    out << "haarlin-wg-v1 " << m << ' ' << N << " revlex-v1 " << fnv1a64(body.str()) << '\n'
        << body.str();
}

std::optional<std::map<Partition, Rational>> load_weingarten_map(unsigned m, long N,
                                                                 const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic, order_tag;
    unsigned fm;
    long fN;
    std::uint64_t checksum;
    in >> magic >> fm >> fN >> order_tag >> checksum;
    if (!in || magic != "haarlin-wg-v1" || fm != m || fN != N || order_tag != "revlex-v1")
        return std::nullopt;
    in.ignore();
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (fnv1a64(payload) != checksum) return std::nullopt;
    auto order = enumerate_partitions(m);
    std::map<Partition, Rational> map;
    std::istringstream body(payload);
    std::size_t i;
    std::string val;
    std::size_t count = 0;
    while (body >> i >> val) {
        if (i >= order.size()) return std::nullopt;
        Rational q;
        if (q.set_str(val, 10) != 0) return std::nullopt;
        map[order[i]] = q;
        ++count;
    }
    if (count != order.size()) return std::nullopt;
    return map;
}

}  // namespace haarlin
