#include "haarlin/characters.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace haarlin {

std::size_t CharacterTable::index_of(const Partition& p) const {
    auto it = std::lower_bound(order.begin(), order.end(), p, std::greater<Partition>());
    if (it == order.end() || !(*it == p))
        throw std::invalid_argument("CharacterTable: partition " + p.str() + " not of weight " +
                                    std::to_string(m));
    return static_cast<std::size_t>(it - order.begin());
}

const Int& CharacterTable::value(const Partition& mu, const Partition& lambda) const {
    return chi[index_of(mu)][index_of(lambda)];
}

namespace {

// Beta-set form of the Murnaghan-Nakayama rule: removing a border strip of
// length r from the shape is removing r from one beta number, with sign
// (-1)^(number of beta numbers jumped over).
using Beta = std::vector<unsigned>;  // strictly increasing

Beta beta_set(const Partition& lambda, unsigned size) {
    const auto& l = lambda.parts();
    const unsigned pad = size - static_cast<unsigned>(l.size());  // zeros go first
    Beta b(size);
    for (unsigned i = 0; i < size; ++i) {
        unsigned part = i < pad ? 0 : l[l.size() - 1 - (i - pad)];
        b[i] = part + i;
    }
    return b;
}

Partition partition_from_beta(const Beta& b) {
    std::vector<unsigned> parts;
    for (unsigned i = 0; i < b.size(); ++i) parts.push_back(b[i] - i);
    return Partition(std::move(parts));
}

struct MNKey {
    std::vector<unsigned> shape;
    std::vector<unsigned> cycles;  // remaining, in processing order
    bool operator<(const MNKey& o) const {
        if (shape != o.shape) return shape < o.shape;
        return cycles < o.cycles;
    }
};

Int mn_recurse(const Beta& beta, const std::vector<unsigned>& cycles, std::size_t pos,
               std::map<MNKey, Int>& memo) {
    if (pos == cycles.size()) return 1;
    Partition shape = partition_from_beta(beta);
    MNKey key{shape.parts(), {cycles.begin() + pos, cycles.end()}};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    unsigned r = cycles[pos];
    Int total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] < r) continue;
        unsigned target = beta[i] - r;
        auto lo = std::lower_bound(beta.begin(), beta.end(), target);
        if (lo != beta.end() && *lo == target) continue;  // occupied
        Beta next = beta;
        next.erase(next.begin() + i);
        next.insert(std::lower_bound(next.begin(), next.end(), target), target);
        std::size_t jumped = i - static_cast<std::size_t>(lo - beta.begin());
        Int sub = mn_recurse(next, cycles, pos + 1, memo);
        if (jumped % 2)
            total -= sub;
        else
            total += sub;
    }
    memo[key] = total;
    return total;
}

Int mn_character(const Partition& mu, const Partition& lambda, std::map<MNKey, Int>& memo) {
    // process longest cycles first; beta set padded to full length
    std::vector<unsigned> cycles = lambda.parts();
    Beta beta = beta_set(mu, std::max<unsigned>(1, mu.weight()));
    return mn_recurse(beta, cycles, 0, memo);
}

CharacterTable compute_table(unsigned m) {
    CharacterTable t;
    t.m = m;
    t.order = enumerate_partitions(m);
    t.chi.assign(t.order.size(), std::vector<Int>(t.order.size()));
    std::map<MNKey, Int> memo;
    for (std::size_t i = 0; i < t.order.size(); ++i)
        for (std::size_t j = 0; j < t.order.size(); ++j)
            t.chi[i][j] = mn_character(t.order[i], t.order[j], memo);
    return t;
}

std::string table_payload(const CharacterTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.chi.size(); ++i)
        for (std::size_t j = 0; j < t.chi[i].size(); ++j)
            os << i << ' ' << j << ' ' << t.chi[i][j].get_str() << '\n';
    return os.str();
}

std::optional<CharacterTable> try_load(const std::string& path, unsigned m) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic, order_tag;
    unsigned file_m = 0;
    std::uint64_t checksum = 0;
    in >> magic >> file_m >> order_tag >> checksum;
    if (!in || magic != "haarlin-chartable-v1" || file_m != m || order_tag != "revlex-v1")
        return std::nullopt;
    in.ignore();
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (fnv1a64(payload) != checksum) return std::nullopt;

    CharacterTable t;
    t.m = m;
    t.order = enumerate_partitions(m);
    const std::size_t n = t.order.size();
    t.chi.assign(n, std::vector<Int>(n));
    std::istringstream body(payload);
    std::size_t i, j;
    std::string val;
    std::size_t count = 0;
    while (body >> i >> j >> val) {
        if (i >= n || j >= n) return std::nullopt;
        t.chi[i][j] = Int(val);
        ++count;
    }
    if (count != n * n) return std::nullopt;
    return t;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void save_character_table(const CharacterTable& t, const std::string& path) {
    std::string payload = table_payload(t);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write character cache: " + path);
    out << "haarlin-chartable-v1 " << t.m << " revlex-v1 " << fnv1a64(payload) << '\n' << payload;
}

Int character(const Partition& mu, const Partition& lambda) {
    if (mu.weight() != lambda.weight())
        throw std::invalid_argument("character: weight mismatch " + mu.str() + " vs " +
                                    lambda.str());
    thread_local std::map<MNKey, Int> memo;
    return mn_character(mu, lambda, memo);
}

std::shared_ptr<const CharacterTable> character_table(unsigned m,
                                                      const std::optional<std::string>& cache_path,
                                                      CacheStatus* status, unsigned ceiling) {
    if (m < 1 || m > ceiling)
        throw std::length_error("character_table: m=" + std::to_string(m) +
                                " outside [1, " + std::to_string(ceiling) + "]");
    CacheStatus local;
    if (cache_path) {
        std::ifstream probe(*cache_path);
        bool exists = static_cast<bool>(probe);
        probe.close();
        if (exists) {
            if (auto t = try_load(*cache_path, m)) {
                local.from_cache = true;
                if (status) *status = local;
                return std::make_shared<CharacterTable>(std::move(*t));
            }
            local.cache_corrupt = true;
        }
    }
    auto t = std::make_shared<CharacterTable>(compute_table(m));
    if (cache_path) save_character_table(*t, *cache_path);
    if (status) *status = local;
    return t;
}

std::shared_ptr<const CharacterTable> cached_character_table(unsigned m) {
    static std::mutex mtx;
    static std::map<unsigned, std::shared_ptr<const CharacterTable>> tables;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = tables.find(m);
    if (it != tables.end()) return it->second;
    auto t = character_table(m);
    tables[m] = t;
    return t;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("HAARLIN_CACHE_DIR")) return env;
    return ".haarlin-cache";
}

}  // namespace haarlin
