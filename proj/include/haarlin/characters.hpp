#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "haarlin/partition.hpp"

namespace haarlin {

inline constexpr unsigned kDefaultCharacterCeiling = 24;

/// Full character table of S_m. Rows are irreps mu, columns are classes
/// lambda, both in the canonical (reverse lexicographic) partition order.
struct CharacterTable {
    unsigned m = 0;
    std::vector<Partition> order;     // canonical partition order of weight m
    std::vector<std::vector<Int>> chi;  // chi[irrep][class]

    std::size_t index_of(const Partition& p) const;
    const Int& value(const Partition& mu, const Partition& lambda) const;
};

/// Irreducible character chi^mu_lambda, |mu| = |lambda|, by the
/// Murnaghan-Nakayama rule. Integer for every pair.
Int character(const Partition& mu, const Partition& lambda);

struct CacheStatus {
    bool from_cache = false;
    bool cache_corrupt = false;  // checksum/format failure; table was recomputed
};

/// Build (or load) the full table. When cache_path is given, a valid cache
/// file is loaded; a corrupt one is reported via `status` and overwritten
/// with a freshly computed table.
std::shared_ptr<const CharacterTable> character_table(
    unsigned m, const std::optional<std::string>& cache_path = std::nullopt,
    CacheStatus* status = nullptr, unsigned ceiling = kDefaultCharacterCeiling);

/// Process-wide memoized table access (no disk involved).
std::shared_ptr<const CharacterTable> cached_character_table(unsigned m);

void save_character_table(const CharacterTable& table, const std::string& path);

/// Cache directory honoring the HAARLIN_CACHE_DIR override.
std::string default_cache_dir();

/// FNV-1a 64-bit, used for cache checksums and config fingerprints.
std::uint64_t fnv1a64(const std::string& data);

}  // namespace haarlin
