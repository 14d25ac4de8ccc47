#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "haarlin/rational.hpp"

namespace haarlin {

/// Integer partition: parts stored non-increasing, trailing zeros stripped,
/// so partitions differing only by trailing zeros compare equal.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned weight() const { return weight_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    /// r_j for j = 1..weight (index 0 unused).
    std::vector<unsigned> frequencies() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    // Lexicographic on the non-increasing part lists. The canonical
    // enumeration order below is *descending* in this comparison.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

    std::string str() const;

  private:
    std::vector<unsigned> parts_;
    unsigned weight_ = 0;
};

inline constexpr unsigned kDefaultPartitionCeiling = 64;

/// All partitions of m in reverse lexicographic order: (m) first, (1^m) last.
/// Count equals p(m). Throws std::length_error above the ceiling.
std::vector<Partition> enumerate_partitions(unsigned m,
                                            unsigned ceiling = kDefaultPartitionCeiling);

/// Partitions of m with at most max_len parts, same order.
std::vector<Partition> enumerate_partitions_bounded(unsigned m, std::size_t max_len);

/// Size of the conjugacy class of cycle-type lambda in S_m:
/// g = m! / prod_j j^{r_j} r_j!.
Int class_size(const Partition& lambda);

/// Dimension of the irreducible representation of S_m labelled by lambda.
Int irrep_dimension(const Partition& lambda);

/// Cell contents j - i, one per cell (i,j) of the diagram, in row order.
/// With this sign convention f_lambda(N) = prod (N + content).
std::vector<int> contents(const Partition& lambda);

/// Number of set partitions of an n-set whose block sizes are the parts:
/// c = n! / prod_j (j!)^{r_j} r_j!.
Int set_partition_count(const Partition& lambda);

/// One way of writing lambda as a multiset union of sub-partitions,
/// together with its multiplicity in the M -> K expansion.
struct Decomposition {
    std::vector<Partition> blocks;  // sorted descending, canonical
    Int multiplicity;               // a_Lambda
};

/// Every distinct multiset-union decomposition of lambda, each exactly once.
/// The trivial decomposition {lambda} comes first.
std::vector<Decomposition> decompositions(const Partition& lambda);

/// Multiplicity a_Lambda of a given block multiset (blocks need not be sorted).
Int decomposition_multiplicity(const Partition& lambda, const std::vector<Partition>& blocks);

}  // namespace haarlin
