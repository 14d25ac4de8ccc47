#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "haarlin/symmetric_functions.hpp"

namespace haarlin {

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// M_lambda(N) by the character formula, valid for N >= |lambda|.
/// Throws std::domain_error for N < m (the De Wit-'t Hooft region) and
/// pole_error should an f_mu(N) vanish.
Rational weingarten_character(const Partition& lambda, long N,
                              const CharacterTable* table = nullptr);

/// All M_lambda(N), lambda |- m, by solving the trace recursion weight by
/// weight with initial condition M_0 = 1. Independent of the character route.
std::map<Partition, Rational> weingarten_recursive_map(unsigned m, long N);

Rational weingarten_recursive(const Partition& lambda, long N);

/// Residual of the recursion equation for lambda presented with an arbitrary
/// parts order (the last entry plays the distinguished role). Zero for a
/// consistent solution regardless of the ordering.
Rational recursion_residual(const std::vector<unsigned>& parts_in_order,
                            const std::map<Partition, Rational>& weight_m,
                            const std::map<Partition, Rational>& weight_m_minus_1, long N);

enum class WgProvenance { character_formula, recursion };

/// Per-(m,N) coefficient maps; completed entries are immutable.
class WeingartenCache {
  public:
    const std::map<Partition, Rational>& get(unsigned m, long N,
                                             WgProvenance route = WgProvenance::character_formula);

    static WeingartenCache& global();

  private:
    std::map<std::pair<unsigned, long>, std::map<Partition, Rational>> entries_;
    std::map<std::pair<unsigned, long>, WgProvenance> provenance_;
    std::mutex mtx_;
};

void save_weingarten_map(const std::map<Partition, Rational>& map, unsigned m, long N,
                         const std::string& path);
std::optional<std::map<Partition, Rational>> load_weingarten_map(unsigned m, long N,
                                                                 const std::string& path);

}  // namespace haarlin
