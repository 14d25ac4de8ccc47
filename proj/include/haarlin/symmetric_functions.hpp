#pragma once

#include <vector>

#include "haarlin/characters.hpp"
#include "haarlin/partition.hpp"

namespace haarlin {

/// Eigenvalues of A A* (the squared singular values), all >= 0.
using SpectrumValues = std::vector<Rational>;

Rational power_sum(unsigned j, const SpectrumValues& x);

/// p_lambda(x) = prod_j p_j(x)^{r_j}.
Rational power_sum_product(const Partition& lambda, const SpectrumValues& x);

/// s_lambda(I_N) by the pairwise product formula; 0 when N < l(lambda).
Rational schur_at_identity(const Partition& lambda, long N);

/// s_lambda(x) = (1/m!) sum_mu g_mu chi^lambda_mu p_mu(x).
/// Exact for arbitrary (possibly repeated) entries.
Rational schur_eval(const Partition& lambda, const SpectrumValues& x,
                    const CharacterTable* table = nullptr);

/// Bialternant ratio of determinants; requires all entries distinct.
/// Cross-check route only.
Rational schur_eval_bialternant(const Partition& lambda, const SpectrumValues& x);

/// Jacobi-Trudi determinant in the complete homogeneous h_k. Exact for any
/// entries and cheap at high weight (no character table involved).
Rational schur_eval_jacobi_trudi(const Partition& lambda, const SpectrumValues& x);

/// h_0..h_kmax of x via Newton's identities.
std::vector<Rational> complete_homogeneous_table(const SpectrumValues& x, unsigned kmax);
Rational schur_eval_jacobi_trudi(const Partition& lambda, const std::vector<Rational>& h_table,
                                 std::size_t nvars);

/// f_lambda(N) = (1/dim) sum_mu g_mu chi^lambda_mu N^{l(mu)}; degree-m polynomial.
Rational f_lambda_sum(const Partition& lambda, long N, const CharacterTable* table = nullptr);

/// Factorized form prod_{cells}(N - i + j); total in N, zero exactly at the
/// negated contents.
Rational f_lambda_product(const Partition& lambda, long N);

}  // namespace haarlin
