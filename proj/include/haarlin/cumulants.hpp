#pragma once

#include "haarlin/moments.hpp"

namespace haarlin {

struct CumulantTable {
    SpectrumSpec spec;
    std::vector<Rational> kappa;  // kappa[i] = kappa_{2i}; kappa[0] = 0 by convention
    unsigned m_max() const { return static_cast<unsigned>(kappa.size()) - 1; }
};

/// kappa_n from the moment recurrence
/// kappa_n = mu_n - sum_{k<n} C(n-1,k-1) kappa_k mu_{n-k}; odd orders vanish.
CumulantTable cumulants_from_moments(const MomentTable& moments);

/// Closed-form inversion kappa_n = sum_{lambda |- n} (-1)^{l-1}(l-1)! c_lambda mu_lambda.
/// Independent route used to cross-check the recurrence.
Rational cumulant_closed_form(const MomentTable& moments, unsigned n);

/// mu_n = sum_{lambda |- n} c_lambda kappa_lambda; exact inverse of the above.
MomentTable moments_from_cumulants(const CumulantTable& cumulants);

/// K_lambda(N) for all |lambda| <= m, by inverting
/// M_lambda = sum_Lambda a_Lambda prod K_mu (triangular in weight).
struct KCoefficients {
    long N = 0;
    unsigned m_max = 0;
    std::map<Partition, Rational> values;
    std::map<Partition, Rational> leading;  // companion large-N terms
};
KCoefficients k_coefficients(unsigned m, long N);

/// Leading large-N term of K_lambda(N).
Rational k_leading(const Partition& lambda, long N);

/// Corrected closed forms (2 sigma^2 inside the trace, matching sigma powers
/// below): order 2 -> 1, order 4, order 6. Requires N >= 2 (resp. 3).
Rational kappa_closed_form(const SpectrumSpec& spec, unsigned order);

/// Dimensionally inconsistent variant (2*sigma in place of 2*sigma^2, with
/// matching powers below); kept so the discrepancy against the corrected
/// forms stays visible in tests.
double kappa_closed_form_uncorrected(const SpectrumSpec& spec, unsigned order);

/// kappa_{2m} = (2m-1)!!/(2 sigma^2)^m sum_lambda g_lambda K_lambda(N) p_lambda(nu^2).
Rational kappa_2m_partition_form(const SpectrumSpec& spec, unsigned m);

/// Source-term-free variant of the K recursion; it collapses to K = 0
/// identically and exists only to document why the decomposition inversion
/// is the authoritative route.
std::map<Partition, Rational> k_recursion_experimental(unsigned m, long N);

}  // namespace haarlin
