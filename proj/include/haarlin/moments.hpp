#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haarlin/weingarten.hpp"

namespace haarlin {

/// Everything the law of X_N = Re tr(A_N U)/sigma depends on: N and the
/// singular values of A_N (Haar invariance removes the rest of A_N).
/// Squared singular values are kept exact; nu itself is mirrored in floating
/// point for the sampling and Bessel routes.
struct SpectrumSpec {
    long N = 0;
    std::vector<Rational> nu_sq;  // non-decreasing, >= 0
    std::vector<double> nu;       // sqrt(nu_sq)
    Rational sigma_sq;            // tr(A A*) / (2N)
    double b = 0.0;               // declared growth exponent of nu_N^2
    Rational k;                   // declared constant: nu_N^2 <= k N^b
    std::string family;           // descriptor used to build this spec

    double sigma() const;
    /// Support radius of X_N: sum nu_j / sigma.
    double alpha() const;
    /// True when some nu is zero or a relative gap in nu^2 is below tol.
    bool degenerate(double rel_gap_tol = 1e-6) const;
    std::uint64_t hash() const;
};

/// Builds a validated spectrum from a family descriptor:
///   identity | spike | sparse[:q=1/4,h=2] | ramp[:lo=1,hi=2]
///   | random[:lo=1/2,hi=3/2,seed=1] | explicit:v1,v2,...
/// Values in `explicit` are singular values (exact rationals).
SpectrumSpec make_spectrum(const std::string& descriptor, long N);

/// I_N^m = m! sum_{lambda |- m} g_lambda M_lambda(N) p_lambda(nu^2).
/// Valid (and enforced) only for 1 <= m <= N.
Rational trace_moment_integral(const SpectrumSpec& spec, unsigned m);

/// Schur form m! sum_{l(lambda) <= N} (dim V_lambda / f_lambda(N)) s_lambda(nu^2),
/// exact for every m >= 0 (Schur orthogonality on the unitary group restricts
/// the sum to at most N rows; no pole can occur there).
Rational trace_moment_integral_schur(const SpectrumSpec& spec, unsigned m);

/// mu_{2m} = (2m-1)!!/(m! (2 sigma^2)^m) I_N^m, for 1 <= m <= N.
Rational moment(const SpectrumSpec& spec, unsigned two_m);

/// Same normalization on the Schur-form integral; exact for every even order.
Rational moment_schur(const SpectrumSpec& spec, unsigned two_m);

/// Moments of N(0,1): (2m-1)!!.
Int normal_moment(unsigned two_m);

struct MomentTable {
    SpectrumSpec spec;
    std::vector<Rational> mu;  // mu[i] = mu_{2i}, i = 0..m_max
    unsigned m_max() const { return static_cast<unsigned>(mu.size()) - 1; }
};

/// Exact mu_{2m}, m = 0..m_max. Requires m_max <= N unless
/// allow_extended (then the Schur form carries the tail m > N).
MomentTable moment_table(const SpectrumSpec& spec, unsigned m_max, bool allow_extended = false);

}  // namespace haarlin
