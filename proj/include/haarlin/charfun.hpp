#pragma once

#include <string>
#include <vector>

#include "haarlin/moments.hpp"

namespace haarlin {

struct near_degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PsiPoint {
    double value = 0;
    double error_bound = 0;  // magnitude of the first omitted series term
    bool truncated = false;  // error bound not trustworthy (terms not yet decreasing)
};

/// Partial sum of the moment expansion psi_N(xi) = sum (-1)^m mu_{2m} xi^{2m} / (2m)!
/// through m_max, with exact coefficients (Schur form, valid beyond m = N).
/// Falls back to exact rational summation when floating cancellation would
/// spoil the result.
PsiPoint psi_series(const SpectrumSpec& spec, double xi, unsigned m_max);

/// Exact partial sum at rational xi; *next_term receives the first omitted term.
Rational psi_series_exact(const SpectrumSpec& spec, const Rational& xi, unsigned m_max,
                          Rational* next_term = nullptr);

/// e^{-xi^2/2}.
double psi_normal(double xi);

/// The Bessel-determinant evaluation of psi_N. Requires positive, pairwise
/// separated singular values (relative nu^2 gap above degeneracy_tol).
/// Working precision doubles until two successive evaluations agree to
/// rel_tol; the Vandermonde denominator is exact.
double psi_bessel(const SpectrumSpec& spec, double xi, double rel_tol = 1e-13,
                  double degeneracy_tol = 1e-6);

/// Route chooser: Bessel determinant when available, else the exact series
/// with automatically grown m_max.
double psi_value(const SpectrumSpec& spec, double xi, double tol = 1e-10);

/// |psi_N - psi| N^{2-b} / (xi^4 e^{-xi^2/2}); domain 0 < xi < delta N^{(1-b)/2}.
double be_ratio(const SpectrumSpec& spec, double xi, double delta = 0.5);

struct DensityResult {
    std::vector<double> x;
    std::vector<double> f;
    double tail_bound = 0;  // truncation-of-inversion estimate
    double xi_cut = 0;      // integration range actually used
    std::string route;      // "bessel" or "series"
};

/// f_N on the grid by inverting the characteristic function. N = 1 is
/// rejected (the density is unbounded there).
DensityResult density_from_psi(const SpectrumSpec& spec, const std::vector<double>& xgrid,
                               double xi_cut = 0 /* auto */, double tol = 1e-9);

struct KolmogorovBound {
    double total = 0;
    double term_berry_esseen = 0;  // (2C/pi N^{2-b}) int_0^S xi^3 e^{-xi^2/2}
    double term_gauss_tail = 0;    // (2/pi S) int_S^T e^{-xi^2/2}
    double term_psi_tail = 0;      // (2/pi S) int_S^T |psi_N|
    double term_feller = 0;        // 24 m / (pi T)
    double C = 0;                  // empirical Berry-Esseen constant used
    double S_N = 0, T_N = 0;
    bool degraded = false;  // psi tail used the trivial |psi| <= 1 bound
};

/// Deterministic upper bound on e(N): the four-term split evaluated with the
/// computed characteristic function. gamma > 2 required.
KolmogorovBound kolmogorov_upper_bound(const SpectrumSpec& spec, double delta = 0.5,
                                       double gamma = 2.5);

struct CharFunEval {
    SpectrumSpec spec;
    std::vector<double> xi;
    std::vector<double> psi_N;
    std::vector<double> psi;
    std::vector<double> ratio;        // Berry-Esseen ratio where admissible, else nan
    std::vector<double> error_bound;  // per-point truncation estimate
};

CharFunEval charfun_eval(const SpectrumSpec& spec, const std::vector<double>& xi_grid,
                         unsigned m_max = 0 /* auto */);
void write_charfun_csv(const CharFunEval& eval, const std::string& path,
                       const std::string& header_comment = {});

}  // namespace haarlin
