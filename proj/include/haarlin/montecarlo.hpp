#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "haarlin/moments.hpp"

namespace haarlin {

/// Deterministic per-stream generator: mt19937_64 seeded by splitmix64 of
/// (seed, stream). Workers own disjoint streams, so batches are bit-identical
/// for any thread count.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);
    double uniform01();  // in (0, 1]
    double gauss();      // standard normal (explicit Box-Muller, stdlib-free)

  private:
    std::mt19937_64 eng_;
    double cached_ = 0;
    bool have_cached_ = false;
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction (plain QR alone is not Haar).
Eigen::MatrixXcd haar_unitary(int N, RngStream& rng);

struct SampleBatch {
    std::uint64_t spec_hash = 0;
    long N = 0;
    double alpha = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk = 0;  // samples per stream
    std::uint64_t M = 0;
    std::vector<double> x;
    std::vector<double> y;  // empty when with_imag = false
};

/// M paired draws of (X_N, Y_N) from A = diag(nu); deterministic in
/// (seed, chunk layout) independent of `threads`.
SampleBatch sample_trace_stat(const SpectrumSpec& spec, std::uint64_t M, std::uint64_t seed,
                              int threads = 0, bool with_imag = true,
                              std::uint64_t chunk = 1 << 14);

/// Same law, but sampling Re tr(V diag(nu) W U)/sigma with fixed unitaries
/// V, W drawn from aux_seed. Used to exercise rotation invariance.
SampleBatch sample_trace_stat_rotated(const SpectrumSpec& spec, std::uint64_t M,
                                      std::uint64_t seed, std::uint64_t aux_seed,
                                      int threads = 0);

/// sup_x |F_hat - Phi| over the sample, with the DKW-based standard error
/// sqrt(ln(2/0.05)/(2M)).
std::pair<double, double> kolmogorov_distance(const SampleBatch& batch);
std::pair<double, double> kolmogorov_distance(std::vector<double> xs);

/// Two-sample Kolmogorov-Smirnov statistic.
double two_sample_ks(std::vector<double> a, std::vector<double> b);
/// Critical value at significance level `alpha` for sizes (n, m).
double two_sample_ks_critical(std::size_t n, std::size_t m, double alpha);

double standard_normal_cdf(double x);

enum class TvMethod { histogram, psi_inversion };

struct TvResult {
    double value = 0;
    std::string method;
    double err_hint = 0;  // statistical or quadrature scale, caller-facing only
};

/// int |f_N - phi| estimated from a bump-kernel smoothed sample density
/// (bandwidth eta ~ 1/(C delta sqrt(N))) or from the deterministic
/// characteristic-function inversion.
TvResult tv_estimate(const SpectrumSpec& spec, TvMethod method, std::uint64_t M = 1000000,
                     std::uint64_t seed = 1, int threads = 0);

struct RatePoint {
    double N = 0;
    double estimate = 0;
    double stderr_est = 0;
};

struct RateReport {
    std::vector<RatePoint> points;
    std::vector<bool> usable;
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    double slope_ci_lo = 0, slope_ci_hi = 0;  // 95%
    double target_exponent = 0;  // -(2 - b) of the family under test; set by callers
};

/// Weighted least squares of log(estimate) on log(N). Points with
/// estimate <= stderr are flagged unusable; fewer than 3 usable points is an
/// error.
RateReport rate_fit(const std::vector<RatePoint>& points);

/// Flat binary payload (little-endian doubles) plus a JSON sidecar.
void save_batch(const SampleBatch& batch, const std::string& path_prefix);
SampleBatch load_batch(const std::string& path_prefix);

}  // namespace haarlin
