#pragma once

#include <vector>

#include "ospr/engine.hpp"
#include "ospr/field.hpp"
#include "ospr/rng.hpp"

namespace ospr {

/// Parameters of the single-subframe intensity error: replay intensity =
/// target intensity + eps', with mean mu and variance sigma2. Averaging N
/// independent subframes divides the variance by N and leaves the mean.
struct NoiseModel {
    double mu_eps_prime = 0;
    double sigma2_eps_prime = 0;
    int n_subframes = 1;

    double effective_sigma2(int n) const;
};

/// Distribution of target amplitudes, the weight of the outer integral in
/// the bias computation. Empirical histograms use 256 bins over the
/// amplitude range, matching 8-bit sources.
struct AmplitudeDistribution {
    enum class Kind { Uniform, Constant, Empirical };

    Kind kind = Kind::Constant;
    std::vector<double> bin_edges;     // Empirical only: bins+1 edges from 0
    std::vector<double> probabilities; // Empirical only: sums to 1

    static AmplitudeDistribution uniform();  // amplitudes U[0, sqrt(3)]
    static AmplitudeDistribution constant(); // all amplitudes 1
    static AmplitudeDistribution empirical(const TargetImage& t, int bins = 256);

    void validate() const;
};

/// Whether a replay pixel and its 180-degree partner see the same target
/// intensity. Mirrored holds for symmetrized targets; Independent models
/// i.i.d. targets, where the partner is a fresh draw from the distribution.
enum class PairCoupling { Independent, Mirrored };

/// Noise model used for the simulated bias/variance columns.
///
/// QuantizedReplay (default): the replay pixel is the coherent sum of the
/// target phasor and its mirror partner's conjugate phasor, each attenuated
/// by the sign-quantizer gain, plus circular Gaussian quantization noise of
/// power 1 - 2/pi. The observed intensity then follows the Rician intensity
/// density conditioned on the summed phasor modulus. This is the route that
/// reproduces the reference bias/variance table.
///
/// LiteralIntensityRician: cross-check route that places the intensity
/// variables directly in the Rician density, parameterized by the supplied
/// sigma2; retained because the two readings differ and the discrepancy
/// should stay observable.
enum class BiasModel { QuantizedReplay, LiteralIntensityRician };

struct BiasReport {
    double bias_cs = 0;
    double bias_id = 0;
    double sigma2_eps_prime = 0;
};

/// Rician density of an observed intensity given the target intensity, as
/// written: p(x) = (x/s2) exp(-(x^2+t^2)/(2 s2)) I0(x t / s2). Evaluated
/// with the exponentially scaled Bessel so large arguments do not overflow.
double rician_pdf(double observed_intensity, double target_intensity, double sigma2);

/// Intensity-distribution bias term, evaluated by nested quadrature: outer
/// over the target intensity distribution (exact bin sums for empirical
/// histograms), inner over observed intensity truncated at 12 sigma.
/// Returns the squared-deviation integral E[(E[x|t] - t)^2] -- the value
/// that adds directly onto sigma2/N in the error decomposition and is what
/// the bias column of the reference table carries. Absolute error <= 1e-4.
double bias_id(const AmplitudeDistribution& dist, double sigma2_eps_prime,
               PairCoupling coupling = PairCoupling::Independent,
               BiasModel model = BiasModel::QuantizedReplay);

/// Model prediction of sigma2_eps_prime for a distribution, same machinery
/// as bias_id (fills the simulated-variance column).
double predicted_sigma2(const AmplitudeDistribution& dist, double sigma2_eps_prime,
                        PairCoupling coupling = PairCoupling::Independent,
                        BiasModel model = BiasModel::QuantizedReplay);

/// Conjugate-symmetry bias: sqrt of the mean over pixels of
/// |(replay + replay_mirrored)/2 - target|, the asymptotic mismatch a
/// mirror-averaged replay keeps against a non-symmetric target. Zero for
/// rotationally symmetric targets when replay == target intensity.
double bias_cs(const std::vector<double>& target_intensity,
               const std::vector<double>& replay_intensity, int width, int height);

/// Error decomposition: bias^2 + sigma2/n.
double mse_decomposition(double bias, double sigma2_eps_prime, int n);

struct FitSample {
    int n_subframes = 0;
    double mean_error = 0;
    double std_dev = 0;
};

/// Least-squares fit of E(N) = A + B/N (linear regression on x = 1/N).
struct ConvergenceFit {
    double A = 0;
    double B = 0;
    double r_squared = 0;
    std::vector<FitSample> samples;
};

ConvergenceFit fit_convergence(std::vector<FitSample> samples);

/// Per-pixel mean and variance of the intensity error (replay - target)
/// over `runs` independent executions at n_subframes each. Run r draws from
/// rng.substream(r); results do not depend on thread count.
struct ErrorFieldStats {
    std::vector<double> mean_error;
    std::vector<double> variance; // unbiased, over runs
    double mean_of_means = 0;     // average of mean_error
    double mean_variance = 0;     // average of variance
    double mean_squared_mean = 0; // average of mean_error^2, debiased
};

ErrorFieldStats per_pixel_error_stats(const TargetImage& t, QuantizationKind scheme,
                                      int runs, int n_subframes, const RngSpec& rng,
                                      int threads = 0);

/// Single-subframe noise statistics from `runs` independent executions:
/// sigma2_eps_prime is the per-pixel variance averaged over pixels.
NoiseModel estimate_noise_params(const TargetImage& t, QuantizationKind scheme,
                                 int runs, const RngSpec& rng, int threads = 0);

namespace quantized_replay {

/// Quantization noise power of the binary-phase limiter: 1 - 2/pi.
double distortion_power();

/// Per-phasor intensity gain; energy conservation fixes it to
/// (1 - distortion_power())/2.
double signal_gain();

/// Conditional mean/second moment of a replay pixel's intensity given its
/// target intensity and its mirror partner's, by the nested quadrature.
double mean_given_pair(double t, double t_mirror);
double second_moment_given_pair(double t, double t_mirror);

} // namespace quantized_replay

} // namespace ospr
