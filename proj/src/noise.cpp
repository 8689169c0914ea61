#include "ospr/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ospr/bessel.hpp"
#include "ospr/quadrature.hpp"
#include "parallel.hpp"

namespace ospr {

namespace {

constexpr double kPi = std::numbers::pi;

// Intensity density of a constant phasor of squared modulus m2 plus
// circular Gaussian noise of power s (noncentral chi-square, 2 dof; the
// squared-amplitude form of the Rician). Written with the scaled Bessel so
// the exponentials never overflow:
//   p(x) = (1/s) exp(-(sqrt(x)-sqrt(m2))^2/s) * i0e(2 sqrt(x m2)/s)
double intensity_pdf(double x, double m2, double s) {
    if (x < 0)
        return 0;
    const double root = std::sqrt(x * m2);
    const double d = std::sqrt(x) - std::sqrt(m2);
    return std::exp(-d * d / s) * bessel_i0_scaled(2.0 * root / s) / s;
}

// k-th moment of intensity_pdf by adaptive quadrature, truncated 12 noise
// standard deviations past the phasor amplitude.
double intensity_moment(int k, double m2, double s) {
    const double cap_amp = std::sqrt(m2) + 12.0 * std::sqrt(s);
    const double cap = cap_amp * cap_amp;
    const double scale = std::pow(m2 + s, double(k));
    const double tol = 1e-8 * std::max(1.0, scale);
    return integrate_adaptive(
        [k, m2, s](double x) { return std::pow(x, double(k)) * intensity_pdf(x, m2, s); },
        0.0, cap, tol);
}

// psi-rule for marginalizing the relative phase of the two phasors.
const QuadratureRule& psi_rule() {
    static const QuadratureRule rule = gauss_legendre(48, 0.0, kPi);
    return rule;
}

double pair_moment(int k, double t, double t_mirror) {
    const double s = quantized_replay::distortion_power();
    const double g = quantized_replay::signal_gain();
    const double cross = 2.0 * std::sqrt(t * t_mirror);
    const auto& rule = psi_rule();
    double acc = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double m2 = g * (t + t_mirror + cross * std::cos(rule.nodes[i]));
        acc += rule.weights[i] * intensity_moment(k, std::max(m2, 0.0), s);
    }
    return acc / kPi;
}

// Literal reading: the intensity variables sit directly in the Rician
// density with the supplied sigma2.
double literal_moment(int k, double t, double sigma2) {
    const double cap = t + 12.0 * std::sqrt(sigma2);
    const double scale = std::pow(t + std::sqrt(sigma2), double(k));
    const double tol = 1e-8 * std::max(1.0, scale);
    return integrate_adaptive(
        [k, t, sigma2](double x) {
            return std::pow(x, double(k)) * rician_pdf(x, t, sigma2);
        },
        0.0, cap, tol);
}

// Outer expectation over target-intensity pairs (t, t_mirror). Mirrored
// coupling pins the partner to the same value; Independent draws it from
// the same distribution. Histogram bins are summed exactly; the uniform
// distribution uses Gauss-Legendre in amplitude.
template <typename F>
double outer_expectation(const AmplitudeDistribution& dist, PairCoupling coupling, F&& f) {
    dist.validate();
    switch (dist.kind) {
    case AmplitudeDistribution::Kind::Constant:
        return f(1.0, 1.0);
    case AmplitudeDistribution::Kind::Uniform: {
        static const QuadratureRule rule = gauss_legendre(96, 0.0, std::sqrt(3.0));
        const double norm = 1.0 / std::sqrt(3.0);
        if (coupling == PairCoupling::Mirrored) {
            double acc = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double t = rule.nodes[i] * rule.nodes[i];
                acc += rule.weights[i] * norm * f(t, t);
            }
            return acc;
        }
        double acc = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double ti = rule.nodes[i] * rule.nodes[i];
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double tj = rule.nodes[j] * rule.nodes[j];
                acc += rule.weights[i] * rule.weights[j] * norm * norm * f(ti, tj);
            }
        }
        return acc;
    }
    case AmplitudeDistribution::Kind::Empirical: {
        std::vector<double> centers(dist.probabilities.size());
        for (std::size_t i = 0; i < centers.size(); ++i)
            centers[i] = 0.5 * (dist.bin_edges[i] + dist.bin_edges[i + 1]);
        if (coupling == PairCoupling::Mirrored) {
            double acc = 0;
            for (std::size_t i = 0; i < centers.size(); ++i) {
                if (dist.probabilities[i] == 0)
                    continue;
                const double t = centers[i] * centers[i];
                acc += dist.probabilities[i] * f(t, t);
            }
            return acc;
        }
        double acc = 0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (dist.probabilities[i] == 0)
                continue;
            const double ti = centers[i] * centers[i];
            for (std::size_t j = 0; j < centers.size(); ++j) {
                if (dist.probabilities[j] == 0)
                    continue;
                const double tj = centers[j] * centers[j];
                acc += dist.probabilities[i] * dist.probabilities[j] * f(ti, tj);
            }
        }
        return acc;
    }
    }
    throw InvalidArgument("outer_expectation: unknown distribution kind");
}

} // namespace

double NoiseModel::effective_sigma2(int n) const {
    if (n < 1)
        throw InvalidArgument("NoiseModel: n must be at least 1");
    return sigma2_eps_prime / double(n);
}

AmplitudeDistribution AmplitudeDistribution::uniform() {
    AmplitudeDistribution d;
    d.kind = Kind::Uniform;
    return d;
}

AmplitudeDistribution AmplitudeDistribution::constant() {
    AmplitudeDistribution d;
    d.kind = Kind::Constant;
    return d;
}

AmplitudeDistribution AmplitudeDistribution::empirical(const TargetImage& t, int bins) {
    if (bins < 1)
        throw InvalidArgument("AmplitudeDistribution: need at least one bin");
    AmplitudeDistribution d;
    d.kind = Kind::Empirical;
    const double amax = *std::max_element(t.amplitudes.begin(), t.amplitudes.end());
    if (amax <= 0)
        throw InvalidArgument("AmplitudeDistribution: image has no positive amplitudes");
    d.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        d.bin_edges[i] = amax * double(i) / bins;
    d.probabilities.assign(bins, 0.0);
    const double w = 1.0 / double(t.amplitudes.size());
    for (double a : t.amplitudes) {
        int bin = int(a / amax * bins);
        bin = std::clamp(bin, 0, bins - 1);
        d.probabilities[bin] += w;
    }
    return d;
}

void AmplitudeDistribution::validate() const {
    if (kind != Kind::Empirical)
        return;
    if (bin_edges.size() != probabilities.size() + 1)
        throw InvalidArgument("AmplitudeDistribution: edges/probabilities size mismatch");
    double sum = 0;
    for (double p : probabilities) {
        if (p < 0)
            throw InvalidArgument("AmplitudeDistribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidArgument("AmplitudeDistribution: probabilities sum to " +
                              std::to_string(sum));
    for (double e : bin_edges)
        if (e < 0)
            throw InvalidArgument("AmplitudeDistribution: negative support");
}

double rician_pdf(double observed_intensity, double target_intensity, double sigma2) {
    if (sigma2 <= 0)
        throw InvalidArgument("rician_pdf: sigma2 must be positive");
    if (observed_intensity < 0 || target_intensity < 0)
        throw InvalidArgument("rician_pdf: intensities must be non-negative");
    const double x = observed_intensity;
    const double t = target_intensity;
    // (x/s) exp(-(x^2+t^2)/(2s)) I0(xt/s), with the Bessel growth folded
    // into the exponent: exp(-(x-t)^2/(2s)) * i0e(xt/s).
    const double d = x - t;
    return x / sigma2 * std::exp(-d * d / (2.0 * sigma2)) *
           bessel_i0_scaled(x * t / sigma2);
}

double bias_id(const AmplitudeDistribution& dist, double sigma2_eps_prime,
               PairCoupling coupling, BiasModel model) {
    if (sigma2_eps_prime <= 0)
        throw InvalidArgument("bias_id: sigma2_eps_prime must be positive");
    if (model == BiasModel::LiteralIntensityRician) {
        return outer_expectation(dist, PairCoupling::Mirrored,
                                 [sigma2_eps_prime](double t, double) {
                                     const double m = literal_moment(1, t, sigma2_eps_prime);
                                     return (m - t) * (m - t);
                                 });
    }
    return outer_expectation(dist, coupling, [](double t, double tm) {
        const double m = quantized_replay::mean_given_pair(t, tm);
        return (m - t) * (m - t);
    });
}

double predicted_sigma2(const AmplitudeDistribution& dist, double sigma2_eps_prime,
                        PairCoupling coupling, BiasModel model) {
    if (sigma2_eps_prime <= 0)
        throw InvalidArgument("predicted_sigma2: sigma2_eps_prime must be positive");
    if (model == BiasModel::LiteralIntensityRician) {
        return outer_expectation(dist, PairCoupling::Mirrored,
                                 [sigma2_eps_prime](double t, double) {
                                     const double m1 = literal_moment(1, t, sigma2_eps_prime);
                                     const double m2 = literal_moment(2, t, sigma2_eps_prime);
                                     return m2 - m1 * m1;
                                 });
    }
    return outer_expectation(dist, coupling, [](double t, double tm) {
        const double m1 = quantized_replay::mean_given_pair(t, tm);
        const double m2 = quantized_replay::second_moment_given_pair(t, tm);
        return m2 - m1 * m1;
    });
}

double bias_cs(const std::vector<double>& target_intensity,
               const std::vector<double>& replay_intensity, int width, int height) {
    const std::size_t n = std::size_t(width) * height;
    if (target_intensity.size() != n || replay_intensity.size() != n)
        throw DimensionError("bias_cs: array sizes do not match dimensions");
    double acc = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int xm = (width - x) % width;
            const int ym = (height - y) % height;
            const double folded = 0.5 * (replay_intensity[std::size_t(y) * width + x] +
                                         replay_intensity[std::size_t(ym) * width + xm]);
            acc += std::abs(folded - target_intensity[std::size_t(y) * width + x]);
        }
    }
    return std::sqrt(acc / double(n));
}

double mse_decomposition(double bias, double sigma2_eps_prime, int n) {
    if (n < 1)
        throw InvalidArgument("mse_decomposition: n must be at least 1");
    return bias * bias + sigma2_eps_prime / double(n);
}

ConvergenceFit fit_convergence(std::vector<FitSample> samples) {
    std::vector<int> seen;
    for (const auto& s : samples)
        if (std::find(seen.begin(), seen.end(), s.n_subframes) == seen.end())
            seen.push_back(s.n_subframes);
    if (seen.size() < 3)
        throw InvalidArgument("fit_convergence: need at least 3 distinct subframe counts");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(samples.size());
    for (const auto& s : samples) {
        const double x = 1.0 / double(s.n_subframes);
        sx += x;
        sy += s.mean_error;
        sxx += x * x;
        sxy += x * s.mean_error;
    }
    const double denom = m * sxx - sx * sx;
    ConvergenceFit fit;
    fit.B = (m * sxy - sx * sy) / denom;
    fit.A = (sy - fit.B * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& s : samples) {
        const double pred = fit.A + fit.B / double(s.n_subframes);
        ss_res += (s.mean_error - pred) * (s.mean_error - pred);
        ss_tot += (s.mean_error - mean_y) * (s.mean_error - mean_y);
    }
    fit.r_squared = (ss_tot == 0) ? 1.0 : 1.0 - ss_res / ss_tot;
    fit.samples = std::move(samples);
    return fit;
}

ErrorFieldStats per_pixel_error_stats(const TargetImage& t, QuantizationKind scheme,
                                      int runs, int n_subframes, const RngSpec& rng,
                                      int threads) {
    if (runs < 2)
        throw InvalidArgument("per_pixel_error_stats: need at least 2 runs");
    const std::vector<double> target = t.intensity();
    const std::size_t npix = target.size();

    // Runs are grouped into fixed-size blocks; each block accumulates
    // sequentially and blocks merge in order, so results are bit-identical
    // for any thread count.
    constexpr int kBlock = 8;
    const int n_blocks = (runs + kBlock - 1) / kBlock;
    struct Partial {
        std::vector<double> sum, sumsq;
    };
    std::vector<Partial> partials(n_blocks);

    detail::parallel_tasks(n_blocks, threads, [&](int b) {
        Partial p;
        p.sum.assign(npix, 0.0);
        p.sumsq.assign(npix, 0.0);
        const int lo = b * kBlock;
        const int hi = std::min(runs, lo + kBlock);
        for (int r = lo; r < hi; ++r) {
            const ReplayAccumulator acc =
                run_ospr(t, n_subframes, scheme, rng.substream(std::uint64_t(r)));
            const std::vector<double> mean = acc.mean_intensity();
            for (std::size_t i = 0; i < npix; ++i) {
                const double e = mean[i] - target[i];
                p.sum[i] += e;
                p.sumsq[i] += e * e;
            }
        }
        partials[b] = std::move(p);
    });

    ErrorFieldStats stats;
    stats.mean_error.assign(npix, 0.0);
    stats.variance.assign(npix, 0.0);
    for (int b = 0; b < n_blocks; ++b) {
        for (std::size_t i = 0; i < npix; ++i) {
            stats.mean_error[i] += partials[b].sum[i];
            stats.variance[i] += partials[b].sumsq[i];
        }
    }
    const double inv_runs = 1.0 / double(runs);
    double sum_mean = 0, sum_var = 0, sum_mean_sq = 0;
    for (std::size_t i = 0; i < npix; ++i) {
        const double mean = stats.mean_error[i] * inv_runs;
        const double var = (stats.variance[i] - double(runs) * mean * mean) / double(runs - 1);
        stats.mean_error[i] = mean;
        stats.variance[i] = var;
        sum_mean += mean;
        sum_var += var;
        sum_mean_sq += mean * mean;
    }
    stats.mean_of_means = sum_mean / double(npix);
    stats.mean_variance = sum_var / double(npix);
    // E[mean^2] inflates by var/runs under finite sampling; remove it.
    stats.mean_squared_mean = sum_mean_sq / double(npix) - stats.mean_variance * inv_runs;
    return stats;
}

NoiseModel estimate_noise_params(const TargetImage& t, QuantizationKind scheme,
                                 int runs, const RngSpec& rng, int threads) {
    if (runs < 2)
        throw InvalidArgument("estimate_noise_params: need at least 2 runs");
    const ErrorFieldStats stats = per_pixel_error_stats(t, scheme, runs, 1, rng, threads);
    NoiseModel model;
    model.mu_eps_prime = stats.mean_of_means;
    model.sigma2_eps_prime = stats.mean_variance;
    model.n_subframes = 1;
    return model;
}

namespace quantized_replay {

double distortion_power() {
    return 1.0 - 2.0 / kPi;
}

double signal_gain() {
    return 0.5 * (1.0 - distortion_power());
}

double mean_given_pair(double t, double t_mirror) {
    return pair_moment(1, t, t_mirror);
}

double second_moment_given_pair(double t, double t_mirror) {
    return pair_moment(2, t, t_mirror);
}

} // namespace quantized_replay

} // namespace ospr
