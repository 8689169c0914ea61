#pragma once

#include <string>
#include <vector>

#include "ospr/errors.hpp"

namespace ospr {

/// SSIM configuration. Windows are uniform (unweighted) squares slid at
/// `stride`; only fully-contained positions count, no padding. c1 = (k1*L)^2
/// and c2 = (k2*L)^2 with L the pixel dynamic range. L defaults to 256, the
/// state count of the 8-bit sources the targets come from; every report
/// echoes the value used.
struct SsimParams {
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 256.0;
    int window = 8;
    int stride = 1;

    double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
    double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

/// Per-window SSIM components plus the global mean of s1*s2. Window order is
/// row-major over valid positions.
struct SsimReport {
    double global_ssim = 0;
    int windows_x = 0;
    int windows_y = 0;
    SsimParams params;
    std::vector<double> mu_t, mu_r;
    std::vector<double> sigma2_t, sigma2_r;
    std::vector<double> sigma_tr;
    std::vector<double> s1, s2;
};

struct SsimComponentHistogram {
    std::string component;
    int n_subframes = 0;
    std::vector<double> bin_edges; // bins+1
    std::vector<std::size_t> counts;
    std::size_t total() const;
};

/// Mean squared difference between two intensity images.
double mse(const std::vector<double>& target_intensity,
           const std::vector<double>& replay_intensity, int width, int height);

/// Windowed SSIM between target and replay intensity images.
SsimReport ssim(const std::vector<double>& target_intensity,
                const std::vector<double>& replay_intensity, int width, int height,
                const SsimParams& params = {});

/// Bin one named component ("mu_t2", "mu_r2", "sigma2_t", "sigma2_r",
/// "sigma_tr", "s1", "s2") across all windows of all reports.
SsimComponentHistogram ssim_component_histograms(const std::vector<SsimReport>& reports,
                                                 const std::string& component,
                                                 int bins = 64);

/// Convergence model with the luminance factor pinned to 1:
/// ssim(n) ~= c2 / (2*sigma2_t + sigma2_eps_prime/n + c2).
double ssim_model(double sigma2_t, double sigma2_eps_prime, int n,
                  const SsimParams& params = {});

/// Per-window refinement: the same expression averaged over the target's
/// window-variance distribution.
double ssim_model_full(const std::vector<double>& window_sigma2_t,
                       double sigma2_eps_prime, int n, const SsimParams& params = {});

} // namespace ospr
