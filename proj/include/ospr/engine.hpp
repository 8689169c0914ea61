#pragma once

#include <vector>

#include "ospr/field.hpp"
#include "ospr/rng.hpp"

namespace ospr {

enum class QuantizationKind {
    BinaryPhase,   // pixels forced onto {+c, -c}, i.e. phases {0, pi}
    PhaseOnly,     // |pixel| forced to c, phase kept (test oracle)
    None,          // pass-through (test oracle)
};

/// One quantized hologram subframe.
struct HologramFrame {
    ComplexField field;
    QuantizationKind scheme = QuantizationKind::BinaryPhase;
};

/// Running sum of per-subframe replay intensities. Merging accumulators is
/// associative and commutative, so Monte-Carlo runs can be reduced in any
/// grouping (summation order is still fixed by the caller for bit identity).
class ReplayAccumulator {
public:
    ReplayAccumulator(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int subframes() const { return count_; }
    const std::vector<double>& intensity_sum() const { return sum_; }

    /// Add |dft_forward(frame)|^2 and bump the subframe count.
    void accumulate(const HologramFrame& frame);

    void merge(const ReplayAccumulator& other);

    /// Mean intensity over accumulated subframes; requires subframes() >= 1.
    std::vector<double> mean_intensity() const;

private:
    int width_;
    int height_;
    int count_ = 0;
    std::vector<double> sum_;
};

/// Algorithm step 1: amplitudes from the target, phases i.i.d. uniform on
/// [0, 2pi). Zero-amplitude pixels stay exactly zero.
ComplexField randomize_phase(const TargetImage& t, Philox& rng);

/// Algorithm step 2: back-propagate the replay field to the hologram plane.
ComplexField backpropagate(const ComplexField& replay);

/// Algorithm step 3. Binary phase maps each pixel to c*sign(Re(pixel)) with
/// c chosen so total energy is preserved; Re == 0 ties map to +c.
HologramFrame quantize(const ComplexField& h, QuantizationKind scheme);

/// Full pipeline: n_subframes passes of randomize/backpropagate/quantize,
/// intensities accumulated. Deterministic given the RngSpec; subframe k
/// draws from spec.substream(k).
ReplayAccumulator run_ospr(const TargetImage& t, int n_subframes,
                           QuantizationKind scheme, const RngSpec& rng);

} // namespace ospr
