#include "ospr/engine.hpp"

#include <cmath>

namespace ospr {

ReplayAccumulator::ReplayAccumulator(int width, int height)
    : width_(width), height_(height), sum_(std::size_t(width) * height, 0.0) {}

void ReplayAccumulator::accumulate(const HologramFrame& frame) {
    if (frame.field.width() != width_ || frame.field.height() != height_)
        throw DimensionError("ReplayAccumulator: frame dimensions do not match");
    const ComplexField replay = dft_forward(frame.field);
    for (std::size_t i = 0; i < sum_.size(); ++i)
        sum_[i] += std::norm(replay.data()[i]);
    ++count_;
}

void ReplayAccumulator::merge(const ReplayAccumulator& other) {
    if (other.width_ != width_ || other.height_ != height_)
        throw DimensionError("ReplayAccumulator: merge dimensions do not match");
    for (std::size_t i = 0; i < sum_.size(); ++i)
        sum_[i] += other.sum_[i];
    count_ += other.count_;
}

std::vector<double> ReplayAccumulator::mean_intensity() const {
    if (count_ < 1)
        throw InvalidArgument("ReplayAccumulator: no subframes accumulated");
    std::vector<double> mean(sum_.size());
    const double inv = 1.0 / count_;
    for (std::size_t i = 0; i < sum_.size(); ++i)
        mean[i] = sum_[i] * inv;
    return mean;
}

ComplexField randomize_phase(const TargetImage& t, Philox& rng) {
    ComplexField out(t.width, t.height);
    for (std::size_t i = 0; i < t.amplitudes.size(); ++i) {
        const double phase = rng.next_phase();
        const double a = t.amplitudes[i];
        out.data()[i] = (a == 0.0)
                            ? std::complex<double>(0.0, 0.0)
                            : std::complex<double>(a * std::cos(phase), a * std::sin(phase));
    }
    return out;
}

ComplexField backpropagate(const ComplexField& replay) {
    return dft_inverse(replay);
}

HologramFrame quantize(const ComplexField& h, QuantizationKind scheme) {
    if (scheme == QuantizationKind::None)
        return HologramFrame{h, scheme};

    // c preserves total field energy: |pixel| == c everywhere afterwards.
    const double c = std::sqrt(h.energy() / double(h.size()));
    ComplexField out(h.width(), h.height());
    if (scheme == QuantizationKind::BinaryPhase) {
        for (std::size_t i = 0; i < h.size(); ++i)
            out.data()[i] = (h.data()[i].real() >= 0.0) ? c : -c;
    } else { // PhaseOnly
        for (std::size_t i = 0; i < h.size(); ++i) {
            const std::complex<double> z = h.data()[i];
            const double m = std::abs(z);
            out.data()[i] = (m == 0.0) ? std::complex<double>(c, 0.0) : z * (c / m);
        }
    }
    return HologramFrame{std::move(out), scheme};
}

ReplayAccumulator run_ospr(const TargetImage& t, int n_subframes,
                           QuantizationKind scheme, const RngSpec& rng) {
    if (n_subframes < 1)
        throw InvalidArgument("run_ospr: n_subframes must be at least 1");
    ReplayAccumulator acc(t.width, t.height);
    for (int n = 0; n < n_subframes; ++n) {
        Philox stream(rng.substream(std::uint64_t(n)));
        const ComplexField replay = randomize_phase(t, stream);
        const ComplexField hologram = backpropagate(replay);
        acc.accumulate(quantize(hologram, scheme));
    }
    return acc;
}

} // namespace ospr
