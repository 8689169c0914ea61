#include "ospr/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace ospr {

ComplexField::ComplexField(int width, int height)
    : width_(width), height_(height) {
    if (width < 2 || height < 2)
        throw InvalidArgument("ComplexField: dimensions must be at least 2x2");
    data_.assign(std::size_t(width) * height, {0.0, 0.0});
}

double ComplexField::energy() const {
    double sum = 0;
    for (const auto& z : data_)
        sum += std::norm(z);
    return sum;
}

double TargetImage::energy() const {
    double sum = 0;
    for (double a : amplitudes)
        sum += a * a;
    return sum;
}

std::vector<double> TargetImage::intensity() const {
    std::vector<double> out(amplitudes.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = amplitudes[i] * amplitudes[i];
    return out;
}

bool TargetImage::is_rotation_symmetric() const {
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int xm = (width - x) % width;
            const int ym = (height - y) % height;
            if (at(x, y) != at(xm, ym))
                return false;
        }
    }
    return true;
}

namespace {

// FFTW plans are cached per (width, height, direction). Plan creation is not
// thread safe, execution on distinct buffers is; FFTW_UNALIGNED lets one plan
// serve any caller-provided array.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int width, int height, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(width, height, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        std::vector<std::complex<double>> scratch(std::size_t(width) * height);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        // FFTW uses row-major (n0 = rows, n1 = columns).
        fftw_plan plan = fftw_plan_dft_2d(height, width, ptr, ptr, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan)
            throw Error("FFTW could not create a plan for " +
                        std::to_string(width) + "x" + std::to_string(height));
        plans_[key] = plan;
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

ComplexField transform(const ComplexField& field, int sign) {
    fftw_plan plan = PlanCache::instance().get(field.width(), field.height(), sign);
    ComplexField out(field.width(), field.height());
    std::copy(field.data(), field.data() + field.size(), out.data());
    auto* ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, ptr, ptr);
    const double scale = 1.0 / std::sqrt(double(field.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] *= scale;
    return out;
}

} // namespace

ComplexField dft_forward(const ComplexField& field) {
    return transform(field, FFTW_FORWARD);
}

ComplexField dft_inverse(const ComplexField& field) {
    return transform(field, FFTW_BACKWARD);
}

EnergyReport check_parseval(const ComplexField& a, const ComplexField& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionError("check_parseval: field dimensions differ");
    EnergyReport report;
    report.diffraction_energy = a.energy();
    report.replay_energy = b.energy();
    const double floor = 1e-300;
    report.relative_mismatch =
        std::abs(report.diffraction_energy - report.replay_energy) /
        std::max(report.diffraction_energy, floor);
    return report;
}

TargetImage make_target(int width, int height, std::vector<double> amplitudes,
                        EnergyPolicy policy) {
    if (width < 2 || height < 2)
        throw InvalidArgument("make_target: dimensions must be at least 2x2");
    if (amplitudes.size() != std::size_t(width) * height)
        throw DimensionError("make_target: amplitude count does not match dimensions");
    double sumsq = 0;
    for (double a : amplitudes) {
        if (a < 0)
            throw InvalidArgument("make_target: negative amplitude");
        sumsq += a * a;
    }
    if (sumsq == 0)
        throw InvalidArgument("make_target: image is identically zero");
    if (policy == EnergyPolicy::UnitMeanSquare) {
        const double scale = std::sqrt(double(amplitudes.size()) / sumsq);
        for (double& a : amplitudes)
            a *= scale;
    }
    TargetImage t;
    t.width = width;
    t.height = height;
    t.amplitudes = std::move(amplitudes);
    t.symmetric = t.is_rotation_symmetric();
    return t;
}

TargetImage load_target(const std::string& path, EnergyPolicy policy) {
    int width = 0, height = 0;
    const std::vector<unsigned char> bytes = read_pgm(path, width, height);
    std::vector<double> amps(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        amps[i] = double(bytes[i]) / 255.0;
    return make_target(width, height, std::move(amps), policy);
}

TargetImage induce_symmetry(const TargetImage& t) {
    if (t.symmetric && t.is_rotation_symmetric())
        return t;
    std::vector<double> sym(t.amplitudes.size());
    for (int y = 0; y < t.height; ++y) {
        for (int x = 0; x < t.width; ++x) {
            const int xm = (t.width - x) % t.width;
            const int ym = (t.height - y) % t.height;
            sym[std::size_t(y) * t.width + x] = 0.5 * (t.at(x, y) + t.at(xm, ym));
        }
    }
    // Force bit-exact symmetry: mirror pairs share one stored value.
    for (int y = 0; y < t.height; ++y) {
        for (int x = 0; x < t.width; ++x) {
            const int xm = (t.width - x) % t.width;
            const int ym = (t.height - y) % t.height;
            if (std::size_t(ym) * t.width + xm > std::size_t(y) * t.width + x)
                sym[std::size_t(ym) * t.width + xm] = sym[std::size_t(y) * t.width + x];
        }
    }
    // Re-normalize to the input energy (averaging alone loses energy unless
    // the image was already symmetric).
    double sumsq = 0;
    for (double a : sym)
        sumsq += a * a;
    if (sumsq == 0)
        throw InvalidArgument("induce_symmetry: image is identically zero");
    const double scale = std::sqrt(t.energy() / sumsq);
    for (double& a : sym)
        a *= scale;
    TargetImage out;
    out.width = t.width;
    out.height = t.height;
    out.amplitudes = std::move(sym);
    out.symmetric = true;
    return out;
}

} // namespace ospr
