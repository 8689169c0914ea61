#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ospr/errors.hpp"

namespace ospr {

/// 2-D array of complex amplitudes, row-major. Carries holograms in the
/// diffraction plane and replay fields in the image plane; the two are
/// related by the unitary DFT below, so total energy is the same on both
/// sides (Parseval).
class ComplexField {
public:
    ComplexField(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    std::complex<double>& at(int x, int y) { return data_[std::size_t(y) * width_ + x]; }
    const std::complex<double>& at(int x, int y) const { return data_[std::size_t(y) * width_ + x]; }

    std::complex<double>* data() { return data_.data(); }
    const std::complex<double>* data() const { return data_.data(); }

    /// Sum of squared moduli.
    double energy() const;

private:
    int width_;
    int height_;
    std::vector<std::complex<double>> data_;
};

/// Non-negative amplitude image in the replay plane. `symmetric` records
/// that the image equals its own 180-degree rotation (mod-indexed), which
/// removes the conjugate-symmetry bias of binary-phase holograms.
struct TargetImage {
    int width = 0;
    int height = 0;
    std::vector<double> amplitudes; // row-major, all >= 0
    bool symmetric = false;

    double& at(int x, int y) { return amplitudes[std::size_t(y) * width + x]; }
    double at(int x, int y) const { return amplitudes[std::size_t(y) * width + x]; }

    double energy() const;            // sum of squared amplitudes
    std::vector<double> intensity() const; // elementwise squared amplitudes

    /// True if amplitudes[u,v] == amplitudes[(W-u)%W,(H-v)%H] exactly.
    bool is_rotation_symmetric() const;
};

struct EnergyReport {
    double diffraction_energy = 0;
    double replay_energy = 0;
    double relative_mismatch = 0;
};

enum class EnergyPolicy {
    UnitMeanSquare, // scale so mean squared amplitude == 1 (default)
    Raw,            // keep the [0,1] mapping from 8-bit values
};

/// Unitary forward DFT, 1/sqrt(Nx*Ny) scaling.
ComplexField dft_forward(const ComplexField& field);

/// Unitary inverse DFT; dft_inverse(dft_forward(f)) == f to rounding.
ComplexField dft_inverse(const ComplexField& field);

/// Energy bookkeeping between a hologram and its replay field.
EnergyReport check_parseval(const ComplexField& a, const ComplexField& b);

/// Load an 8-bit grayscale PGM (P5). Values map to [0,1] amplitudes and are
/// then rescaled per the energy policy. Throws FormatError for other
/// formats and InvalidArgument for an all-zero image.
TargetImage load_target(const std::string& path,
                        EnergyPolicy policy = EnergyPolicy::UnitMeanSquare);

/// Build a target from raw amplitudes (used by builtin targets and tests).
TargetImage make_target(int width, int height, std::vector<double> amplitudes,
                        EnergyPolicy policy = EnergyPolicy::UnitMeanSquare);

/// Average the image with its 180-degree rotation and re-normalize energy.
/// Idempotent; the output passes is_rotation_symmetric() exactly.
TargetImage induce_symmetry(const TargetImage& t);

/// Write an 8-bit PGM (P5).
void write_pgm(const std::string& path, int width, int height,
               const std::vector<unsigned char>& pixels);

/// Read an 8-bit PGM (P5) as raw bytes.
std::vector<unsigned char> read_pgm(const std::string& path, int& width, int& height);

} // namespace ospr
