#pragma once

#include <jrirs/netmodel.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace jrirs {

/// The K = 2^b uniformly spaced phases an IRS element can take:
/// 0, step, ..., step * (K - 1) with step = 2*pi / K.
class PhaseCodebook
{
public:
    /// Throws std::invalid_argument if bits > 16.
    static PhaseCodebook from_bits(unsigned bits);
    /// Throws std::invalid_argument unless levels is a power of two.
    static PhaseCodebook from_levels(std::size_t levels);

    unsigned bits() const noexcept { return bits_; }
    std::size_t levels() const noexcept { return angles_.size(); }
    double step() const noexcept { return step_; }
    double angle(std::size_t index) const { return angles_.at(index); }
    const std::vector<double>& angles() const noexcept { return angles_; }
    /// e^{j * angle(index)}
    Complex phasor(std::size_t index) const { return phasors_[index]; }

    /// Index of the codebook angle closest (circularly) to `radians`.
    /// Exact midpoints go to the lower index.
    std::size_t nearest(double radians) const;

private:
    explicit PhaseCodebook(unsigned bits);

    unsigned bits_;
    double step_;
    std::vector<double> angles_;
    std::vector<Complex> phasors_;
};

/// Per-element codebook indices of one IRS configuration (unit amplitudes).
struct PhaseConfig
{
    std::vector<std::size_t> indices;

    static PhaseConfig zeros(std::size_t n) { return PhaseConfig{std::vector<std::size_t>(n, 0)}; }
    static PhaseConfig uniform(std::size_t n, std::size_t index) { return PhaseConfig{std::vector<std::size_t>(n, index)}; }
    std::size_t size() const noexcept { return indices.size(); }

    friend bool operator==(const PhaseConfig&, const PhaseConfig&) = default;
};

struct SlotSnr
{
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// h_direct + sum_n e^{j phi_n} h_rx[n] h_tx[n].
/// Throws std::invalid_argument on a length mismatch or an index outside the codebook.
Complex cascade_gain(Complex h_direct, std::span<const Complex> h_rx, const PhaseConfig& phases,
                     std::span<const Complex> h_tx, const PhaseCodebook& codebook);

/// Same sum with the element phasors given directly.
Complex cascade_gain(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> phasors,
                     std::span<const Complex> h_tx);

/// P |gain|^2 / noise. Throws std::invalid_argument if noise_w <= 0 or tx_power_w < 0.
double snr(Complex gain, double tx_power_w, double noise_w);

/// log2(1 + snr)
double slot_rate(double snr);

/// Two-slot decode-and-forward rate: half the bottleneck slot.
inline double end_to_end_rate(double rate_slot1, double rate_slot2)
{
    return 0.5 * (rate_slot1 < rate_slot2 ? rate_slot1 : rate_slot2);
}

}  // namespace jrirs
