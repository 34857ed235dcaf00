#include <jrirs/linkrate.hpp>
#include <jrirs/units.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jrirs {

PhaseCodebook::PhaseCodebook(unsigned bits)
    : bits_(bits), step_(kTwoPi / static_cast<double>(std::size_t{1} << bits))
{
    const std::size_t levels = std::size_t{1} << bits;
    angles_.reserve(levels);
    phasors_.reserve(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        const double a = step_ * static_cast<double>(k);
        angles_.push_back(a);
        phasors_.push_back(std::polar(1.0, a));
    }
}

PhaseCodebook PhaseCodebook::from_bits(unsigned bits)
{
    if (bits > 16) throw std::invalid_argument("PhaseCodebook: at most 16 bits supported, got " + std::to_string(bits));
    return PhaseCodebook(bits);
}

PhaseCodebook PhaseCodebook::from_levels(std::size_t levels)
{
    if (levels == 0 || (levels & (levels - 1)) != 0) {
        throw std::invalid_argument("PhaseCodebook: levels must be a power of two, got " + std::to_string(levels));
    }
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < levels) ++bits;
    return from_bits(bits);
}

std::size_t PhaseCodebook::nearest(double radians) const
{
    const std::size_t k = levels();
    double t = std::fmod(radians, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    const double pos = t / step_;
    const double fl = std::floor(pos);
    const double frac = pos - fl;
    const std::size_t lo = static_cast<std::size_t>(fl) % k;
    const std::size_t hi = (lo + 1) % k;
    if (frac < 0.5) return lo;
    if (frac > 0.5) return hi;
    return std::min(lo, hi);
}

Complex cascade_gain(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> phasors,
                     std::span<const Complex> h_tx)
{
    if (h_rx.size() != h_tx.size() || phasors.size() != h_rx.size()) {
        throw std::invalid_argument("cascade_gain: length mismatch (rx " + std::to_string(h_rx.size()) + ", phases " +
                                    std::to_string(phasors.size()) + ", tx " + std::to_string(h_tx.size()) + ")");
    }
    Complex sum = h_direct;
    for (std::size_t n = 0; n < h_rx.size(); ++n) sum += phasors[n] * h_rx[n] * h_tx[n];
    return sum;
}

Complex cascade_gain(Complex h_direct, std::span<const Complex> h_rx, const PhaseConfig& phases,
                     std::span<const Complex> h_tx, const PhaseCodebook& codebook)
{
    std::vector<Complex> phasors;
    phasors.reserve(phases.size());
    for (std::size_t idx : phases.indices) {
        if (idx >= codebook.levels()) {
            throw std::invalid_argument("cascade_gain: phase index " + std::to_string(idx) + " outside codebook of " +
                                        std::to_string(codebook.levels()));
        }
        phasors.push_back(codebook.phasor(idx));
    }
    return cascade_gain(h_direct, h_rx, phasors, h_tx);
}

double snr(Complex gain, double tx_power_w, double noise_w)
{
    if (!(noise_w > 0.0)) throw std::invalid_argument("snr: noise power must be positive");
    if (!(tx_power_w >= 0.0)) throw std::invalid_argument("snr: transmit power must be non-negative");
    return tx_power_w * std::norm(gain) / noise_w;
}

double slot_rate(double snr) { return std::log2(1.0 + snr); }

}  // namespace jrirs
