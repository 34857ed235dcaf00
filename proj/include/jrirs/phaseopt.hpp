#pragma once

#include <jrirs/linkrate.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace jrirs {

/// |h_direct + sum_n v_n theta_n|^2 written as v^H A v + 2 Re{v^H b} + |h_direct|^2
/// with theta_n = h_rx[n] h_tx[n], A = theta^H theta and b = theta^H h_direct.
///
/// A has rank one, so it is never materialized on the hot path: entries are
/// produced on demand from theta. dense_a() builds the full N x N matrix.
class QuadraticForm
{
public:
    /// Throws std::invalid_argument if the vectors differ in length.
    QuadraticForm(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx);

    std::size_t size() const noexcept { return theta_.size(); }
    Complex h_direct() const noexcept { return h_direct_; }
    const std::vector<Complex>& theta() const noexcept { return theta_; }
    double direct_power() const noexcept { return std::norm(h_direct_); }

    Complex a(std::size_t row, std::size_t col) const { return std::conj(theta_[row]) * theta_[col]; }
    Complex b(std::size_t row) const { return std::conj(theta_[row]) * h_direct_; }
    std::vector<std::vector<Complex>> dense_a() const;
    std::vector<Complex> b_vector() const;

    /// v^H A v + 2 Re{v^H b} + |h_direct|^2 evaluated term by term.
    double evaluate_quadratic(std::span<const Complex> v) const;
    /// |h_direct + sum_n v_n theta_n|^2
    double evaluate_direct(std::span<const Complex> v) const;

private:
    Complex h_direct_;
    std::vector<Complex> theta_;
};

/// w_l = sum_{k != l} A[l][k] v_k + b[l]. The objective restricted to element l
/// is const + 2 Re{v_l conj(w_l)}, maximized by aligning v_l with w_l.
/// Throws std::out_of_range for l >= N.
Complex compute_w(const QuadraticForm& form, std::span<const Complex> v, std::size_t l);

/// Codebook index for element l with all other phases held at `current`.
/// The pick maximizes |h_direct + sum_k v_k theta_k|; equal objectives resolve
/// to the lowest index. Throws std::out_of_range for l >= N.
std::size_t refine_element(const QuadraticForm& form, const PhaseConfig& current, std::size_t l,
                           const PhaseCodebook& codebook);

struct RefinementConfig
{
    double tolerance = 1e-4;  // bps/Hz
    std::size_t max_sweeps = 100;
    /// A sweep below `tolerance` only ends the search if it moved no element,
    /// so the result is element-wise optimal. Off: stop on tolerance alone.
    bool require_fixed_point = true;
    bool record_trace = false;

    void validate() const;
};

struct RefinementResult
{
    PhaseConfig phases;
    double rate = 0.0;          // log2(1 + snr) of the final configuration
    double gain_power = 0.0;    // |cascade gain|^2
    double initial_rate = 0.0;
    std::size_t sweeps = 0;
    /// |gain|^2 after each element update, in order; filled when record_trace is set.
    std::vector<double> trace;
};

/// Coordinate ascent over the IRS elements, one element at a time, until a full
/// sweep improves the slot rate by no more than the tolerance or max_sweeps is
/// hit. An element only moves when that strictly increases |gain|, so the
/// objective is non-decreasing across every update.
RefinementResult successive_refinement(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx,
                                       double tx_power_w, double noise_w, const PhaseCodebook& codebook,
                                       const RefinementConfig& config, const PhaseConfig& initial);

/// Same, starting from all-zero indices.
RefinementResult successive_refinement(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx,
                                       double tx_power_w, double noise_w, const PhaseCodebook& codebook,
                                       const RefinementConfig& config = {});

}  // namespace jrirs
