#include <jrirs/phaseopt.hpp>

#include <stdexcept>
#include <string>

namespace jrirs {

QuadraticForm::QuadraticForm(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx)
    : h_direct_(h_direct)
{
    if (h_rx.size() != h_tx.size()) {
        throw std::invalid_argument("QuadraticForm: length mismatch (rx " + std::to_string(h_rx.size()) + ", tx " +
                                    std::to_string(h_tx.size()) + ")");
    }
    theta_.resize(h_rx.size());
    for (std::size_t n = 0; n < h_rx.size(); ++n) theta_[n] = h_rx[n] * h_tx[n];
}

std::vector<std::vector<Complex>> QuadraticForm::dense_a() const
{
    std::vector<std::vector<Complex>> out(size(), std::vector<Complex>(size()));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out[i][j] = a(i, j);
    return out;
}

std::vector<Complex> QuadraticForm::b_vector() const
{
    std::vector<Complex> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = b(i);
    return out;
}

double QuadraticForm::evaluate_quadratic(std::span<const Complex> v) const
{
    if (v.size() != size()) throw std::invalid_argument("QuadraticForm::evaluate_quadratic: length mismatch");
    Complex quad{};
    Complex lin{};
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) quad += std::conj(v[i]) * a(i, j) * v[j];
        lin += std::conj(v[i]) * b(i);
    }
    return quad.real() + 2.0 * lin.real() + direct_power();
}

double QuadraticForm::evaluate_direct(std::span<const Complex> v) const
{
    if (v.size() != size()) throw std::invalid_argument("QuadraticForm::evaluate_direct: length mismatch");
    Complex sum = h_direct_;
    for (std::size_t i = 0; i < size(); ++i) sum += v[i] * theta_[i];
    return std::norm(sum);
}

Complex compute_w(const QuadraticForm& form, std::span<const Complex> v, std::size_t l)
{
    if (l >= form.size()) throw std::out_of_range("compute_w: element index " + std::to_string(l) + " out of range");
    if (v.size() != form.size()) throw std::invalid_argument("compute_w: length mismatch");
    Complex w = form.b(l);
    for (std::size_t k = 0; k < form.size(); ++k) {
        if (k != l) w += form.a(l, k) * v[k];
    }
    return w;
}

namespace {

// Angle of w mapped onto the codebook. w = 0 means element l cannot change
// the objective; signed zeros would send arg() to -pi, so pin index 0.
std::size_t project(Complex w, const PhaseCodebook& codebook)
{
    if (w.real() == 0.0 && w.imag() == 0.0) return 0;
    return codebook.nearest(std::arg(w));
}

std::vector<Complex> phasors_of(const PhaseConfig& cfg, const PhaseCodebook& codebook)
{
    std::vector<Complex> v;
    v.reserve(cfg.size());
    for (std::size_t idx : cfg.indices) {
        if (idx >= codebook.levels()) {
            throw std::invalid_argument("phase index " + std::to_string(idx) + " outside codebook of " +
                                        std::to_string(codebook.levels()));
        }
        v.push_back(codebook.phasor(idx));
    }
    return v;
}

}  // namespace

std::size_t refine_element(const QuadraticForm& form, const PhaseConfig& current, std::size_t l,
                           const PhaseCodebook& codebook)
{
    if (l >= form.size()) throw std::out_of_range("refine_element: element index " + std::to_string(l) + " out of range");
    if (current.size() != form.size()) throw std::invalid_argument("refine_element: config length mismatch");
    if (codebook.levels() == 0) throw std::invalid_argument("refine_element: empty codebook");

    // w_l = conj(theta_l) * (everything except element l), O(N).
    Complex rest = form.h_direct();
    for (std::size_t k = 0; k < form.size(); ++k) {
        if (k != l) rest += codebook.phasor(current.indices.at(k)) * form.theta()[k];
    }
    return project(std::conj(form.theta()[l]) * rest, codebook);
}

void RefinementConfig::validate() const
{
    if (!(tolerance > 0.0)) throw std::invalid_argument("RefinementConfig: tolerance must be positive");
    if (max_sweeps < 1) throw std::invalid_argument("RefinementConfig: max_sweeps must be at least 1");
}

RefinementResult successive_refinement(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx,
                                       double tx_power_w, double noise_w, const PhaseCodebook& codebook,
                                       const RefinementConfig& config, const PhaseConfig& initial)
{
    config.validate();
    const QuadraticForm form(h_direct, h_rx, h_tx);
    const auto& theta = form.theta();
    const std::size_t n = form.size();
    if (initial.size() != n) {
        throw std::invalid_argument("successive_refinement: initial config has " + std::to_string(initial.size()) +
                                    " elements, channel has " + std::to_string(n));
    }

    RefinementResult res;
    res.phases = initial;
    std::vector<Complex> v = phasors_of(initial, codebook);

    auto exact_total = [&] {
        Complex sum = h_direct;
        for (std::size_t k = 0; k < n; ++k) sum += v[k] * theta[k];
        return sum;
    };
    Complex total = exact_total();

    res.initial_rate = slot_rate(snr(total, tx_power_w, noise_w));
    double previous = res.initial_rate;

    while (res.sweeps < config.max_sweeps) {
        bool moved = false;
        for (std::size_t l = 0; l < n; ++l) {
            const Complex rest = total - v[l] * theta[l];
            const std::size_t idx = project(std::conj(theta[l]) * rest, codebook);
            const Complex candidate = rest + codebook.phasor(idx) * theta[l];
            // Rounding-level gains would let near-ties flip back and forth.
            if (std::norm(candidate) > std::norm(total) * (1.0 + 1e-13)) {
                v[l] = codebook.phasor(idx);
                res.phases.indices[l] = idx;
                total = candidate;
                moved = true;
            }
            if (config.record_trace) res.trace.push_back(std::norm(total));
        }
        ++res.sweeps;
        const double current = slot_rate(snr(total, tx_power_w, noise_w));
        const bool converged = current - previous <= config.tolerance && !(config.require_fixed_point && moved);
        previous = current;
        if (converged) break;
    }

    // Re-sum to shed the incremental rounding.
    const Complex gain = exact_total();
    res.gain_power = std::norm(gain);
    res.rate = slot_rate(snr(gain, tx_power_w, noise_w));
    return res;
}

RefinementResult successive_refinement(Complex h_direct, std::span<const Complex> h_rx, std::span<const Complex> h_tx,
                                       double tx_power_w, double noise_w, const PhaseCodebook& codebook,
                                       const RefinementConfig& config)
{
    return successive_refinement(h_direct, h_rx, h_tx, tx_power_w, noise_w, codebook, config,
                                 PhaseConfig::zeros(h_rx.size()));
}

}  // namespace jrirs
