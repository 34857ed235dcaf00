#pragma once

#include <jrirs/netmodel.hpp>
#include <jrirs/rng.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jrirs {

/// Row-major square matrix of doubles.
class SquareMatrix
{
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
    std::span<const double> values() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Relay-to-relay gain ratios. entries(i, j) = gains[j] / gains[i] when that
/// ratio is at least 1, otherwise 0.
struct RewardMatrix
{
    SquareMatrix entries;
    std::vector<double> gains;

    std::size_t size() const noexcept { return gains.size(); }
};

struct QLearnConfig
{
    double learning_rate = 0.5;  // delta
    double discount = 0.8;       // eta
    double explore_prob = 0.7;   // e
    std::size_t episodes = 10000;
    std::uint64_t seed = 0;

    void validate() const;
};

/// State (current relay) x action (relay to move to).
using QTable = SquareMatrix;

/// Power gain of a relay's IRS link: sum_n |h[n]|^2.
double relay_gain(std::span<const Complex> h_relay_irs);

/// Throws std::invalid_argument on an empty list or a gain that is not > 0.
RewardMatrix build_reward_matrix(std::span<const double> gains);

/// One temporal-difference step:
/// Q(s,a) += lr * (reward + discount * max_a' Q(s_next, a') - Q(s,a)).
void q_update(QTable& q, std::size_t state, std::size_t action, double reward, std::size_t next_state,
              double learning_rate, double discount);

/// Index of the largest value; ties go to the lowest index. Throws on empty input.
std::size_t argmax(std::span<const double> values);

/// Tabular epsilon-greedy learner over the relay set. Each episode starts from
/// a uniformly drawn relay, takes one action (the next relay) and learns from
/// the reward-matrix entry of that transition. Episodes can be run in chunks;
/// the result only depends on the total count.
class QLearner
{
public:
    QLearner(RewardMatrix rewards, const QLearnConfig& config);

    void run(std::size_t episodes);
    const QTable& table() const noexcept { return q_; }
    std::size_t episodes_done() const noexcept { return done_; }

private:
    RewardMatrix rewards_;
    QLearnConfig config_;
    QTable q_;
    Engine rng_;
    std::size_t done_ = 0;
};

/// Runs config.episodes episodes from an all-zero table.
QTable train(const RewardMatrix& rewards, const QLearnConfig& config);

/// Action with the highest value from any state: argmax_j max_i Q(i, j),
/// lowest index on ties.
std::size_t select_relay(const QTable& q);

/// Relay with the largest gain, lowest index on ties. Throws on an empty list.
std::size_t greedy_max_gain_relay(std::span<const double> gains);

}  // namespace jrirs
