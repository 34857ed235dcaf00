#include <jrirs/qselect.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace jrirs {

void QLearnConfig::validate() const
{
    auto unit = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("QLearnConfig: ") + name + " must lie in [0, 1]");
    };
    unit(learning_rate, "learning_rate");
    unit(discount, "discount");
    unit(explore_prob, "explore_prob");
    if (episodes < 1) throw std::invalid_argument("QLearnConfig: episodes must be at least 1");
}

double relay_gain(std::span<const Complex> h_relay_irs)
{
    double g = 0.0;
    for (const Complex& h : h_relay_irs) g += std::norm(h);
    return g;
}

RewardMatrix build_reward_matrix(std::span<const double> gains)
{
    if (gains.empty()) throw std::invalid_argument("build_reward_matrix: no relays");
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (!(gains[i] > 0.0) || !std::isfinite(gains[i])) {
            throw std::invalid_argument("build_reward_matrix: gain " + std::to_string(i) + " must be positive and finite");
        }
    }
    RewardMatrix rw{SquareMatrix(gains.size()), std::vector<double>(gains.begin(), gains.end())};
    for (std::size_t i = 0; i < gains.size(); ++i) {
        for (std::size_t j = 0; j < gains.size(); ++j) {
            // Comparing gains rather than the rounded ratio keeps ratio >= 1
            // equivalent to gains[j] >= gains[i].
            rw.entries(i, j) = gains[j] < gains[i] ? 0.0 : gains[j] / gains[i];
        }
    }
    return rw;
}

std::size_t argmax(std::span<const double> values)
{
    if (values.empty()) throw std::invalid_argument("argmax: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

void q_update(QTable& q, std::size_t state, std::size_t action, double reward, std::size_t next_state,
              double learning_rate, double discount)
{
    const std::size_t n = q.size();
    if (state >= n || action >= n || next_state >= n) throw std::out_of_range("q_update: index out of range");
    double future = q(next_state, 0);
    for (std::size_t a = 1; a < n; ++a) future = std::max(future, q(next_state, a));
    q(state, action) += learning_rate * (reward + discount * future - q(state, action));
}

QLearner::QLearner(RewardMatrix rewards, const QLearnConfig& config)
    : rewards_(std::move(rewards)), config_(config), q_(rewards_.size()), rng_(make_engine(config.seed))
{
    config_.validate();
    if (rewards_.size() == 0 || rewards_.entries.size() != rewards_.size()) {
        throw std::invalid_argument("QLearner: reward matrix is empty or inconsistent");
    }
}

void QLearner::run(std::size_t episodes)
{
    const std::size_t n = rewards_.size();
    for (std::size_t e = 0; e < episodes; ++e) {
        const std::size_t state = uniform_index(rng_, n);
        std::size_t action;
        if (uniform01(rng_) < config_.explore_prob) {
            action = uniform_index(rng_, n);
        } else {
            action = argmax(q_.row(state));
        }
        // Moving to relay `action` makes it the next state.
        q_update(q_, state, action, rewards_.entries(state, action), action, config_.learning_rate, config_.discount);
    }
    done_ += episodes;
}

QTable train(const RewardMatrix& rewards, const QLearnConfig& config)
{
    QLearner learner(rewards, config);
    learner.run(config.episodes);
    return learner.table();
}

std::size_t select_relay(const QTable& q)
{
    const std::size_t n = q.size();
    if (n == 0) throw std::invalid_argument("select_relay: empty table");
    std::vector<double> column_max(n);
    for (std::size_t j = 0; j < n; ++j) {
        double m = q(0, j);
        for (std::size_t i = 1; i < n; ++i) m = std::max(m, q(i, j));
        column_max[j] = m;
    }
    return argmax(column_max);
}

std::size_t greedy_max_gain_relay(std::span<const double> gains)
{
    if (gains.empty()) throw std::invalid_argument("greedy_max_gain_relay: no relays");
    return argmax(gains);
}

}  // namespace jrirs
