#pragma once

#include <jrirs/netmodel.hpp>
#include <jrirs/schemes.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jrirs {

enum class ExperimentKind { PowerSweep, RelayCountSweep, CellCenterSweep, ConvergenceTrace };

/// power | relays | center | convergence
std::string_view experiment_name(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept;
/// tx_power_dbm | num_relays | cell_center_y_m | episode
std::string_view sweep_param_name(ExperimentKind kind) noexcept;

/// Default grid per experiment: 0..70 dBm in 10 dB steps; 5..30 relays in
/// steps of 5; disk center y = 0..20 m in 5 m steps; a Q-table snapshot every
/// 100 episodes up to `episodes`.
std::vector<double> default_sweep(ExperimentKind kind, std::size_t episodes = 10000);

/// Everything held fixed while one quantity is swept.
struct SystemConfig
{
    NetworkLayout layout;
    SchemeSettings scheme;  // scheme.qlearn.seed is replaced per trial
    std::size_t relay_count = 10;
    /// Draw relay positions once per experiment instead of once per trial.
    bool freeze_relays = false;
    /// Reuse each trial's draws at every sweep point. When false, the sweep
    /// index is folded into every trial seed.
    bool common_random_numbers = true;
};

struct ExperimentSpec
{
    ExperimentKind kind = ExperimentKind::PowerSweep;
    std::vector<double> sweep_values;
    std::vector<SchemeId> schemes;
    std::size_t trials = 500;
    std::uint64_t master_seed = 1;
    SystemConfig system;

    /// Throws std::invalid_argument when the spec cannot be run.
    void validate() const;
};

struct ExecutionOptions
{
    std::size_t threads = 0;     // 0: hardware concurrency
    bool reverse_order = false;  // schedule trials last-to-first
};

struct AggregateRow
{
    SchemeId scheme = SchemeId::QlJira;
    double sweep_value = 0.0;
    std::size_t trials = 0;
    double mean_rate = 0.0;
    double std_rate = 0.0;        // sample standard deviation across trials
    std::vector<double> samples;  // per-trial rates, indexed by trial
};

struct AggregateResult
{
    ExperimentKind kind = ExperimentKind::PowerSweep;
    std::uint64_t master_seed = 0;
    std::vector<AggregateRow> rows;  // scheme-major, in spec order

    const AggregateRow* find(SchemeId scheme, double sweep_value) const;
};

/// Mean and sample standard deviation of `samples`, summed in index order.
struct SampleStats
{
    double mean = 0.0;
    double stddev = 0.0;
};
SampleStats sample_stats(std::span<const double> samples);

/// Rates of every scheme at every sweep point for one trial,
/// indexed [sweep][scheme position in spec.schemes].
std::vector<std::vector<double>> run_trial(const ExperimentSpec& spec, std::size_t trial);

/// Averages every scheme's end-to-end rate over spec.trials independent
/// topology and channel draws at each sweep point. Trials are seeded from
/// (master seed, trial index), so the result does not depend on thread count
/// or scheduling order.
AggregateResult run_experiment(const ExperimentSpec& spec, const ExecutionOptions& options = {});

}  // namespace jrirs
