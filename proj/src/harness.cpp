#include <jrirs/harness.hpp>
#include <jrirs/rng.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace jrirs {

namespace {

// Substream tags. Changing any of these changes every published number.
enum StreamTag : std::uint64_t {
    kTrialTag = 1,
    kSweepTag = 2,
    kRelayPositionsTag = 3,
    kChannelsTag = 4,
    kSchemeRngTag = 5,
    kQLearnTag = 6,
};

bool is_whole(double v) { return std::isfinite(v) && v >= 0.0 && std::floor(v) == v; }

struct TrialSeeds
{
    std::uint64_t relay_positions;
    std::uint64_t channels;
    std::uint64_t qlearn;
    std::uint64_t scheme_base;
};

TrialSeeds trial_seeds(const ExperimentSpec& spec, std::size_t trial, std::size_t sweep_index)
{
    const std::uint64_t master = spec.master_seed;
    const std::uint64_t base = spec.system.common_random_numbers
                                   ? derive_seed(master, {kTrialTag, trial})
                                   : derive_seed(master, {kTrialTag, trial, kSweepTag, sweep_index});
    return TrialSeeds{
        spec.system.freeze_relays ? derive_seed(master, {kRelayPositionsTag}) : derive_seed(base, {kRelayPositionsTag}),
        derive_seed(base, {kChannelsTag}),
        derive_seed(base, {kQLearnTag}),
        derive_seed(base, {kSchemeRngTag}),
    };
}

// System configuration at one sweep point.
SystemConfig configure(const ExperimentSpec& spec, double value)
{
    SystemConfig sys = spec.system;
    switch (spec.kind) {
    case ExperimentKind::PowerSweep:
        sys.scheme.params.source_power_dbm = value;
        sys.scheme.params.relay_power_dbm = value;
        break;
    case ExperimentKind::RelayCountSweep:
        sys.relay_count = static_cast<std::size_t>(value);
        break;
    case ExperimentKind::CellCenterSweep:
        sys.layout.relay_disk_center.y = value;
        break;
    case ExperimentKind::ConvergenceTrace:
        break;
    }
    return sys;
}

ChannelRealization draw_realization(const SystemConfig& sys, const TrialSeeds& seeds)
{
    Engine pos_rng = make_engine(seeds.relay_positions);
    const NetworkTopology topo = make_topology(sys.layout, sys.relay_count, pos_rng);
    return realize_channels(topo, sys.scheme.params, seeds.channels);
}

Engine scheme_engine(const TrialSeeds& seeds, SchemeId id)
{
    return make_engine(derive_seed(seeds.scheme_base, {static_cast<std::uint64_t>(id)}));
}

std::vector<double> sweep_point(const ExperimentSpec& spec, std::size_t trial, std::size_t sweep_index)
{
    const TrialSeeds seeds = trial_seeds(spec, trial, sweep_index);
    SystemConfig sys = configure(spec, spec.sweep_values[sweep_index]);
    sys.scheme.qlearn.seed = seeds.qlearn;
    const ChannelRealization ch = draw_realization(sys, seeds);

    std::vector<double> rates;
    rates.reserve(spec.schemes.size());
    for (SchemeId id : spec.schemes) {
        Engine rng = scheme_engine(seeds, id);
        rates.push_back(run_scheme(id, ch, sys.scheme, rng).rate);
    }
    return rates;
}

// Rate of each scheme at every Q-table checkpoint. Only QL-JIRA depends on
// training progress; its rate at a checkpoint is the fully refined two-slot
// rate of the relay the current table selects.
std::vector<std::vector<double>> convergence_trial(const ExperimentSpec& spec, std::size_t trial)
{
    const TrialSeeds seeds = trial_seeds(spec, trial, 0);
    SystemConfig sys = configure(spec, 0.0);
    sys.scheme.qlearn.seed = seeds.qlearn;
    const ChannelRealization ch = draw_realization(sys, seeds);

    const std::size_t points = spec.sweep_values.size();
    std::vector<std::vector<double>> out(points, std::vector<double>(spec.schemes.size()));

    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        const SchemeId id = spec.schemes[s];
        if (id != SchemeId::QlJira) {
            Engine rng = scheme_engine(seeds, id);
            const double rate = run_scheme(id, ch, sys.scheme, rng).rate;
            for (auto& row : out) row[s] = rate;
            continue;
        }
        if (ch.relay_count() == 0) throw std::invalid_argument("convergence trace needs at least one relay");
        QLearner learner(build_reward_matrix(relay_gains(ch)), sys.scheme.qlearn);
        std::map<std::size_t, double> rate_of_relay;
        for (std::size_t p = 0; p < points; ++p) {
            const auto target = static_cast<std::size_t>(spec.sweep_values[p]);
            learner.run(target - learner.episodes_done());
            const std::size_t relay = select_relay(learner.table());
            auto it = rate_of_relay.find(relay);
            if (it == rate_of_relay.end()) {
                Engine rng = scheme_engine(seeds, id);
                it = rate_of_relay.emplace(relay, evaluate_with_relay(id, ch, sys.scheme, relay, rng).rate).first;
            }
            out[p][s] = it->second;
        }
    }
    return out;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) noexcept
{
    switch (kind) {
    case ExperimentKind::PowerSweep: return "power";
    case ExperimentKind::RelayCountSweep: return "relays";
    case ExperimentKind::CellCenterSweep: return "center";
    case ExperimentKind::ConvergenceTrace: return "convergence";
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept
{
    for (auto k : {ExperimentKind::PowerSweep, ExperimentKind::RelayCountSweep, ExperimentKind::CellCenterSweep,
                   ExperimentKind::ConvergenceTrace}) {
        if (experiment_name(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view sweep_param_name(ExperimentKind kind) noexcept
{
    switch (kind) {
    case ExperimentKind::PowerSweep: return "tx_power_dbm";
    case ExperimentKind::RelayCountSweep: return "num_relays";
    case ExperimentKind::CellCenterSweep: return "cell_center_y_m";
    case ExperimentKind::ConvergenceTrace: return "episode";
    }
    return "unknown";
}

std::vector<double> default_sweep(ExperimentKind kind, std::size_t episodes)
{
    std::vector<double> v;
    switch (kind) {
    case ExperimentKind::PowerSweep:
        for (int p = 0; p <= 70; p += 10) v.push_back(p);
        break;
    case ExperimentKind::RelayCountSweep:
        for (int r = 5; r <= 30; r += 5) v.push_back(r);
        break;
    case ExperimentKind::CellCenterSweep:
        for (int y = 0; y <= 20; y += 5) v.push_back(y);
        break;
    case ExperimentKind::ConvergenceTrace:
        for (std::size_t e = 100; e <= episodes; e += 100) v.push_back(static_cast<double>(e));
        if (v.empty() || v.back() != static_cast<double>(episodes)) v.push_back(static_cast<double>(episodes));
        break;
    }
    return v;
}

void ExperimentSpec::validate() const
{
    if (trials < 1) throw std::invalid_argument("experiment: trials must be at least 1");
    if (schemes.empty()) throw std::invalid_argument("experiment: no schemes selected");
    if (sweep_values.empty()) throw std::invalid_argument("experiment: empty sweep");
    for (std::size_t i = 1; i < sweep_values.size(); ++i) {
        if (!(sweep_values[i] > sweep_values[i - 1])) {
            throw std::invalid_argument("experiment: sweep values must be strictly increasing");
        }
    }
    for (double v : sweep_values) {
        if (!std::isfinite(v)) throw std::invalid_argument("experiment: non-finite sweep value");
    }
    const bool needs_relay =
        std::any_of(schemes.begin(), schemes.end(), [](SchemeId id) { return uses_relay(id); });
    switch (kind) {
    case ExperimentKind::RelayCountSweep:
        for (double v : sweep_values) {
            if (!is_whole(v)) throw std::invalid_argument("experiment: relay counts must be whole numbers");
            if (needs_relay && v < 1) throw std::invalid_argument("experiment: relay-using schemes need at least one relay");
        }
        break;
    case ExperimentKind::ConvergenceTrace:
        for (double v : sweep_values) {
            if (!is_whole(v) || v < 1) throw std::invalid_argument("experiment: checkpoints must be positive episode counts");
        }
        [[fallthrough]];
    default:
        if (needs_relay && system.relay_count < 1) {
            throw std::invalid_argument("experiment: relay-using schemes need at least one relay");
        }
        break;
    }
    system.scheme.params.validate();
    system.scheme.refine.validate();
    system.scheme.qlearn.validate();
    if (!(system.layout.relay_disk_radius >= 0.0)) throw std::invalid_argument("experiment: negative relay disk radius");
}

const AggregateRow* AggregateResult::find(SchemeId scheme, double sweep_value) const
{
    for (const auto& r : rows) {
        if (r.scheme == scheme && r.sweep_value == sweep_value) return &r;
    }
    return nullptr;
}

SampleStats sample_stats(std::span<const double> samples)
{
    SampleStats st;
    if (samples.empty()) return st;
    double sum = 0.0;
    for (double x : samples) sum += x;
    st.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples) ss += (x - st.mean) * (x - st.mean);
        st.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    }
    return st;
}

std::vector<std::vector<double>> run_trial(const ExperimentSpec& spec, std::size_t trial)
{
    if (spec.kind == ExperimentKind::ConvergenceTrace) return convergence_trial(spec, trial);
    std::vector<std::vector<double>> out;
    out.reserve(spec.sweep_values.size());
    for (std::size_t s = 0; s < spec.sweep_values.size(); ++s) out.push_back(sweep_point(spec, trial, s));
    return out;
}

AggregateResult run_experiment(const ExperimentSpec& spec, const ExecutionOptions& options)
{
    spec.validate();
    ExperimentSpec effective = spec;
    if (spec.kind == ExperimentKind::ConvergenceTrace) {
        effective.system.scheme.qlearn.episodes = static_cast<std::size_t>(spec.sweep_values.back());
    }

    const std::size_t trials = spec.trials;
    std::vector<std::vector<std::vector<double>>> per_trial(trials);

    std::size_t threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= trials) return;
            const std::size_t trial = options.reverse_order ? trials - 1 - k : k;
            try {
                per_trial[trial] = run_trial(effective, trial);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    AggregateResult result;
    result.kind = spec.kind;
    result.master_seed = spec.master_seed;
    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        for (std::size_t p = 0; p < spec.sweep_values.size(); ++p) {
            AggregateRow row;
            row.scheme = spec.schemes[s];
            row.sweep_value = spec.sweep_values[p];
            row.trials = trials;
            row.samples.resize(trials);
            for (std::size_t t = 0; t < trials; ++t) row.samples[t] = per_trial[t][p][s];
            const SampleStats st = sample_stats(row.samples);
            row.mean_rate = st.mean;
            row.std_rate = st.stddev;
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

}  // namespace jrirs
