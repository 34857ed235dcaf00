// Acceptance suite. Prints one PASS/FAIL line per criterion; with
// --criterion <name> runs only that one. Exit status is non-zero if any
// selected criterion fails.

#include "oracles.hpp"

#include <jrirs/cli.hpp>
#include <jrirs/harness.hpp>
#include <jrirs/phaseopt.hpp>
#include <jrirs/qselect.hpp>
#include <jrirs/schemes.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace jrirs;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Instance
{
    Complex direct;
    ComplexVector rx, tx;
    std::vector<Complex> theta;
};

Instance random_instance(Engine& rng, std::size_t n)
{
    Instance in;
    in.direct = complex_normal(rng);
    in.rx.resize(n);
    in.tx.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.rx[i] = complex_normal(rng);
        in.tx[i] = complex_normal(rng);
        in.theta.push_back(in.rx[i] * in.tx[i]);
    }
    return in;
}

Outcome phase_local_optimality()
{
    const auto cb = PhaseCodebook::from_levels(16);
    Engine rng = make_engine(derive_seed(2024, {1}));
    int ok = 0;
    const int instances = 200;
    for (int t = 0; t < instances; ++t) {
        const auto in = random_instance(rng, 16);
        const auto res = successive_refinement(in.direct, in.rx, in.tx, 1.0, 1.0, cb);
        if (oracle::is_locally_optimal(in.direct, in.theta, res.phases.indices, 16, 1e-12)) ++ok;
    }
    return {ok == instances, std::to_string(ok) + "/" + std::to_string(instances) + " locally optimal"};
}

Outcome exhaustive_oracle()
{
    const auto cb = PhaseCodebook::from_levels(4);
    Engine rng = make_engine(derive_seed(2024, {2}));
    RefinementConfig cfg;
    cfg.record_trace = true;
    int optimal = 0, monotone = 0, local = 0;
    const int instances = 100;
    for (int t = 0; t < instances; ++t) {
        const auto in = random_instance(rng, 4);
        const auto res = successive_refinement(in.direct, in.rx, in.tx, 1.0, 1.0, cb, cfg);
        const double best = oracle::exhaustive_max(in.direct, in.theta, 4);
        const double start = oracle::objective(in.direct, in.theta, std::vector<std::size_t>(4, 0), 4);
        bool mono = res.rate >= res.initial_rate && res.gain_power >= start * (1.0 - 1e-12);
        double prev = start;
        for (double v : res.trace) {
            mono = mono && v >= prev * (1.0 - 1e-12);
            prev = v;
        }
        if (mono) ++monotone;
        if (oracle::is_locally_optimal(in.direct, in.theta, res.phases.indices, 4, 1e-12)) ++local;
        if (res.gain_power >= best * (1.0 - 1e-9)) ++optimal;
    }
    std::ostringstream d;
    d << "global optimum " << optimal << "/" << instances << ", monotone " << monotone << "/" << instances
      << ", locally optimal " << local << "/" << instances;
    return {monotone == instances && local == instances, d.str()};
}

Outcome qlearning_selection()
{
    // Gains of ten relays drawn from the default geometry and fading model.
    int hits = 0;
    const int runs = 100;
    LinkBudgetParams params;
    for (int s = 0; s < runs; ++s) {
        const auto seed = derive_seed(2024, {3, static_cast<std::uint64_t>(s)});
        Engine pos = make_engine(derive_seed(seed, {1}));
        const auto topo = make_topology(NetworkLayout{}, 10, pos);
        const auto gains = relay_gains(realize_channels(topo, params, derive_seed(seed, {2})));
        QLearnConfig cfg;
        cfg.seed = derive_seed(seed, {3});
        if (select_relay(train(build_reward_matrix(gains), cfg)) == greedy_max_gain_relay(gains)) ++hits;
    }
    return {hits >= 95, std::to_string(hits) + "/" + std::to_string(runs) + " runs select the max-gain relay"};
}

ExperimentSpec table_spec(ExperimentKind kind)
{
    ExperimentSpec spec;
    spec.kind = kind;
    spec.sweep_values = default_sweep(kind);
    spec.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    spec.trials = 500;
    spec.master_seed = 1;
    return spec;
}

double mean_of(const AggregateResult& r, SchemeId id, double v) { return r.find(id, v)->mean_rate; }

Outcome power_anchor()
{
    auto spec = table_spec(ExperimentKind::PowerSweep);
    spec.sweep_values = {40.0};
    const auto res = run_experiment(spec);
    auto m = [&](SchemeId id) { return mean_of(res, id, 40.0); };
    const double ql = m(SchemeId::QlJira), opt = m(SchemeId::RIrsOptimal), rs = m(SchemeId::RandomSelection);
    const double fpa = m(SchemeId::FixedPhase), rpa = m(SchemeId::RandomPhase), none = m(SchemeId::NoRelay);
    const bool close = std::abs(ql - opt) <= 0.2;
    const bool order = ql > rs && rs > std::max(fpa, rpa) && std::max(fpa, rpa) > none;
    const bool band = ql >= 2.5 && ql <= 5.5;
    std::ostringstream d;
    d << "means at 40 dBm: ql-jira " << fmt("%.4f", ql) << ", r-irs-optimal " << fmt("%.4f", opt) << ", rs "
      << fmt("%.4f", rs) << ", fpa " << fmt("%.4f", fpa) << ", rpa " << fmt("%.4f", rpa) << ", no-relay "
      << fmt("%.4f", none) << " | gap<=0.2 " << (close ? "yes" : "no") << ", ordering " << (order ? "yes" : "no")
      << ", band [2.5,5.5] " << (band ? "yes" : "no");
    return {close && order && band, d.str()};
}

Outcome power_trend()
{
    const auto spec = table_spec(ExperimentKind::PowerSweep);
    const auto res = run_experiment(spec);
    bool ok = true;
    std::ostringstream d;
    for (SchemeId id : spec.schemes) {
        for (std::size_t p = 1; p < spec.sweep_values.size(); ++p) {
            const double lo = mean_of(res, id, spec.sweep_values[p - 1]);
            const double hi = mean_of(res, id, spec.sweep_values[p]);
            if (hi < lo) {
                ok = false;
                d << scheme_name(id) << " drops at " << spec.sweep_values[p] << " dBm; ";
            }
        }
    }
    d << "ql-jira 0 dBm " << fmt("%.6f", mean_of(res, SchemeId::QlJira, 0.0)) << " -> 70 dBm "
      << fmt("%.4f", mean_of(res, SchemeId::QlJira, 70.0));
    return {ok, d.str()};
}

Outcome relay_count_trend()
{
    auto spec = table_spec(ExperimentKind::RelayCountSweep);
    spec.schemes = {SchemeId::QlJira, SchemeId::NoRelay};
    const auto res = run_experiment(spec);
    const auto* r5 = res.find(SchemeId::QlJira, 5.0);
    const auto* r30 = res.find(SchemeId::QlJira, 30.0);
    const double se5 = r5->std_rate / std::sqrt(static_cast<double>(r5->trials));
    const bool grows = r30->mean_rate >= r5->mean_rate - se5;
    bool flat = true;
    const auto& base = res.find(SchemeId::NoRelay, 5.0)->samples;
    for (double v : spec.sweep_values) flat = flat && res.find(SchemeId::NoRelay, v)->samples == base;
    std::ostringstream d;
    d << "ql-jira mean 5 relays " << fmt("%.4f", r5->mean_rate) << " (se " << fmt("%.4f", se5) << "), 30 relays "
      << fmt("%.4f", r30->mean_rate) << "; no-relay bit-identical " << (flat ? "yes" : "no");
    return {grows && flat, d.str()};
}

Outcome cell_center_trend()
{
    const auto spec = table_spec(ExperimentKind::CellCenterSweep);
    const auto res = run_experiment(spec);
    bool ok = true;
    std::ostringstream d;
    for (SchemeId id : spec.schemes) {
        const double near = mean_of(res, id, 0.0), far = mean_of(res, id, 20.0);
        if (uses_relay(id)) {
            ok = ok && near >= far;
            d << scheme_name(id) << " " << fmt("%.4f", near) << "->" << fmt("%.4f", far) << "; ";
        } else {
            bool flat = true;
            for (double v : spec.sweep_values) {
                flat = flat && res.find(id, v)->samples == res.find(id, 0.0)->samples;
            }
            ok = ok && flat;
            d << "no-relay flat " << (flat ? "yes" : "no");
        }
    }
    return {ok, d.str()};
}

Outcome convergence_plateau()
{
    auto spec = table_spec(ExperimentKind::ConvergenceTrace);
    spec.schemes = {SchemeId::QlJira};
    spec.system.scheme.params.source_power_dbm = 30.0;
    spec.system.scheme.params.relay_power_dbm = 30.0;
    const auto res = run_experiment(spec);

    // 500-episode moving average over the 100-episode checkpoints.
    const std::size_t window = 5;
    std::vector<double> means;
    for (double v : spec.sweep_values) means.push_back(mean_of(res, SchemeId::QlJira, v));
    double worst = 0.0;
    for (std::size_t i = window; i < means.size(); ++i) {
        if (spec.sweep_values[i] <= 4000.0) continue;
        double prev = 0.0, cur = 0.0;
        for (std::size_t k = 0; k < window; ++k) {
            prev += means[i - 1 - k];
            cur += means[i - k];
        }
        worst = std::max(worst, std::abs(cur - prev) / prev);
    }
    std::ostringstream d;
    d << "max relative change of moving average beyond 4000 episodes " << fmt("%.5f", worst) << ", mean at 100 "
      << fmt("%.4f", means.front()) << ", at 10000 " << fmt("%.4f", means.back());
    return {worst < 0.01, d.str()};
}

Outcome determinism()
{
    namespace fs = std::filesystem;
    const fs::path a = fs::temp_directory_path() / "jrirs_acceptance_det_a.csv";
    const fs::path b = fs::temp_directory_path() / "jrirs_acceptance_det_b.csv";
    auto args = [](const fs::path& out) {
        return std::vector<std::string>{"jrirs_sim", "--experiment", "power", "--trials", "100", "--seed", "7",
                                        "--out", out.string()};
    };
    const int ca = cli::run(args(a));
    const int cb = cli::run(args(b));
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string sa = slurp(a), sb = slurp(b);
    fs::remove(a);
    fs::remove(b);
    const bool same = ca == 0 && cb == 0 && !sa.empty() && sa == sb;
    return {same, std::to_string(sa.size()) + " bytes, " + (same ? "identical" : "different")};
}

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {"phase_local_optimality", 60.0, phase_local_optimality},
        {"exhaustive_oracle", 10.0, exhaustive_oracle},
        {"qlearning_selection", 30.0, qlearning_selection},
        {"power_anchor", 300.0, power_anchor},
        {"power_trend", 600.0, power_trend},
        {"relay_count_trend", 600.0, relay_count_trend},
        {"cell_center_trend", 600.0, cell_center_trend},
        {"convergence_plateau", 600.0, convergence_plateau},
        {"determinism", 600.0, determinism},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only.push_back(argv[++i]);
        } else if (a == "--list") {
            for (const auto& c : criteria()) std::cout << c.name << "\n";
            return 0;
        } else {
            std::cerr << "usage: acceptance [--list] [--criterion <name>]...\n";
            return 2;
        }
    }
    for (const auto& name : only) {
        const auto& all = criteria();
        if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return name == c.name; })) {
            std::cerr << "unknown criterion '" << name << "'\n";
            return 2;
        }
    }

    int failed = 0;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << fmt("%.1f", secs) << " s"
                  << (in_time ? "" : ", over budget of " + fmt("%.0f", c.budget_s) + " s") << "]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
