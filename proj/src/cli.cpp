#include <jrirs/cli.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <tuple>

namespace jrirs::cli {

namespace {

struct Options
{
    std::string experiment = "power";
    std::string schemes;
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    std::string out;
    std::string config;
    std::string sweep;
    std::size_t threads = 0;

    double tx_power_dbm = 40.0;
    double noise_dbm = -60.0;
    double carrier_ghz = 24.2;
    double terminal_height_m = 1.0;
    std::size_t irs_elements = 256;
    std::size_t phase_levels = 16;
    std::size_t relays = 10;
    double disk_radius_m = 10.0;
    double disk_center_x_m = 10.0;
    double disk_center_y_m = 10.0;
    std::string k_los_db = "10";
    std::string k_nlos_db = "-inf";
    double discount = 0.8;
    double explore = 0.7;
    double learning_rate = 0.5;
    std::size_t episodes = 10000;
    double fixed_phase_rad = 2.1;
    double tolerance = 1e-4;
    std::size_t max_sweeps = 100;
    bool freeze_relays = false;
    bool independent_sweeps = false;
    bool no_relay_half_rate = false;
    bool stop_at_tolerance = false;
};

void build_app(CLI::App& app, Options& o)
{
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    app.add_option("--experiment", o.experiment, "power | relays | center | convergence")
        ->capture_default_str()
        ->check(CLI::IsMember({"power", "relays", "center", "convergence"}));
    app.add_option("--schemes", o.schemes,
                   "Comma list of ql-jira, r-irs-optimal, rs, fpa, rpa, no-relay (default: all)");
    app.add_option("--trials", o.trials, "Monte Carlo trials per sweep point")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
    app.add_option("--out", o.out, "Output CSV path")->required();
    app.add_option("--config", o.config, "key=value file; command-line flags take precedence");
    app.add_option("--sweep", o.sweep, "Comma list overriding the experiment's default sweep grid");
    app.add_option("--threads", o.threads, "Worker threads (0: all cores)")->capture_default_str();

    app.add_option("--tx-power-dbm", o.tx_power_dbm, "Source and relay transmit power, dBm (default 40; 30 for convergence)");
    app.add_option("--noise-dbm", o.noise_dbm, "Noise power, dBm")->capture_default_str();
    app.add_option("--carrier-ghz", o.carrier_ghz, "Carrier frequency, GHz")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--terminal-height-m", o.terminal_height_m, "User terminal height in the NLoS path loss, m")->capture_default_str();
    app.add_option("--irs-elements", o.irs_elements, "Number of IRS elements")->capture_default_str();
    app.add_option("--phase-levels", o.phase_levels, "Discrete phase levels per element (power of two)")->capture_default_str();
    app.add_option("--relays", o.relays, "Number of relays (all experiments except relays)")->capture_default_str();
    app.add_option("--disk-radius-m", o.disk_radius_m, "Relay disk radius, m")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--disk-center-x-m", o.disk_center_x_m, "Relay disk center x, m")->capture_default_str();
    app.add_option("--disk-center-y-m", o.disk_center_y_m, "Relay disk center y, m (swept by center)")->capture_default_str();
    app.add_option("--k-los-db", o.k_los_db, "Rician K-factor of LoS links, dB (inf: pure LoS)")->capture_default_str();
    app.add_option("--k-nlos-db", o.k_nlos_db, "Rician K-factor of NLoS links, dB (-inf: Rayleigh)")->capture_default_str();
    app.add_option("--discount", o.discount, "Q-learning discount factor")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--explore", o.explore, "Epsilon-greedy exploration probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--learning-rate", o.learning_rate, "Q-learning rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--episodes", o.episodes, "Q-learning episodes")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--fixed-phase-rad", o.fixed_phase_rad, "Slot-2 phase of the fixed-phase scheme, rad")->capture_default_str();
    app.add_option("--tolerance", o.tolerance, "Phase refinement stop threshold, bps/Hz")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--max-sweeps", o.max_sweeps, "Phase refinement sweep cap")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("--stop-at-tolerance", o.stop_at_tolerance,
                 "End phase refinement on the first sweep below --tolerance even if it moved an element");
    app.add_flag("--freeze-relays", o.freeze_relays, "Draw relay positions once instead of per trial");
    app.add_flag("--independent-sweeps", o.independent_sweeps, "Fresh random draws at every sweep point");
    app.add_flag("--no-relay-half-rate", o.no_relay_half_rate, "Apply the 1/2 two-slot factor to no-relay too");
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& text, const std::string& flag)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CLI::ConversionError(text, flag);
    }
}

std::optional<std::string> config_path_from(const std::vector<std::string>& argv)
{
    std::optional<std::string> path;
    for (std::size_t i = 1; i < argv.size(); ++i) {
        if (argv[i] == "--config" && i + 1 < argv.size()) path = argv[i + 1];
        else if (argv[i].rfind("--config=", 0) == 0) path = argv[i].substr(9);
    }
    return path;
}

RunConfig to_run_config(const Options& o, bool power_given)
{
    RunConfig rc;
    rc.out_path = o.out;
    rc.threads = o.threads;

    ExperimentSpec& spec = rc.spec;
    spec.kind = *parse_experiment(o.experiment);
    spec.trials = o.trials;
    spec.master_seed = o.seed;

    if (o.schemes.empty()) {
        spec.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    } else {
        for (const std::string& name : split_commas(o.schemes)) {
            const auto id = parse_scheme(name);
            if (!id) throw CLI::ValidationError("--schemes", "unknown scheme '" + name + "'");
            if (std::find(spec.schemes.begin(), spec.schemes.end(), *id) != spec.schemes.end()) {
                throw CLI::ValidationError("--schemes", "scheme '" + name + "' listed twice");
            }
            spec.schemes.push_back(*id);
        }
    }

    if (o.sweep.empty()) {
        spec.sweep_values = default_sweep(spec.kind, o.episodes);
    } else {
        for (const std::string& v : split_commas(o.sweep)) spec.sweep_values.push_back(parse_double(v, "--sweep"));
    }

    SystemConfig& sys = spec.system;
    sys.relay_count = o.relays;
    sys.freeze_relays = o.freeze_relays;
    sys.common_random_numbers = !o.independent_sweeps;
    sys.layout.relay_disk_radius = o.disk_radius_m;
    sys.layout.relay_disk_center.x = o.disk_center_x_m;
    sys.layout.relay_disk_center.y = o.disk_center_y_m;

    LinkBudgetParams& p = sys.scheme.params;
    const double power = power_given ? o.tx_power_dbm : (spec.kind == ExperimentKind::ConvergenceTrace ? 30.0 : 40.0);
    p.source_power_dbm = power;
    p.relay_power_dbm = power;
    p.noise_dbm = o.noise_dbm;
    p.carrier_ghz = o.carrier_ghz;
    p.terminal_height_m = o.terminal_height_m;
    p.irs_elements = o.irs_elements;
    p.rician_k_los_db = parse_double(o.k_los_db, "--k-los-db");
    p.rician_k_nlos_db = parse_double(o.k_nlos_db, "--k-nlos-db");

    try {
        sys.scheme.codebook = PhaseCodebook::from_levels(o.phase_levels);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--phase-levels", e.what());
    }
    sys.scheme.refine.tolerance = o.tolerance;
    sys.scheme.refine.max_sweeps = o.max_sweeps;
    sys.scheme.refine.require_fixed_point = !o.stop_at_tolerance;
    sys.scheme.qlearn.discount = o.discount;
    sys.scheme.qlearn.explore_prob = o.explore;
    sys.scheme.qlearn.learning_rate = o.learning_rate;
    sys.scheme.qlearn.episodes = o.episodes;
    sys.scheme.fixed_phase_rad = o.fixed_phase_rad;
    sys.scheme.no_relay_half_rate = o.no_relay_half_rate;

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(o.sweep.empty() ? "configuration" : "--sweep", e.what());
    }
    return rc;
}

}  // namespace

std::vector<std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

ParseResult parse_args(const std::vector<std::string>& argv)
{
    Options opts;
    CLI::App app{"Joint relay and IRS-assisted two-slot link simulator"};
    app.name(argv.empty() ? "jrirs_sim" : argv.front());
    build_app(app, opts);

    std::ostringstream out;
    std::ostringstream err;
    ParseResult result;
    try {
        std::vector<std::string> args;
        if (const auto cfg = config_path_from(argv)) {
            for (std::string& a : read_config_file(*cfg)) {
                const std::string key = a.substr(2, a.find('=') - 2);
                if (key == "config" || key == "help" || app.get_option_no_throw("--" + key) == nullptr) {
                    throw CLI::ValidationError("--config", "unknown key '" + key + "' in " + *cfg);
                }
                args.push_back(std::move(a));
            }
        }
        args.insert(args.end(), argv.begin() + (argv.empty() ? 0 : 1), argv.end());

        std::vector<const char*> c_args{argv.empty() ? "jrirs_sim" : argv.front().c_str()};
        for (const auto& a : args) c_args.push_back(a.c_str());
        app.parse(static_cast<int>(c_args.size()), c_args.data());

        result.config = to_run_config(opts, app.count("--tx-power-dbm") > 0);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        result.exit_code = 2;
    }
    result.config.reset();
    result.message = out.str() + err.str();
    return result;
}

std::string format_csv(const AggregateResult& result)
{
    std::vector<const AggregateRow*> rows;
    rows.reserve(result.rows.size());
    for (const auto& r : result.rows) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const AggregateRow* a, const AggregateRow* b) {
        return std::forward_as_tuple(scheme_name(a->scheme), a->sweep_value) <
               std::forward_as_tuple(scheme_name(b->scheme), b->sweep_value);
    });

    std::string csv = kCsvHeader;
    csv += '\n';
    const std::string experiment(experiment_name(result.kind));
    const std::string param(sweep_param_name(result.kind));
    char buf[512];
    for (const AggregateRow* r : rows) {
        const std::string scheme(scheme_name(r->scheme));
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%zu,%.6f,%.6f,%llu\n", experiment.c_str(), scheme.c_str(),
                      param.c_str(), r->sweep_value, r->trials, r->mean_rate, r->std_rate,
                      static_cast<unsigned long long>(result.master_seed));
        csv += buf;
    }
    return csv;
}

void write_csv(const AggregateResult& result, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << format_csv(result);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int run(const std::vector<std::string>& argv)
{
    ParseResult parsed = parse_args(argv);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
        return parsed.exit_code;
    }
    const RunConfig& rc = *parsed.config;
    try {
        ExecutionOptions exec;
        exec.threads = rc.threads;
        const AggregateResult result = run_experiment(rc.spec, exec);
        write_csv(result, rc.out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace jrirs::cli
