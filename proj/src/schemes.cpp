#include <jrirs/schemes.hpp>
#include <jrirs/units.hpp>

#include <stdexcept>
#include <string>

namespace jrirs {

std::string_view scheme_name(SchemeId id) noexcept
{
    switch (id) {
    case SchemeId::QlJira: return "ql-jira";
    case SchemeId::RIrsOptimal: return "r-irs-optimal";
    case SchemeId::RandomSelection: return "rs";
    case SchemeId::FixedPhase: return "fpa";
    case SchemeId::RandomPhase: return "rpa";
    case SchemeId::NoRelay: return "no-relay";
    }
    return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) noexcept
{
    for (SchemeId id : kAllSchemes) {
        if (scheme_name(id) == name) return id;
    }
    return std::nullopt;
}

std::vector<double> relay_gains(const ChannelRealization& realization)
{
    std::vector<double> gains;
    gains.reserve(realization.relay_count());
    for (const auto& h : realization.relay_irs) gains.push_back(relay_gain(h));
    return gains;
}

std::size_t ql_select_relay(const ChannelRealization& realization, const QLearnConfig& config)
{
    const std::vector<double> gains = relay_gains(realization);
    return select_relay(train(build_reward_matrix(gains), config));
}

SchemeResult evaluate_with_relay(SchemeId scheme, const ChannelRealization& realization, const SchemeSettings& settings,
                                 std::size_t relay, Engine& rng)
{
    if (!uses_relay(scheme)) throw std::invalid_argument("evaluate_with_relay: scheme does not use a relay");
    if (relay >= realization.relay_count()) {
        throw std::invalid_argument("evaluate_with_relay: relay " + std::to_string(relay) + " out of range");
    }
    const LinkBudgetParams& p = settings.params;
    const double noise_w = dbm_to_watts(p.noise_dbm);
    const double source_w = dbm_to_watts(p.source_power_dbm);
    const double relay_w = dbm_to_watts(p.relay_power_dbm);
    const std::size_t n = realization.irs_elements();

    SchemeResult res;
    res.scheme = scheme;
    res.selected_relay = relay;

    // Slot 1: S -> Ri, reflected by the IRS.
    const RefinementResult slot1 = successive_refinement(realization.source_relay[relay], realization.irs_relay[relay],
                                                         realization.source_irs, source_w, noise_w, settings.codebook,
                                                         settings.refine);
    res.phi1 = slot1.phases;
    res.gamma1 = source_w * slot1.gain_power / noise_w;

    // Slot 2: Ri -> D, reflected by the IRS.
    const Complex direct2 = realization.relay_dest[relay];
    const ComplexVector& rx2 = realization.irs_dest;
    const ComplexVector& tx2 = realization.relay_irs[relay];
    PhaseConfig phi2;
    switch (scheme) {
    case SchemeId::FixedPhase:
        phi2 = PhaseConfig::uniform(n, settings.codebook.nearest(settings.fixed_phase_rad));
        break;
    case SchemeId::RandomPhase:
        phi2.indices.resize(n);
        for (auto& idx : phi2.indices) idx = uniform_index(rng, settings.codebook.levels());
        break;
    default:
        phi2 = successive_refinement(direct2, rx2, tx2, relay_w, noise_w, settings.codebook, settings.refine).phases;
        break;
    }
    res.gamma2 = snr(cascade_gain(direct2, rx2, phi2, tx2, settings.codebook), relay_w, noise_w);
    res.phi2 = std::move(phi2);

    res.rate = end_to_end_rate(slot_rate(res.gamma1), slot_rate(*res.gamma2));
    return res;
}

SchemeResult run_scheme(SchemeId scheme, const ChannelRealization& realization, const SchemeSettings& settings,
                        Engine& rng)
{
    if (scheme == SchemeId::NoRelay) {
        const LinkBudgetParams& p = settings.params;
        const double noise_w = dbm_to_watts(p.noise_dbm);
        const double source_w = dbm_to_watts(p.source_power_dbm);
        const RefinementResult r = successive_refinement(realization.source_dest, realization.irs_dest,
                                                         realization.source_irs, source_w, noise_w, settings.codebook,
                                                         settings.refine);
        SchemeResult res;
        res.scheme = scheme;
        res.phi1 = r.phases;
        res.gamma1 = source_w * r.gain_power / noise_w;
        res.rate = slot_rate(res.gamma1);
        if (settings.no_relay_half_rate) res.rate *= 0.5;
        return res;
    }

    if (realization.relay_count() == 0) {
        throw std::invalid_argument(std::string("run_scheme: ") + std::string(scheme_name(scheme)) + " needs at least one relay");
    }

    std::size_t relay = 0;
    switch (scheme) {
    case SchemeId::QlJira:
        relay = ql_select_relay(realization, settings.qlearn);
        break;
    case SchemeId::RandomSelection:
        relay = uniform_index(rng, realization.relay_count());
        break;
    default:
        relay = greedy_max_gain_relay(relay_gains(realization));
        break;
    }
    return evaluate_with_relay(scheme, realization, settings, relay, rng);
}

}  // namespace jrirs
