#pragma once

#include <jrirs/linkrate.hpp>
#include <jrirs/netmodel.hpp>
#include <jrirs/phaseopt.hpp>
#include <jrirs/qselect.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace jrirs {

enum class SchemeId {
    QlJira,           // Q-learning relay + refined phases in both slots
    RIrsOptimal,      // max-gain relay + refined phases in both slots
    RandomSelection,  // uniform relay + refined phases in both slots
    FixedPhase,       // max-gain relay, slot 2 phases pinned to one angle
    RandomPhase,      // max-gain relay, slot 2 phases drawn at random
    NoRelay,          // single IRS-assisted S -> D slot
};

inline constexpr std::array<SchemeId, 6> kAllSchemes{SchemeId::QlJira,     SchemeId::RIrsOptimal,
                                                     SchemeId::RandomSelection, SchemeId::FixedPhase,
                                                     SchemeId::RandomPhase, SchemeId::NoRelay};

/// Command-line / CSV name: ql-jira, r-irs-optimal, rs, fpa, rpa, no-relay.
std::string_view scheme_name(SchemeId id) noexcept;
std::optional<SchemeId> parse_scheme(std::string_view name) noexcept;
constexpr bool uses_relay(SchemeId id) noexcept { return id != SchemeId::NoRelay; }

struct SchemeSettings
{
    LinkBudgetParams params;
    PhaseCodebook codebook = PhaseCodebook::from_levels(16);
    RefinementConfig refine;
    QLearnConfig qlearn;
    double fixed_phase_rad = 2.1;
    /// Charge the relay-free link the two-slot 1/2 factor as well.
    bool no_relay_half_rate = false;
};

struct SchemeResult
{
    SchemeId scheme = SchemeId::QlJira;
    std::optional<std::size_t> selected_relay;
    double gamma1 = 0.0;
    std::optional<double> gamma2;
    double rate = 0.0;  // bps/Hz
    PhaseConfig phi1;
    std::optional<PhaseConfig> phi2;
};

/// sum_n |h_{Ri,IRS}[n]|^2 for every relay.
std::vector<double> relay_gains(const ChannelRealization& realization);

/// Relay picked by a Q-learner trained on the realization's relay gains.
std::size_t ql_select_relay(const ChannelRealization& realization, const QLearnConfig& config);

/// Slot handling of `scheme` for an already chosen relay. `rng` feeds the
/// random slot-2 phases of RandomPhase and is untouched otherwise.
/// Throws std::invalid_argument for NoRelay or a relay index out of range.
SchemeResult evaluate_with_relay(SchemeId scheme, const ChannelRealization& realization, const SchemeSettings& settings,
                                 std::size_t relay, Engine& rng);

/// One full trial of `scheme` on one channel realization. `rng` drives the
/// random relay of RandomSelection and the random phases of RandomPhase;
/// Q-learning draws from settings.qlearn.seed.
/// Throws std::invalid_argument when a relay-using scheme sees no relays.
SchemeResult run_scheme(SchemeId scheme, const ChannelRealization& realization, const SchemeSettings& settings,
                        Engine& rng);

}  // namespace jrirs
