#pragma once

#include <jrirs/rng.hpp>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace jrirs {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Euclidean distance in meters.
double distance(const Vec3& a, const Vec3& b);

/// Distance in the horizontal (x, y) plane.
double horizontal_distance(const Vec3& a, const Vec3& b);

/// Fixed node placement. Relays are scattered over a horizontal disk.
struct NetworkLayout
{
    Vec3 source{20.0, -10.0, 2.0};
    Vec3 destination{20.0, 20.0, 1.0};
    Vec3 irs{0.0, 0.0, 1.0};
    Vec3 relay_disk_center{10.0, 10.0, 0.0};
    double relay_disk_radius = 10.0;
};

struct NetworkTopology
{
    Vec3 source;
    Vec3 destination;
    Vec3 irs;
    std::vector<Vec3> relays;
    Vec3 relay_disk_center;
    double relay_disk_radius = 0.0;
};

/// Draws `count` points uniformly over the horizontal disk; z is the center's z.
/// Throws std::invalid_argument for a negative or non-finite radius.
std::vector<Vec3> sample_relay_positions(const Vec3& center, double radius, std::size_t count, Engine& rng);

/// Layout plus `relay_count` relays drawn from `rng`.
NetworkTopology make_topology(const NetworkLayout& layout, std::size_t relay_count, Engine& rng);

/// 3GPP UMi street-canyon line-of-sight path loss in dB (d in meters, fc in GHz).
double path_loss_los_db(double distance_m, double carrier_ghz);

/// UMi street-canyon NLoS path loss in dB; never below the LoS value.
double path_loss_nlos_db(double distance_m, double carrier_ghz, double terminal_height_m);

enum class LinkClass { LoS, NLoS };

enum class Link : std::uint8_t {
    SourceIrs,
    IrsDest,
    IrsRelay,
    RelayIrs,
    SourceDest,
    SourceRelay,
    RelayDest,
};

/// S-IRS, IRS-D and IRS-relay links see a dominant LoS path; every link that
/// bypasses the IRS is obstructed.
constexpr LinkClass link_class(Link link) noexcept
{
    switch (link) {
    case Link::SourceIrs:
    case Link::IrsDest:
    case Link::IrsRelay:
    case Link::RelayIrs:
        return LinkClass::LoS;
    case Link::SourceDest:
    case Link::SourceRelay:
    case Link::RelayDest:
        return LinkClass::NLoS;
    }
    return LinkClass::NLoS;
}

struct LinkBudgetParams
{
    double carrier_ghz = 24.2;
    double terminal_height_m = 1.0;
    double noise_dbm = -60.0;
    double source_power_dbm = 40.0;
    double relay_power_dbm = 40.0;
    std::size_t irs_elements = 256;
    double rician_k_los_db = 10.0;
    double rician_k_nlos_db = -std::numeric_limits<double>::infinity();  // Rayleigh

    /// Throws std::invalid_argument on a non-positive carrier or NaN fields.
    void validate() const;
    double k_factor_linear(LinkClass cls) const;
    double path_loss_db(LinkClass cls, double distance_m) const;
};

/// Unit-mean-power Rician draws: a deterministic component of power K/(K+1)
/// at phase `los_phase_rad` plus CN(0, 1/(K+1)) scatter. K = +inf yields the
/// pure LoS phasor.
ComplexVector draw_small_scale(double k_factor_linear, std::size_t count, Engine& rng, double los_phase_rad = 0.0);
Complex draw_small_scale(double k_factor_linear, Engine& rng, double los_phase_rad = 0.0);

/// One fading draw of every link, path loss applied. Relay-indexed members
/// have one entry per relay; vector channels have one entry per IRS element.
struct ChannelRealization
{
    std::vector<Complex> source_relay;        // h_{S,Ri}
    std::vector<ComplexVector> irs_relay;     // h_{IRS,Ri}, slot 1
    ComplexVector source_irs;                 // h_{S,IRS}
    std::vector<Complex> relay_dest;          // h_{Ri,D}
    ComplexVector irs_dest;                   // h_{IRS,D}
    std::vector<ComplexVector> relay_irs;     // h_{Ri,IRS}, slot 2
    Complex source_dest{};                    // h_{S,D}

    std::size_t relay_count() const noexcept { return source_relay.size(); }
    std::size_t irs_elements() const noexcept { return source_irs.size(); }
};

/// Draws every link from its own substream of `stream_seed`, keyed by
/// (link, relay index). A relay's channels therefore do not depend on how
/// many relays exist, and S/IRS/D links do not depend on the relays at all.
ChannelRealization realize_channels(const NetworkTopology& topology, const LinkBudgetParams& params, std::uint64_t stream_seed);

}  // namespace jrirs
