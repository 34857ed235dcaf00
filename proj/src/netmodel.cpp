#include <jrirs/netmodel.hpp>
#include <jrirs/units.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jrirs {

namespace {

void require_positive_distance(double d, const char* fn)
{
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw std::invalid_argument(std::string(fn) + ": distance must be positive and finite, got " + std::to_string(d));
    }
}

void require_positive_frequency(double fc, const char* fn)
{
    if (!(fc > 0.0) || !std::isfinite(fc)) {
        throw std::invalid_argument(std::string(fn) + ": carrier frequency must be positive, got " + std::to_string(fc));
    }
}

// Far-field LoS phase of a link: one propagation delay per node pair.
double los_phase(double distance_m, double carrier_ghz)
{
    const double wavelength = kSpeedOfLight / (carrier_ghz * 1e9);
    return -kTwoPi * std::fmod(distance_m / wavelength, 1.0);
}

}  // namespace

double distance(const Vec3& a, const Vec3& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double horizontal_distance(const Vec3& a, const Vec3& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<Vec3> sample_relay_positions(const Vec3& center, double radius, std::size_t count, Engine& rng)
{
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("sample_relay_positions: radius must be non-negative and finite, got " + std::to_string(radius));
    }
    std::vector<Vec3> out;
    out.reserve(count);
    while (out.size() < count) {
        const double r = radius * std::sqrt(uniform01(rng));
        const double angle = kTwoPi * uniform01(rng);
        Vec3 p{center.x + r * std::cos(angle), center.y + r * std::sin(angle), center.z};
        // Rounding in the shift can push a rim point a few ulps outside.
        if (horizontal_distance(p, center) > radius) continue;
        out.push_back(p);
    }
    return out;
}

NetworkTopology make_topology(const NetworkLayout& layout, std::size_t relay_count, Engine& rng)
{
    NetworkTopology t;
    t.source = layout.source;
    t.destination = layout.destination;
    t.irs = layout.irs;
    t.relay_disk_center = layout.relay_disk_center;
    t.relay_disk_radius = layout.relay_disk_radius;
    t.relays = sample_relay_positions(layout.relay_disk_center, layout.relay_disk_radius, relay_count, rng);
    return t;
}

double path_loss_los_db(double distance_m, double carrier_ghz)
{
    require_positive_distance(distance_m, "path_loss_los_db");
    require_positive_frequency(carrier_ghz, "path_loss_los_db");
    return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_ghz);
}

double path_loss_nlos_db(double distance_m, double carrier_ghz, double terminal_height_m)
{
    require_positive_distance(distance_m, "path_loss_nlos_db");
    require_positive_frequency(carrier_ghz, "path_loss_nlos_db");
    const double los = path_loss_los_db(distance_m, carrier_ghz);
    const double nlos = 22.4 + 35.5 * std::log10(distance_m) + 21.3 * std::log10(carrier_ghz) - 0.3 * (terminal_height_m - 1.5);
    return std::max(los, nlos);
}

void LinkBudgetParams::validate() const
{
    require_positive_frequency(carrier_ghz, "LinkBudgetParams");
    for (double v : {terminal_height_m, noise_dbm, source_power_dbm, relay_power_dbm}) {
        if (!std::isfinite(v)) throw std::invalid_argument("LinkBudgetParams: non-finite field");
    }
    if (std::isnan(rician_k_los_db) || std::isnan(rician_k_nlos_db)) {
        throw std::invalid_argument("LinkBudgetParams: Rician K-factor is NaN");
    }
}

double LinkBudgetParams::k_factor_linear(LinkClass cls) const
{
    return db_to_linear(cls == LinkClass::LoS ? rician_k_los_db : rician_k_nlos_db);
}

double LinkBudgetParams::path_loss_db(LinkClass cls, double distance_m) const
{
    return cls == LinkClass::LoS ? path_loss_los_db(distance_m, carrier_ghz)
                                 : path_loss_nlos_db(distance_m, carrier_ghz, terminal_height_m);
}

Complex draw_small_scale(double k_factor_linear, Engine& rng, double los_phase_rad)
{
    if (std::isinf(k_factor_linear)) return std::polar(1.0, los_phase_rad);
    const double los_amp = std::sqrt(k_factor_linear / (k_factor_linear + 1.0));
    const double scatter_amp = std::sqrt(1.0 / (k_factor_linear + 1.0));
    return std::polar(los_amp, los_phase_rad) + scatter_amp * complex_normal(rng);
}

ComplexVector draw_small_scale(double k_factor_linear, std::size_t count, Engine& rng, double los_phase_rad)
{
    ComplexVector out(count);
    for (auto& h : out) h = draw_small_scale(k_factor_linear, rng, los_phase_rad);
    return out;
}

namespace {

struct LinkDrawer
{
    const LinkBudgetParams& params;
    std::uint64_t stream_seed;

    ComplexVector vector(Link link, const Vec3& a, const Vec3& b, std::uint64_t relay, std::size_t n) const
    {
        const LinkClass cls = link_class(link);
        const double d = distance(a, b);
        const double amp = loss_db_to_amplitude(params.path_loss_db(cls, d));
        Engine rng = make_engine(derive_seed(stream_seed, {static_cast<std::uint64_t>(link), relay}));
        ComplexVector h = draw_small_scale(params.k_factor_linear(cls), n, rng, los_phase(d, params.carrier_ghz));
        for (auto& c : h) c *= amp;
        return h;
    }

    Complex scalar(Link link, const Vec3& a, const Vec3& b, std::uint64_t relay) const
    {
        return vector(link, a, b, relay, 1).front();
    }
};

}  // namespace

ChannelRealization realize_channels(const NetworkTopology& topology, const LinkBudgetParams& params, std::uint64_t stream_seed)
{
    params.validate();
    const std::size_t n = params.irs_elements;
    const LinkDrawer draw{params, stream_seed};

    ChannelRealization ch;
    ch.source_irs = draw.vector(Link::SourceIrs, topology.source, topology.irs, 0, n);
    ch.irs_dest = draw.vector(Link::IrsDest, topology.irs, topology.destination, 0, n);
    ch.source_dest = draw.scalar(Link::SourceDest, topology.source, topology.destination, 0);

    const std::size_t r = topology.relays.size();
    ch.source_relay.reserve(r);
    ch.irs_relay.reserve(r);
    ch.relay_dest.reserve(r);
    ch.relay_irs.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        const Vec3& relay = topology.relays[i];
        ch.source_relay.push_back(draw.scalar(Link::SourceRelay, topology.source, relay, i));
        ch.irs_relay.push_back(draw.vector(Link::IrsRelay, topology.irs, relay, i, n));
        ch.relay_dest.push_back(draw.scalar(Link::RelayDest, relay, topology.destination, i));
        ch.relay_irs.push_back(draw.vector(Link::RelayIrs, relay, topology.irs, i, n));
    }
    return ch;
}

}  // namespace jrirs
