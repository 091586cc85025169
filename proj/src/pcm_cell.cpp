#include "comet/pcm_cell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace comet {

namespace {

constexpr double kLadderTop = 0.95;
constexpr double kLadderStep = 0.06;
constexpr int kLadderLevels = 16;

constexpr double kMinProgramNs = 10.0;
constexpr double kMaxProgramNs = 170.0;
constexpr double kResetLatencyNs = 210.0; // erase pulse
constexpr double kCrystallineResetPj = 880.0;
constexpr double kAmorphousResetPj = 280.0;
constexpr double kCrystallineModeMw = 1.0;
constexpr double kAmorphousModeMw = 5.0;

std::complex<double> ll_term(std::complex<double> eps) {
    return (eps - 1.0) / (eps + 2.0);
}

} // namespace

std::complex<double> effective_permittivity(double f_c,
                                            std::complex<double> eps_a,
                                            std::complex<double> eps_c) {
    if (!(f_c >= 0.0 && f_c <= 1.0))
        throw std::domain_error("crystalline fraction " + std::to_string(f_c) +
                                " outside [0,1]");
    if (eps_a.real() <= 0.0 || eps_c.real() <= 0.0)
        throw std::domain_error("permittivity must have positive real part");
    std::complex<double> mix = f_c * ll_term(eps_c) + (1.0 - f_c) * ll_term(eps_a);
    return (1.0 + 2.0 * mix) / (1.0 - mix);
}

ComplexIndex refractive_index(std::complex<double> eps) {
    std::complex<double> n = std::sqrt(eps);
    return {n.real(), n.imag()};
}

double LevelTable::level_spacing() const {
    return rows.size() < 2 ? 0.0 : rows[0].transmission - rows[1].transmission;
}

const LevelRow& LevelTable::farthest_from_reset() const {
    return mode == ResetMode::Crystalline ? rows.front() : rows.back();
}

LevelTable build_level_table(uint32_t bits, ResetMode mode,
                             const std::vector<LevelOverride>* overrides) {
    if (bits != 1 && bits != 2 && bits != 4)
        throw std::invalid_argument("bits_per_cell must be 1, 2 or 4");
    uint32_t n = 1u << bits;

    LevelTable t;
    t.bits = bits;
    t.mode = mode;
    t.reset_latency_ns = kResetLatencyNs;
    t.reset_energy_pj =
        mode == ResetMode::Crystalline ? kCrystallineResetPj : kAmorphousResetPj;
    double power_mw =
        mode == ResetMode::Crystalline ? kCrystallineModeMw : kAmorphousModeMw;

    uint32_t stride = (kLadderLevels - 1) / (n - 1);
    t.rows.reserve(n);
    for (uint32_t k = 0; k < n; ++k) {
        uint32_t ladder = k * stride;
        LevelRow row;
        row.level = k;
        row.transmission = kLadderTop - kLadderStep * ladder;
        row.crystalline_fraction = static_cast<double>(ladder) / (kLadderLevels - 1);
        // Distance from the reset state sets the default programming ramp.
        uint32_t dist = mode == ResetMode::Crystalline ? (n - 1 - k) : k;
        row.program_latency_ns =
            kMinProgramNs + (kMaxProgramNs - kMinProgramNs) * dist / (n - 1);
        row.program_energy_pj = power_mw * row.program_latency_ns;
        t.rows.push_back(row);
    }

    if (overrides) {
        if (overrides->size() != n)
            throw std::invalid_argument("level override table has " +
                                        std::to_string(overrides->size()) +
                                        " rows, expected " + std::to_string(n));
        for (const auto& o : *overrides) {
            if (o.level >= n)
                throw std::invalid_argument("override level out of range");
            auto& row = t.rows[o.level];
            row.transmission = o.transmission;
            row.program_latency_ns = o.latency_ns;
            row.program_energy_pj = o.energy_pj;
        }
    }
    return t;
}

CellState encode_symbol(uint32_t value, const LevelTable& table) {
    if (value >= table.rows.size())
        throw std::domain_error("symbol " + std::to_string(value) +
                                " out of range for " +
                                std::to_string(table.rows.size()) + " levels");
    const auto& row = table.rows[value];
    return {row.level, row.crystalline_fraction, row.transmission};
}

DecodeResult decode_transmission(double t_measured, const LevelTable& table,
                                 double guard_band) {
    constexpr double kOvershoot = 0.05; // amplifier overshoot tolerance
    if (!(t_measured >= -1e-12 && t_measured <= 1.0 + kOvershoot))
        throw std::domain_error("measured transmission " +
                                std::to_string(t_measured) + " outside [0, 1+eps]");

    // Rows are transmission-descending; walk the midpoint boundaries.
    const auto& rows = table.rows;
    size_t best = 0;
    while (best + 1 < rows.size()) {
        double boundary =
            0.5 * (rows[best].transmission + rows[best + 1].transmission);
        if (t_measured >= boundary)
            break;
        ++best;
    }

    DecodeResult r;
    r.value = rows[best].level;
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        double boundary = 0.5 * (rows[i].transmission + rows[i + 1].transmission);
        if (std::abs(t_measured - boundary) < guard_band) {
            r.ambiguous = true;
            r.candidate_a = rows[i].level;
            r.candidate_b = rows[i + 1].level;
            break;
        }
    }
    return r;
}

TransitionCost transition_cost(uint32_t from, uint32_t to, const LevelTable& table) {
    if (from >= table.rows.size() || to >= table.rows.size())
        throw std::domain_error("transition level out of range");
    const auto& target = table.rows[to];
    return {table.reset_energy_pj + target.program_energy_pj,
            table.reset_latency_ns + target.program_latency_ns};
}

double wavelength_loss_db_per_mm(double lambda_nm) {
    constexpr double lo = 1530.0, hi = 1565.0;
    constexpr double loss_lo = 0.073, loss_hi = 0.067;
    if (lambda_nm < lo || lambda_nm > hi)
        throw std::domain_error("wavelength " + std::to_string(lambda_nm) +
                                " nm outside the C-band [1530, 1565]");
    return loss_lo + (loss_hi - loss_lo) * (lambda_nm - lo) / (hi - lo);
}

} // namespace comet
