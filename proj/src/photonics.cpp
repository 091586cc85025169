#include "comet/photonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace comet {

double loss_chain_db(const PathDescriptor& path, const LossParams& p) {
    double db = 0.0;
    for (const auto& e : path) {
        if (e.amount < 0.0)
            throw std::invalid_argument("path element amount must be >= 0");
        switch (e.kind) {
        case PathElement::Kind::Coupler:          db += e.amount * p.coupling_db; break;
        case PathElement::Kind::PassiveMrThrough: db += e.amount * p.mr_through_db; break;
        case PathElement::Kind::PassiveMrDrop:    db += e.amount * p.mr_drop_db; break;
        case PathElement::Kind::EoMrDrop:         db += e.amount * p.eo_mr_drop_db; break;
        case PathElement::Kind::EoMrThrough:      db += e.amount * p.eo_mr_through_db; break;
        case PathElement::Kind::Waveguide:        db += e.amount * p.propagation_db_per_cm; break;
        case PathElement::Kind::Bend:             db += e.amount * p.bend_db_per_90; break;
        case PathElement::Kind::GstSwitch:        db += e.amount * p.gst_switch_db; break;
        case PathElement::Kind::IntraSoa:         db -= e.amount; break;
        case PathElement::Kind::Attenuator:       db += e.amount; break;
        }
    }
    return db;
}

double laser_power_w(uint64_t wavelengths, double cell_target_w,
                     const PathDescriptor& path, const LossParams& loss,
                     const PowerParams& power) {
    if (power.wall_plug_efficiency <= 0.0 || power.wall_plug_efficiency > 1.0)
        throw std::invalid_argument("wall plug efficiency outside (0,1]");
    double db = loss_chain_db(path, loss);
    if (-db > loss.soa_saturation_db)
        throw std::runtime_error("net path gain " + std::to_string(-db) +
                                 " dB exceeds amplifier saturation " +
                                 std::to_string(loss.soa_saturation_db) + " dB");
    double per_wavelength_w = cell_target_w * std::pow(10.0, db / 10.0);
    return static_cast<double>(wavelengths) * per_wavelength_w /
           power.wall_plug_efficiency;
}

double laser_power_w(const MemoryGeometry& g, const PathDescriptor& path,
                     const LossParams& loss, const PowerParams& power,
                     ProgramMode mode) {
    double target = mode == ProgramMode::CrystallineReset
                        ? power.cell_power_crystalline_w
                        : power.cell_power_amorphous_w;
    return laser_power_w(g.total_cols, target, path, loss, power);
}

uint64_t soa_count(const MemoryGeometry& g, uint64_t interval_rows) {
    if (interval_rows == 0)
        throw std::invalid_argument("SOA interval must be >= 1");
    uint64_t cells = static_cast<uint64_t>(g.banks) * g.total_rows * g.total_cols;
    return (cells + interval_rows - 1) / interval_rows;
}

double active_soa_power_w(const MemoryGeometry& g, uint64_t interval_rows,
                          const PowerParams& p) {
    if (interval_rows == 0)
        throw std::invalid_argument("SOA interval must be >= 1");
    double active = static_cast<double>(g.banks) * g.subarray_rows *
                    g.subarray_cols / static_cast<double>(interval_rows);
    return active * p.intra_soa_power_w;
}

double eo_tuning_power_w(const MemoryGeometry& g, const PowerParams& p) {
    return static_cast<double>(g.banks) * 2.0 * g.subarray_cols *
           p.eo_tuning_w_per_nm * p.tuning_shift_nm;
}

PowerStack power_stack(const MemoryGeometry& g, const PathDescriptor& worst_case,
                       const LossParams& loss, const PowerParams& power,
                       ProgramMode mode, uint64_t soa_interval) {
    PowerStack s;
    s.laser_w = laser_power_w(g, worst_case, loss, power, mode);
    s.soa_w = active_soa_power_w(g, soa_interval, power);
    s.eo_tuning_w = eo_tuning_power_w(g, power);
    return s;
}

PathDescriptor default_comet_path(const MemoryGeometry& g, const LossParams& loss,
                                  double die_length_cm, uint64_t soa_interval) {
    using K = PathElement::Kind;
    PathDescriptor path;
    path.push_back({K::Coupler, 1});
    path.push_back({K::GstSwitch, 1});
    path.push_back({K::Waveguide, die_length_cm});
    path.push_back({K::EoMrDrop, 1});
    uint64_t remaining = g.subarray_rows;
    while (remaining > soa_interval) {
        path.push_back({K::EoMrThrough, static_cast<double>(soa_interval)});
        path.push_back({K::IntraSoa, loss.intra_soa_gain_db});
        remaining -= soa_interval;
    }
    if (remaining > 0)
        path.push_back({K::EoMrThrough, static_cast<double>(remaining)});
    path.push_back({K::EoMrDrop, 1});
    path.push_back({K::Coupler, 1});
    return path;
}

} // namespace comet
