#ifndef COMET_PHOTONICS_HPP
#define COMET_PHOTONICS_HPP

#include <cstdint>
#include <vector>

#include "comet/geometry.hpp"

namespace comet {

// Per-element optical losses and gains (dB). Defaults follow the COMET
// power model. Note the interface SOA gain (20 dB) and the intra-subarray
// SOA gain (15.2 dB) are distinct parameters on purpose: the sources we
// model disagree, so both are kept and the intra value drives row planning.
struct LossParams {
    double coupling_db = 1.0;
    double mr_drop_db = 0.5;
    double mr_through_db = 0.02;
    double eo_mr_drop_db = 1.6;
    double eo_mr_through_db = 0.33;
    double propagation_db_per_cm = 0.1;
    double bend_db_per_90 = 0.01;
    double gst_switch_db = 0.2;
    double interface_soa_gain_db = 20.0;
    double intra_soa_gain_db = 15.2;
    double soa_saturation_db = 20.0; // max net gain a chain may show
};

struct PowerParams {
    double eo_tuning_w_per_nm = 4e-6;  // P_EO
    double tuning_shift_nm = 1.0;      // assumed resonance shift
    double cell_power_crystalline_w = 1e-3;
    double cell_power_amorphous_w = 5e-3;
    double intra_soa_power_w = 1.4e-3; // per SOA, 0 dBm output
    double wall_plug_efficiency = 0.20;
};

struct PathElement {
    enum class Kind {
        Coupler,
        PassiveMrThrough, // amount = count
        PassiveMrDrop,
        EoMrDrop,
        EoMrThrough,      // amount = count
        Waveguide,        // amount = length in cm
        Bend,             // amount = count of 90-degree bends
        GstSwitch,
        IntraSoa,         // amount = gain in dB
        Attenuator,       // amount = fixed dB, for model-specific atoms
    };
    Kind kind;
    double amount = 1.0;
};

using PathDescriptor = std::vector<PathElement>;

// Net dB along a path: losses positive, SOA gains negative.
double loss_chain_db(const PathDescriptor& path, const LossParams& p);

enum class ProgramMode { CrystallineReset, AmorphousReset };

// Electrical laser power to deliver the mode's target power at the cell
// across `wavelengths` parallel channels through the given loss chain.
// A chain whose net gain exceeds soa_saturation_db throws (the model has
// no gain-compression curve, only this guard).
double laser_power_w(uint64_t wavelengths, double cell_target_w,
                     const PathDescriptor& path, const LossParams& loss,
                     const PowerParams& power);
double laser_power_w(const MemoryGeometry& g, const PathDescriptor& path,
                     const LossParams& loss, const PowerParams& power,
                     ProgramMode mode);

// ceil(B * N_r * N_c / interval) amplifiers across the whole chip.
uint64_t soa_count(const MemoryGeometry& g, uint64_t interval_rows);

// Power of the SOAs in the currently accessed subarrays:
// (B * M_r * M_c / interval) * per-SOA power.
double active_soa_power_w(const MemoryGeometry& g, uint64_t interval_rows,
                          const PowerParams& p);

// B * 2 * M_c MRs tuned by P_EO over the configured shift.
double eo_tuning_power_w(const MemoryGeometry& g, const PowerParams& p);

struct PowerStack {
    double laser_w = 0.0;
    double soa_w = 0.0;
    double eo_tuning_w = 0.0;
    double total_w() const { return laser_w + soa_w + eo_tuning_w; }
};

PowerStack power_stack(const MemoryGeometry& g, const PathDescriptor& worst_case,
                       const LossParams& loss, const PowerParams& power,
                       ProgramMode mode, uint64_t soa_interval = 46);

// Shipped worst-case chain: coupler -> GST subarray switch -> column
// waveguide -> EO-MR drop -> M_r EO-MR throughs with an intra-SOA every
// `soa_interval` rows -> EO-MR drop -> coupler.
PathDescriptor default_comet_path(const MemoryGeometry& g, const LossParams& loss,
                                  double die_length_cm = 2.0,
                                  uint64_t soa_interval = 46);

} // namespace comet

#endif
