#ifndef COMET_BASELINE_COSMOS_HPP
#define COMET_BASELINE_COSMOS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "comet/engine.hpp"
#include "comet/photonics.hpp"

namespace comet {

struct CrossbarTiming {
    double write_ns = 1600.0;
    double erase_ns = 250.0;
    double read_ns = 25.0;
    double burst_ns = 1.0;
    double interface_ns = 105.0;
    double subarray_switch_ns = 100.0; // PCM subarray access switch
    uint32_t bus_width_bits = 128;
    uint32_t burst_length = 8;
};

// Corrected crossbar OPCM model: 2 bits/cell, asymmetric transmission
// levels 9% apart, subtractive reads, PCM subarray switching, and 6 SOA
// arrays per 32x32 subarray. The "as-published" 16-level 6%-spacing cell
// is available for the corruption demo only.
struct CrossbarConfig {
    uint32_t banks = 16;
    uint64_t rows = 16384;  // N_r
    uint64_t cols = 16384;  // N_c
    uint32_t bits_per_cell = 2;
    uint32_t subarray_rows = 32;  // M_r (S_r = 512)
    uint32_t subarray_cols = 32;  // M_c (S_c = 512)

    std::vector<double> levels{0.99, 0.90, 0.81, 0.72};
    // Crystalline-fraction gap between adjacent levels; transmission falls
    // 1:1 with crystalline fraction in this model.
    double level_spacing_fraction = 0.09;

    double crosstalk_db = -18.0;
    double write_pulse_energy_pj = 750.0;
    double pulse_power_w = 5e-3;
    double disturbance_fraction = 0.08;
    int disturbance_sign = +1; // +1 shifts toward crystalline

    CrossbarTiming timing;
    uint32_t soa_arrays_per_subarray = 6;
    double worst_case_cell_loss_db = 1.4;
    double pcm_switch_db = 0.2;

    // COMET-style isolated cells: write disturbance becomes a no-op.
    // Used for the corruption-contrast experiments, not for COSMOS itself.
    bool isolated_cells = false;

    uint64_t capacity_bits() const {
        return static_cast<uint64_t>(banks) * rows * cols * bits_per_cell;
    }
};

// Energy leaking into a neighboring cell through the crossbar crosstalk.
double crosstalk_energy_pj(double write_energy_pj, double crosstalk_db);

struct CrossbarArray {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<double> fraction;  // crystalline fraction per cell
    std::vector<uint8_t> stored;   // level the cell was written with

    double& f(uint32_t r, uint32_t c) { return fraction[size_t(r) * cols + c]; }
    double f(uint32_t r, uint32_t c) const { return fraction[size_t(r) * cols + c]; }
    uint8_t written(uint32_t r, uint32_t c) const { return stored[size_t(r) * cols + c]; }
};

CrossbarArray make_array(uint32_t rows, uint32_t cols);

// Sets the row's levels and, unless cells are isolated, disturbs the
// adjacent rows.
void write_row(CrossbarArray& arr, uint32_t row, std::span<const uint8_t> levels,
               const CrossbarConfig& cfg);

// Shifts the crystalline fraction of every cell in rows row+-1 by the
// configured disturbance, clamped to [0,1]. No-op for isolated cells.
void apply_write_disturbance(CrossbarArray& arr, uint32_t row,
                             const CrossbarConfig& cfg);

// Level a readout quantizes to: the last level boundary the cell's
// crystalline fraction has crossed.
uint8_t read_level(const CrossbarArray& arr, uint32_t r, uint32_t c,
                   const CrossbarConfig& cfg);

// Cells whose readout no longer matches what was written.
uint64_t corrupted_count(const CrossbarArray& arr, const CrossbarConfig& cfg);

struct SubtractiveResult {
    std::vector<uint8_t> values;
    uint64_t decode_errors = 0;
};

// Read-all, reset the target row, read-all again, subtract per column at
// the controller. Destroys the row (left in the reset level); the engine
// charges the rewrite.
SubtractiveResult subtractive_read(CrossbarArray& arr, uint32_t row,
                                   const CrossbarConfig& cfg);

// Laser loss chain for the corrected COSMOS model: couplers, PCM subarray
// switch, worst-case cell losses along a row and a column, minus the
// per-subarray SOA arrays. MDM losses are taken as zero.
PathDescriptor default_cosmos_path(const CrossbarConfig& cfg,
                                   const LossParams& loss);

// Same statistics contract as simulate_comet, with COSMOS timing, the
// subtractive-read sequence per READ (two array reads + row reset, then a
// rewrite that keeps the bank busy), and 16-bank interleave.
SimStats simulate_cosmos(const std::vector<TraceRequest>& trace,
                         const CrossbarConfig& cfg, const LossParams& loss,
                         const PowerParams& power);

} // namespace comet

#endif
