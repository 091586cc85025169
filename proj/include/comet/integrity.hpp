#ifndef COMET_INTEGRITY_HPP
#define COMET_INTEGRITY_HPP

#include <cstdint>
#include <vector>

namespace comet {

// Largest fractional transmission drop a readout can absorb before it
// collides with the adjacent symbol: 50% (b=1), 25% (b=2), the ladder
// spacing itself (6%) at b=4.
double tolerable_drop_fraction(uint32_t bits, double ladder_spacing = 0.06);

// Same tolerance in dB: -10 log10(1 - drop).
double loss_tolerance_db(uint32_t bits, double ladder_spacing = 0.06);

// How many EO-MR-through rows one intra-subarray SOA can cover.
uint64_t soa_row_interval(double gain_db, double per_row_loss_db);

// How many rows a readout survives with no amplification at all.
uint64_t rows_without_amp(double tolerance_db, double per_row_loss_db);

enum class LutSelector { CeilDiv10, CeilDiv4, Identity };

struct GainLUT {
    uint32_t bits = 4;
    uint32_t row_modulus = 46; // SOA interval
    LutSelector selector = LutSelector::Identity;
    uint32_t stride = 1;       // rows covered per entry
    std::vector<double> entries_db;
    uint32_t raw_entries = 0;  // uncompacted count, ceil(M_r / stride)
};

// Interface gain table per bit density. The divisor selectors (b=1,2)
// are 1-based: selector output 0 is the source-row region and needs no
// gain, so only outputs 1..N are stored. The identity selector (b=4)
// stores all `interval` entries including the zero-gain entry 0.
// Entry gains are index * stride * per_row_loss_db rounded up to 0.1 dB.
GainLUT build_gain_lut(uint32_t bits, uint32_t subarray_rows, uint32_t interval,
                       double per_row_loss_db);

// Applies the LUT's selector to row_id and returns the indexed gain.
// A selector index past the entry list indicates a mis-built LUT and
// throws std::logic_error.
double lut_gain_for_row(const GainLUT& lut, uint64_t row_id);

} // namespace comet

#endif
