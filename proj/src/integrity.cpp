#include "comet/integrity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace comet {

namespace {

double round_up_tenth_db(double db) {
    return std::ceil(db * 10.0 - 1e-9) / 10.0 + 0.0; // +0.0 kills -0
}

} // namespace

double tolerable_drop_fraction(uint32_t bits, double ladder_spacing) {
    switch (bits) {
    case 1: return 0.50;
    case 2: return 0.25;
    case 4: return ladder_spacing;
    default:
        throw std::invalid_argument("bits_per_cell must be 1, 2 or 4");
    }
}

double loss_tolerance_db(uint32_t bits, double ladder_spacing) {
    return -10.0 * std::log10(1.0 - tolerable_drop_fraction(bits, ladder_spacing));
}

uint64_t soa_row_interval(double gain_db, double per_row_loss_db) {
    if (per_row_loss_db <= 0.0)
        throw std::invalid_argument("per-row loss must be > 0");
    return static_cast<uint64_t>(std::floor(gain_db / per_row_loss_db + 1e-9));
}

uint64_t rows_without_amp(double tolerance_db, double per_row_loss_db) {
    if (per_row_loss_db <= 0.0)
        throw std::invalid_argument("per-row loss must be > 0");
    return static_cast<uint64_t>(std::floor(tolerance_db / per_row_loss_db + 1e-9));
}

GainLUT build_gain_lut(uint32_t bits, uint32_t subarray_rows, uint32_t interval,
                       double per_row_loss_db) {
    if (interval == 0)
        throw std::invalid_argument("interval must be >= 1");
    GainLUT lut;
    lut.bits = bits;
    lut.row_modulus = interval;
    switch (bits) {
    case 1: lut.selector = LutSelector::CeilDiv10; lut.stride = 10; break;
    case 2: lut.selector = LutSelector::CeilDiv4;  lut.stride = 4;  break;
    case 4: lut.selector = LutSelector::Identity;  lut.stride = 1;  break;
    default:
        throw std::invalid_argument("bits_per_cell must be 1, 2 or 4");
    }
    lut.raw_entries = (subarray_rows + lut.stride - 1) / lut.stride;

    if (lut.selector == LutSelector::Identity) {
        lut.entries_db.reserve(interval);
        for (uint32_t k = 0; k < interval; ++k)
            lut.entries_db.push_back(round_up_tenth_db(k * per_row_loss_db));
    } else {
        uint32_t count = (interval - 1 + lut.stride - 1) / lut.stride;
        lut.entries_db.reserve(count);
        for (uint32_t j = 1; j <= count; ++j)
            lut.entries_db.push_back(
                round_up_tenth_db(static_cast<double>(j) * lut.stride * per_row_loss_db));
    }
    return lut;
}

double lut_gain_for_row(const GainLUT& lut, uint64_t row_id) {
    uint64_t r = row_id % lut.row_modulus;
    uint64_t index;
    switch (lut.selector) {
    case LutSelector::Identity:
        index = r;
        if (index >= lut.entries_db.size())
            throw std::logic_error("gain LUT selector index " +
                                   std::to_string(index) + " past entry list");
        return lut.entries_db[index];
    case LutSelector::CeilDiv10:
    case LutSelector::CeilDiv4:
        index = (r + lut.stride - 1) / lut.stride;
        if (index == 0)
            return 0.0; // source-row region
        if (index > lut.entries_db.size())
            throw std::logic_error("gain LUT selector index " +
                                   std::to_string(index) + " past entry list");
        return lut.entries_db[index - 1];
    }
    throw std::logic_error("unreachable");
}

} // namespace comet
