#ifndef COMET_GEOMETRY_HPP
#define COMET_GEOMETRY_HPP

#include <cstdint>

namespace comet {

// Bank/subarray organization. The column dimension is never split
// (S_c = 1), so N_c == subarray_cols. All dimensions must be powers
// of two so flat addresses bit-slice exactly, and subarray_count must
// be a perfect square (subarrays sit on a sqrt(S_r) x sqrt(S_r) grid).
struct MemoryGeometry {
    uint32_t banks = 4;            // B
    uint32_t channels = 1;
    uint32_t subarray_count = 4096; // S_r
    uint32_t subarray_rows = 512;   // M_r
    uint32_t subarray_cols = 256;   // M_c (= N_c)
    uint32_t bits_per_cell = 4;     // b, one of {1,2,4}

    // Derived, filled by validate_geometry().
    uint32_t subarray_side = 0;     // sqrt(S_r)
    uint64_t total_rows = 0;        // N_r = S_r * M_r
    uint64_t total_cols = 0;        // N_c = M_c
    uint64_t capacity_bits = 0;     // B * N_r * N_c * b
};

// Checks every invariant and returns the geometry with derived fields
// populated. Throws std::invalid_argument naming the violated invariant.
MemoryGeometry validate_geometry(MemoryGeometry g);

uint64_t capacity_bytes(const MemoryGeometry& g);

struct PhysicalAddress {
    uint32_t channel = 0;
    uint64_t row = 0;       // [0, N_r)
    uint32_t bank = 0;      // [0, B)
    uint64_t column = 0;    // [0, N_c)
    uint32_t offset = 0;    // byte offset within the burst
};

struct MappedAddress {
    uint32_t channel = 0;
    uint64_t subarray = 0;      // [0, S_r)
    uint64_t subarray_row = 0;  // [0, M_r)
    uint32_t bank = 0;
    uint64_t subarray_col = 0;  // [0, M_c)
};

// {Channel, Row, Bank, Column} -> {Channel, Subarray, SubRow, Bank, SubCol}.
// Throws std::out_of_range naming the offending field when the address
// falls outside the geometry.
MappedAddress map_address(const PhysicalAddress& a, const MemoryGeometry& g);

// Flat byte address -> PhysicalAddress. Bit order, low to high:
//   offset | bank | column | row | channel
// Bank bits sit directly above the line offset so consecutive cache
// lines interleave across the B banks. line_bytes must be 32, 64 or 128.
PhysicalAddress decompose_flat_address(uint64_t byte_addr,
                                       const MemoryGeometry& g,
                                       uint32_t line_bytes);

// Inverse of decompose_flat_address.
uint64_t compose_flat_address(const PhysicalAddress& a,
                              const MemoryGeometry& g,
                              uint32_t line_bytes);

// Number of cells one cache line occupies (line bits / bits_per_cell).
uint64_t cells_per_line(const MemoryGeometry& g, uint32_t line_bytes);

} // namespace comet

#endif
