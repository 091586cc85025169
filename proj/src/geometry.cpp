#include "comet/geometry.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace comet {

namespace {

bool is_pow2(uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

uint32_t log2_exact(uint64_t x) { return static_cast<uint32_t>(std::countr_zero(x)); }

uint64_t isqrt_exact(uint64_t x) {
    auto r = static_cast<uint64_t>(std::llround(std::sqrt(static_cast<double>(x))));
    return r * r == x ? r : 0;
}

void check_line_bytes(uint32_t line_bytes) {
    if (line_bytes != 32 && line_bytes != 64 && line_bytes != 128)
        throw std::invalid_argument("line_bytes must be 32, 64 or 128, got " +
                                    std::to_string(line_bytes));
}

} // namespace

MemoryGeometry validate_geometry(MemoryGeometry g) {
    if (g.banks == 0 || g.channels == 0 || g.subarray_count == 0 ||
        g.subarray_rows == 0 || g.subarray_cols == 0)
        throw std::invalid_argument("geometry: zero dimension");
    if (g.bits_per_cell != 1 && g.bits_per_cell != 2 && g.bits_per_cell != 4)
        throw std::invalid_argument("geometry: bits_per_cell must be 1, 2 or 4, got " +
                                    std::to_string(g.bits_per_cell));
    uint64_t side = isqrt_exact(g.subarray_count);
    if (side == 0)
        throw std::invalid_argument("geometry: subarray_count " +
                                    std::to_string(g.subarray_count) +
                                    " is not a perfect square");
    // Power-of-two dimensions keep flat-address bit slicing exact.
    if (!is_pow2(g.banks) || !is_pow2(g.channels) || !is_pow2(g.subarray_count) ||
        !is_pow2(g.subarray_rows) || !is_pow2(g.subarray_cols))
        throw std::invalid_argument("geometry: all dimensions must be powers of two");

    g.subarray_side = static_cast<uint32_t>(side);
    g.total_rows = static_cast<uint64_t>(g.subarray_count) * g.subarray_rows;
    g.total_cols = g.subarray_cols; // S_c = 1
    g.capacity_bits = static_cast<uint64_t>(g.banks) * g.channels *
                      g.total_rows * g.total_cols * g.bits_per_cell;
    return g;
}

uint64_t capacity_bytes(const MemoryGeometry& g) { return g.capacity_bits / 8; }

MappedAddress map_address(const PhysicalAddress& a, const MemoryGeometry& g) {
    if (a.row >= g.total_rows)
        throw std::out_of_range("map_address: row " + std::to_string(a.row) +
                                " >= N_r " + std::to_string(g.total_rows));
    if (a.column >= g.total_cols)
        throw std::out_of_range("map_address: column " + std::to_string(a.column) +
                                " >= N_c " + std::to_string(g.total_cols));
    if (a.bank >= g.banks)
        throw std::out_of_range("map_address: bank " + std::to_string(a.bank) +
                                " >= B " + std::to_string(g.banks));
    if (a.channel >= g.channels)
        throw std::out_of_range("map_address: channel " + std::to_string(a.channel) +
                                " >= channels " + std::to_string(g.channels));

    uint64_t id1 = a.row / g.subarray_rows;
    uint64_t id2 = a.column / g.subarray_cols; // always 0 while S_c = 1
    MappedAddress m;
    m.channel = a.channel;
    m.bank = a.bank;
    m.subarray = id2 * g.subarray_side + id1;
    m.subarray_row = a.row % g.subarray_rows;
    m.subarray_col = a.column % g.subarray_cols;
    if (m.subarray >= g.subarray_count)
        throw std::out_of_range("map_address: computed subarray id out of range");
    return m;
}

uint64_t cells_per_line(const MemoryGeometry& g, uint32_t line_bytes) {
    check_line_bytes(line_bytes);
    uint64_t line_bits = 8ull * line_bytes;
    if (line_bits % g.bits_per_cell != 0)
        throw std::invalid_argument("line bits not divisible by bits_per_cell");
    uint64_t cells = line_bits / g.bits_per_cell;
    if (cells > g.total_cols)
        throw std::invalid_argument("cache line wider than one row of one bank");
    return cells;
}

PhysicalAddress decompose_flat_address(uint64_t byte_addr,
                                       const MemoryGeometry& g,
                                       uint32_t line_bytes) {
    check_line_bytes(line_bytes);
    if (byte_addr >= capacity_bytes(g))
        throw std::out_of_range("address 0x" + std::to_string(byte_addr) +
                                " exceeds capacity " +
                                std::to_string(capacity_bytes(g)) + " bytes");

    uint64_t lines_per_row = g.total_cols / cells_per_line(g, line_bytes);
    uint32_t off_bits = log2_exact(line_bytes);
    uint32_t bank_bits = log2_exact(g.banks);
    uint32_t col_bits = log2_exact(lines_per_row);
    uint32_t row_bits = log2_exact(g.total_rows);

    uint64_t a = byte_addr;
    PhysicalAddress p;
    p.offset = static_cast<uint32_t>(a & (line_bytes - 1));
    a >>= off_bits;
    p.bank = static_cast<uint32_t>(a & (g.banks - 1));
    a >>= bank_bits;
    p.column = (a & (lines_per_row - 1)) * cells_per_line(g, line_bytes);
    a >>= col_bits;
    p.row = a & (g.total_rows - 1);
    a >>= row_bits;
    p.channel = static_cast<uint32_t>(a);
    return p;
}

uint64_t compose_flat_address(const PhysicalAddress& p,
                              const MemoryGeometry& g,
                              uint32_t line_bytes) {
    check_line_bytes(line_bytes);
    uint64_t cells = cells_per_line(g, line_bytes);
    uint64_t lines_per_row = g.total_cols / cells;
    uint32_t off_bits = log2_exact(line_bytes);
    uint32_t bank_bits = log2_exact(g.banks);
    uint32_t col_bits = log2_exact(lines_per_row);
    uint32_t row_bits = log2_exact(g.total_rows);

    uint64_t a = p.channel;
    a = (a << row_bits) | p.row;
    a = (a << col_bits) | (p.column / cells);
    a = (a << bank_bits) | p.bank;
    a = (a << off_bits) | p.offset;
    return a;
}

} // namespace comet
