#ifndef COMET_ENGINE_HPP
#define COMET_ENGINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "comet/geometry.hpp"
#include "comet/integrity.hpp"
#include "comet/pcm_cell.hpp"
#include "comet/photonics.hpp"

namespace comet {

struct TimingParams {
    double read_ns = 10.0;
    double max_write_ns = 170.0;
    double erase_ns = 210.0;
    double burst_ns = 1.0;
    double interface_ns = 105.0;
    double eo_tune_ns = 2.0;
    double gst_switch_ns = 100.0;
    uint32_t bus_width_bits = 256;
    uint32_t burst_length = 4; // at the 128 B line; scales with line size
};

struct TraceRequest {
    double arrival_ns = 0.0;
    enum class Op { Read, Write } op = Op::Read;
    uint64_t address = 0;
    uint32_t size_bytes = 0; // 0 = one cache line
};

// Line grammar, one request per line, '#' starts a comment:
//   <time_ns> <R|W> <hex_address> [<size_bytes>]
// Malformed lines and time regressions throw with the line number.
std::vector<TraceRequest> parse_trace(std::istream& in);

struct SimStats {
    uint64_t reads = 0;
    uint64_t writes = 0;
    uint64_t decode_errors = 0;
    uint64_t total_bits = 0;
    double span_ns = 0.0;
    double avg_latency_ns = 0.0;
    double p50_latency_ns = 0.0;
    double p95_latency_ns = 0.0;
    double p99_latency_ns = 0.0;
    double max_latency_ns = 0.0;
    double bandwidth_bytes_per_s = 0.0;
    double laser_energy_pj = 0.0;
    double soa_energy_pj = 0.0;
    double eo_energy_pj = 0.0;
    double write_energy_pj = 0.0;
    double epb_pj_per_bit = 0.0;

    double total_energy_pj() const {
        return laser_energy_pj + soa_energy_pj + eo_energy_pj + write_energy_pj;
    }
};

enum class RowPolicy { Open, Closed };

struct EngineConfig {
    MemoryGeometry geometry;       // validated
    TimingParams timing;
    LevelTable levels;
    LossParams loss;
    PowerParams power;
    GainLUT lut;
    PathDescriptor worst_case_path;
    ProgramMode mode = ProgramMode::CrystallineReset;
    RowPolicy policy = RowPolicy::Open;
    uint32_t line_bytes = 128;
    uint64_t soa_interval = 46;
    // Level programmed by writes; defaults to the farthest-from-reset
    // level (the max-latency bound) when unset.
    std::optional<uint32_t> write_level;
};

// Builds a config with all defaults derived from the geometry.
EngineConfig default_engine_config(MemoryGeometry g);

// Deterministic trace-driven simulation of COMET.
// READ:  [subarray switch][EO tune] read, burst, interface.
// WRITE: [subarray switch][EO tune] erase, program, interface.
// Switch and tune are skipped under the open policy when the bank already
// has that subarray selected / row tuned. Banks operate concurrently;
// requests to a busy bank queue FIFO. Laser power is charged over the
// whole span; SOA and EO power only over bank-busy intervals.
SimStats simulate_comet(const std::vector<TraceRequest>& trace,
                        const EngineConfig& cfg);

struct SweepRow {
    uint32_t bits = 0;
    MemoryGeometry geometry;
    uint64_t line_bits = 0; // bits delivered per row activation
    SimStats stats;
};

// The fixed-capacity bit-density comparison: (4 x 4096 x 512 x M_c x b)
// with M_c shrinking as b grows, for b in {1, 2, 4}.
std::vector<SweepRow> sweep_bit_density(const std::vector<TraceRequest>& trace,
                                        const EngineConfig& base);

} // namespace comet

#endif
