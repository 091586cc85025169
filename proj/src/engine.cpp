#include "comet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stats_internal.hpp"

namespace comet {

namespace {

struct BankState {
    bool has_subarray = false;
    uint64_t subarray = 0;
    bool has_row = false;
    uint64_t row = 0;
    double busy_until = 0.0;
    double busy_total = 0.0;
};

} // namespace

std::vector<TraceRequest> parse_trace(std::istream& in) {
    std::vector<TraceRequest> trace;
    std::string line;
    size_t lineno = 0;
    double last_time = -1.0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string time_tok, op_tok, addr_tok, size_tok;
        if (!(ls >> time_tok))
            continue; // blank or comment-only line
        if (!(ls >> op_tok >> addr_tok))
            throw std::runtime_error("trace line " + std::to_string(lineno) +
                                     ": expected <time> <R|W> <hex_address>");
        TraceRequest r;
        size_t pos = 0;
        try {
            r.arrival_ns = std::stod(time_tok, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != time_tok.size() || r.arrival_ns < 0.0)
            throw std::runtime_error("trace line " + std::to_string(lineno) +
                                     ": bad time field '" + time_tok + "'");
        if (op_tok == "R")
            r.op = TraceRequest::Op::Read;
        else if (op_tok == "W")
            r.op = TraceRequest::Op::Write;
        else
            throw std::runtime_error("trace line " + std::to_string(lineno) +
                                     ": bad op field '" + op_tok + "'");
        try {
            r.address = std::stoull(addr_tok, &pos, 16);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != addr_tok.size())
            throw std::runtime_error("trace line " + std::to_string(lineno) +
                                     ": bad address field '" + addr_tok + "'");
        if (ls >> size_tok) {
            try {
                r.size_bytes = static_cast<uint32_t>(std::stoul(size_tok, &pos));
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != size_tok.size() || r.size_bytes == 0)
                throw std::runtime_error("trace line " + std::to_string(lineno) +
                                         ": bad size field '" + size_tok + "'");
        }
        if (r.arrival_ns < last_time)
            throw std::runtime_error("trace line " + std::to_string(lineno) +
                                     ": time regression (" + time_tok + ")");
        last_time = r.arrival_ns;
        trace.push_back(r);
    }
    return trace;
}

EngineConfig default_engine_config(MemoryGeometry g) {
    EngineConfig cfg;
    cfg.geometry = validate_geometry(g);
    cfg.levels = build_level_table(cfg.geometry.bits_per_cell, ResetMode::Crystalline);
    cfg.lut = build_gain_lut(cfg.geometry.bits_per_cell, cfg.geometry.subarray_rows,
                             static_cast<uint32_t>(cfg.soa_interval),
                             cfg.loss.eo_mr_through_db);
    cfg.worst_case_path =
        default_comet_path(cfg.geometry, cfg.loss, 2.0, cfg.soa_interval);
    return cfg;
}

SimStats simulate_comet(const std::vector<TraceRequest>& trace,
                        const EngineConfig& cfg) {
    const auto& g = cfg.geometry;
    const auto& t = cfg.timing;
    uint64_t line_bits = 8ull * cfg.line_bytes;
    uint64_t cells = cells_per_line(g, cfg.line_bytes);
    // Burst length scales with line size at the fixed bus width.
    uint64_t burst_count = std::max<uint64_t>(1, line_bits / t.bus_width_bits);

    uint32_t target_level = cfg.write_level
                                ? *cfg.write_level
                                : cfg.levels.farthest_from_reset().level;
    TransitionCost write_cost = transition_cost(target_level, target_level, cfg.levels);
    double tolerance = loss_tolerance_db(g.bits_per_cell);

    std::vector<BankState> banks(static_cast<size_t>(g.banks) * g.channels);
    std::vector<double> latencies;
    latencies.reserve(trace.size());

    SimStats s;
    double first_arrival = trace.empty() ? 0.0 : trace.front().arrival_ns;
    double last_completion = first_arrival;

    for (const auto& req : trace) {
        uint32_t size = req.size_bytes ? req.size_bytes : cfg.line_bytes;
        uint64_t nlines = (size + cfg.line_bytes - 1) / cfg.line_bytes;
        double completion = req.arrival_ns;

        for (uint64_t i = 0; i < nlines; ++i) {
            PhysicalAddress p =
                decompose_flat_address(req.address + i * cfg.line_bytes, g,
                                       cfg.line_bytes);
            MappedAddress m = map_address(p, g);
            BankState& bank =
                banks[static_cast<size_t>(m.channel) * g.banks + m.bank];

            bool need_switch = cfg.policy == RowPolicy::Closed ||
                               !bank.has_subarray || bank.subarray != m.subarray;
            bool need_tune = need_switch || !bank.has_row ||
                             bank.row != m.subarray_row;

            double service = 0.0;
            if (need_switch)
                service += t.gst_switch_ns;
            if (need_tune)
                service += t.eo_tune_ns;
            if (req.op == TraceRequest::Op::Read) {
                service += t.read_ns + burst_count * t.burst_ns + t.interface_ns;
                // Residual after per-segment SOA restoration and LUT gain.
                double seg_loss =
                    (m.subarray_row % cfg.soa_interval) * cfg.loss.eo_mr_through_db;
                double net = seg_loss - lut_gain_for_row(cfg.lut, m.subarray_row);
                if (std::abs(net) > tolerance)
                    ++s.decode_errors;
            } else {
                service += t.erase_ns +
                           cfg.levels.rows[target_level].program_latency_ns +
                           t.interface_ns;
                s.write_energy_pj += static_cast<double>(cells) * write_cost.energy_pj;
            }

            double start = std::max(req.arrival_ns, bank.busy_until);
            bank.busy_until = start + service;
            bank.busy_total += service;
            bank.has_subarray = cfg.policy == RowPolicy::Open;
            bank.subarray = m.subarray;
            bank.has_row = cfg.policy == RowPolicy::Open;
            bank.row = m.subarray_row;
            completion = std::max(completion, bank.busy_until);
        }

        if (req.op == TraceRequest::Op::Read)
            ++s.reads;
        else
            ++s.writes;
        s.total_bits += 8ull * size;
        latencies.push_back(completion - req.arrival_ns);
        last_completion = std::max(last_completion, completion);
    }

    // Always-on laser over the span; SOA and EO power only while a bank
    // is actively accessing its subarray.
    double laser_w = laser_power_w(g, cfg.worst_case_path, cfg.loss, cfg.power,
                                   cfg.mode);
    double soa_w_per_bank = active_soa_power_w(g, cfg.soa_interval, cfg.power) /
                            g.banks;
    double eo_w_per_bank = eo_tuning_power_w(g, cfg.power) / g.banks;
    double busy_total = 0.0;
    for (const auto& b : banks)
        busy_total += b.busy_total;
    s.laser_energy_pj =
        laser_w * (last_completion - first_arrival) * detail::kPjPerWNs;
    s.soa_energy_pj = soa_w_per_bank * busy_total * detail::kPjPerWNs;
    s.eo_energy_pj = eo_w_per_bank * busy_total * detail::kPjPerWNs;

    detail::finalize_stats(s, latencies, first_arrival, last_completion);
    return s;
}

std::vector<SweepRow> sweep_bit_density(const std::vector<TraceRequest>& trace,
                                        const EngineConfig& base) {
    struct Variant {
        uint32_t cols;
        uint32_t bits;
    };
    // Same 2^33-bit capacity at every density: M_c shrinks as b grows.
    const Variant variants[] = {{1024, 1}, {512, 2}, {256, 4}};
    std::vector<SweepRow> rows(3);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < 3; ++i) {
        EngineConfig cfg = base;
        MemoryGeometry g = base.geometry;
        g.banks = 4;
        g.subarray_count = 4096;
        g.subarray_rows = 512;
        g.subarray_cols = variants[i].cols;
        g.bits_per_cell = variants[i].bits;
        cfg.geometry = validate_geometry(g);
        cfg.levels = build_level_table(g.bits_per_cell, cfg.levels.mode);
        cfg.lut = build_gain_lut(g.bits_per_cell, g.subarray_rows,
                                 static_cast<uint32_t>(cfg.soa_interval),
                                 cfg.loss.eo_mr_through_db);
        cfg.worst_case_path =
            default_comet_path(cfg.geometry, cfg.loss, 2.0, cfg.soa_interval);
        cfg.write_level.reset();

        SweepRow row;
        row.bits = variants[i].bits;
        row.geometry = cfg.geometry;
        row.line_bits = cells_per_line(cfg.geometry, cfg.line_bytes) *
                        cfg.geometry.bits_per_cell;
        row.stats = simulate_comet(trace, cfg);
        rows[i] = row;
    }
    return rows;
}

} // namespace comet
