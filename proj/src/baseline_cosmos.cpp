#include "comet/baseline_cosmos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stats_internal.hpp"

namespace comet {

namespace {

// Transmission falls 1:1 with crystalline fraction from the top level.
double transmission_of(const CrossbarConfig& cfg, double fraction) {
    return std::max(0.0, cfg.levels.front() - fraction);
}

double fraction_of_level(const CrossbarConfig& cfg, uint8_t level) {
    return level * cfg.level_spacing_fraction;
}

} // namespace

double crosstalk_energy_pj(double write_energy_pj, double crosstalk_db) {
    if (write_energy_pj < 0.0)
        throw std::invalid_argument("write energy must be >= 0");
    return write_energy_pj * std::pow(10.0, crosstalk_db / 10.0);
}

CrossbarArray make_array(uint32_t rows, uint32_t cols) {
    CrossbarArray a;
    a.rows = rows;
    a.cols = cols;
    a.fraction.assign(size_t(rows) * cols, 0.0);
    a.stored.assign(size_t(rows) * cols, 0);
    return a;
}

void apply_write_disturbance(CrossbarArray& arr, uint32_t row,
                             const CrossbarConfig& cfg) {
    if (row >= arr.rows)
        throw std::out_of_range("disturbance row out of range");
    if (cfg.isolated_cells)
        return;
    double shift = cfg.disturbance_sign * cfg.disturbance_fraction;
    for (int dr : {-1, +1}) {
        int64_t r = int64_t(row) + dr;
        if (r < 0 || r >= arr.rows)
            continue;
        for (uint32_t c = 0; c < arr.cols; ++c) {
            double& f = arr.f(static_cast<uint32_t>(r), c);
            f = std::clamp(f + shift, 0.0, 1.0);
        }
    }
}

void write_row(CrossbarArray& arr, uint32_t row, std::span<const uint8_t> levels,
               const CrossbarConfig& cfg) {
    if (row >= arr.rows)
        throw std::out_of_range("write row out of range");
    if (levels.size() != arr.cols)
        throw std::invalid_argument("row data width mismatch");
    for (uint32_t c = 0; c < arr.cols; ++c) {
        if (levels[c] >= cfg.levels.size())
            throw std::out_of_range("level " + std::to_string(levels[c]) +
                                    " not in the level set");
        arr.f(row, c) = fraction_of_level(cfg, levels[c]);
        arr.stored[size_t(row) * arr.cols + c] = levels[c];
    }
    apply_write_disturbance(arr, row, cfg);
}

uint8_t read_level(const CrossbarArray& arr, uint32_t r, uint32_t c,
                   const CrossbarConfig& cfg) {
    double f = arr.f(r, c);
    auto idx = static_cast<int64_t>(
        std::floor(f / cfg.level_spacing_fraction + 1e-9));
    idx = std::clamp<int64_t>(idx, 0, static_cast<int64_t>(cfg.levels.size()) - 1);
    return static_cast<uint8_t>(idx);
}

uint64_t corrupted_count(const CrossbarArray& arr, const CrossbarConfig& cfg) {
    uint64_t n = 0;
    for (uint32_t r = 0; r < arr.rows; ++r)
        for (uint32_t c = 0; c < arr.cols; ++c)
            if (read_level(arr, r, c, cfg) != arr.written(r, c))
                ++n;
    return n;
}

SubtractiveResult subtractive_read(CrossbarArray& arr, uint32_t row,
                                   const CrossbarConfig& cfg) {
    if (row >= arr.rows)
        throw std::out_of_range("read row out of range");

    std::vector<double> first(arr.cols, 0.0), second(arr.cols, 0.0);
    for (uint32_t r = 0; r < arr.rows; ++r)
        for (uint32_t c = 0; c < arr.cols; ++c)
            first[c] += transmission_of(cfg, arr.f(r, c));

    // Reset erases the target row in place.
    for (uint32_t c = 0; c < arr.cols; ++c) {
        arr.f(row, c) = fraction_of_level(cfg, 0);
        arr.stored[size_t(row) * arr.cols + c] = 0;
    }
    for (uint32_t r = 0; r < arr.rows; ++r)
        for (uint32_t c = 0; c < arr.cols; ++c)
            second[c] += transmission_of(cfg, arr.f(r, c));

    double min_gap = 1.0;
    for (size_t i = 0; i + 1 < cfg.levels.size(); ++i)
        min_gap = std::min(min_gap, cfg.levels[i] - cfg.levels[i + 1]);

    SubtractiveResult res;
    res.values.resize(arr.cols);
    for (uint32_t c = 0; c < arr.cols; ++c) {
        double t = first[c] - second[c] + cfg.levels.front();
        size_t best = 0;
        double best_dist = std::abs(t - cfg.levels[0]);
        for (size_t l = 1; l < cfg.levels.size(); ++l) {
            double d = std::abs(t - cfg.levels[l]);
            if (d < best_dist) {
                best = l;
                best_dist = d;
            }
        }
        if (best_dist > 0.25 * min_gap)
            ++res.decode_errors;
        res.values[c] = static_cast<uint8_t>(best);
    }
    return res;
}

PathDescriptor default_cosmos_path(const CrossbarConfig& cfg,
                                   const LossParams& loss) {
    using K = PathElement::Kind;
    PathDescriptor path;
    path.push_back({K::Coupler, 1});
    path.push_back({K::Attenuator, cfg.pcm_switch_db});
    // Worst-case cell losses along one subarray row and one column.
    path.push_back({K::Attenuator, cfg.worst_case_cell_loss_db *
                                       (cfg.subarray_rows + cfg.subarray_cols)});
    for (uint32_t i = 0; i < cfg.soa_arrays_per_subarray; ++i)
        path.push_back({K::IntraSoa, loss.intra_soa_gain_db});
    path.push_back({K::Coupler, 1});
    return path;
}

SimStats simulate_cosmos(const std::vector<TraceRequest>& trace,
                         const CrossbarConfig& cfg, const LossParams& loss,
                         const PowerParams& power) {
    const auto& t = cfg.timing;
    uint64_t line_bits = uint64_t(t.bus_width_bits) * t.burst_length;
    uint32_t line_bytes = static_cast<uint32_t>(line_bits / 8);
    uint64_t cells = line_bits / cfg.bits_per_cell;
    uint64_t lines_per_row = cfg.cols / cells;
    if (lines_per_row == 0)
        throw std::invalid_argument("cache line wider than a crossbar row");

    uint32_t off_bits = std::countr_zero(uint64_t(line_bytes));
    uint32_t bank_bits = std::countr_zero(uint64_t(cfg.banks));
    uint32_t col_bits = std::countr_zero(lines_per_row);
    uint64_t capacity = cfg.capacity_bits() / 8;

    struct Bank {
        bool has_subarray = false;
        uint64_t subarray = 0;
        double busy_until = 0.0;
        double busy_total = 0.0;
    };
    std::vector<Bank> banks(cfg.banks);
    std::vector<double> latencies;
    latencies.reserve(trace.size());

    SimStats s;
    double first_arrival = trace.empty() ? 0.0 : trace.front().arrival_ns;
    double last_completion = first_arrival;

    for (const auto& req : trace) {
        uint32_t size = req.size_bytes ? req.size_bytes : line_bytes;
        uint64_t nlines = (size + line_bytes - 1) / line_bytes;
        double completion = req.arrival_ns;

        for (uint64_t i = 0; i < nlines; ++i) {
            uint64_t addr = req.address + i * line_bytes;
            if (addr >= capacity)
                throw std::out_of_range("address exceeds COSMOS capacity");
            uint64_t a = addr >> off_bits;
            uint32_t bank_id = static_cast<uint32_t>(a & (cfg.banks - 1));
            a >>= bank_bits;
            uint64_t col = (a & (lines_per_row - 1)) * cells;
            a >>= col_bits;
            uint64_t row = a & (cfg.rows - 1);
            uint64_t subarray = (col / cfg.subarray_cols) * (cfg.rows / cfg.subarray_rows) +
                                row / cfg.subarray_rows;

            Bank& bank = banks[bank_id];
            double start = std::max(req.arrival_ns, bank.busy_until);
            bool need_switch = !bank.has_subarray || bank.subarray != subarray;
            double sw = need_switch ? t.subarray_switch_ns : 0.0;

            double data_ready, bank_free;
            if (req.op == TraceRequest::Op::Read) {
                // Subtractive sequence: read-all, reset row, read-all,
                // then the destroyed row is rewritten while the data
                // bursts out to the interface.
                double array = sw + 2.0 * t.read_ns + t.erase_ns;
                data_ready = start + array + t.burst_length * t.burst_ns +
                             t.interface_ns;
                bank_free = start + array + t.write_ns; // rewrite
                // Rewrite charges a full row write's pulse energy.
                s.write_energy_pj += static_cast<double>(cells) *
                                     cfg.write_pulse_energy_pj;
            } else {
                double array = sw + t.erase_ns + t.write_ns;
                data_ready = start + array + t.burst_length * t.burst_ns +
                             t.interface_ns;
                bank_free = data_ready;
                s.write_energy_pj += static_cast<double>(cells) *
                                     cfg.write_pulse_energy_pj;
            }
            double busy = std::max(data_ready, bank_free) - start;
            bank.busy_until = start + busy;
            bank.busy_total += busy;
            bank.has_subarray = true;
            bank.subarray = subarray;
            completion = std::max(completion, data_ready);
        }

        if (req.op == TraceRequest::Op::Read)
            ++s.reads;
        else
            ++s.writes;
        s.total_bits += 8ull * size;
        latencies.push_back(completion - req.arrival_ns);
        last_completion = std::max(last_completion, completion);
    }

    double laser_w = laser_power_w(cfg.cols, cfg.pulse_power_w,
                                   default_cosmos_path(cfg, loss), loss, power);
    double soa_w_per_bank = cfg.soa_arrays_per_subarray * cfg.subarray_cols *
                            power.intra_soa_power_w;
    double busy_total = 0.0;
    for (const auto& b : banks)
        busy_total += b.busy_total;
    s.laser_energy_pj =
        laser_w * (last_completion - first_arrival) * detail::kPjPerWNs;
    s.soa_energy_pj = soa_w_per_bank * busy_total * detail::kPjPerWNs;
    s.eo_energy_pj = 0.0; // passive MR ports, no EO tuning

    detail::finalize_stats(s, latencies, first_arrival, last_completion);
    return s;
}

} // namespace comet
