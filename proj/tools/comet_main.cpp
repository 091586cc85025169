#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "comet/baseline_cosmos.hpp"
#include "comet/config.hpp"
#include "comet/engine.hpp"
#include "comet/trace_synth.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file '" + path + "'");
    f << text;
}

std::vector<comet::TraceRequest> load_trace(const std::string& trace_path,
                                            const comet::RunConfig& cfg) {
    if (!trace_path.empty()) {
        std::ifstream f(trace_path);
        if (!f)
            throw std::runtime_error("cannot open trace file '" + trace_path + "'");
        return comet::parse_trace(f);
    }
    comet::TraceSpec spec =
        cfg.trace_spec ? *cfg.trace_spec : comet::TraceSpec{};
    return comet::generate(spec);
}

comet::SimStats run_arch(const std::vector<comet::TraceRequest>& trace,
                         const comet::RunConfig& cfg) {
    if (cfg.arch == comet::Architecture::Comet)
        return comet::simulate_comet(trace, cfg.engine);
    return comet::simulate_cosmos(trace, cfg.cosmos, cfg.engine.loss,
                                  cfg.engine.power);
}

struct DemoReport {
    std::vector<uint64_t> corrupted_per_step;
    uint64_t total_symbols = 0;
    uint64_t corrupted_pixels = 0;
    uint64_t total_pixels = 0;
};

// Grayscale byte matrix, two 4-bit symbols per byte, programmed into a
// 16-level crossbar and then hit with adjacent-row disturbance writes.
DemoReport corruption_demo(const std::vector<uint8_t>& pixels, uint32_t width,
                           uint32_t height, uint32_t writes, bool isolated) {
    comet::CrossbarConfig cfg;
    cfg.levels.clear();
    for (int i = 0; i < 16; ++i)
        cfg.levels.push_back(0.95 - 0.06 * i);
    cfg.level_spacing_fraction = 0.06;
    cfg.isolated_cells = isolated;

    comet::CrossbarArray arr = comet::make_array(height, width * 2);
    // Initial image programming, before any disturbing traffic.
    for (uint32_t r = 0; r < height; ++r)
        for (uint32_t c = 0; c < width; ++c) {
            uint8_t byte = pixels[size_t(r) * width + c];
            uint8_t syms[2] = {static_cast<uint8_t>(byte >> 4),
                               static_cast<uint8_t>(byte & 0xF)};
            for (int k = 0; k < 2; ++k) {
                arr.f(r, 2 * c + k) = syms[k] * cfg.level_spacing_fraction;
                arr.stored[size_t(r) * arr.cols + 2 * c + k] = syms[k];
            }
        }

    DemoReport rep;
    rep.total_symbols = size_t(height) * width * 2;
    rep.total_pixels = size_t(height) * width;
    for (uint32_t w = 0; w < writes; ++w) {
        uint32_t row = (w + 1) % height;
        std::vector<uint8_t> same(arr.cols);
        for (uint32_t c = 0; c < arr.cols; ++c)
            same[c] = arr.written(row, c);
        comet::write_row(arr, row, same, cfg);
        rep.corrupted_per_step.push_back(comet::corrupted_count(arr, cfg));
    }
    for (uint32_t r = 0; r < height; ++r)
        for (uint32_t c = 0; c < width; ++c) {
            bool bad = comet::read_level(arr, r, 2 * c, cfg) != arr.written(r, 2 * c) ||
                       comet::read_level(arr, r, 2 * c + 1, cfg) != arr.written(r, 2 * c + 1);
            if (bad)
                ++rep.corrupted_pixels;
        }
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"COMET optical phase-change main memory model"};
    app.require_subcommand(1);

    std::string config_path, trace_path, out_path, csv_path;
    std::string arch_flag, policy_flag;
    uint64_t seed_flag = 0;
    bool seed_set = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--trace", trace_path, "trace file (engine grammar)");
    app.add_option("--out", out_path, "output path ('-' = stdout)");
    app.add_option("--csv", csv_path, "additional CSV output path");
    app.add_option("--arch", arch_flag, "comet|cosmos (overrides config)");
    app.add_option("--policy", policy_flag, "open|closed (overrides config)");
    app.add_option("--seed", seed_flag, "trace synthesis seed override")
        ->each([&](const std::string&) { seed_set = true; });

    auto* sim = app.add_subcommand("simulate", "run a trace, emit statistics");
    auto* power = app.add_subcommand("power", "emit the power-stack breakdown");
    auto* sweep = app.add_subcommand("sweep-b", "bit-density comparison table");
    auto* map = app.add_subcommand("map", "print the subarray mapping of an address");
    auto* lut = app.add_subcommand("lut", "dump the gain LUT as CSV");
    auto* demo = app.add_subcommand("corrupt-demo", "crossbar corruption report");
    auto* gen = app.add_subcommand("gen-trace", "synthesize a trace");
    // Let the global flags appear after the subcommand name too.
    for (auto* s : {sim, power, sweep, map, lut, demo, gen})
        s->fallthrough();

    uint64_t map_row = 0, map_col = 0;
    uint32_t map_bank = 0, map_channel = 0;
    map->add_option("--row", map_row, "row id")->required();
    map->add_option("--col", map_col, "column id")->required();
    map->add_option("--bank", map_bank, "bank id");
    map->add_option("--channel", map_channel, "channel id");

    std::string demo_input;
    uint32_t demo_width = 32, demo_height = 32, demo_writes = 4;
    bool demo_isolated = false, demo_as_published = false;
    demo->add_option("--input", demo_input,
                     "byte-matrix file: u32 width, u32 height (LE), then bytes");
    demo->add_option("--width", demo_width, "synthesized matrix width");
    demo->add_option("--height", demo_height, "synthesized matrix height");
    demo->add_option("--writes", demo_writes, "adjacent-row writes to apply");
    demo->add_flag("--isolated", demo_isolated, "use the isolated-cell model");
    demo->add_flag("--as-published", demo_as_published,
                   "label energies with the original 135 pJ assumption");

    std::string gen_pattern = "stream";
    uint64_t gen_count = 1000, gen_footprint = 1ull << 30, gen_stride = 1;
    double gen_read_fraction = 1.0, gen_inter_arrival = 0.0;
    uint32_t gen_line_bytes = 128;
    gen->add_option("--pattern", gen_pattern, "stream|stride|random");
    gen->add_option("--count", gen_count, "request count");
    gen->add_option("--read-fraction", gen_read_fraction, "fraction of reads");
    gen->add_option("--inter-arrival", gen_inter_arrival, "ns between requests");
    gen->add_option("--footprint", gen_footprint, "footprint bytes");
    gen->add_option("--line-bytes", gen_line_bytes, "cache line bytes");
    gen->add_option("--stride", gen_stride, "stride in lines");

    CLI11_PARSE(app, argc, argv);

    try {
        comet::RunConfig cfg = config_path.empty()
                                   ? comet::default_run_config()
                                   : comet::load_run_config(config_path);
        if (arch_flag == "comet")
            cfg.arch = comet::Architecture::Comet;
        else if (arch_flag == "cosmos")
            cfg.arch = comet::Architecture::Cosmos;
        else if (!arch_flag.empty())
            throw std::runtime_error("--arch must be comet or cosmos");
        if (policy_flag == "open")
            cfg.engine.policy = comet::RowPolicy::Open;
        else if (policy_flag == "closed")
            cfg.engine.policy = comet::RowPolicy::Closed;
        else if (!policy_flag.empty())
            throw std::runtime_error("--policy must be open or closed");
        if (seed_set) {
            if (!cfg.trace_spec)
                cfg.trace_spec = comet::TraceSpec{};
            cfg.trace_spec->seed = seed_flag;
        }

        if (sim->parsed()) {
            auto trace = load_trace(trace_path, cfg);
            comet::SimStats stats = run_arch(trace, cfg);
            std::string arch_name =
                cfg.arch == comet::Architecture::Comet ? "comet" : "cosmos";
            json out = comet::to_json(stats);
            out["arch"] = arch_name;
            write_text(out_path, out.dump(2) + "\n");
            if (!csv_path.empty())
                write_text(csv_path, comet::stats_csv_header() + "\n" +
                                         comet::stats_csv_row(arch_name, stats) + "\n");
        } else if (power->parsed()) {
            comet::PowerStack stack;
            if (cfg.arch == comet::Architecture::Comet) {
                stack = comet::power_stack(cfg.engine.geometry,
                                           cfg.engine.worst_case_path,
                                           cfg.engine.loss, cfg.engine.power,
                                           cfg.engine.mode, cfg.engine.soa_interval);
            } else {
                stack.laser_w = comet::laser_power_w(
                    cfg.cosmos.cols, cfg.cosmos.pulse_power_w,
                    comet::default_cosmos_path(cfg.cosmos, cfg.engine.loss),
                    cfg.engine.loss, cfg.engine.power);
                stack.soa_w = cfg.cosmos.banks * cfg.cosmos.soa_arrays_per_subarray *
                              cfg.cosmos.subarray_cols *
                              cfg.engine.power.intra_soa_power_w;
                stack.eo_tuning_w = 0.0;
            }
            write_text(out_path,
                       comet::to_json(stack, cfg.engine.power.tuning_shift_nm).dump(2) + "\n");
            if (!csv_path.empty()) {
                std::ostringstream c;
                c.precision(17);
                c << "component,watts\n"
                  << "laser," << stack.laser_w << "\n"
                  << "soa," << stack.soa_w << "\n"
                  << "eo_tuning," << stack.eo_tuning_w << "\n"
                  << "total," << stack.total_w() << "\n";
                write_text(csv_path, c.str());
            }
        } else if (sweep->parsed()) {
            auto trace = load_trace(trace_path, cfg);
            auto rows = comet::sweep_bit_density(trace, cfg.engine);
            json out = json::array();
            std::ostringstream c;
            c << comet::stats_csv_header() << ",capacity_bits,line_bits\n";
            for (const auto& r : rows) {
                json jr = comet::to_json(r.stats);
                jr["bits_per_cell"] = r.bits;
                jr["capacity_bits"] = r.geometry.capacity_bits;
                jr["line_bits_per_activation"] = r.line_bits;
                out.push_back(jr);
                c << comet::stats_csv_row("b" + std::to_string(r.bits), r.stats)
                  << ',' << r.geometry.capacity_bits << ',' << r.line_bits << "\n";
            }
            write_text(out_path, out.dump(2) + "\n");
            if (!csv_path.empty())
                write_text(csv_path, c.str());
        } else if (map->parsed()) {
            comet::PhysicalAddress p;
            p.row = map_row;
            p.column = map_col;
            p.bank = map_bank;
            p.channel = map_channel;
            auto m = comet::map_address(p, cfg.engine.geometry);
            write_text(out_path, comet::to_json(m).dump(2) + "\n");
        } else if (lut->parsed()) {
            std::ostringstream c;
            c << "index,gain_db\n";
            for (size_t i = 0; i < cfg.engine.lut.entries_db.size(); ++i)
                c << i << ',' << cfg.engine.lut.entries_db[i] << "\n";
            write_text(out_path, c.str());
        } else if (demo->parsed()) {
            std::vector<uint8_t> pixels;
            uint32_t width = demo_width, height = demo_height;
            if (!demo_input.empty()) {
                std::ifstream f(demo_input, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot open '" + demo_input + "'");
                uint32_t wh[2];
                f.read(reinterpret_cast<char*>(wh), sizeof wh);
                if (!f)
                    throw std::runtime_error("truncated matrix header");
                width = wh[0];
                height = wh[1];
                pixels.resize(size_t(width) * height);
                f.read(reinterpret_cast<char*>(pixels.data()),
                       static_cast<std::streamsize>(pixels.size()));
                if (!f)
                    throw std::runtime_error("truncated matrix payload");
            } else {
                // Deterministic diagonal gradient stand-in for an image.
                pixels.resize(size_t(width) * height);
                for (uint32_t r = 0; r < height; ++r)
                    for (uint32_t c = 0; c < width; ++c)
                        pixels[size_t(r) * width + c] =
                            static_cast<uint8_t>((r + c) * 255 / (width + height - 2));
            }
            DemoReport rep =
                corruption_demo(pixels, width, height, demo_writes, demo_isolated);
            json out{{"width", width},
                     {"height", height},
                     {"writes", demo_writes},
                     {"isolated_cells", demo_isolated},
                     {"write_energy_pj", demo_as_published ? 135.0 : 750.0},
                     {"energy_model", demo_as_published ? "as-published" : "corrected"},
                     {"corrupted_symbols_per_step", rep.corrupted_per_step},
                     {"total_symbols", rep.total_symbols},
                     {"corrupted_pixels", rep.corrupted_pixels},
                     {"total_pixels", rep.total_pixels},
                     {"corrupted_pixel_percent",
                      100.0 * rep.corrupted_pixels / rep.total_pixels}};
            write_text(out_path, out.dump(2) + "\n");
        } else if (gen->parsed()) {
            comet::TraceSpec spec = cfg.trace_spec ? *cfg.trace_spec : comet::TraceSpec{};
            if (gen->count("--pattern")) {
                if (gen_pattern == "stream") spec.pattern = comet::TraceSpec::Pattern::Stream;
                else if (gen_pattern == "stride") spec.pattern = comet::TraceSpec::Pattern::Stride;
                else if (gen_pattern == "random") spec.pattern = comet::TraceSpec::Pattern::Random;
                else throw std::runtime_error("--pattern must be stream|stride|random");
            }
            if (gen->count("--count")) spec.request_count = gen_count;
            if (gen->count("--read-fraction")) spec.read_fraction = gen_read_fraction;
            if (gen->count("--inter-arrival")) spec.inter_arrival_ns = gen_inter_arrival;
            if (gen->count("--footprint")) spec.footprint_bytes = gen_footprint;
            if (gen->count("--line-bytes")) spec.line_bytes = gen_line_bytes;
            if (gen->count("--stride")) spec.stride_lines = gen_stride;
            if (seed_set) spec.seed = seed_flag;
            std::ostringstream o;
            comet::write_trace(o, comet::generate(spec));
            write_text(out_path, o.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
