#include "comet/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace comet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("config: " + path + ": " + what);
}

template <typename T>
void get_field(const json& j, const std::string& path, const char* key, T& out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(path + "." + key, e.what());
    }
}

PathElement::Kind parse_kind(const std::string& s, const std::string& path) {
    using K = PathElement::Kind;
    if (s == "coupler") return K::Coupler;
    if (s == "passive-mr-through") return K::PassiveMrThrough;
    if (s == "passive-mr-drop") return K::PassiveMrDrop;
    if (s == "eo-mr-drop") return K::EoMrDrop;
    if (s == "eo-mr-through") return K::EoMrThrough;
    if (s == "waveguide") return K::Waveguide;
    if (s == "bend") return K::Bend;
    if (s == "gst-switch") return K::GstSwitch;
    if (s == "intra-soa") return K::IntraSoa;
    if (s == "attenuator") return K::Attenuator;
    fail(path, "unknown path element type '" + s + "'");
}

PathDescriptor parse_path(const json& arr, const std::string& path) {
    if (!arr.is_array())
        fail(path, "expected an array of path elements");
    PathDescriptor p;
    size_t i = 0;
    for (const auto& e : arr) {
        std::string epath = path + "[" + std::to_string(i++) + "]";
        if (!e.is_object() || !e.contains("type"))
            fail(epath, "expected an object with a 'type' field");
        PathElement el;
        el.kind = parse_kind(e.at("type").get<std::string>(), epath + ".type");
        el.amount = 1.0;
        for (const char* k : {"count", "length_cm", "gain_db", "db", "amount"})
            if (e.contains(k))
                el.amount = e.at(k).get<double>();
        p.push_back(el);
    }
    return p;
}

std::vector<LevelOverride> parse_overrides(const json& arr, const std::string& path) {
    if (!arr.is_array())
        fail(path, "expected an array of override rows");
    std::vector<LevelOverride> rows;
    size_t i = 0;
    for (const auto& e : arr) {
        std::string epath = path + "[" + std::to_string(i++) + "]";
        LevelOverride o{};
        try {
            o.level = e.at("level").get<uint32_t>();
            o.transmission = e.at("transmission").get<double>();
            o.latency_ns = e.at("latency_ns").get<double>();
            o.energy_pj = e.at("energy_pj").get<double>();
        } catch (const json::exception& ex) {
            fail(epath, ex.what());
        }
        rows.push_back(o);
    }
    return rows;
}

} // namespace

RunConfig default_run_config() {
    RunConfig c;
    c.engine = default_engine_config(MemoryGeometry{});
    return c;
}

RunConfig parse_run_config(const json& j) {
    RunConfig c;
    if (!j.is_object())
        fail("$", "top level must be an object");
    get_field(j, "$", "schema_version", c.schema_version);
    if (c.schema_version != 1)
        fail("$.schema_version", "unsupported version " +
                                     std::to_string(c.schema_version));

    if (j.contains("arch")) {
        std::string a = j.at("arch").get<std::string>();
        if (a == "comet") c.arch = Architecture::Comet;
        else if (a == "cosmos") c.arch = Architecture::Cosmos;
        else fail("$.arch", "expected 'comet' or 'cosmos', got '" + a + "'");
    }

    MemoryGeometry g;
    if (j.contains("geometry")) {
        const auto& jg = j.at("geometry");
        get_field(jg, "$.geometry", "banks", g.banks);
        get_field(jg, "$.geometry", "channels", g.channels);
        get_field(jg, "$.geometry", "subarray_count", g.subarray_count);
        get_field(jg, "$.geometry", "subarray_rows", g.subarray_rows);
        get_field(jg, "$.geometry", "subarray_cols", g.subarray_cols);
        get_field(jg, "$.geometry", "bits_per_cell", g.bits_per_cell);
    }

    EngineConfig& e = c.engine;
    e.geometry = validate_geometry(g);

    if (j.contains("timing")) {
        const auto& jt = j.at("timing");
        auto& t = e.timing;
        get_field(jt, "$.timing", "read_ns", t.read_ns);
        get_field(jt, "$.timing", "max_write_ns", t.max_write_ns);
        get_field(jt, "$.timing", "erase_ns", t.erase_ns);
        get_field(jt, "$.timing", "burst_ns", t.burst_ns);
        get_field(jt, "$.timing", "interface_ns", t.interface_ns);
        get_field(jt, "$.timing", "eo_tune_ns", t.eo_tune_ns);
        get_field(jt, "$.timing", "gst_switch_ns", t.gst_switch_ns);
        get_field(jt, "$.timing", "bus_width_bits", t.bus_width_bits);
        get_field(jt, "$.timing", "burst_length", t.burst_length);
    }
    if (j.contains("loss")) {
        const auto& jl = j.at("loss");
        auto& l = e.loss;
        get_field(jl, "$.loss", "coupling_db", l.coupling_db);
        get_field(jl, "$.loss", "mr_drop_db", l.mr_drop_db);
        get_field(jl, "$.loss", "mr_through_db", l.mr_through_db);
        get_field(jl, "$.loss", "eo_mr_drop_db", l.eo_mr_drop_db);
        get_field(jl, "$.loss", "eo_mr_through_db", l.eo_mr_through_db);
        get_field(jl, "$.loss", "propagation_db_per_cm", l.propagation_db_per_cm);
        get_field(jl, "$.loss", "bend_db_per_90", l.bend_db_per_90);
        get_field(jl, "$.loss", "gst_switch_db", l.gst_switch_db);
        get_field(jl, "$.loss", "interface_soa_gain_db", l.interface_soa_gain_db);
        get_field(jl, "$.loss", "intra_soa_gain_db", l.intra_soa_gain_db);
        get_field(jl, "$.loss", "soa_saturation_db", l.soa_saturation_db);
    }
    if (j.contains("power")) {
        const auto& jp = j.at("power");
        auto& p = e.power;
        get_field(jp, "$.power", "eo_tuning_w_per_nm", p.eo_tuning_w_per_nm);
        get_field(jp, "$.power", "tuning_shift_nm", p.tuning_shift_nm);
        get_field(jp, "$.power", "cell_power_crystalline_w", p.cell_power_crystalline_w);
        get_field(jp, "$.power", "cell_power_amorphous_w", p.cell_power_amorphous_w);
        get_field(jp, "$.power", "intra_soa_power_w", p.intra_soa_power_w);
        get_field(jp, "$.power", "wall_plug_efficiency", p.wall_plug_efficiency);
    }

    ResetMode mode = ResetMode::Crystalline;
    std::optional<std::vector<LevelOverride>> overrides;
    if (j.contains("level_table")) {
        const auto& jl = j.at("level_table");
        if (jl.contains("reset_mode")) {
            std::string m = jl.at("reset_mode").get<std::string>();
            if (m == "crystalline") mode = ResetMode::Crystalline;
            else if (m == "amorphous") mode = ResetMode::Amorphous;
            else fail("$.level_table.reset_mode", "expected 'crystalline' or 'amorphous'");
        }
        if (jl.contains("overrides"))
            overrides = parse_overrides(jl.at("overrides"), "$.level_table.overrides");
        if (jl.contains("override_file")) {
            std::ifstream f(jl.at("override_file").get<std::string>());
            if (!f)
                fail("$.level_table.override_file", "cannot open file");
            json jf = json::parse(f);
            overrides = parse_overrides(jf.contains("overrides") ? jf.at("overrides") : jf,
                                        "$.level_table.override_file");
        }
    }
    e.mode = mode == ResetMode::Crystalline ? ProgramMode::CrystallineReset
                                            : ProgramMode::AmorphousReset;
    e.levels = build_level_table(g.bits_per_cell, mode,
                                 overrides ? &*overrides : nullptr);

    uint32_t interval = 46;
    double per_row_loss = e.loss.eo_mr_through_db;
    if (j.contains("lut")) {
        get_field(j.at("lut"), "$.lut", "interval", interval);
        get_field(j.at("lut"), "$.lut", "per_row_loss_db", per_row_loss);
    }
    e.soa_interval = interval;
    e.lut = build_gain_lut(g.bits_per_cell, g.subarray_rows, interval, per_row_loss);

    if (j.contains("policy")) {
        std::string p = j.at("policy").get<std::string>();
        if (p == "open") e.policy = RowPolicy::Open;
        else if (p == "closed") e.policy = RowPolicy::Closed;
        else fail("$.policy", "expected 'open' or 'closed', got '" + p + "'");
    }
    get_field(j, "$", "line_bytes", e.line_bytes);
    if (j.contains("write_level"))
        e.write_level = j.at("write_level").get<uint32_t>();

    double die_length_cm = 2.0;
    if (j.contains("path"))
        get_field(j.at("path"), "$.path", "die_length_cm", die_length_cm);
    if (j.contains("worst_case_path"))
        e.worst_case_path = parse_path(j.at("worst_case_path"), "$.worst_case_path");
    else
        e.worst_case_path =
            default_comet_path(e.geometry, e.loss, die_length_cm, e.soa_interval);

    if (j.contains("cosmos")) {
        const auto& jc = j.at("cosmos");
        auto& cb = c.cosmos;
        get_field(jc, "$.cosmos", "banks", cb.banks);
        get_field(jc, "$.cosmos", "rows", cb.rows);
        get_field(jc, "$.cosmos", "cols", cb.cols);
        get_field(jc, "$.cosmos", "bits_per_cell", cb.bits_per_cell);
        get_field(jc, "$.cosmos", "subarray_rows", cb.subarray_rows);
        get_field(jc, "$.cosmos", "subarray_cols", cb.subarray_cols);
        get_field(jc, "$.cosmos", "levels", cb.levels);
        get_field(jc, "$.cosmos", "level_spacing_fraction", cb.level_spacing_fraction);
        get_field(jc, "$.cosmos", "crosstalk_db", cb.crosstalk_db);
        get_field(jc, "$.cosmos", "write_pulse_energy_pj", cb.write_pulse_energy_pj);
        get_field(jc, "$.cosmos", "pulse_power_w", cb.pulse_power_w);
        get_field(jc, "$.cosmos", "disturbance_fraction", cb.disturbance_fraction);
        get_field(jc, "$.cosmos", "disturbance_sign", cb.disturbance_sign);
        get_field(jc, "$.cosmos", "soa_arrays_per_subarray", cb.soa_arrays_per_subarray);
        get_field(jc, "$.cosmos", "worst_case_cell_loss_db", cb.worst_case_cell_loss_db);
        get_field(jc, "$.cosmos", "pcm_switch_db", cb.pcm_switch_db);
        get_field(jc, "$.cosmos", "isolated_cells", cb.isolated_cells);
        if (jc.contains("timing")) {
            const auto& jt = jc.at("timing");
            auto& t = cb.timing;
            get_field(jt, "$.cosmos.timing", "write_ns", t.write_ns);
            get_field(jt, "$.cosmos.timing", "erase_ns", t.erase_ns);
            get_field(jt, "$.cosmos.timing", "read_ns", t.read_ns);
            get_field(jt, "$.cosmos.timing", "burst_ns", t.burst_ns);
            get_field(jt, "$.cosmos.timing", "interface_ns", t.interface_ns);
            get_field(jt, "$.cosmos.timing", "subarray_switch_ns", t.subarray_switch_ns);
            get_field(jt, "$.cosmos.timing", "bus_width_bits", t.bus_width_bits);
            get_field(jt, "$.cosmos.timing", "burst_length", t.burst_length);
        }
    }

    if (j.contains("trace_spec")) {
        const auto& jt = j.at("trace_spec");
        TraceSpec s;
        if (jt.contains("pattern")) {
            std::string p = jt.at("pattern").get<std::string>();
            if (p == "stream") s.pattern = TraceSpec::Pattern::Stream;
            else if (p == "stride") s.pattern = TraceSpec::Pattern::Stride;
            else if (p == "random") s.pattern = TraceSpec::Pattern::Random;
            else fail("$.trace_spec.pattern", "expected stream|stride|random");
        }
        get_field(jt, "$.trace_spec", "stride_lines", s.stride_lines);
        get_field(jt, "$.trace_spec", "seed", s.seed);
        get_field(jt, "$.trace_spec", "request_count", s.request_count);
        get_field(jt, "$.trace_spec", "read_fraction", s.read_fraction);
        get_field(jt, "$.trace_spec", "inter_arrival_ns", s.inter_arrival_ns);
        get_field(jt, "$.trace_spec", "footprint_bytes", s.footprint_bytes);
        get_field(jt, "$.trace_spec", "line_bytes", s.line_bytes);
        c.trace_spec = s;
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw std::runtime_error("config: '" + path + "': " + e.what());
    }
    return parse_run_config(j);
}

json to_json(const SimStats& s) {
    return json{{"reads", s.reads},
                {"writes", s.writes},
                {"decode_errors", s.decode_errors},
                {"total_bits", s.total_bits},
                {"span_ns", s.span_ns},
                {"avg_latency_ns", s.avg_latency_ns},
                {"p50_latency_ns", s.p50_latency_ns},
                {"p95_latency_ns", s.p95_latency_ns},
                {"p99_latency_ns", s.p99_latency_ns},
                {"max_latency_ns", s.max_latency_ns},
                {"bandwidth_bytes_per_s", s.bandwidth_bytes_per_s},
                {"laser_energy_pj", s.laser_energy_pj},
                {"soa_energy_pj", s.soa_energy_pj},
                {"eo_energy_pj", s.eo_energy_pj},
                {"write_energy_pj", s.write_energy_pj},
                {"total_energy_pj", s.total_energy_pj()},
                {"epb_pj_per_bit", s.epb_pj_per_bit}};
}

json to_json(const PowerStack& p, double tuning_shift_nm) {
    return json{{"laser_w", p.laser_w},
                {"soa_w", p.soa_w},
                {"eo_tuning_w", p.eo_tuning_w},
                {"total_w", p.total_w()},
                {"assumed_tuning_shift_nm", tuning_shift_nm}};
}

json to_json(const MappedAddress& m) {
    return json{{"channel", m.channel},
                {"subarray_id", m.subarray},
                {"subarray_row", m.subarray_row},
                {"bank", m.bank},
                {"subarray_col", m.subarray_col}};
}

json to_json(const GainLUT& lut) {
    const char* sel = lut.selector == LutSelector::Identity   ? "identity"
                      : lut.selector == LutSelector::CeilDiv4 ? "ceil-div-4"
                                                              : "ceil-div-10";
    return json{{"bits", lut.bits},
                {"row_modulus", lut.row_modulus},
                {"selector", sel},
                {"stride", lut.stride},
                {"raw_entries", lut.raw_entries},
                {"entries_db", lut.entries_db}};
}

std::string stats_csv_header() {
    return "label,reads,writes,decode_errors,total_bits,span_ns,avg_latency_ns,"
           "p50_latency_ns,p95_latency_ns,p99_latency_ns,max_latency_ns,"
           "bandwidth_bytes_per_s,laser_energy_pj,soa_energy_pj,eo_energy_pj,"
           "write_energy_pj,total_energy_pj,epb_pj_per_bit";
}

std::string stats_csv_row(const std::string& label, const SimStats& s) {
    std::ostringstream o;
    o.precision(17);
    o << label << ',' << s.reads << ',' << s.writes << ',' << s.decode_errors
      << ',' << s.total_bits << ',' << s.span_ns << ',' << s.avg_latency_ns
      << ',' << s.p50_latency_ns << ',' << s.p95_latency_ns << ','
      << s.p99_latency_ns << ',' << s.max_latency_ns << ','
      << s.bandwidth_bytes_per_s << ',' << s.laser_energy_pj << ','
      << s.soa_energy_pj << ',' << s.eo_energy_pj << ',' << s.write_energy_pj
      << ',' << s.total_energy_pj() << ',' << s.epb_pj_per_bit;
    return o.str();
}

} // namespace comet
