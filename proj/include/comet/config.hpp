#ifndef COMET_CONFIG_HPP
#define COMET_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "comet/baseline_cosmos.hpp"
#include "comet/engine.hpp"
#include "comet/trace_synth.hpp"

namespace comet {

enum class Architecture { Comet, Cosmos };

// Everything one run needs, loadable from a single JSON document.
// Every field is optional; defaults are the nominal architecture values.
struct RunConfig {
    int schema_version = 1;
    Architecture arch = Architecture::Comet;
    EngineConfig engine;       // geometry/timing/loss/power/levels/LUT/path
    CrossbarConfig cosmos;
    std::optional<TraceSpec> trace_spec; // used when no trace file is given
};

RunConfig default_run_config();

// Parses a config document, applying defaults field by field. Unknown or
// ill-typed fields throw with a path-to-field diagnostic.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const nlohmann::json& j);

nlohmann::json to_json(const SimStats& s);
nlohmann::json to_json(const PowerStack& p, double tuning_shift_nm);
nlohmann::json to_json(const MappedAddress& m);
nlohmann::json to_json(const GainLUT& lut);

std::string stats_csv_header();
std::string stats_csv_row(const std::string& label, const SimStats& s);

} // namespace comet

#endif
