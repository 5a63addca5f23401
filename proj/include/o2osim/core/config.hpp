#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "o2osim/core/error.hpp"
#include "o2osim/core/hash.hpp"
#include "o2osim/core/toml.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

// One Gaussian bump in the daily order-generation rate.
struct OrderPeak {
    int step_of_day = 0;
    double intensity = 0.0;

    friend bool operator==(const OrderPeak&, const OrderPeak&) = default;
};

// Full run configuration. Defaults follow the 100-rider / 30-day setup;
// preset_paper_main() gives the 6-rider / 20-day one. Two presets exist
// because the source material describes both without reconciling them.
struct SimConfig {
    int map_width = 200;
    int map_height = 200;
    int n_riders = 100;
    int steps_per_day = 120;
    int total_steps = 3600;
    int max_held_orders = 3;
    int move_units_per_step = 30;
    double initial_speed = 80.0;
    std::vector<OrderPeak> order_peaks = {{30, 10.0}, {60, 13.0}, {90, 10.0}};
    std::uint64_t rng_seed = 7;
    FrameworkVariant framework_variant = FrameworkVariant::Traditional;
    double k_pleasure = 0.05;  // pleasure gain per currency unit
    double k_arousal = 0.02;   // arousal gain per stamina unit (see README
                               // for the sign convention)
    double pad_decay = 0.05;   // in [0,1]; geometric pull toward neutral
    int memory_ttl = 240;      // steps; 2 simulated days at 120/day
    int cluster_k = 3;         // per emotion sub-corpus
    std::vector<DiligenceLevel> diligence_mix = {
        DiligenceLevel::Lazy, DiligenceLevel::Average,
        DiligenceLevel::VeryDiligent};

    // Dispatch scoring: w1 * normalized-rank + w2 * (-distance / diagonal).
    double assign_rank_weight = 1.0;
    double assign_distance_weight = 1.0;

    // Stamina/speed coupling.
    double stamina_per_cell = 0.05;    // c1
    double stamina_speed_factor = 0.5; // c2
    double speed_floor = 0.3;          // fraction of initial speed at stamina 0
    double rest_regen_per_step = 5.0;  // stamina per Resting tick

    int rest_start_step = 100;   // step-of-day; no new accepts from here on
    int order_timeout_steps = 5; // Pending orders expire after this many steps

    // Order pricing: value = base + per_cell * manhattan(maker, booker)
    // + jitter * uniform(-1, 1), floored at 1.
    double order_value_base = 8.0;
    double order_value_per_cell = 0.15;
    double order_value_jitter = 3.0;

    double peak_sigma_steps = 6.0; // width of each order-generation bump
    int wander_radius = 15;        // cells; box around the rider
    int snapshot_every = 0;        // world snapshot interval; 0 disables

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline SimConfig preset_paper_appendix() {
    return SimConfig{};
}

inline SimConfig preset_paper_main() {
    SimConfig cfg;
    cfg.n_riders = 6;
    cfg.total_steps = 2400; // 20 days
    cfg.order_peaks = {{30, 0.6}, {60, 0.8}, {90, 0.6}};
    cfg.diligence_mix = {
        DiligenceLevel::Lazy,         DiligenceLevel::Lazy,
        DiligenceLevel::Average,      DiligenceLevel::Average,
        DiligenceLevel::VeryDiligent, DiligenceLevel::VeryDiligent};
    return cfg;
}

inline SimConfig preset_config(const std::string& name) {
    if (name == "paper-main") return preset_paper_main();
    if (name == "paper-appendix") return preset_paper_appendix();
    throw ConfigError("unknown preset '" + name +
                      "' (expected paper-main or paper-appendix)");
}

// Returns the config unchanged if every invariant holds; otherwise throws a
// ConfigError naming the first violated field.
inline SimConfig validate_config(SimConfig cfg) {
    auto fail = [](const std::string& field, const std::string& what) {
        throw ConfigError(field + ": " + what);
    };
    if (cfg.map_width < 1) fail("map_width", "must be >= 1");
    if (cfg.map_height < 1) fail("map_height", "must be >= 1");
    if (cfg.n_riders < 1) fail("n_riders", "must be >= 1");
    if (cfg.steps_per_day < 1) fail("steps_per_day", "must be >= 1");
    if (cfg.total_steps < 1) fail("total_steps", "must be >= 1");
    if (cfg.total_steps % cfg.steps_per_day != 0) {
        fail("total_steps",
             "not a multiple of steps_per_day (" +
                 std::to_string(cfg.total_steps) + " vs " +
                 std::to_string(cfg.steps_per_day) + ")");
    }
    if (cfg.max_held_orders < 1) fail("max_held_orders", "must be >= 1");
    if (cfg.move_units_per_step < 1) fail("move_units_per_step", "must be >= 1");
    if (!(cfg.initial_speed > 0.0)) fail("initial_speed", "must be > 0");
    for (const auto& p : cfg.order_peaks) {
        if (p.step_of_day < 0 || p.step_of_day >= cfg.steps_per_day) {
            fail("order_peaks", "peak step " + std::to_string(p.step_of_day) +
                                    " outside [0, steps_per_day)");
        }
        if (!(p.intensity >= 0.0)) fail("order_peaks", "intensity must be >= 0");
    }
    if (!std::isfinite(cfg.k_pleasure)) fail("k_pleasure", "must be finite");
    if (!std::isfinite(cfg.k_arousal)) fail("k_arousal", "must be finite");
    if (!(cfg.pad_decay >= 0.0 && cfg.pad_decay <= 1.0)) {
        fail("pad_decay", "must lie in [0, 1]");
    }
    if (cfg.memory_ttl < 0) fail("memory_ttl", "must be >= 0");
    if (cfg.cluster_k < 1) fail("cluster_k", "must be >= 1");
    if (cfg.diligence_mix.empty()) fail("diligence_mix", "must be non-empty");
    if (!(cfg.assign_rank_weight >= 0.0)) fail("assign_rank_weight", "must be >= 0");
    if (!(cfg.assign_distance_weight >= 0.0)) {
        fail("assign_distance_weight", "must be >= 0");
    }
    if (!(cfg.stamina_per_cell >= 0.0)) fail("stamina_per_cell", "must be >= 0");
    if (!(cfg.stamina_speed_factor >= 0.0)) {
        fail("stamina_speed_factor", "must be >= 0");
    }
    if (!(cfg.speed_floor > 0.0 && cfg.speed_floor <= 1.0)) {
        fail("speed_floor", "must lie in (0, 1]");
    }
    if (!(cfg.rest_regen_per_step >= 0.0)) {
        fail("rest_regen_per_step", "must be >= 0");
    }
    if (cfg.rest_start_step < 1 || cfg.rest_start_step > cfg.steps_per_day) {
        fail("rest_start_step", "must lie in [1, steps_per_day]");
    }
    if (cfg.order_timeout_steps < 1) fail("order_timeout_steps", "must be >= 1");
    if (!(cfg.order_value_base >= 0.0)) fail("order_value_base", "must be >= 0");
    if (!(cfg.order_value_per_cell >= 0.0)) {
        fail("order_value_per_cell", "must be >= 0");
    }
    if (!(cfg.order_value_jitter >= 0.0)) {
        fail("order_value_jitter", "must be >= 0");
    }
    if (!(cfg.peak_sigma_steps > 0.0)) fail("peak_sigma_steps", "must be > 0");
    if (cfg.wander_radius < 1) fail("wander_radius", "must be >= 1");
    if (cfg.snapshot_every < 0) fail("snapshot_every", "must be >= 0");
    return cfg;
}

// Serialized form doubles as the snapshot written into run directories and
// as the input to config_hash. Field order is fixed.
inline std::string config_to_toml(const SimConfig& cfg) {
    std::string out;
    auto put_int = [&](const char* k, long long v) {
        out += k;
        out += " = ";
        out += std::to_string(v);
        out += "\n";
    };
    auto put_float = [&](const char* k, double v) {
        out += k;
        out += " = ";
        out += toml_float(v);
        out += "\n";
    };
    auto put_str = [&](const char* k, const std::string& v) {
        out += k;
        out += " = ";
        out += toml_escape(v);
        out += "\n";
    };
    put_int("map_width", cfg.map_width);
    put_int("map_height", cfg.map_height);
    put_int("n_riders", cfg.n_riders);
    put_int("steps_per_day", cfg.steps_per_day);
    put_int("total_steps", cfg.total_steps);
    put_int("max_held_orders", cfg.max_held_orders);
    put_int("move_units_per_step", cfg.move_units_per_step);
    put_float("initial_speed", cfg.initial_speed);
    out += "order_peaks = [";
    for (std::size_t i = 0; i < cfg.order_peaks.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(cfg.order_peaks[i].step_of_day) + ", " +
               toml_float(cfg.order_peaks[i].intensity) + "]";
    }
    out += "]\n";
    put_int("rng_seed", static_cast<long long>(cfg.rng_seed));
    put_str("framework_variant", variant_name(cfg.framework_variant));
    put_float("k_pleasure", cfg.k_pleasure);
    put_float("k_arousal", cfg.k_arousal);
    put_float("pad_decay", cfg.pad_decay);
    put_int("memory_ttl", cfg.memory_ttl);
    put_int("cluster_k", cfg.cluster_k);
    out += "diligence_mix = [";
    for (std::size_t i = 0; i < cfg.diligence_mix.size(); ++i) {
        if (i) out += ", ";
        out += toml_escape(diligence_name(cfg.diligence_mix[i]));
    }
    out += "]\n";
    put_float("assign_rank_weight", cfg.assign_rank_weight);
    put_float("assign_distance_weight", cfg.assign_distance_weight);
    put_float("stamina_per_cell", cfg.stamina_per_cell);
    put_float("stamina_speed_factor", cfg.stamina_speed_factor);
    put_float("speed_floor", cfg.speed_floor);
    put_float("rest_regen_per_step", cfg.rest_regen_per_step);
    put_int("rest_start_step", cfg.rest_start_step);
    put_int("order_timeout_steps", cfg.order_timeout_steps);
    put_float("order_value_base", cfg.order_value_base);
    put_float("order_value_per_cell", cfg.order_value_per_cell);
    put_float("order_value_jitter", cfg.order_value_jitter);
    put_float("peak_sigma_steps", cfg.peak_sigma_steps);
    put_int("wander_radius", cfg.wander_radius);
    put_int("snapshot_every", cfg.snapshot_every);
    return out;
}

inline std::uint64_t config_hash(const SimConfig& cfg) {
    return fnv1a64(config_to_toml(cfg));
}

namespace config_detail {

inline long long get_int(const TomlTable& t, const std::string& key,
                         long long fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::Integer) {
        throw ConfigError(key + ": expected an integer");
    }
    return it->second.integer;
}

inline double get_float(const TomlTable& t, const std::string& key,
                        double fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::Integer &&
        it->second.kind != TomlValue::Kind::Float) {
        throw ConfigError(key + ": expected a number");
    }
    return it->second.as_number();
}

inline std::string get_str(const TomlTable& t, const std::string& key,
                           const std::string& fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::String) {
        throw ConfigError(key + ": expected a string");
    }
    return it->second.str;
}

} // namespace config_detail

// Applies a parsed TOML table on top of `base`. Unknown keys are an error
// so typos in config files do not silently fall back to defaults.
inline SimConfig config_from_toml(const TomlTable& table,
                                  SimConfig base = SimConfig{}) {
    using namespace config_detail;
    static const char* known[] = {
        "map_width", "map_height", "n_riders", "steps_per_day", "total_steps",
        "max_held_orders", "move_units_per_step", "initial_speed",
        "order_peaks", "rng_seed", "framework_variant", "k_pleasure",
        "k_arousal", "pad_decay", "memory_ttl", "cluster_k", "diligence_mix",
        "assign_rank_weight", "assign_distance_weight", "stamina_per_cell",
        "stamina_speed_factor", "speed_floor", "rest_regen_per_step",
        "rest_start_step", "order_timeout_steps", "order_value_base",
        "order_value_per_cell", "order_value_jitter", "peak_sigma_steps",
        "wander_radius", "snapshot_every"};
    for (const auto& [key, _] : table) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }

    SimConfig cfg = base;
    cfg.map_width = static_cast<int>(get_int(table, "map_width", cfg.map_width));
    cfg.map_height =
        static_cast<int>(get_int(table, "map_height", cfg.map_height));
    cfg.n_riders = static_cast<int>(get_int(table, "n_riders", cfg.n_riders));
    cfg.steps_per_day =
        static_cast<int>(get_int(table, "steps_per_day", cfg.steps_per_day));
    cfg.total_steps =
        static_cast<int>(get_int(table, "total_steps", cfg.total_steps));
    cfg.max_held_orders = static_cast<int>(
        get_int(table, "max_held_orders", cfg.max_held_orders));
    cfg.move_units_per_step = static_cast<int>(
        get_int(table, "move_units_per_step", cfg.move_units_per_step));
    cfg.initial_speed = get_float(table, "initial_speed", cfg.initial_speed);
    if (auto it = table.find("order_peaks"); it != table.end()) {
        if (it->second.kind != TomlValue::Kind::Array) {
            throw ConfigError("order_peaks: expected an array of [step, intensity]");
        }
        cfg.order_peaks.clear();
        for (const auto& item : it->second.items) {
            if (item.kind != TomlValue::Kind::Array || item.items.size() != 2) {
                throw ConfigError("order_peaks: each entry must be [step, intensity]");
            }
            cfg.order_peaks.push_back(
                {static_cast<int>(item.items[0].as_number()),
                 item.items[1].as_number()});
        }
    }
    cfg.rng_seed = static_cast<std::uint64_t>(
        get_int(table, "rng_seed", static_cast<long long>(cfg.rng_seed)));
    {
        std::string v = get_str(table, "framework_variant",
                                variant_name(cfg.framework_variant));
        auto parsed = parse_variant(v);
        if (!parsed) throw ConfigError("framework_variant: unknown value '" + v + "'");
        cfg.framework_variant = *parsed;
    }
    cfg.k_pleasure = get_float(table, "k_pleasure", cfg.k_pleasure);
    cfg.k_arousal = get_float(table, "k_arousal", cfg.k_arousal);
    cfg.pad_decay = get_float(table, "pad_decay", cfg.pad_decay);
    cfg.memory_ttl =
        static_cast<int>(get_int(table, "memory_ttl", cfg.memory_ttl));
    cfg.cluster_k = static_cast<int>(get_int(table, "cluster_k", cfg.cluster_k));
    if (auto it = table.find("diligence_mix"); it != table.end()) {
        if (it->second.kind != TomlValue::Kind::Array) {
            throw ConfigError("diligence_mix: expected an array of strings");
        }
        cfg.diligence_mix.clear();
        for (const auto& item : it->second.items) {
            if (item.kind != TomlValue::Kind::String) {
                throw ConfigError("diligence_mix: entries must be strings");
            }
            auto d = parse_diligence(item.str);
            if (!d) {
                throw ConfigError("diligence_mix: unknown level '" + item.str + "'");
            }
            cfg.diligence_mix.push_back(*d);
        }
    }
    cfg.assign_rank_weight =
        get_float(table, "assign_rank_weight", cfg.assign_rank_weight);
    cfg.assign_distance_weight =
        get_float(table, "assign_distance_weight", cfg.assign_distance_weight);
    cfg.stamina_per_cell =
        get_float(table, "stamina_per_cell", cfg.stamina_per_cell);
    cfg.stamina_speed_factor =
        get_float(table, "stamina_speed_factor", cfg.stamina_speed_factor);
    cfg.speed_floor = get_float(table, "speed_floor", cfg.speed_floor);
    cfg.rest_regen_per_step =
        get_float(table, "rest_regen_per_step", cfg.rest_regen_per_step);
    cfg.rest_start_step =
        static_cast<int>(get_int(table, "rest_start_step", cfg.rest_start_step));
    cfg.order_timeout_steps = static_cast<int>(
        get_int(table, "order_timeout_steps", cfg.order_timeout_steps));
    cfg.order_value_base =
        get_float(table, "order_value_base", cfg.order_value_base);
    cfg.order_value_per_cell =
        get_float(table, "order_value_per_cell", cfg.order_value_per_cell);
    cfg.order_value_jitter =
        get_float(table, "order_value_jitter", cfg.order_value_jitter);
    cfg.peak_sigma_steps =
        get_float(table, "peak_sigma_steps", cfg.peak_sigma_steps);
    cfg.wander_radius =
        static_cast<int>(get_int(table, "wander_radius", cfg.wander_radius));
    cfg.snapshot_every =
        static_cast<int>(get_int(table, "snapshot_every", cfg.snapshot_every));
    return cfg;
}

inline SimConfig config_from_file(const std::string& path,
                                  SimConfig base = SimConfig{}) {
    return config_from_toml(parse_toml_file(path), base);
}

// Every scalar field can be overridden through O2OSIM_<FIELD> (upper-case
// field name). List fields come from the config file only.
inline void apply_env_overrides(SimConfig& cfg) {
    auto env = [](const char* name) -> const char* {
        return std::getenv(name);
    };
    auto as_table_entry = [](const char* raw) {
        // Reuse the TOML value parser so env values follow the same syntax.
        return parse_toml(std::string("value = ") + raw);
    };
    static const char* scalar_keys[] = {
        "map_width", "map_height", "n_riders", "steps_per_day", "total_steps",
        "max_held_orders", "move_units_per_step", "initial_speed", "rng_seed",
        "framework_variant", "k_pleasure", "k_arousal", "pad_decay",
        "memory_ttl", "cluster_k", "assign_rank_weight",
        "assign_distance_weight", "stamina_per_cell", "stamina_speed_factor",
        "speed_floor", "rest_regen_per_step", "rest_start_step",
        "order_timeout_steps", "order_value_base", "order_value_per_cell",
        "order_value_jitter", "peak_sigma_steps", "wander_radius",
        "snapshot_every"};
    TomlTable overrides;
    for (const char* key : scalar_keys) {
        std::string var = "O2OSIM_";
        for (const char* p = key; *p; ++p) {
            var.push_back(*p == '-' ? '_'
                                    : static_cast<char>(std::toupper(
                                          static_cast<unsigned char>(*p))));
        }
        if (const char* raw = env(var.c_str())) {
            TomlTable one;
            try {
                one = as_table_entry(raw);
            } catch (const ConfigError&) {
                // Strings may be given unquoted in the environment.
                one = as_table_entry(("\"" + std::string(raw) + "\"").c_str());
            }
            overrides[key] = one.at("value");
        }
    }
    if (!overrides.empty()) cfg = config_from_toml(overrides, cfg);
}

} // namespace o2o
