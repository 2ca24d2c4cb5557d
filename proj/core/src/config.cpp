#include "bethelab/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace bethe {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::DensitySweep: return "density_sweep";
        case ExperimentKind::SumRules: return "sum_rules";
        case ExperimentKind::EntropyBound: return "entropy_bound";
        case ExperimentKind::ZeroPole: return "zero_pole";
        case ExperimentKind::BlockLab: return "block_lab";
        case ExperimentKind::StripAssembly: return "strip_assembly";
    }
    return "?";
}

TreePotential PotentialSpec::realize() const {
    switch (kind) {
        case PotentialKind::FiniteTable: {
            std::vector<std::pair<VertexAddress, double>> parsed;
            parsed.reserve(entries.size());
            for (const auto& [addr, val] : entries)
                parsed.emplace_back(VertexAddress::parse(addr), val);
            return TreePotential::finite_table(parsed);
        }
        case PotentialKind::Symmetric: return TreePotential::symmetric(values);
        case PotentialKind::SeededRandom: return TreePotential::seeded_random(seed, envelope);
    }
    return {};
}

JsonValue PotentialSpec::echo() const {
    JsonValue v = JsonValue::object();
    switch (kind) {
        case PotentialKind::FiniteTable: {
            v.set("kind", JsonValue::string("finite_table"));
            JsonValue tab = JsonValue::object();
            for (const auto& [addr, val] : entries) tab.set(addr, JsonValue::number(val));
            v.set("entries", std::move(tab));
            break;
        }
        case PotentialKind::Symmetric: {
            v.set("kind", JsonValue::string("symmetric"));
            JsonValue arr = JsonValue::array();
            for (double q : values) arr.push_back(JsonValue::number(q));
            v.set("values", std::move(arr));
            break;
        }
        case PotentialKind::SeededRandom: {
            v.set("kind", JsonValue::string("random"));
            v.set("seed", JsonValue::integer(static_cast<std::int64_t>(seed)));
            JsonValue arr = JsonValue::array();
            for (double q : envelope) arr.push_back(JsonValue::number(q));
            v.set("envelope", std::move(arr));
            break;
        }
    }
    return v;
}

JsonValue ExperimentConfig::echo() const {
    JsonValue v = JsonValue::object();
    v.set("experiment", JsonValue::string(to_string(experiment)));
    if (experiment != ExperimentKind::BlockLab && experiment != ExperimentKind::StripAssembly)
        v.set("potential", potential.echo());
    JsonValue grids = JsonValue::object();
    grids.set("band_nodes", JsonValue::integer(band_nodes));
    grids.set("boundary_nodes", JsonValue::integer(boundary_nodes));
    v.set("grids", std::move(grids));
    JsonValue tols = JsonValue::object();
    tols.set("quadrature", JsonValue::number(quadrature_tol));
    tols.set("bisection", JsonValue::number(bisection_tol));
    v.set("tolerances", std::move(tols));
    if (experiment == ExperimentKind::EntropyBound)
        v.set("truncation_depth", JsonValue::integer(truncation_depth));
    v.set("seed", JsonValue::integer(static_cast<std::int64_t>(seed)));
    if (experiment == ExperimentKind::BlockLab) {
        JsonValue b = JsonValue::object();
        b.set("n", JsonValue::integer(block.n));
        b.set("seed", JsonValue::integer(static_cast<std::int64_t>(block.seed)));
        b.set("b_eps", JsonValue::number(block.b_eps));
        b.set("left", JsonValue::number(block.left));
        b.set("half_height", JsonValue::number(block.half_height));
        b.set("nodes_per_side", JsonValue::integer(block.nodes_per_side));
        b.set("coupling", JsonValue::number(block.coupling));
        v.set("block", std::move(b));
    }
    if (experiment == ExperimentKind::StripAssembly) {
        JsonValue s = JsonValue::object();
        s.set("q", JsonValue::string(strip.q_kind));
        s.set("amplitude", JsonValue::number(strip.amplitude));
        s.set("n_modes", JsonValue::integer(strip.n_modes));
        s.set("length", JsonValue::number(strip.length));
        JsonValue pts = JsonValue::array();
        for (int g : strip.grid_points) pts.push_back(JsonValue::integer(g));
        s.set("grid_points", std::move(pts));
        v.set("strip", std::move(s));
    }
    JsonValue out = JsonValue::object();
    out.set("path", JsonValue::string(out_path));
    out.set("format", JsonValue::string(format == OutputFormat::Json ? "json" : "csv"));
    v.set("output", std::move(out));
    return v;
}

namespace {

// Best-effort line anchor: first occurrence of the quoted key.
int line_of_key(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

struct Validator {
    const std::string& text;
    std::vector<ValidationError>& errors;

    void fail(const std::string& path, const std::string& key, const std::string& msg) {
        errors.push_back({path, line_of_key(text, key), msg});
    }

    void check_keys(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                    return it.key() == k;
                }) == allowed.end())
                fail(path.empty() ? it.key() : path + "." + it.key(), it.key(),
                     "unknown key '" + it.key() + "'");
        }
    }

    bool require(const json& obj, const std::string& path, const char* key,
                 json::value_t type, bool mandatory = true) {
        if (!obj.contains(key)) {
            if (mandatory) fail(path.empty() ? key : path + "." + key, key, "missing key");
            return false;
        }
        const json& v = obj.at(key);
        const bool numeric_ok =
            (type == json::value_t::number_float &&
             (v.is_number_float() || v.is_number_integer() || v.is_number_unsigned()));
        const bool integer_ok =
            (type == json::value_t::number_integer && (v.is_number_integer() || v.is_number_unsigned()));
        if (v.type() != type && !numeric_ok && !integer_ok) {
            fail(path.empty() ? key : path + "." + key, key, "wrong type");
            return false;
        }
        return true;
    }
};

} // namespace

ValidationResult validate_config(const std::string& text) {
    ValidationResult result;
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) {
        result.errors.push_back({"", 0, "config is not valid JSON"});
        return result;
    }
    if (!root.is_object()) {
        result.errors.push_back({"", 0, "config root must be a JSON object"});
        return result;
    }

    Validator val{text, result.errors};
    ExperimentConfig cfg;

    val.check_keys(root, "",
                   {"experiment", "potential", "grids", "tolerances", "truncation_depth", "seed",
                    "output", "block", "strip"});

    if (val.require(root, "", "experiment", json::value_t::string)) {
        const std::string e = root["experiment"];
        if (e == "density_sweep") cfg.experiment = ExperimentKind::DensitySweep;
        else if (e == "sum_rules") cfg.experiment = ExperimentKind::SumRules;
        else if (e == "entropy_bound") cfg.experiment = ExperimentKind::EntropyBound;
        else if (e == "zero_pole") cfg.experiment = ExperimentKind::ZeroPole;
        else if (e == "block_lab") cfg.experiment = ExperimentKind::BlockLab;
        else if (e == "strip_assembly") cfg.experiment = ExperimentKind::StripAssembly;
        else val.fail("experiment", "experiment", "unknown experiment '" + e + "'");
    }

    const bool needs_potential = cfg.experiment == ExperimentKind::DensitySweep ||
                                 cfg.experiment == ExperimentKind::SumRules ||
                                 cfg.experiment == ExperimentKind::EntropyBound ||
                                 cfg.experiment == ExperimentKind::ZeroPole;
    if (needs_potential && !root.contains("potential")) {
        val.fail("potential", "experiment", "this experiment requires a potential descriptor");
    }
    if (root.contains("potential") && root["potential"].is_object()) {
        const json& p = root["potential"];
        val.check_keys(p, "potential", {"kind", "entries", "values", "seed", "envelope"});
        if (val.require(p, "potential", "kind", json::value_t::string)) {
            const std::string k = p["kind"];
            if (k == "finite_table") {
                cfg.potential.kind = PotentialKind::FiniteTable;
                if (val.require(p, "potential", "entries", json::value_t::object)) {
                    for (auto it = p["entries"].begin(); it != p["entries"].end(); ++it) {
                        if (!it.value().is_number()) {
                            val.fail("potential.entries", "entries", "values must be numbers");
                            continue;
                        }
                        if (it.key().find_first_not_of("01") != std::string::npos)
                            val.fail("potential.entries", "entries",
                                     "address '" + it.key() + "' must be a string of 0/1");
                        else
                            cfg.potential.entries.emplace_back(it.key(),
                                                               it.value().get<double>());
                    }
                }
            } else if (k == "symmetric") {
                cfg.potential.kind = PotentialKind::Symmetric;
                if (val.require(p, "potential", "values", json::value_t::array))
                    for (const auto& q : p["values"]) cfg.potential.values.push_back(q.get<double>());
            } else if (k == "random") {
                cfg.potential.kind = PotentialKind::SeededRandom;
                if (val.require(p, "potential", "seed", json::value_t::number_integer))
                    cfg.potential.seed = p["seed"].get<std::uint64_t>();
                if (val.require(p, "potential", "envelope", json::value_t::array)) {
                    for (const auto& q : p["envelope"])
                        cfg.potential.envelope.push_back(q.get<double>());
                    if (cfg.potential.envelope.size() > 16)
                        val.fail("potential.envelope", "envelope",
                                 "envelope deeper than 16 levels");
                }
            } else {
                val.fail("potential.kind", "kind", "unknown potential kind '" + k + "'");
            }
        }
    }

    if (root.contains("grids")) {
        const json& g = root["grids"];
        val.check_keys(g, "grids", {"band_nodes", "boundary_nodes"});
        if (val.require(g, "grids", "band_nodes", json::value_t::number_integer, false))
            cfg.band_nodes = g["band_nodes"].get<int>();
        if (val.require(g, "grids", "boundary_nodes", json::value_t::number_integer, false))
            cfg.boundary_nodes = g["boundary_nodes"].get<int>();
        if (cfg.band_nodes < 8) val.fail("grids.band_nodes", "band_nodes", "grid sizes must be >= 8");
        if (cfg.boundary_nodes < 8)
            val.fail("grids.boundary_nodes", "boundary_nodes", "grid sizes must be >= 8");
    }

    if (root.contains("tolerances")) {
        const json& t = root["tolerances"];
        val.check_keys(t, "tolerances", {"quadrature", "bisection"});
        if (val.require(t, "tolerances", "quadrature", json::value_t::number_float, false))
            cfg.quadrature_tol = t["quadrature"].get<double>();
        if (val.require(t, "tolerances", "bisection", json::value_t::number_float, false))
            cfg.bisection_tol = t["bisection"].get<double>();
        if (!(cfg.quadrature_tol > 0))
            val.fail("tolerances.quadrature", "quadrature", "tolerances must be > 0");
        if (!(cfg.bisection_tol > 0))
            val.fail("tolerances.bisection", "bisection", "tolerances must be > 0");
    }

    if (root.contains("truncation_depth")) {
        if (val.require(root, "", "truncation_depth", json::value_t::number_integer, false)) {
            cfg.truncation_depth = root["truncation_depth"].get<int>();
            if (cfg.truncation_depth < 0 || cfg.truncation_depth > 16)
                val.fail("truncation_depth", "truncation_depth", "must be in [0, 16]");
        }
    } else if (cfg.experiment == ExperimentKind::EntropyBound) {
        val.fail("truncation_depth", "experiment", "entropy_bound requires truncation_depth");
    }

    if (root.contains("seed") &&
        val.require(root, "", "seed", json::value_t::number_integer, false))
        cfg.seed = root["seed"].get<std::uint64_t>();

    if (root.contains("output")) {
        const json& o = root["output"];
        val.check_keys(o, "output", {"path", "format"});
        if (val.require(o, "output", "path", json::value_t::string, false))
            cfg.out_path = o["path"].get<std::string>();
        if (val.require(o, "output", "format", json::value_t::string, false)) {
            const std::string f = o["format"];
            if (f == "json") cfg.format = OutputFormat::Json;
            else if (f == "csv") cfg.format = OutputFormat::Csv;
            else val.fail("output.format", "format", "format must be json or csv");
        }
    }

    if (root.contains("block")) {
        const json& b = root["block"];
        val.check_keys(b, "block",
                       {"n", "seed", "b_eps", "left", "half_height", "nodes_per_side", "coupling"});
        if (val.require(b, "block", "n", json::value_t::number_integer, false))
            cfg.block.n = b["n"].get<long>();
        if (val.require(b, "block", "seed", json::value_t::number_integer, false))
            cfg.block.seed = b["seed"].get<std::uint64_t>();
        if (val.require(b, "block", "b_eps", json::value_t::number_float, false))
            cfg.block.b_eps = b["b_eps"].get<double>();
        if (val.require(b, "block", "left", json::value_t::number_float, false))
            cfg.block.left = b["left"].get<double>();
        if (val.require(b, "block", "half_height", json::value_t::number_float, false))
            cfg.block.half_height = b["half_height"].get<double>();
        if (val.require(b, "block", "nodes_per_side", json::value_t::number_integer, false))
            cfg.block.nodes_per_side = b["nodes_per_side"].get<int>();
        if (val.require(b, "block", "coupling", json::value_t::number_float, false))
            cfg.block.coupling = b["coupling"].get<double>();
        if (cfg.block.n < 1 || cfg.block.n > 64) val.fail("block.n", "n", "n must be in [1, 64]");
        if (cfg.block.nodes_per_side < 32)
            val.fail("block.nodes_per_side", "nodes_per_side", "need >= 32 nodes per side");
    }

    if (root.contains("strip")) {
        const json& s = root["strip"];
        val.check_keys(s, "strip", {"q", "amplitude", "n_modes", "length", "grid_points"});
        if (val.require(s, "strip", "q", json::value_t::string, false)) {
            cfg.strip.q_kind = s["q"].get<std::string>();
            if (cfg.strip.q_kind != "zero" && cfg.strip.q_kind != "x_profile" &&
                cfg.strip.q_kind != "exp_cos")
                val.fail("strip.q", "q", "q must be one of zero, x_profile, exp_cos");
        }
        if (val.require(s, "strip", "amplitude", json::value_t::number_float, false))
            cfg.strip.amplitude = s["amplitude"].get<double>();
        if (val.require(s, "strip", "n_modes", json::value_t::number_integer, false))
            cfg.strip.n_modes = s["n_modes"].get<int>();
        if (val.require(s, "strip", "length", json::value_t::number_float, false))
            cfg.strip.length = s["length"].get<double>();
        if (s.contains("grid_points") &&
            val.require(s, "strip", "grid_points", json::value_t::array, false)) {
            cfg.strip.grid_points.clear();
            for (const auto& g : s["grid_points"]) cfg.strip.grid_points.push_back(g.get<int>());
        }
        if (cfg.strip.n_modes < 1 || cfg.strip.n_modes > 16)
            val.fail("strip.n_modes", "n_modes", "n_modes must be in [1, 16]");
        if (!(cfg.strip.length > 0)) val.fail("strip.length", "length", "length must be > 0");
        for (int g : cfg.strip.grid_points)
            if (g < 8) val.fail("strip.grid_points", "grid_points", "grid sizes must be >= 8");
    }

    if (result.errors.empty()) result.config = std::move(cfg);
    return result;
}

} // namespace bethe
