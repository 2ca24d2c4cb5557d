#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

#include "bethelab/config.hpp"
#include "bethelab/io.hpp"

using namespace bethe;

TEST_CASE("double formatting round-trips at 17 significant digits") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 200; ++k) {
        const double x = u(rng) * std::pow(10.0, int(k % 21) - 10);
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(std::nan("")) == "\"nan\"");
    CHECK(format_double(-INFINITY) == "\"-inf\"");
}

TEST_CASE("json writer is deterministic and order-preserving") {
    auto build = [] {
        JsonValue v = JsonValue::object();
        v.set("beta", JsonValue::number(0.1));
        v.set("alpha", JsonValue::integer(3));
        JsonValue arr = JsonValue::array();
        arr.push_back(JsonValue::string("x\"y"));
        arr.push_back(JsonValue::boolean(true));
        v.set("list", std::move(arr));
        return v.dump();
    };
    const std::string a = build(), b = build();
    CHECK(a == b);
    CHECK(a.find("\"beta\"") < a.find("\"alpha\""));  // insertion order kept
    CHECK(a.find("0.10000000000000001") != std::string::npos);
    // parses back as valid JSON
    const auto parsed = nlohmann::json::parse(a);
    CHECK(parsed["alpha"] == 3);
    CHECK(parsed["list"][0] == "x\"y");
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("hello") != fnv1a64_hex("hellp"));
}

TEST_CASE("matrix export: csv header and binary round trip") {
    Eigen::MatrixXd A(2, 3);
    A << 1.0, -0.5, 3.25, 1e-17, 2.0, -7.125;
    const std::string csv = matrix_csv(A);
    CHECK(csv.rfind("# 2 3 f64\n", 0) == 0);
    const Eigen::MatrixXd B = read_matrix_binary(matrix_binary(A));
    CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(read_matrix_binary("garbage"));
}

TEST_CASE("config validation: empty and malformed inputs") {
    CHECK_FALSE(validate_config("").ok());
    CHECK_FALSE(validate_config("{]").ok());
    const ValidationResult r = validate_config("{}");
    CHECK_FALSE(r.ok());
    bool mentions_experiment = false;
    for (const auto& e : r.errors) mentions_experiment |= e.path.find("experiment") == 0;
    CHECK(mentions_experiment);
}

TEST_CASE("minimal density_sweep config parses with defaults") {
    const std::string text = R"({
      "experiment": "density_sweep",
      "potential": {"kind": "finite_table", "entries": {}}
    })";
    const ValidationResult r = validate_config(text);
    REQUIRE(r.ok());
    CHECK(r.config->band_nodes == 2048);
    CHECK(r.config->boundary_nodes == 4096);
    CHECK(r.config->quadrature_tol == 1e-8);
    CHECK(r.config->bisection_tol == 1e-10);
    CHECK(r.config->format == OutputFormat::Json);
    CHECK(r.config->potential.realize().is_zero());
}

TEST_CASE("config validation: negative tolerance is rejected with a line anchor") {
    const std::string text = R"({
      "experiment": "sum_rules",
      "potential": {"kind": "finite_table", "entries": {"": 1.0}},
      "tolerances": {"quadrature": -1e-8}
    })";
    const ValidationResult r = validate_config(text);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& e : r.errors)
        if (e.path == "tolerances.quadrature") {
            found = true;
            CHECK(e.line == 4);
        }
    CHECK(found);
}

TEST_CASE("config validation: unknown keys are rejected") {
    const std::string text = R"({
      "experiment": "sum_rules",
      "potential": {"kind": "finite_table", "entries": {"": 1.0}},
      "grids": {"band_nodes": 64, "bogus_key": 3}
    })";
    const ValidationResult r = validate_config(text);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& e : r.errors)
        if (e.message.find("bogus_key") != std::string::npos) {
            found = true;
            CHECK(e.line == 4);
        }
    CHECK(found);
}

TEST_CASE("config validation: addresses, grid floors, experiment names") {
    CHECK_FALSE(validate_config(R"({"experiment": "warp_drive"})").ok());
    CHECK_FALSE(validate_config(R"({
        "experiment": "sum_rules",
        "potential": {"kind": "finite_table", "entries": {"012": 1.0}}
    })")
                    .ok());
    CHECK_FALSE(validate_config(R"({
        "experiment": "density_sweep",
        "potential": {"kind": "finite_table", "entries": {}},
        "grids": {"band_nodes": 4}
    })")
                    .ok());
    CHECK_FALSE(validate_config(R"({
        "experiment": "entropy_bound",
        "potential": {"kind": "finite_table", "entries": {"": 1.0}}
    })")
                    .ok());  // needs truncation_depth
    CHECK_FALSE(validate_config(R"({"experiment": "zero_pole"})").ok());  // needs a potential
}

TEST_CASE("potential spec realization") {
    PotentialSpec table;
    table.kind = PotentialKind::FiniteTable;
    table.entries = {{"", 1.0}, {"01", -2.0}};
    const TreePotential tp = table.realize();
    CHECK(tp.value(VertexAddress::parse("01")) == -2.0);
    CHECK(tp.support_radius() == 2);

    PotentialSpec sym;
    sym.kind = PotentialKind::Symmetric;
    sym.values = {1.0, 0.5};
    CHECK(sym.realize().branch(1).value_at_root() == 0.5);

    PotentialSpec rnd;
    rnd.kind = PotentialKind::SeededRandom;
    rnd.seed = 99;
    rnd.envelope = {1.0, 0.5};
    const TreePotential a = rnd.realize(), b = rnd.realize();
    CHECK(a.value(VertexAddress::parse("1")) == b.value(VertexAddress::parse("1")));
}

TEST_CASE("block and strip sections validate") {
    const std::string good = R"({
      "experiment": "block_lab",
      "block": {"n": 4, "seed": 7, "b_eps": 2.0, "left": -6.0,
                "half_height": 3.0, "nodes_per_side": 512, "coupling": 0.5}
    })";
    CHECK(validate_config(good).ok());
    CHECK_FALSE(validate_config(R"({
      "experiment": "block_lab",
      "block": {"n": 0}
    })")
                    .ok());
    CHECK_FALSE(validate_config(R"({
      "experiment": "strip_assembly",
      "strip": {"q": "quartic"}
    })")
                    .ok());
    CHECK(validate_config(R"({
      "experiment": "strip_assembly",
      "strip": {"q": "exp_cos", "n_modes": 3, "length": 40.0, "grid_points": [60, 120]}
    })")
              .ok());
}
