#ifndef BETHELAB_CONFIG_HPP
#define BETHELAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bethelab/io.hpp"
#include "bethelab/tree.hpp"

namespace bethe {

enum class ExperimentKind { DensitySweep, SumRules, EntropyBound, ZeroPole, BlockLab, StripAssembly };
enum class OutputFormat { Json, Csv };

const char* to_string(ExperimentKind k);

// Declarative potential descriptor; realized into a TreePotential on demand.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::FiniteTable;
    std::vector<std::pair<std::string, double>> entries;  // finite_table
    std::vector<double> values;                           // symmetric
    std::uint64_t seed = 0;                               // random
    std::vector<double> envelope;

    TreePotential realize() const;
    JsonValue echo() const;
};

struct BlockLabParams {
    long n = 4;
    std::uint64_t seed = 1;
    double b_eps = 2.0;
    double left = -6.0;
    double half_height = 3.0;
    int nodes_per_side = 512;
    double coupling = 0.5;
};

struct StripParams {
    std::string q_kind = "zero";  // zero | x_profile | exp_cos
    double amplitude = 1.0;
    int n_modes = 1;
    double length = 150.0;
    std::vector<int> grid_points = {250, 500, 1000};
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::SumRules;
    PotentialSpec potential;
    int band_nodes = 2048;
    int boundary_nodes = 4096;
    double quadrature_tol = 1e-8;
    double bisection_tol = 1e-10;
    int truncation_depth = 0;
    std::uint64_t seed = 0;
    std::string out_path = "out";
    OutputFormat format = OutputFormat::Json;
    BlockLabParams block;
    StripParams strip;

    JsonValue echo() const;
};

struct ValidationError {
    std::string path;  // e.g. "tolerances.quadrature"
    int line = 0;      // 1-based line in the config text, 0 if unknown
    std::string message;
};

struct ValidationResult {
    std::optional<ExperimentConfig> config;
    std::vector<ValidationError> errors;
    bool ok() const { return config.has_value() && errors.empty(); }
};

// Full structural validation of the JSON config text; unknown keys rejected.
ValidationResult validate_config(const std::string& text);

} // namespace bethe

#endif
