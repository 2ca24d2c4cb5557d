#ifndef BETHELAB_RUNNER_HPP
#define BETHELAB_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "bethelab/config.hpp"
#include "bethelab/io.hpp"

namespace bethe {

struct RunOptions {
    std::string out_dir_override;                  // empty: use the config's path
    std::optional<OutputFormat> format_override;
    int threads = 1;                               // speed only, never results
};

struct FileRecord {
    std::string name;
    std::size_t bytes = 0;
    std::string fnv1a64;
};

struct RunOutcome {
    bool passed = false;
    std::string detail;
    double worst_residual = 0.0;
    std::string out_dir;
    std::vector<FileRecord> files;  // excludes the manifest itself
};

// Executes the experiment deterministically, writes the report/data files and
// manifest.json under the output directory, and returns the outcome.
RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

} // namespace bethe

#endif
