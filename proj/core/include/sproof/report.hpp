#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sproof/verifier.hpp"

namespace sproof {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string problem = "emden";      // emden | poly:c0,c1,c2
    int n = 10;
    std::string method = "fixed-point";  // fixed-point | kantorovich | in-classic | all
    std::string variant = "schur";       // schur | schur-alt
    std::string constants_file;          // optional override table
    std::string out_dir = "out";
    int grid = 101;
    std::uint64_t seed = 0;              // property-suite seed; recorded only
    std::string newton_seed = "default";  // default | zero | positive
    std::string box_conversion = "functional";

    // Throws ConfigError.
    void validate() const;
    std::vector<std::string> methods() const;
    std::string to_json() const;
    // Flat JSON document; unknown keys are rejected.
    static RunConfig from_json(const std::string& text);
};

struct MethodRun {
    VerificationCertificate cert;
    double wall_seconds = 0.0;
};

struct PipelineResult {
    RunConfig config;
    std::vector<MethodRun> runs;
    std::string error;  // set when the pipeline stopped before any method ran

    bool all_verified() const;
};

ConstantProvider load_constants(const RunConfig& cfg);

// Galerkin solve, enclosure, linearization, block bounds and the requested methods.
PipelineResult run_pipeline(const RunConfig& cfg);

// certificate-<method>.json, wh.csv, uhat.csv, summary.csv, grid.csv.
void write_artifacts(const PipelineResult& r, const std::string& out_dir);

// Table layout: method, sup_Wh, alpha, rho.
std::string summary_table(const PipelineResult& r);
std::string grid_csv(const SpectralFn& u, int points);

// One CSV row per run: N, method, kappa, K_T, delta_perp, alpha, rho, wall_time.
std::string compare_header();
std::string compare_rows(const PipelineResult& r);

}  // namespace sproof
