#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/limit_sampler.hpp"
#include "core/model.hpp"

namespace levyopt {

// ---------------- configuration ----------------

// One Monte Carlo experiment. Field meanings by experiment id:
//   table1   - limit-law statistics: replicates Bessel draws of width K;
//              window_k is the half-width of the windowed-mean column.
//   table2   - finite-n statistics: replicates paths on an n-grid refined
//              m-fold; window_k truncates the draw around the argmax.
//   localocc - local/occupation-time errors at level 0: replicates paths on an
//              n-grid refined m-fold, the fine grid serving as the reference.
//   figure1..figure6 - the figure fed by the owning experiment above;
//              figure3 is the conditional-law surface plus sample 1-H curves.
struct ExperimentConfig {
    std::string experiment = "table1";
    ModelSpec model = make_bm(1.0);
    int replicates = 10000;
    int n = 300;
    int m = 300;
    int K = 50;
    int window_k = 1;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_dir;  // empty: keep results in memory only
    RecoveryConfig recovery;
};

// Protocol defaults for a given experiment id (throws BadArgument on an
// unknown id).
ExperimentConfig default_config(const std::string& experiment);

// JSON round trip. Parsing starts from default_config(experiment) and applies
// whichever fields are present, so partial configs are valid.
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

// ---------------- results ----------------

struct SummaryRow {
    std::string name;
    double rmse = 0.0;
    double mae = 0.0;
    double ci95 = 0.0;  // length of the narrowest 95% window
    double mean_error = 0.0;
    double variance = 0.0;  // population convention
};

struct FigureData {
    std::string name;                  // file stem, e.g. "figure1"
    std::vector<std::string> columns;  // "x" (or "x","y") then one per series
    std::vector<std::vector<double>> rows;
};

struct ExperimentSummary {
    std::string experiment;
    std::uint64_t seed = 1;
    int replicates = 0;
    std::vector<std::string> columns;           // names of the per-draw variates
    std::vector<std::vector<double>> variates;  // one row per replicate
    std::vector<SummaryRow> rows;               // statistics per variate column
    std::map<std::string, double> scalars;      // named extras (ratios, bandwidths)
    std::vector<FigureData> figures;
    double runtime_seconds = 0.0;  // recorded in run_info.json, not summary.json
};

ExperimentSummary run_table1(const ExperimentConfig& cfg);
ExperimentSummary run_table2(const ExperimentConfig& cfg);
ExperimentSummary run_localocc(const ExperimentConfig& cfg);
ExperimentSummary run_figure3(const ExperimentConfig& cfg);

// Dispatch on cfg.experiment; figureN ids run the owning experiment and keep
// only the requested figure. Persists to cfg.out_dir when set.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// Deterministic JSON (insertion-ordered keys, shortest-round-trip doubles);
// excludes runtime so byte-identical reruns stay byte-identical.
std::string summary_to_json(const ExperimentSummary& s);

// Writes config.json (effective config echo), summary.json, variates.csv,
// one CSV per figure, and run_info.json into cfg.out_dir.
void persist_experiment(const ExperimentConfig& cfg, const ExperimentSummary& s);

}  // namespace levyopt
