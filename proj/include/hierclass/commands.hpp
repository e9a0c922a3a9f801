#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hierclass/learner.hpp"
#include "hierclass/strategies.hpp"
#include "hierclass/synth.hpp"

namespace hierclass {

// Everything a subcommand can be asked to do. The CLI front end fills this
// from flags and config-file values; tests construct it directly.
struct RunConfig {
    std::string subcommand;

    // dataset / schema
    std::string data_path;
    std::vector<std::string> label_columns;
    std::vector<std::string> feature_columns;
    std::vector<std::string> pred_label_columns;
    std::string delimiter = ",";
    bool has_header = true;

    // model / outputs
    std::string model_path;
    std::string output_path;
    std::string truth_path;
    std::string pred_path;
    std::string report_path;
    std::string outdir;

    std::string strategy = "lcpn";
    std::string separator = "://";
    LearnerSpec spec;
    std::size_t workers = 1;

    // benchmark
    std::size_t depth = 2;
    std::size_t branching = 3;
    std::size_t samples_per_leaf = 200;
    double overlap = 0.1;
    std::uint64_t bench_seed = 42;
};

// Exit codes shared by all subcommands: 0 success, 1 runtime/data error,
// 2 usage/config error.
int cmd_train(const RunConfig& cfg, std::ostream& out = std::cout,
              std::ostream& err = std::cerr);
int cmd_predict(const RunConfig& cfg, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);
int cmd_evaluate(const RunConfig& cfg, std::ostream& out = std::cout,
                 std::ostream& err = std::cerr);
int cmd_benchmark(const RunConfig& cfg, std::ostream& out = std::cout,
                  std::ostream& err = std::cerr);

struct BenchmarkRow {
    Strategy strategy;
    double hf = 0.0;
    std::size_t peak_mem_bytes = 0;
    std::uintmax_t model_file_bytes = 0;
    double fit_wall_ms = 0.0;
};

struct BenchmarkResult {
    double centroid_accuracy = 0.0;  // nearest-centroid separability check
    std::vector<BenchmarkRow> rows;  // flat, lcpn, lcppn, lcpl
};

// Generates a train and a test draw, verifies separability with a
// nearest-centroid classifier, then fits and scores all four strategies.
// Model files are written into outdir (created if needed).
BenchmarkResult run_benchmark(const SynthParams& params, const LearnerSpec& spec,
                              std::size_t workers,
                              const std::filesystem::path& outdir);

// Column order of the table cmd_benchmark prints; kept stable for scripts.
inline constexpr const char* kBenchmarkTableHeader =
    "strategy\thF\tpeak_mem_bytes\tmodel_file_bytes\tfit_wall_ms";

// Decimal text with a guaranteed decimal point, e.g. "1.0" rather than "1".
std::string pretty_metric(double v);

}  // namespace hierclass
