#include "hierclass/commands.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "hierclass/dataio.hpp"
#include "hierclass/errors.hpp"
#include "hierclass/memtrack.hpp"
#include "hierclass/metrics.hpp"

namespace hierclass {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

char parse_delimiter(const std::string& d) {
    if (d.size() != 1 || d.front() == '"' || d.front() == '\n' || d.front() == '\r') {
        throw ConfigError("delimiter must be a single character other than quote "
                          "or newline, got '" + d + "'");
    }
    return d.front();
}

void check_common(const RunConfig& cfg) {
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (cfg.separator.empty()) throw ConfigError("separator must be non-empty");
    cfg.spec.validate();
}

// Uniform error-to-exit-code policy for all subcommands.
template <typename Fn>
int run_command(std::ostream& err, Fn&& fn) {
    try {
        fn();
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSchema& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

// Fraction of test rows whose nearest training-centroid (over full-depth
// classes) matches the true class. Used as the separability oracle before
// any learner runs.
double nearest_centroid_accuracy(const FeatureMatrix& X_train, const LabelMatrix& Y_train,
                                 const FeatureMatrix& X_test, const LabelMatrix& Y_test,
                                 const std::string& separator) {
    std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
    const std::size_t depth = Y_train.max_path_length();
    for (std::size_t i = 0; i < X_train.rows(); ++i) {
        if (Y_train.path_length(i) != depth) continue;
        NodeId node;
        node.path.assign(Y_train.row(i).begin(), Y_train.row(i).begin() + depth);
        auto& [sum, count] = sums[node.canonical(separator)];
        sum.resize(X_train.cols(), 0.0);
        for (std::size_t j = 0; j < X_train.cols(); ++j) sum[j] += X_train.at(i, j);
        ++count;
    }
    std::map<std::string, std::vector<double>> centroids;
    for (auto& [cls, entry] : sums) {
        auto& [sum, count] = entry;
        for (double& v : sum) v /= static_cast<double>(count);
        centroids[cls] = std::move(sum);
    }

    std::size_t hits = 0;
    for (std::size_t i = 0; i < X_test.rows(); ++i) {
        const auto x = X_test.row(i);
        std::string best;
        double best_d2 = 0.0;
        for (const auto& [cls, c] : centroids) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double d = x[j] - c[j];
                d2 += d * d;
            }
            if (best.empty() || d2 < best_d2) {
                best = cls;
                best_d2 = d2;
            }
        }
        NodeId truth;
        truth.path.assign(Y_test.row(i).begin(), Y_test.row(i).begin() + depth);
        if (best == truth.canonical(separator)) ++hits;
    }
    return X_test.rows() == 0
               ? 0.0
               : static_cast<double>(hits) / static_cast<double>(X_test.rows());
}

}  // namespace

std::string pretty_metric(double v) {
    std::string s = to_decimal(v);
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("0123456789") != std::string::npos) {
        s += ".0";
    }
    return s;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        check_common(cfg);
        if (cfg.data_path.empty()) throw ConfigError("--data is required");
        if (cfg.model_path.empty()) throw ConfigError("--model-out is required");
        if (cfg.label_columns.empty()) throw ConfigError("--labels is required");
        const Strategy strategy = strategy_from_string(cfg.strategy);

        DatasetSchema schema;
        schema.feature_columns = cfg.feature_columns;
        schema.label_columns = cfg.label_columns;
        schema.delimiter = parse_delimiter(cfg.delimiter);
        schema.has_header = cfg.has_header;

        const auto [X, Y] = load_csv(cfg.data_path, schema);
        const Hierarchy h = build_hierarchy(Y, cfg.separator);

        const auto start = Clock::now();
        const HierModel model = fit_strategy(strategy, h, X, Y, cfg.spec, cfg.workers);
        const double ms = elapsed_ms(start);
        save_model(model, cfg.model_path);

        char ms_text[32];
        std::snprintf(ms_text, sizeof(ms_text), "%.3f", ms);
        out << "strategy=" << to_string(strategy) << "\n"
            << "samples=" << Y.n_samples() << "\n"
            << "nodes=" << h.node_count() << "\n"
            << "levels=" << h.level_count() << "\n"
            << "learners=" << learner_count(model) << "\n"
            << "fit_wall_ms=" << ms_text << "\n"
            << "model=" << cfg.model_path << "\n";
    });
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        check_common(cfg);
        if (cfg.model_path.empty()) throw ConfigError("--model is required");
        if (cfg.data_path.empty()) throw ConfigError("--data is required");
        if (cfg.output_path.empty()) throw ConfigError("--output is required");

        const HierModel model = load_model(cfg.model_path);
        const FeatureMatrix X = load_features_csv(cfg.data_path, cfg.feature_columns,
                                                  parse_delimiter(cfg.delimiter),
                                                  cfg.has_header);
        const PredictionMatrix pred = predict(model, X);
        save_predictions_csv(cfg.output_path, pred, parse_delimiter(cfg.delimiter));
        out << "rows=" << pred.n_samples() << "\n"
            << "levels=" << pred.n_levels() << "\n"
            << "output=" << cfg.output_path << "\n";
    });
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        check_common(cfg);
        if (cfg.truth_path.empty()) throw ConfigError("--truth is required");
        if (cfg.pred_path.empty()) throw ConfigError("--pred is required");
        const char delim = parse_delimiter(cfg.delimiter);

        const LabelMatrix truth =
            load_labels_csv(cfg.truth_path, cfg.label_columns, delim, cfg.has_header);
        const LabelMatrix pred = load_labels_csv(cfg.pred_path, cfg.pred_label_columns,
                                                 delim, cfg.has_header);
        const MetricsReport report = evaluate_metrics(truth, pred);

        out << "hP=" << pretty_metric(report.hp) << "\n"
            << "hR=" << pretty_metric(report.hr) << "\n"
            << "hF=" << pretty_metric(report.hf) << "\n"
            << "intersection_total=" << report.intersection_total << "\n"
            << "alpha_total=" << report.alpha_total << "\n"
            << "beta_total=" << report.beta_total << "\n"
            << "zero_denominator_warning=" << (report.zero_denominator_warning ? 1 : 0)
            << "\n";

        if (!cfg.report_path.empty()) {
            nlohmann::json j;
            j["hP"] = report.hp;
            j["hR"] = report.hr;
            j["hF"] = report.hf;
            j["intersection_total"] = report.intersection_total;
            j["alpha_total"] = report.alpha_total;
            j["beta_total"] = report.beta_total;
            j["zero_denominator_warning"] = report.zero_denominator_warning;
            std::ofstream f(cfg.report_path, std::ios::trunc);
            if (!f) throw IOError("cannot open '" + cfg.report_path + "' for writing");
            f << j.dump(2) << "\n";
        }
    });
}

BenchmarkResult run_benchmark(const SynthParams& params, const LearnerSpec& spec,
                              std::size_t workers,
                              const std::filesystem::path& outdir) {
    spec.validate();
    std::filesystem::create_directories(outdir);

    SynthParams test_params = params;
    test_params.seed = params.seed + 1;  // fresh noise, same centres
    const SynthDataset train = make_blobs(params);
    const SynthDataset test = make_blobs(test_params);

    BenchmarkResult result;
    result.centroid_accuracy =
        nearest_centroid_accuracy(train.X, train.Y, test.X, test.Y, "://");

    const Hierarchy h = build_hierarchy(train.Y, "://");
    for (const Strategy strategy :
         {Strategy::flat, Strategy::lcpn, Strategy::lcppn, Strategy::lcpl}) {
        BenchmarkRow row;
        row.strategy = strategy;

        memtrack::reset_peak();
        const std::size_t mem_before = memtrack::current_bytes();
        const auto start = Clock::now();
        const HierModel model = fit_strategy(strategy, h, train.X, train.Y, spec, workers);
        row.fit_wall_ms = elapsed_ms(start);
        const std::size_t peak = memtrack::peak_bytes();
        row.peak_mem_bytes = peak > mem_before ? peak - mem_before : 0;

        const auto model_path = outdir / ("model_" + to_string(strategy) + ".hcm");
        save_model(model, model_path);
        row.model_file_bytes = std::filesystem::file_size(model_path);

        row.hf = h_fscore(test.Y, predict(model, test.X));
        result.rows.push_back(row);
    }
    return result;
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        check_common(cfg);
        SynthParams params;
        params.depth = cfg.depth;
        params.branching = cfg.branching;
        params.samples_per_leaf = cfg.samples_per_leaf;
        params.overlap = cfg.overlap;
        params.seed = cfg.bench_seed;

        const bool keep = !cfg.outdir.empty();
        std::filesystem::path outdir = cfg.outdir;
        if (!keep) {
            outdir = std::filesystem::temp_directory_path() /
                     ("hierclass-bench-" + std::to_string(cfg.bench_seed) + "-" +
                      std::to_string(::getpid()));
        }

        const BenchmarkResult result =
            run_benchmark(params, cfg.spec, cfg.workers, outdir);

        out << "nearest_centroid_accuracy=" << pretty_metric(result.centroid_accuracy)
            << "\n";
        out << kBenchmarkTableHeader << "\n";
        for (const auto& row : result.rows) {
            char ms[32];
            std::snprintf(ms, sizeof(ms), "%.3f", row.fit_wall_ms);
            out << to_string(row.strategy) << "\t" << pretty_metric(row.hf) << "\t"
                << row.peak_mem_bytes << "\t" << row.model_file_bytes << "\t" << ms
                << "\n";
        }
        if (!keep) {
            std::error_code ec;
            std::filesystem::remove_all(outdir, ec);
        } else {
            out << "models=" << outdir.string() << "\n";
        }
    });
}

}  // namespace hierclass
