#include <map>
#include <string>

#include "CLI11.hpp"

#include "hierclass/commands.hpp"

namespace {

using hierclass::RunConfig;

void add_schema_options(CLI::App* cmd, RunConfig& cfg, bool with_labels) {
    if (with_labels) {
        cmd->add_option("--labels", cfg.label_columns,
                        "Label columns, shallow to deep (names, or 0-based indices "
                        "for headerless files)")
            ->delimiter(',');
    }
    cmd->add_option("--features", cfg.feature_columns,
                    "Feature columns (default: every non-label column)")
        ->delimiter(',');
    cmd->add_option("--delimiter", cfg.delimiter, "Field delimiter (single character)")
        ->capture_default_str();
    cmd->add_flag("!--no-header", cfg.has_header,
                  "Treat the first row as data, not a header");
}

void add_learner_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--kind", cfg.spec.kind,
                    "Base learner kind: logistic_regression or constant")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, hierclass::LearnerKind>{
                {"logistic_regression", hierclass::LearnerKind::logistic_regression},
                {"constant", hierclass::LearnerKind::constant}},
            CLI::ignore_case));
    cmd->add_option("--learning_rate", cfg.spec.learning_rate,
                    "Gradient-descent step size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--epochs", cfg.spec.epochs, "Full-batch gradient-descent steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--l2_penalty", cfg.spec.l2_penalty, "L2 penalty on the weights")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--seed", cfg.spec.seed, "Learner seed (carried into the model file)")
        ->capture_default_str();
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--separator", cfg.separator,
                    "Reserved separator joining path segments in canonical node names")
        ->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "Worker threads for local-learner fits")
        ->envname("HIERCLASS_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical classification toolkit: local classifiers per node, "
                 "per parent node and per level, with top-down prediction and "
                 "hierarchical metrics"};
    app.set_version_flag("--version", "hierclass 0.1.0");
    app.set_config("--config", "", "Read options from an INI/TOML config file");
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* train = app.add_subcommand("train", "Fit a hierarchical model on a CSV dataset");
    train->add_option("--data", cfg.data_path, "Training CSV")->required();
    train->add_option("--model-out", cfg.model_path, "Where to write the model file")
        ->required();
    train->add_option("--strategy", cfg.strategy,
                      "Classifier design pattern: flat, lcpn, lcppn or lcpl")
        ->check(CLI::IsMember({"flat", "lcpn", "lcppn", "lcpl"}))
        ->capture_default_str();
    add_schema_options(train, cfg, /*with_labels=*/true);
    train->get_option("--labels")->required();
    add_learner_options(train, cfg);
    add_common_options(train, cfg);

    CLI::App* predict = app.add_subcommand("predict", "Predict label paths for a feature CSV");
    predict->add_option("--model", cfg.model_path, "Model file from train")->required();
    predict->add_option("--data", cfg.data_path, "Feature CSV")->required();
    predict->add_option("--output", cfg.output_path, "Where to write predictions CSV")
        ->required();
    add_schema_options(predict, cfg, /*with_labels=*/false);
    add_common_options(predict, cfg);

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Hierarchical precision/recall/F-score of "
                                       "predictions against truth");
    evaluate->add_option("--truth", cfg.truth_path, "Truth CSV")->required();
    evaluate->add_option("--pred", cfg.pred_path, "Predictions CSV")->required();
    evaluate->add_option("--labels", cfg.label_columns,
                         "Label columns in the truth file (default: all columns)")
        ->delimiter(',');
    evaluate->add_option("--pred-labels", cfg.pred_label_columns,
                         "Label columns in the predictions file (default: all columns)")
        ->delimiter(',');
    evaluate->add_option("--delimiter", cfg.delimiter, "Field delimiter")
        ->capture_default_str();
    evaluate->add_flag("!--no-header", cfg.has_header,
                       "Treat first rows as data, not headers");
    evaluate->add_option("--report-out", cfg.report_path,
                         "Also write the report as JSON");
    add_common_options(evaluate, cfg);

    CLI::App* benchmark = app.add_subcommand(
        "benchmark", "Compare flat vs hierarchical strategies on synthetic blobs");
    benchmark->add_option("--depth", cfg.depth, "Hierarchy depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark->add_option("--branching", cfg.branching, "Children per node")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark->add_option("--samples-per-leaf", cfg.samples_per_leaf, "Samples per leaf")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark->add_option("--overlap", cfg.overlap,
                          "Noise scale relative to leaf-level separation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    benchmark->add_option("--bench-seed", cfg.bench_seed, "Dataset seed")
        ->capture_default_str();
    benchmark->add_option("--outdir", cfg.outdir,
                          "Keep benchmark model files in this directory");
    add_learner_options(benchmark, cfg);
    add_common_options(benchmark, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (train->parsed()) return hierclass::cmd_train(cfg);
    if (predict->parsed()) return hierclass::cmd_predict(cfg);
    if (evaluate->parsed()) return hierclass::cmd_evaluate(cfg);
    if (benchmark->parsed()) return hierclass::cmd_benchmark(cfg);
    return 2;
}
