#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hierclass/data.hpp"
#include "hierclass/strategies.hpp"

namespace hierclass {

// How to read a delimited dataset file. Columns are referenced by header
// name, or by 0-based decimal index when the file has no header row. An
// empty feature_columns list means "every column not used as a label".
struct DatasetSchema {
    std::vector<std::string> feature_columns;
    std::vector<std::string> label_columns;  // ordered shallow to deep
    char delimiter = ',';
    bool has_header = true;
};

// RFC-4180-style reader: quoted fields, doubled quotes, embedded delimiters
// and newlines. Features must parse as finite reals; label cells are taken
// verbatim with the empty string marking a missing label.
// Throws IOError, ParseError, MissingColumn, InvalidSchema,
// MalformedLabelMatrix.
std::pair<FeatureMatrix, LabelMatrix> load_csv(const std::filesystem::path& path,
                                               const DatasetSchema& schema);

// Feature-only variant (prediction input). Empty feature_columns selects
// every column.
FeatureMatrix load_features_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& feature_columns,
                                char delimiter, bool has_header);

// Label-only variant (evaluation input). Empty label_columns selects every
// column.
LabelMatrix load_labels_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& label_columns,
                            char delimiter, bool has_header);

// Writes features (17 significant digits) and labels side by side with a
// header from the schema column names.
void save_csv(const std::filesystem::path& path, const FeatureMatrix& X,
              const LabelMatrix& Y, const DatasetSchema& schema);

// Writes a prediction matrix with one label column per level, headed
// level_1..level_n.
void save_predictions_csv(const std::filesystem::path& path,
                          const PredictionMatrix& pred, char delimiter);

// Model files carry a one-line header "HIERCLASS-MODEL <version> <fnv64>"
// followed by a JSON body; the checksum covers the body bytes and all
// learned parameters are decimal text with 17 significant digits, so
// save -> load -> save is byte-identical.
// Throws IOError, UnsupportedVersion, CorruptModel.
void save_model(const HierModel& m, const std::filesystem::path& path);
HierModel load_model(const std::filesystem::path& path);

// Serializes the model exactly as save_model writes it.
std::string model_to_string(const HierModel& m);
HierModel model_from_string(const std::string& text);

inline constexpr int kModelFormatVersion = 1;

// Shortest exact decimal form used everywhere a double is persisted.
std::string to_decimal(double v);
// Strict inverse of to_decimal; throws ParseError on anything else.
double parse_double(const std::string& text);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace hierclass
