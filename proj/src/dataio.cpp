#include "hierclass/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hierclass/errors.hpp"

namespace hierclass {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IOError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IOError("read failure on '" + path.string() + "'");
    }
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IOError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IOError("write failure on '" + path.string() + "'");
    }
}

// Splits raw CSV text into records. Quoted fields may contain the delimiter,
// doubled quotes and line breaks. Positions in errors are 1-based.
std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"') {
            if (!field.empty() || field_was_quoted) {
                throw ParseError("line " + std::to_string(line) +
                                 ": stray quote inside unquoted field");
            }
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') continue;
            ++line;
            // Blank lines are skipped; a quoted empty field ("") still counts
            // as a one-cell record.
            if (record.empty() && field.empty() && !field_was_quoted) continue;
            end_record();
        } else {
            field += c;
        }
    }
    if (in_quotes) {
        throw ParseError("line " + std::to_string(line) + ": unterminated quoted field");
    }
    if (!field.empty() || field_was_quoted || !record.empty()) {
        end_record();
    }
    return records;
}

std::string csv_quote(const std::string& cell, char delimiter) {
    const bool needs_quotes = cell.find(delimiter) != std::string::npos ||
                              cell.find('"') != std::string::npos ||
                              cell.find('\n') != std::string::npos ||
                              cell.find('\r') != std::string::npos;
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Resolves column references to indices against a header (by name) or, for
// headerless files, as 0-based decimal indices.
std::vector<std::size_t> resolve_columns(const std::vector<std::string>& wanted,
                                         const std::vector<std::string>& header,
                                         bool has_header, std::size_t width) {
    std::vector<std::size_t> out;
    out.reserve(wanted.size());
    for (const std::string& ref : wanted) {
        if (has_header) {
            const auto it = std::find(header.begin(), header.end(), ref);
            if (it == header.end()) {
                throw MissingColumn("column '" + ref + "' not found in header");
            }
            out.push_back(static_cast<std::size_t>(it - header.begin()));
        } else {
            std::size_t idx = 0;
            const auto [ptr, ec] =
                std::from_chars(ref.data(), ref.data() + ref.size(), idx);
            if (ec != std::errc() || ptr != ref.data() + ref.size()) {
                throw MissingColumn("file has no header; column reference '" + ref +
                                    "' must be a 0-based index");
            }
            if (idx >= width) {
                throw MissingColumn("column index " + ref + " out of range for " +
                                    std::to_string(width) + " columns");
            }
            out.push_back(idx);
        }
    }
    return out;
}

struct ParsedFile {
    std::vector<std::string> header;  // empty names when headerless
    std::vector<std::vector<std::string>> rows;
    std::size_t width = 0;
    std::size_t first_data_line = 1;
};

ParsedFile read_table(const std::filesystem::path& path, char delimiter,
                      bool has_header) {
    ParsedFile f;
    auto records = parse_csv(read_file(path), delimiter);
    if (records.empty()) return f;
    f.width = records.front().size();
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (records[r].size() != f.width) {
            throw ParseError("row " + std::to_string(r + 1) + " has " +
                             std::to_string(records[r].size()) +
                             " fields, expected " + std::to_string(f.width));
        }
    }
    std::size_t start = 0;
    if (has_header) {
        f.header = records.front();
        f.first_data_line = 2;
        start = 1;
    }
    f.rows.assign(std::make_move_iterator(records.begin() + start),
                  std::make_move_iterator(records.end()));
    return f;
}

double parse_feature_cell(const std::string& cell, std::size_t line, std::size_t col) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError("row " + std::to_string(line) + ", column " +
                         std::to_string(col + 1) + ": '" + cell +
                         "' is not a finite real");
    }
    return v;
}

std::vector<std::size_t> all_columns(std::size_t width) {
    std::vector<std::size_t> out(width);
    for (std::size_t i = 0; i < width; ++i) out[i] = i;
    return out;
}

json learner_to_json(const TrainedLearner& m) {
    json j;
    j["kind"] = to_string(m.kind);
    j["classes"] = m.classes;
    j["n_features"] = m.n_features;
    json w = json::array();
    for (double v : m.weights) w.push_back(to_decimal(v));
    j["weights"] = std::move(w);
    json b = json::array();
    for (double v : m.bias) b.push_back(to_decimal(v));
    j["bias"] = std::move(b);
    return j;
}

TrainedLearner learner_from_json(const json& j) {
    TrainedLearner m;
    m.kind = learner_kind_from_string(j.at("kind").get<std::string>());
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& v : j.at("weights")) m.weights.push_back(parse_double(v.get<std::string>()));
    for (const auto& v : j.at("bias")) m.bias.push_back(parse_double(v.get<std::string>()));
    if (m.classes.empty()) {
        throw CorruptModel("learner with empty class list");
    }
    if (!m.is_constant() &&
        (m.weights.size() != m.classes.size() * m.n_features ||
         m.bias.size() != m.classes.size())) {
        throw CorruptModel("learner parameter shapes are inconsistent");
    }
    for (double v : m.weights) {
        if (!std::isfinite(v)) throw CorruptModel("non-finite learner parameter");
    }
    for (double v : m.bias) {
        if (!std::isfinite(v)) throw CorruptModel("non-finite learner parameter");
    }
    return m;
}

constexpr const char* kModelMagic = "HIERCLASS-MODEL";

}  // namespace

std::string to_decimal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("'" + text + "' is not a decimal real");
    }
    return v;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::pair<FeatureMatrix, LabelMatrix> load_csv(const std::filesystem::path& path,
                                               const DatasetSchema& schema) {
    if (schema.label_columns.empty()) {
        throw InvalidSchema("at least one label column is required");
    }
    const ParsedFile f = read_table(path, schema.delimiter, schema.has_header);
    const auto label_idx =
        resolve_columns(schema.label_columns, f.header, schema.has_header, f.width);

    std::vector<std::size_t> feature_idx;
    if (schema.feature_columns.empty()) {
        for (std::size_t i = 0; i < f.width; ++i) {
            if (std::find(label_idx.begin(), label_idx.end(), i) == label_idx.end()) {
                feature_idx.push_back(i);
            }
        }
    } else {
        feature_idx = resolve_columns(schema.feature_columns, f.header,
                                      schema.has_header, f.width);
        for (std::size_t i : feature_idx) {
            if (std::find(label_idx.begin(), label_idx.end(), i) != label_idx.end()) {
                throw InvalidSchema("column " + std::to_string(i) +
                                    " is used as both feature and label");
            }
        }
    }

    FeatureMatrix X(f.rows.size(), feature_idx.size());
    std::vector<std::vector<std::string>> labels;
    labels.reserve(f.rows.size());
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
        const auto& rec = f.rows[r];
        for (std::size_t j = 0; j < feature_idx.size(); ++j) {
            X.at(r, j) = parse_feature_cell(rec[feature_idx[j]],
                                            r + f.first_data_line, feature_idx[j]);
        }
        std::vector<std::string> row;
        row.reserve(label_idx.size());
        for (std::size_t idx : label_idx) row.push_back(rec[idx]);
        labels.push_back(std::move(row));
    }
    return {std::move(X), LabelMatrix::from_padded(std::move(labels), label_idx.size())};
}

FeatureMatrix load_features_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& feature_columns,
                                char delimiter, bool has_header) {
    const ParsedFile f = read_table(path, delimiter, has_header);
    const auto idx = feature_columns.empty()
                         ? all_columns(f.width)
                         : resolve_columns(feature_columns, f.header, has_header, f.width);
    FeatureMatrix X(f.rows.size(), idx.size());
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            X.at(r, j) =
                parse_feature_cell(f.rows[r][idx[j]], r + f.first_data_line, idx[j]);
        }
    }
    return X;
}

LabelMatrix load_labels_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& label_columns,
                            char delimiter, bool has_header) {
    const ParsedFile f = read_table(path, delimiter, has_header);
    const auto idx = label_columns.empty()
                         ? all_columns(f.width)
                         : resolve_columns(label_columns, f.header, has_header, f.width);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(f.rows.size());
    for (const auto& rec : f.rows) {
        std::vector<std::string> row;
        row.reserve(idx.size());
        for (std::size_t i : idx) row.push_back(rec[i]);
        rows.push_back(std::move(row));
    }
    return LabelMatrix::from_padded(std::move(rows), idx.size());
}

void save_csv(const std::filesystem::path& path, const FeatureMatrix& X,
              const LabelMatrix& Y, const DatasetSchema& schema) {
    if (X.rows() != Y.n_samples()) {
        throw AlignmentError("feature rows and label rows differ");
    }
    if (schema.feature_columns.size() != X.cols() ||
        schema.label_columns.size() != Y.n_levels()) {
        throw InvalidSchema("schema column names do not match matrix shapes");
    }
    std::string out;
    if (schema.has_header) {
        std::size_t field = 0;
        for (const auto& name : schema.feature_columns) {
            if (field++ > 0) out += schema.delimiter;
            out += csv_quote(name, schema.delimiter);
        }
        for (const auto& name : schema.label_columns) {
            if (field++ > 0) out += schema.delimiter;
            out += csv_quote(name, schema.delimiter);
        }
        out += '\n';
    }
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t j = 0; j < X.cols(); ++j) {
            if (j > 0) out += schema.delimiter;
            out += to_decimal(X.at(i, j));
        }
        for (std::size_t k = 0; k < Y.n_levels(); ++k) {
            if (k > 0 || X.cols() > 0) out += schema.delimiter;
            out += csv_quote(Y.row(i)[k], schema.delimiter);
        }
        out += '\n';
    }
    write_file(path, out);
}

void save_predictions_csv(const std::filesystem::path& path,
                          const PredictionMatrix& pred, char delimiter) {
    std::string out;
    for (std::size_t k = 0; k < pred.n_levels(); ++k) {
        if (k > 0) out += delimiter;
        out += "level_" + std::to_string(k + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < pred.n_samples(); ++i) {
        for (std::size_t k = 0; k < pred.n_levels(); ++k) {
            if (k > 0) out += delimiter;
            out += csv_quote(pred.row(i)[k], delimiter);
        }
        out += '\n';
    }
    write_file(path, out);
}

std::string model_to_string(const HierModel& m) {
    json body;
    body["strategy"] = to_string(m.strategy);
    body["separator"] = m.hierarchy.separator();

    json edges = json::array();
    for (const NodeId& n : m.hierarchy.nodes()) {
        edges.push_back(json::array({n.parent().canonical(m.hierarchy.separator()),
                                     n.canonical(m.hierarchy.separator())}));
    }
    body["hierarchy_edges"] = std::move(edges);

    json spec;
    spec["kind"] = to_string(m.spec.kind);
    spec["learning_rate"] = to_decimal(m.spec.learning_rate);
    spec["epochs"] = m.spec.epochs;
    spec["l2_penalty"] = to_decimal(m.spec.l2_penalty);
    spec["seed"] = m.spec.seed;
    body["spec"] = std::move(spec);

    json learners = json::object();
    for (const auto& [locus, learner] : m.learners) {
        learners[locus] = learner_to_json(learner);
    }
    body["learners"] = std::move(learners);

    const std::string text = body.dump(2) + "\n";
    char header[64];
    std::snprintf(header, sizeof(header), "%s %d %016llx\n", kModelMagic,
                  m.format_version,
                  static_cast<unsigned long long>(fnv1a64(text)));
    return std::string(header) + text;
}

HierModel model_from_string(const std::string& text) {
    const std::size_t eol = text.find('\n');
    if (eol == std::string::npos) {
        throw CorruptModel("missing model header line");
    }
    std::istringstream header(text.substr(0, eol));
    std::string magic, checksum_hex;
    int version = -1;
    header >> magic >> version >> checksum_hex;
    if (!header || magic != kModelMagic) {
        throw CorruptModel("not a model file (bad magic)");
    }
    if (version != kModelFormatVersion) {
        throw UnsupportedVersion("model format version " + std::to_string(version) +
                                 " is not supported (expected " +
                                 std::to_string(kModelFormatVersion) + ")");
    }
    const std::string body = text.substr(eol + 1);
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body)));
    if (checksum_hex != expected) {
        throw CorruptModel("checksum mismatch: file is truncated or edited");
    }

    try {
        const json j = json::parse(body);
        HierModel m;
        m.format_version = version;
        m.strategy = strategy_from_string(j.at("strategy").get<std::string>());
        const std::string separator = j.at("separator").get<std::string>();

        std::vector<NodeId> nodes;
        for (const auto& edge : j.at("hierarchy_edges")) {
            const auto parent = edge.at(0).get<std::string>();
            const auto child = edge.at(1).get<std::string>();
            NodeId node = NodeId::from_canonical(child, separator);
            if (node.is_root() || node.parent().canonical(separator) != parent) {
                throw CorruptModel("edge '" + parent + "' -> '" + child +
                                   "' is not a path extension");
            }
            nodes.push_back(std::move(node));
        }
        m.hierarchy = hierarchy_from_nodes(std::move(nodes), separator);

        const json& spec = j.at("spec");
        m.spec.kind = learner_kind_from_string(spec.at("kind").get<std::string>());
        m.spec.learning_rate = parse_double(spec.at("learning_rate").get<std::string>());
        m.spec.epochs = spec.at("epochs").get<std::int64_t>();
        m.spec.l2_penalty = parse_double(spec.at("l2_penalty").get<std::string>());
        m.spec.seed = spec.at("seed").get<std::int64_t>();

        for (const auto& [locus, learner] : j.at("learners").items()) {
            m.learners.emplace(locus, learner_from_json(learner));
        }
        return m;
    } catch (const CorruptModel&) {
        throw;
    } catch (const std::exception& e) {
        // Unknown tags, bad decimals and json type errors all mean the same
        // thing here: the body cannot be trusted.
        throw CorruptModel(std::string("malformed model body: ") + e.what());
    }
}

void save_model(const HierModel& m, const std::filesystem::path& path) {
    write_file(path, model_to_string(m));
}

HierModel load_model(const std::filesystem::path& path) {
    return model_from_string(read_file(path));
}

}  // namespace hierclass
