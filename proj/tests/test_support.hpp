#pragma once

// Shared fixtures for the unit and acceptance suites: independent oracles
// (kept deliberately naive) and seeded random-instance generators.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "hierclass/data.hpp"
#include "hierclass/hierarchy.hpp"
#include "hierclass/rng.hpp"

namespace testsupport {

// ---------------------------------------------------------------------------
// Brute-force hierarchical metrics oracle. Materializes every ancestor-closed
// set explicitly and intersects them with std::set machinery, unlike the
// library's common-prefix arithmetic.
struct OracleTotals {
    long long intersection = 0;
    long long alpha = 0;  // predicted set sizes
    long long beta = 0;   // truth set sizes
};

inline std::set<std::vector<std::string>> materialize_ancestor_set(
    const std::vector<std::string>& row) {
    std::set<std::vector<std::string>> out;
    std::vector<std::string> prefix;
    for (const auto& cell : row) {
        if (cell.empty()) break;
        prefix.push_back(cell);
        out.insert(prefix);
    }
    return out;
}

inline OracleTotals brute_force_totals(const hierclass::LabelMatrix& truth,
                                       const hierclass::LabelMatrix& pred) {
    OracleTotals t;
    for (std::size_t i = 0; i < truth.n_samples(); ++i) {
        const auto b = materialize_ancestor_set(truth.row(i));
        const auto a = materialize_ancestor_set(pred.row(i));
        std::vector<std::vector<std::string>> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        t.intersection += static_cast<long long>(common.size());
        t.alpha += static_cast<long long>(a.size());
        t.beta += static_cast<long long>(b.size());
    }
    return t;
}

// ---------------------------------------------------------------------------
// Perceptron oracle: returns true when it finds a separating hyperplane,
// which certifies the training set is linearly separable.
inline bool perceptron_separates(const hierclass::FeatureMatrix& X,
                                 const std::vector<int>& y01,
                                 std::size_t max_epochs = 1000) {
    std::vector<double> w(X.cols(), 0.0);
    double b = 0.0;
    for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
        std::size_t mistakes = 0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const auto x = X.row(i);
            double z = b;
            for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
            const int y = y01[i] ? 1 : -1;
            if (y * z <= 0.0) {
                ++mistakes;
                for (std::size_t j = 0; j < x.size(); ++j) w[j] += y * x[j];
                b += y;
            }
        }
        if (mistakes == 0) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random instances.

// Random label rows over a per-level alphabet {A..}; depths are uniform in
// [min_depth, n_levels].
inline hierclass::LabelMatrix random_label_matrix(hierclass::Rng& rng,
                                                  std::size_t n_samples,
                                                  std::size_t n_levels,
                                                  std::size_t labels_per_level,
                                                  std::size_t min_depth = 0) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t depth =
            min_depth + rng.uniform_index(n_levels - min_depth + 1);
        std::vector<std::string> row(n_levels);
        for (std::size_t k = 0; k < depth; ++k) {
            row[k] = std::string(1, static_cast<char>(
                                        'A' + rng.uniform_index(labels_per_level)));
        }
        rows.push_back(std::move(row));
    }
    return hierclass::LabelMatrix::from_padded(std::move(rows), n_levels);
}

inline hierclass::FeatureMatrix random_features(hierclass::Rng& rng,
                                                std::size_t n_samples,
                                                std::size_t n_features,
                                                double lo = -5.0, double hi = 5.0) {
    hierclass::FeatureMatrix X(n_samples, n_features);
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (std::size_t j = 0; j < n_features; ++j) {
            X.at(i, j) = rng.uniform(lo, hi);
        }
    }
    return X;
}

// Two seed-fixed Gaussian blobs around (0,0) and (10,10), labelled A and B.
inline void two_blobs(hierclass::Rng& rng, std::size_t per_class,
                      hierclass::FeatureMatrix& X, std::vector<std::string>& y) {
    std::vector<std::vector<double>> rows;
    y.clear();
    for (std::size_t i = 0; i < per_class; ++i) {
        rows.push_back({rng.normal(), rng.normal()});
        y.push_back("A");
    }
    for (std::size_t i = 0; i < per_class; ++i) {
        rows.push_back({10.0 + rng.normal(), 10.0 + rng.normal()});
        y.push_back("B");
    }
    X = hierclass::FeatureMatrix::from_rows(rows);
}

// True when the row is the empty-padded form of a root-originating path of h.
inline bool is_valid_prediction_row(const hierclass::Hierarchy& h,
                                    const std::vector<std::string>& row) {
    std::size_t len = 0;
    bool seen_empty = false;
    for (const auto& cell : row) {
        if (cell.empty()) {
            seen_empty = true;
        } else if (seen_empty) {
            return false;
        } else {
            ++len;
        }
    }
    hierclass::NodeId node;
    hierclass::NodeId parent = hierclass::NodeId::root();
    for (std::size_t k = 0; k < len; ++k) {
        node.path.push_back(row[k]);
        if (!h.contains(node)) return false;
        const auto kids = h.children(parent);
        if (std::find(kids.begin(), kids.end(), node) == kids.end()) return false;
        parent = node;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        dir_ = std::filesystem::temp_directory_path() /
               ("hierclass-test-" + tag + "-" + std::to_string(counter()++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return dir_; }
    std::filesystem::path file(const std::string& name) const { return dir_ / name; }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path dir_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// The two-row animal taxonomy mock dataset used across the suites.
inline hierclass::FeatureMatrix mock_features() {
    return hierclass::FeatureMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
}

inline hierclass::LabelMatrix mock_labels() {
    return hierclass::LabelMatrix::from_rows(
        {{"Animal", "Mammal", "Cat"}, {"Animal", "Reptile", "Turtle"}});
}

inline std::string mock_csv() {
    return "f1,f2,l1,l2,l3\n"
           "1,2,Animal,Mammal,Cat\n"
           "3,4,Animal,Reptile,Turtle\n";
}

}  // namespace testsupport
