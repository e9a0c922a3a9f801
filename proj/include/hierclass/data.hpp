#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hierclass {

// Dense row-major matrix of finite reals, one row per sample.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    // Throws NonFiniteFeature on NaN/inf cells and InvalidSchema on ragged input.
    static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }

    // New matrix holding the given rows, in the given order.
    FeatureMatrix select_rows(const std::vector<std::size_t>& indices) const;

    bool all_finite() const;

    bool operator==(const FeatureMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Per-sample root-to-leaf label paths, shape n_samples x n_levels. Cells are
// label strings; the empty string marks a missing label and may appear only
// as a suffix of a row.
class LabelMatrix {
public:
    LabelMatrix() = default;

    // Pads shorter rows with the empty marker up to the longest path and
    // enforces the suffix rule. Throws MalformedLabelMatrix.
    static LabelMatrix from_rows(std::vector<std::vector<std::string>> rows);

    // Rows must already be rectangular with n_levels cells each.
    static LabelMatrix from_padded(std::vector<std::vector<std::string>> rows,
                                   std::size_t n_levels);

    std::size_t n_samples() const { return rows_.size(); }
    std::size_t n_levels() const { return n_levels_; }

    const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    // Length of the non-empty prefix of row i. Throws MalformedLabelMatrix if
    // a non-empty cell follows an empty one.
    std::size_t path_length(std::size_t i) const;

    // Longest non-empty prefix over all rows.
    std::size_t max_path_length() const;

    bool operator==(const LabelMatrix&) const = default;

private:
    std::size_t n_levels_ = 0;
    std::vector<std::vector<std::string>> rows_;
};

// Prediction output shares the label-matrix shape: walked paths padded with
// the empty marker to the hierarchy's level count.
using PredictionMatrix = LabelMatrix;

// Non-empty prefix length of a free-standing label row; throws the given
// error type on a non-empty cell after an empty one.
std::size_t checked_path_length(const std::vector<std::string>& row,
                                bool throw_malformed_row);

}  // namespace hierclass
