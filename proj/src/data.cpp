#include "hierclass/data.hpp"

#include <cmath>

#include "hierclass/errors.hpp"

namespace hierclass {

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    FeatureMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) {
            throw InvalidSchema("feature row " + std::to_string(i) +
                                " has " + std::to_string(rows[i].size()) +
                                " columns, expected " + std::to_string(m.cols_));
        }
        for (double v : rows[i]) {
            if (!std::isfinite(v)) {
                throw NonFiniteFeature("non-finite feature value in row " +
                                       std::to_string(i));
            }
            m.data_.push_back(v);
        }
    }
    return m;
}

FeatureMatrix FeatureMatrix::select_rows(const std::vector<std::size_t>& indices) const {
    FeatureMatrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::size_t src = indices[i];
        for (std::size_t j = 0; j < cols_; ++j) {
            out.at(i, j) = at(src, j);
        }
    }
    return out;
}

bool FeatureMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::size_t checked_path_length(const std::vector<std::string>& row,
                                bool throw_malformed_row) {
    std::size_t len = 0;
    bool seen_empty = false;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].empty()) {
            seen_empty = true;
        } else if (seen_empty) {
            const std::string msg = "non-empty label '" + row[k] +
                                    "' follows a missing label at level " +
                                    std::to_string(k + 1);
            if (throw_malformed_row) throw MalformedRow(msg);
            throw MalformedLabelMatrix(msg);
        } else {
            len = k + 1;
        }
    }
    return len;
}

LabelMatrix LabelMatrix::from_rows(std::vector<std::vector<std::string>> rows) {
    std::size_t levels = 0;
    for (const auto& r : rows) levels = std::max(levels, r.size());
    for (auto& r : rows) r.resize(levels);
    return from_padded(std::move(rows), levels);
}

LabelMatrix LabelMatrix::from_padded(std::vector<std::vector<std::string>> rows,
                                     std::size_t n_levels) {
    LabelMatrix m;
    m.n_levels_ = n_levels;
    m.rows_ = std::move(rows);
    for (std::size_t i = 0; i < m.rows_.size(); ++i) {
        if (m.rows_[i].size() != n_levels) {
            throw MalformedLabelMatrix("label row " + std::to_string(i) + " has " +
                                       std::to_string(m.rows_[i].size()) +
                                       " cells, expected " + std::to_string(n_levels));
        }
        checked_path_length(m.rows_[i], /*throw_malformed_row=*/false);
    }
    return m;
}

std::size_t LabelMatrix::path_length(std::size_t i) const {
    return checked_path_length(rows_[i], /*throw_malformed_row=*/false);
}

std::size_t LabelMatrix::max_path_length() const {
    std::size_t depth = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        depth = std::max(depth, path_length(i));
    }
    return depth;
}

}  // namespace hierclass
