#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hierclass/data.hpp"
#include "hierclass/hierarchy.hpp"

namespace hierclass {

// Micro-aggregated hierarchical precision, recall and F-score over
// ancestor-closed label sets. The integer totals are the exact numerators
// and denominators before division.
struct MetricsReport {
    double hp = 0.0;
    double hr = 0.0;
    double hf = 0.0;
    std::int64_t intersection_total = 0;
    std::int64_t alpha_total = 0;  // sum of predicted set sizes
    std::int64_t beta_total = 0;   // sum of true set sizes
    bool zero_denominator_warning = false;

    bool operator==(const MetricsReport&) const = default;
};

// The ancestor-closed set of one label row: every non-empty path prefix as a
// NodeId. Excludes the synthetic root. Throws MalformedRow.
std::set<NodeId> path_set(const std::vector<std::string>& row);

// Sums |prediction set|, |truth set| and their intersection over all rows
// first, then divides once. A zero denominator yields 0 for that metric and
// sets the warning flag. Throws AlignmentError, EmptyEvaluationSet,
// MalformedRow.
MetricsReport evaluate_metrics(const LabelMatrix& truth, const PredictionMatrix& pred);

double h_precision(const LabelMatrix& truth, const PredictionMatrix& pred);
double h_recall(const LabelMatrix& truth, const PredictionMatrix& pred);
double h_fscore(const LabelMatrix& truth, const PredictionMatrix& pred);

}  // namespace hierclass
