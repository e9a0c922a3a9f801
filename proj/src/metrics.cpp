#include "hierclass/metrics.hpp"

#include <algorithm>

#include "hierclass/errors.hpp"

namespace hierclass {

std::set<NodeId> path_set(const std::vector<std::string>& row) {
    const std::size_t len = checked_path_length(row, /*throw_malformed_row=*/true);
    std::set<NodeId> out;
    NodeId node;
    for (std::size_t k = 0; k < len; ++k) {
        node.path.push_back(row[k]);
        out.insert(node);
    }
    return out;
}

MetricsReport evaluate_metrics(const LabelMatrix& truth, const PredictionMatrix& pred) {
    if (truth.n_samples() != pred.n_samples()) {
        throw AlignmentError("truth has " + std::to_string(truth.n_samples()) +
                             " rows, predictions have " +
                             std::to_string(pred.n_samples()));
    }
    if (truth.n_samples() == 0) {
        throw EmptyEvaluationSet("cannot evaluate zero samples");
    }

    MetricsReport report;
    for (std::size_t i = 0; i < truth.n_samples(); ++i) {
        const auto& t = truth.row(i);
        const auto& p = pred.row(i);
        const std::size_t tl = checked_path_length(t, true);
        const std::size_t pl = checked_path_length(p, true);
        // Both sets are prefix-closed along a single path, so their
        // intersection is exactly the common-prefix set.
        std::size_t common = 0;
        while (common < std::min(tl, pl) && t[common] == p[common]) ++common;
        report.intersection_total += static_cast<std::int64_t>(common);
        report.alpha_total += static_cast<std::int64_t>(pl);
        report.beta_total += static_cast<std::int64_t>(tl);
    }

    if (report.alpha_total > 0) {
        report.hp = static_cast<double>(report.intersection_total) /
                    static_cast<double>(report.alpha_total);
    } else {
        report.zero_denominator_warning = true;
    }
    if (report.beta_total > 0) {
        report.hr = static_cast<double>(report.intersection_total) /
                    static_cast<double>(report.beta_total);
    } else {
        report.zero_denominator_warning = true;
    }
    if (report.hp + report.hr > 0.0) {
        report.hf = 2.0 * report.hp * report.hr / (report.hp + report.hr);
    }
    return report;
}

double h_precision(const LabelMatrix& truth, const PredictionMatrix& pred) {
    return evaluate_metrics(truth, pred).hp;
}

double h_recall(const LabelMatrix& truth, const PredictionMatrix& pred) {
    return evaluate_metrics(truth, pred).hr;
}

double h_fscore(const LabelMatrix& truth, const PredictionMatrix& pred) {
    return evaluate_metrics(truth, pred).hf;
}

}  // namespace hierclass
