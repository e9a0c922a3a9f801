#include "hierclass/learner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hierclass/errors.hpp"

namespace hierclass {
namespace {

// Softmax of z into p, stabilized by subtracting the max logit.
void softmax_row(std::span<const double> z, std::span<double> p) {
    double zmax = z[0];
    for (double v : z) zmax = std::max(zmax, v);
    double sum = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        p[k] = std::exp(z[k] - zmax);
        sum += p[k];
    }
    for (std::size_t k = 0; k < z.size(); ++k) p[k] /= sum;
}

void logits_row(std::span<const double> x, std::size_t n_classes,
                std::span<const double> weights, std::span<const double> bias,
                std::span<double> z) {
    const std::size_t f = x.size();
    for (std::size_t k = 0; k < n_classes; ++k) {
        double acc = bias[k];
        const double* w = weights.data() + k * f;
        for (std::size_t j = 0; j < f; ++j) acc += w[j] * x[j];
        z[k] = acc;
    }
}

}  // namespace

std::string to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::logistic_regression: return "logistic_regression";
        case LearnerKind::constant: return "constant";
    }
    throw ConfigError("unknown learner kind");
}

LearnerKind learner_kind_from_string(const std::string& s) {
    if (s == "logistic_regression") return LearnerKind::logistic_regression;
    if (s == "constant") return LearnerKind::constant;
    throw ConfigError("unknown learner kind '" + s + "'");
}

void LearnerSpec::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning_rate must be a positive real");
    }
    if (epochs <= 0) {
        throw ConfigError("epochs must be a positive integer");
    }
    if (l2_penalty < 0.0 || !std::isfinite(l2_penalty)) {
        throw ConfigError("l2_penalty must be non-negative");
    }
}

std::vector<double> TrainedLearner::predict_proba_row(std::span<const double> x) const {
    if (x.size() != n_features) {
        throw FeatureDimensionMismatch("learner was fitted on " +
                                       std::to_string(n_features) +
                                       " features, got " + std::to_string(x.size()));
    }
    if (is_constant()) {
        return std::vector<double>(classes.size(), 1.0);
    }
    std::vector<double> z(classes.size());
    logits_row(x, classes.size(), weights, bias, z);
    std::vector<double> p(classes.size());
    softmax_row(z, p);
    return p;
}

double TrainedLearner::probability_of(std::span<const double> x,
                                      const std::string& cls) const {
    const auto it = std::lower_bound(classes.begin(), classes.end(), cls);
    if (it == classes.end() || *it != cls) return 0.0;
    return predict_proba_row(x)[static_cast<std::size_t>(it - classes.begin())];
}

std::vector<std::vector<double>> TrainedLearner::predict_proba(const FeatureMatrix& X) const {
    if (X.rows() > 0 && X.cols() != n_features) {
        throw FeatureDimensionMismatch("learner was fitted on " +
                                       std::to_string(n_features) +
                                       " features, got " + std::to_string(X.cols()));
    }
    std::vector<std::vector<double>> out;
    out.reserve(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        out.push_back(predict_proba_row(X.row(i)));
    }
    return out;
}

std::vector<std::string> TrainedLearner::predict(const FeatureMatrix& X) const {
    const auto proba = predict_proba(X);
    std::vector<std::string> out;
    out.reserve(proba.size());
    for (const auto& p : proba) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < p.size(); ++k) {
            if (p[k] > p[best]) best = k;  // classes are sorted, first max wins ties
        }
        out.push_back(classes[best]);
    }
    return out;
}

TrainedLearner constant_learner(std::string cls, std::size_t n_features) {
    TrainedLearner m;
    m.kind = LearnerKind::constant;
    m.classes = {std::move(cls)};
    m.n_features = n_features;
    return m;
}

double softmax_loss(const FeatureMatrix& X, std::span<const std::size_t> y_index,
                    std::size_t n_classes, std::span<const double> weights,
                    std::span<const double> bias, double l2_penalty) {
    const std::size_t n = X.rows();
    std::vector<double> z(n_classes), p(n_classes);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        logits_row(X.row(i), n_classes, weights, bias, z);
        softmax_row(z, p);
        loss -= std::log(p[y_index[i]]);
    }
    loss /= static_cast<double>(n);
    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    return loss + 0.5 * l2_penalty * penalty;
}

void softmax_gradient(const FeatureMatrix& X, std::span<const std::size_t> y_index,
                      std::size_t n_classes, std::span<const double> weights,
                      std::span<const double> bias, double l2_penalty,
                      std::span<double> grad_weights, std::span<double> grad_bias) {
    const std::size_t n = X.rows();
    const std::size_t f = X.cols();
    std::fill(grad_weights.begin(), grad_weights.end(), 0.0);
    std::fill(grad_bias.begin(), grad_bias.end(), 0.0);
    std::vector<double> z(n_classes), p(n_classes);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = X.row(i);
        logits_row(x, n_classes, weights, bias, z);
        softmax_row(z, p);
        for (std::size_t k = 0; k < n_classes; ++k) {
            const double delta = p[k] - (y_index[i] == k ? 1.0 : 0.0);
            grad_bias[k] += delta;
            double* gw = grad_weights.data() + k * f;
            for (std::size_t j = 0; j < f; ++j) gw[j] += delta * x[j];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n_classes; ++k) {
        grad_bias[k] *= inv_n;
        double* gw = grad_weights.data() + k * f;
        const double* w = weights.data() + k * f;
        for (std::size_t j = 0; j < f; ++j) {
            gw[j] = gw[j] * inv_n + l2_penalty * w[j];
        }
    }
}

TrainedLearner fit_learner(const LearnerSpec& spec, const FeatureMatrix& X,
                           const std::vector<std::string>& y) {
    spec.validate();
    if (X.rows() != y.size()) {
        throw AlignmentError("feature rows (" + std::to_string(X.rows()) +
                             ") and labels (" + std::to_string(y.size()) +
                             ") differ");
    }
    if (y.empty()) {
        throw EmptyTrainingSet("cannot fit a learner on zero samples");
    }
    if (!X.all_finite()) {
        throw NonFiniteFeature("training features contain NaN or infinity");
    }

    std::map<std::string, std::size_t> counts;
    for (const auto& label : y) ++counts[label];

    if (counts.size() == 1) {
        return constant_learner(counts.begin()->first, X.cols());
    }
    if (spec.kind == LearnerKind::constant) {
        // Majority class; the map is sorted, so the first maximum is the
        // lexicographically smallest.
        auto best = counts.begin();
        for (auto it = counts.begin(); it != counts.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        return constant_learner(best->first, X.cols());
    }

    TrainedLearner m;
    m.kind = LearnerKind::logistic_regression;
    m.n_features = X.cols();
    m.classes.reserve(counts.size());
    for (const auto& [label, _] : counts) m.classes.push_back(label);

    std::map<std::string, std::size_t> class_index;
    for (std::size_t k = 0; k < m.classes.size(); ++k) class_index[m.classes[k]] = k;
    std::vector<std::size_t> y_index(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_index[i] = class_index[y[i]];

    const std::size_t K = m.classes.size();
    const std::size_t F = X.cols();
    m.weights.assign(K * F, 0.0);
    m.bias.assign(K, 0.0);
    std::vector<double> gw(K * F), gb(K);
    for (std::int64_t epoch = 0; epoch < spec.epochs; ++epoch) {
        softmax_gradient(X, y_index, K, m.weights, m.bias, spec.l2_penalty, gw, gb);
        for (std::size_t t = 0; t < K * F; ++t) m.weights[t] -= spec.learning_rate * gw[t];
        for (std::size_t k = 0; k < K; ++k) m.bias[k] -= spec.learning_rate * gb[k];
    }
    return m;
}

}  // namespace hierclass
