#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hierclass/data.hpp"

namespace hierclass {

enum class LearnerKind { logistic_regression, constant };

std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& s);

// Hyperparameters for the built-in learners. The seed is carried for config
// compatibility; the built-in fits are deterministic without it.
struct LearnerSpec {
    LearnerKind kind = LearnerKind::logistic_regression;
    double learning_rate = 0.1;
    std::int64_t epochs = 500;
    double l2_penalty = 0.0;
    std::int64_t seed = 0;

    // Throws ConfigError when a hyperparameter is out of range.
    void validate() const;

    bool operator==(const LearnerSpec&) const = default;
};

// An immutable fitted learner. For logistic regression, weights is a
// classes.size() x n_features row-major matrix and bias has one entry per
// class; a constant learner has a single class and no parameters.
struct TrainedLearner {
    LearnerKind kind = LearnerKind::constant;
    std::vector<std::string> classes;  // sorted lexicographically
    std::size_t n_features = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    bool is_constant() const { return kind == LearnerKind::constant; }

    // Class probabilities for one sample, ordered like `classes`.
    std::vector<double> predict_proba_row(std::span<const double> x) const;
    // Probability assigned to `cls`, or 0 when the learner never saw it.
    double probability_of(std::span<const double> x, const std::string& cls) const;

    // Rows sum to 1 within 1e-9; column order matches the class list.
    // Throws FeatureDimensionMismatch.
    std::vector<std::vector<double>> predict_proba(const FeatureMatrix& X) const;
    // Argmax of predict_proba per row; ties go to the lexicographically
    // smallest class.
    std::vector<std::string> predict(const FeatureMatrix& X) const;

    bool operator==(const TrainedLearner&) const = default;
};

TrainedLearner constant_learner(std::string cls, std::size_t n_features);

// Fits a learner on X/y. A training set with exactly one distinct class
// collapses to a constant learner regardless of the requested kind; the
// constant kind picks the majority class with lexicographic tie-break.
// Logistic regression runs full-batch gradient descent on the mean
// cross-entropy with L2 penalty, zero-initialized, for spec.epochs steps.
// Throws EmptyTrainingSet, NonFiniteFeature, AlignmentError, ConfigError.
TrainedLearner fit_learner(const LearnerSpec& spec, const FeatureMatrix& X,
                           const std::vector<std::string>& y);

// Mean cross-entropy of the softmax model plus (l2/2)*||W||^2; the bias is
// not penalized. `weights` is n_classes x n_features row-major.
double softmax_loss(const FeatureMatrix& X, std::span<const std::size_t> y_index,
                    std::size_t n_classes, std::span<const double> weights,
                    std::span<const double> bias, double l2_penalty);

// Analytic gradient of softmax_loss with respect to weights and bias.
void softmax_gradient(const FeatureMatrix& X, std::span<const std::size_t> y_index,
                      std::size_t n_classes, std::span<const double> weights,
                      std::span<const double> bias, double l2_penalty,
                      std::span<double> grad_weights, std::span<double> grad_bias);

}  // namespace hierclass
