#pragma once

#include <map>
#include <string>
#include <vector>

#include "hierclass/data.hpp"
#include "hierclass/hierarchy.hpp"
#include "hierclass/learner.hpp"

namespace hierclass {

// The classifier design patterns: one flat baseline over leaf classes plus
// the three local patterns (per node, per parent node, per level).
enum class Strategy { flat, lcpn, lcppn, lcpl };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// Class labels of the per-node binary learners.
inline constexpr const char* kPositiveClass = "positive";
inline constexpr const char* kNegativeClass = "negative";

// A trained hierarchical model: strategy tag, hierarchy and one learner per
// locus. Locus keys depend on the strategy: canonical node names for lcpn,
// canonical parent names for lcppn ("" is the root, also used by flat), and
// the 1-based level number in decimal for lcpl. Immutable once fitted;
// prediction is reentrant.
struct HierModel {
    Strategy strategy = Strategy::lcpn;
    Hierarchy hierarchy;
    LearnerSpec spec;
    int format_version = 1;
    std::map<std::string, TrainedLearner> learners;
};

std::size_t learner_count(const HierModel& m);

// One local training set: which rows participate and the per-row target
// class. A group with no rows is fitted as a constant learner predicting
// fallback_classes.front(); flat leaves fallback_classes empty so an empty
// group surfaces EmptyTrainingSet instead.
struct TrainingGroup {
    std::string locus;
    std::vector<std::size_t> rows;
    std::vector<std::string> targets;
    std::vector<std::string> fallback_classes;
};

// Assembles the local training sets for a strategy without fitting anything.
//   lcpn  — one group per non-root node under the siblings policy: positives
//           pass through the node, negatives pass through a sibling; rows
//           whose path ends above the node's level join neither side.
//   lcppn — one group per parent (root first): rows passing through the
//           parent and continuing deeper, target = the child on the path.
//   lcpl  — one group per level: rows reaching that level, target = the
//           row's node at that level.
//   flat  — one group of the rows labelled to full depth, target = the
//           deepest node.
std::vector<TrainingGroup> training_groups(Strategy strategy, const Hierarchy& h,
                                           const LabelMatrix& Y);

// Fits every local learner of the strategy, dispatching independent fits to
// `workers` threads. The result is independent of worker count. Throws
// AlignmentError when X and Y row counts differ and EmptyTrainingSet on an
// empty dataset.
HierModel fit_strategy(Strategy strategy, const Hierarchy& h, const FeatureMatrix& X,
                       const LabelMatrix& Y, const LearnerSpec& spec,
                       std::size_t workers = 1);

HierModel fit_lcpn(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers = 1);
HierModel fit_lcppn(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                    const LearnerSpec& spec, std::size_t workers = 1);
HierModel fit_lcpl(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers = 1);
HierModel fit_flat(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers = 1);

// Top-down prediction. Each sample walks from the root: lcppn follows the
// parent learner's predicted child, lcpn follows the child whose binary
// learner assigns the highest positive probability, lcpl takes the level
// learner's argmax restricted to the current node's children, and flat
// expands the single learner's predicted leaf into its full path. Walks stop
// at leaves or when no applicable learner remains; rows are padded with the
// empty marker to the hierarchy's level count. All ties break to the
// lexicographically smallest canonical name.
// Throws FeatureDimensionMismatch and StrategyMismatch.
PredictionMatrix predict(const HierModel& m, const FeatureMatrix& X);

}  // namespace hierclass
