#include "hierclass/strategies.hpp"

#include <algorithm>

#include "hierclass/errors.hpp"
#include "hierclass/parallel.hpp"

namespace hierclass {
namespace {

// True when row[0..len) equals the node path.
bool row_passes_through(const std::vector<std::string>& row, const NodeId& node) {
    for (std::size_t k = 0; k < node.depth(); ++k) {
        if (row[k] != node.path[k]) return false;
    }
    return true;
}

std::vector<TrainingGroup> lcpn_groups(const Hierarchy& h, const LabelMatrix& Y) {
    std::vector<std::size_t> path_len(Y.n_samples());
    for (std::size_t i = 0; i < Y.n_samples(); ++i) path_len[i] = Y.path_length(i);

    std::vector<TrainingGroup> groups;
    groups.reserve(h.node_count());
    for (const NodeId& node : h.nodes()) {
        TrainingGroup g;
        g.locus = node.canonical(h.separator());
        g.fallback_classes = {kNegativeClass};
        const std::size_t level = node.depth();
        const NodeId parent = node.parent();
        std::vector<std::size_t> negatives;
        std::vector<std::string> negative_targets;
        for (std::size_t i = 0; i < Y.n_samples(); ++i) {
            if (path_len[i] < level) continue;  // ends above this node's level
            const auto& row = Y.row(i);
            if (row_passes_through(row, node)) {
                g.rows.push_back(i);
                g.targets.emplace_back(kPositiveClass);
            } else if (row_passes_through(row, parent)) {
                negatives.push_back(i);
                negative_targets.emplace_back(kNegativeClass);
            }
        }
        if (g.rows.empty() && !negatives.empty()) {
            // No positive anywhere: the node is unobserved, keep the constant
            // negative fallback rather than a one-class "negative" fit.
            negatives.clear();
            negative_targets.clear();
        }
        g.rows.insert(g.rows.end(), negatives.begin(), negatives.end());
        g.targets.insert(g.targets.end(), negative_targets.begin(),
                         negative_targets.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<TrainingGroup> lcppn_groups(const Hierarchy& h, const LabelMatrix& Y) {
    std::vector<NodeId> parents;
    if (!h.children(NodeId::root()).empty()) parents.push_back(NodeId::root());
    for (const NodeId& p : h.parent_nodes()) parents.push_back(p);

    std::vector<TrainingGroup> groups;
    groups.reserve(parents.size());
    for (const NodeId& parent : parents) {
        TrainingGroup g;
        g.locus = parent.canonical(h.separator());
        for (const NodeId& child : h.children(parent)) {
            g.fallback_classes.push_back(child.canonical(h.separator()));
        }
        const std::size_t depth = parent.depth();
        for (std::size_t i = 0; i < Y.n_samples(); ++i) {
            const auto& row = Y.row(i);
            if (Y.path_length(i) < depth + 1) continue;
            if (!row_passes_through(row, parent)) continue;
            NodeId child = parent;
            child.path.push_back(row[depth]);
            g.rows.push_back(i);
            g.targets.push_back(child.canonical(h.separator()));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<TrainingGroup> lcpl_groups(const Hierarchy& h, const LabelMatrix& Y) {
    std::vector<TrainingGroup> groups;
    groups.reserve(h.level_count());
    for (std::size_t k = 0; k < h.level_count(); ++k) {
        TrainingGroup g;
        g.locus = std::to_string(k + 1);
        for (const NodeId& n : h.level(k)) {
            g.fallback_classes.push_back(n.canonical(h.separator()));
        }
        std::sort(g.fallback_classes.begin(), g.fallback_classes.end());
        for (std::size_t i = 0; i < Y.n_samples(); ++i) {
            if (Y.path_length(i) < k + 1) continue;
            NodeId node;
            const auto& row = Y.row(i);
            node.path.assign(row.begin(), row.begin() + k + 1);
            g.rows.push_back(i);
            g.targets.push_back(node.canonical(h.separator()));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<TrainingGroup> flat_groups(const Hierarchy& h, const LabelMatrix& Y) {
    TrainingGroup g;
    g.locus = "";
    const std::size_t full_depth = Y.max_path_length();
    for (std::size_t i = 0; i < Y.n_samples(); ++i) {
        if (Y.path_length(i) != full_depth || full_depth == 0) continue;
        NodeId node;
        const auto& row = Y.row(i);
        node.path.assign(row.begin(), row.begin() + full_depth);
        g.rows.push_back(i);
        g.targets.push_back(node.canonical(h.separator()));
    }
    std::vector<TrainingGroup> groups;
    groups.push_back(std::move(g));
    return groups;
}

TrainedLearner fit_group(const TrainingGroup& g, const FeatureMatrix& X,
                         const LearnerSpec& spec) {
    if (g.rows.empty()) {
        if (g.fallback_classes.empty()) {
            throw EmptyTrainingSet("no samples reach full depth for the flat learner");
        }
        return constant_learner(g.fallback_classes.front(), X.cols());
    }
    return fit_learner(spec, X.select_rows(g.rows), g.targets);
}

std::size_t model_feature_count(const HierModel& m) {
    if (m.learners.empty()) return 0;
    return m.learners.begin()->second.n_features;
}

// Positive-class probability of each child's binary learner; best child wins.
const NodeId* lcpn_step(const HierModel& m, const std::vector<NodeId>& kids,
                        std::span<const double> x) {
    const NodeId* best = nullptr;
    double best_score = -1.0;
    for (const NodeId& c : kids) {
        const auto it = m.learners.find(c.canonical(m.hierarchy.separator()));
        if (it == m.learners.end()) continue;
        const double score = it->second.probability_of(x, kPositiveClass);
        if (best == nullptr || score > best_score) {
            best = &c;
            best_score = score;
        }
    }
    return best;
}

const NodeId* lcppn_step(const HierModel& m, const NodeId& at,
                         const std::vector<NodeId>& kids, std::span<const double> x) {
    const auto it = m.learners.find(at.canonical(m.hierarchy.separator()));
    if (it == m.learners.end()) return nullptr;
    const auto proba = it->second.predict_proba_row(x);
    std::size_t best = 0;
    for (std::size_t k = 1; k < proba.size(); ++k) {
        if (proba[k] > proba[best]) best = k;
    }
    const std::string& predicted = it->second.classes[best];
    for (const NodeId& c : kids) {
        if (c.canonical(m.hierarchy.separator()) == predicted) return &c;
    }
    return nullptr;
}

// Argmax of the level learner restricted to the current node's children.
const NodeId* lcpl_step(const HierModel& m, std::size_t next_level,
                        const std::vector<NodeId>& kids, std::span<const double> x) {
    const auto it = m.learners.find(std::to_string(next_level));
    if (it == m.learners.end()) return nullptr;
    const TrainedLearner& learner = it->second;
    const auto proba = learner.predict_proba_row(x);
    const NodeId* best = nullptr;
    double best_score = -1.0;
    for (const NodeId& c : kids) {
        const std::string name = c.canonical(m.hierarchy.separator());
        const auto cls = std::lower_bound(learner.classes.begin(),
                                          learner.classes.end(), name);
        if (cls == learner.classes.end() || *cls != name) continue;
        const double score = proba[static_cast<std::size_t>(cls - learner.classes.begin())];
        if (best == nullptr || score > best_score) {
            best = &c;
            best_score = score;
        }
    }
    return best;
}

std::vector<std::string> walk_top_down(const HierModel& m, std::span<const double> x,
                                       std::size_t n_levels) {
    std::vector<std::string> row(n_levels);
    NodeId at = NodeId::root();
    while (true) {
        const std::vector<NodeId> kids = m.hierarchy.children(at);
        if (kids.empty()) break;
        const NodeId* next = nullptr;
        switch (m.strategy) {
            case Strategy::lcpn: next = lcpn_step(m, kids, x); break;
            case Strategy::lcppn: next = lcppn_step(m, at, kids, x); break;
            case Strategy::lcpl: next = lcpl_step(m, at.depth() + 1, kids, x); break;
            default:
                throw StrategyMismatch("model carries an unknown strategy tag");
        }
        if (next == nullptr) break;
        at = *next;
        row[at.depth() - 1] = at.label();
    }
    return row;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::flat: return "flat";
        case Strategy::lcpn: return "lcpn";
        case Strategy::lcppn: return "lcppn";
        case Strategy::lcpl: return "lcpl";
    }
    throw StrategyMismatch("unknown strategy tag");
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "flat") return Strategy::flat;
    if (s == "lcpn") return Strategy::lcpn;
    if (s == "lcppn") return Strategy::lcppn;
    if (s == "lcpl") return Strategy::lcpl;
    throw ConfigError("unknown strategy '" + s + "'");
}

std::size_t learner_count(const HierModel& m) { return m.learners.size(); }

std::vector<TrainingGroup> training_groups(Strategy strategy, const Hierarchy& h,
                                           const LabelMatrix& Y) {
    switch (strategy) {
        case Strategy::lcpn: return lcpn_groups(h, Y);
        case Strategy::lcppn: return lcppn_groups(h, Y);
        case Strategy::lcpl: return lcpl_groups(h, Y);
        case Strategy::flat: return flat_groups(h, Y);
    }
    throw StrategyMismatch("unknown strategy tag");
}

HierModel fit_strategy(Strategy strategy, const Hierarchy& h, const FeatureMatrix& X,
                       const LabelMatrix& Y, const LearnerSpec& spec,
                       std::size_t workers) {
    if (X.rows() != Y.n_samples()) {
        throw AlignmentError("feature rows (" + std::to_string(X.rows()) +
                             ") and label rows (" + std::to_string(Y.n_samples()) +
                             ") differ");
    }
    if (Y.n_samples() == 0) {
        throw EmptyTrainingSet("cannot fit on an empty dataset");
    }
    spec.validate();

    HierModel m;
    m.strategy = strategy;
    m.hierarchy = h;
    m.spec = spec;

    const auto groups = training_groups(strategy, h, Y);
    std::vector<TrainedLearner> fitted(groups.size());
    parallel_for(groups.size(), workers,
                 [&](std::size_t i) { fitted[i] = fit_group(groups[i], X, spec); });
    for (std::size_t i = 0; i < groups.size(); ++i) {
        m.learners.emplace(groups[i].locus, std::move(fitted[i]));
    }
    return m;
}

HierModel fit_lcpn(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers) {
    return fit_strategy(Strategy::lcpn, h, X, Y, spec, workers);
}

HierModel fit_lcppn(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                    const LearnerSpec& spec, std::size_t workers) {
    return fit_strategy(Strategy::lcppn, h, X, Y, spec, workers);
}

HierModel fit_lcpl(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers) {
    return fit_strategy(Strategy::lcpl, h, X, Y, spec, workers);
}

HierModel fit_flat(const Hierarchy& h, const FeatureMatrix& X, const LabelMatrix& Y,
                   const LearnerSpec& spec, std::size_t workers) {
    return fit_strategy(Strategy::flat, h, X, Y, spec, workers);
}

PredictionMatrix predict(const HierModel& m, const FeatureMatrix& X) {
    const std::size_t n_levels = m.hierarchy.level_count();
    if (X.rows() > 0 && !m.learners.empty() && X.cols() != model_feature_count(m)) {
        throw FeatureDimensionMismatch("model was trained on " +
                                       std::to_string(model_feature_count(m)) +
                                       " features, got " + std::to_string(X.cols()));
    }
    if (m.strategy != Strategy::flat && m.strategy != Strategy::lcpn &&
        m.strategy != Strategy::lcppn && m.strategy != Strategy::lcpl) {
        throw StrategyMismatch("model carries an unknown strategy tag");
    }

    std::vector<std::vector<std::string>> rows;
    rows.reserve(X.rows());
    if (m.strategy == Strategy::flat) {
        const auto it = m.learners.find("");
        for (std::size_t i = 0; i < X.rows(); ++i) {
            std::vector<std::string> row(n_levels);
            if (it != m.learners.end()) {
                const auto proba = it->second.predict_proba_row(X.row(i));
                std::size_t best = 0;
                for (std::size_t k = 1; k < proba.size(); ++k) {
                    if (proba[k] > proba[best]) best = k;
                }
                const NodeId leaf = NodeId::from_canonical(it->second.classes[best],
                                                           m.hierarchy.separator());
                for (std::size_t k = 0; k < leaf.depth() && k < n_levels; ++k) {
                    row[k] = leaf.path[k];
                }
            }
            rows.push_back(std::move(row));
        }
    } else {
        for (std::size_t i = 0; i < X.rows(); ++i) {
            rows.push_back(walk_top_down(m, X.row(i), n_levels));
        }
    }
    return LabelMatrix::from_padded(std::move(rows), n_levels);
}

}  // namespace hierclass
