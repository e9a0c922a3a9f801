#include "hierclass/synth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hierclass/errors.hpp"
#include "hierclass/rng.hpp"

namespace hierclass {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBaseRadius = 10.0;

double level_radius(std::size_t level) {  // level is 1-based
    return kBaseRadius * std::pow(0.5, static_cast<double>(level - 1));
}

std::string child_label(std::size_t index, std::size_t branching) {
    std::size_t digits = 1;
    for (std::size_t b = branching - 1; b >= 10; b /= 10) ++digits;
    std::string num = std::to_string(index);
    return "c" + std::string(digits - num.size(), '0') + num;
}

}  // namespace

SynthDataset make_blobs(const SynthParams& params) {
    if (params.depth < 1 || params.branching < 1 || params.samples_per_leaf < 1) {
        throw ConfigError("depth, branching and samples_per_leaf must be >= 1");
    }
    if (!(params.overlap >= 0.0) || !std::isfinite(params.overlap)) {
        throw ConfigError("overlap must be a non-negative real");
    }

    const std::size_t dims = 2 * params.depth;
    const double sigma = params.overlap * level_radius(params.depth);

    // Enumerate leaves in lexicographic child-index order and precompute
    // centres level by level.
    std::size_t n_leaves = 1;
    for (std::size_t k = 0; k < params.depth; ++k) n_leaves *= params.branching;

    std::vector<std::vector<double>> centers(n_leaves, std::vector<double>(dims, 0.0));
    std::vector<std::vector<std::string>> paths(n_leaves,
                                                std::vector<std::string>(params.depth));
    for (std::size_t leaf = 0; leaf < n_leaves; ++leaf) {
        std::size_t rem = leaf;
        std::size_t stride = n_leaves;
        for (std::size_t level = 1; level <= params.depth; ++level) {
            stride /= params.branching;
            const std::size_t j = rem / stride;
            rem %= stride;
            const double angle = 2.0 * kPi * static_cast<double>(j) /
                                 static_cast<double>(params.branching);
            const double r = level_radius(level);
            centers[leaf][2 * (level - 1)] += r * std::cos(angle);
            centers[leaf][2 * (level - 1) + 1] += r * std::sin(angle);
            paths[leaf][level - 1] = child_label(j, params.branching);
        }
    }

    Rng rng(params.seed);
    const std::size_t n = n_leaves * params.samples_per_leaf;
    FeatureMatrix X(n, dims);
    std::vector<std::vector<std::string>> labels;
    labels.reserve(n);
    std::size_t row = 0;
    for (std::size_t leaf = 0; leaf < n_leaves; ++leaf) {
        for (std::size_t s = 0; s < params.samples_per_leaf; ++s, ++row) {
            for (std::size_t d = 0; d < dims; ++d) {
                X.at(row, d) = centers[leaf][d] + sigma * rng.normal();
            }
            labels.push_back(paths[leaf]);
        }
    }
    return {std::move(X), LabelMatrix::from_padded(std::move(labels), params.depth)};
}

}  // namespace hierclass
