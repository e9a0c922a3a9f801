#pragma once

#include <cstdint>

#include "hierclass/data.hpp"

namespace hierclass {

// Seed-deterministic hierarchical Gaussian blobs. Every leaf of a uniform
// tree (branching^depth leaves) gets its own cluster centre; each level
// occupies two feature dimensions of its own and the centre offsets shrink
// with depth, so separation between first-level groups is larger than
// between sibling leaves. `overlap` scales the noise relative to the
// deepest-level offset radius.
struct SynthParams {
    std::size_t depth = 2;
    std::size_t branching = 3;
    std::size_t samples_per_leaf = 200;
    double overlap = 0.1;
    std::uint64_t seed = 42;
};

struct SynthDataset {
    FeatureMatrix X;
    LabelMatrix Y;
};

// Throws ConfigError on out-of-range parameters.
SynthDataset make_blobs(const SynthParams& params);

}  // namespace hierclass
