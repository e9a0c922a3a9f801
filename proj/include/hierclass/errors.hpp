#pragma once

#include <stdexcept>
#include <string>

namespace hierclass {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Label-matrix shape violations (a non-empty cell after an empty one, ragged rows).
struct MalformedLabelMatrix final : Error { using Error::Error; };
// A label contains the reserved path-separator sequence.
struct ReservedSeparator final : Error { using Error::Error; };
// A queried node is not part of the hierarchy.
struct UnknownNode final : Error { using Error::Error; };

// Learner errors.
struct EmptyTrainingSet final : Error { using Error::Error; };
struct NonFiniteFeature final : Error { using Error::Error; };
struct FeatureDimensionMismatch final : Error { using Error::Error; };

// Row counts of two aligned inputs differ.
struct AlignmentError final : Error { using Error::Error; };
// A model carries a strategy tag the predictor does not know.
struct StrategyMismatch final : Error { using Error::Error; };

// Metrics errors.
struct MalformedRow final : Error { using Error::Error; };
struct EmptyEvaluationSet final : Error { using Error::Error; };

// Dataset ingestion errors.
struct ParseError final : Error { using Error::Error; };
struct MissingColumn final : Error { using Error::Error; };
struct InvalidSchema final : Error { using Error::Error; };

// Model persistence errors.
struct IOError final : Error { using Error::Error; };
struct UnsupportedVersion final : Error { using Error::Error; };
struct CorruptModel final : Error { using Error::Error; };

// Invalid run configuration (bad hyperparameters, bad CLI values).
struct ConfigError final : Error { using Error::Error; };

}  // namespace hierclass
