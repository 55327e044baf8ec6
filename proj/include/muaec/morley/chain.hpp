#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "muaec/aec/aec_class.hpp"
#include "muaec/aec/embedding_system.hpp"

namespace muaec {

/// A member with a tuple realizing the restriction of the target type to an
/// index set I (entries listed in increasing index order).
struct SatisfiabilityWitness {
  FiniteStructure structure;
  Tuple tuple;
};

/// Witness for the index set, or nullopt when none is on record.
using SatisfiabilityOracle =
    std::function<std::optional<SatisfiabilityWitness>(const std::vector<std::size_t>&)>;

struct OracleRecord {
  std::vector<std::size_t> index_set;
  SatisfiabilityWitness witness;
};

/// Answers from a fixed list of records (first match wins).
SatisfiabilityOracle scripted_oracle(std::vector<OracleRecord> records);

struct ChainResult {
  /// objects[k] realizes the first k+1 variables with tuples[k]; every
  /// composite arrow is present.
  EmbeddingSystem system;
  std::vector<Tuple> tuples;
  Colimit colimit;
};

/// Builds M_1 -> ... -> M_depth. M_1 is the witness for {0}. Stage k+1 takes
/// the witness W for {0..k}, matches the closure of its first k entries with
/// cl(b̄_k) in M_k, and amalgamates W with M_k freely over that closure.
/// Afterwards every record the oracle holds for I ⊆ {0..depth-1} is compared
/// with b̄_depth restricted to I.
///
/// Throws kInvalidArgument when a prefix witness is missing or malformed,
/// kCompletenessViolation naming I when two witnesses disagree on a common
/// restriction, and kAmalgamationFailure when the amalgam is not a member or
/// an arrow into it is not strong.
ChainResult compactness_chain(const AecClass& k, const SatisfiabilityOracle& oracle,
                              std::size_t depth);

}  // namespace muaec
