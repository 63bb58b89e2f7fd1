#pragma once

#include "vna/commutative.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace vna {

struct ExperimentConfig {
    std::vector<int> dims;
    std::uint64_t master_seed = 0;
    int trials = 1;
    Tolerance tol;

    void validate() const;  // throws std::invalid_argument on bad input
    BlockAlgebra algebra() const { return BlockAlgebra(dims); }
};

struct CommandResult {
    nlohmann::json report;
    bool passed = false;
};

// Enumerates every central mask and round-trips it through the theorem
// verifier, then demands an invariance violation witness from `trials`
// random non-central projections.
CommandResult run_theorem(const ExperimentConfig& config);

// Builds a seeded random projection with the given rank vector and emits a
// validated covering certificate.
CommandResult run_cover(const ExperimentConfig& config, const RankVector& ranks);

// Realizes the partial ideal of a one-sided ideal pA (or Ap) over sampled
// subalgebras as a finite table family, then checks consistency (expected
// to pass) and invariance (expected to fail exactly when p is not central).
CommandResult run_partial_ideal(const ExperimentConfig& config, const RankVector& p_ranks,
                                IdealSide side);

// Constructs one invariance violation witness, from the given rank vector
// or from a sampled non-central projection.
CommandResult run_witness(const ExperimentConfig& config,
                          const std::optional<RankVector>& p_ranks);

// Property battery at configuration scale: linear-algebra kernel, atom
// invariants, partial-orthogonality oracle agreement, comparison splits,
// covering certificates, family checks.
CommandResult run_check(const ExperimentConfig& config);

}  // namespace vna
