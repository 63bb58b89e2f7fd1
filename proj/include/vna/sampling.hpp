#pragma once

#include "vna/commutative.hpp"
#include "vna/rng.hpp"

#include <cstdint>

namespace vna {

// Seeded, deterministic generators for test material. Per-trial seeds are
// derived with mix_seed so experiments replay exactly.

BlockElement random_block_unitary(const BlockAlgebra& a, std::uint64_t seed);

ProjectionElement random_block_projection(const BlockAlgebra& a, const RankVector& ranks,
                                          std::uint64_t seed, const Tolerance& tol = {});

RankVector random_rank_vector(const BlockAlgebra& a, std::uint64_t seed);

bool is_central_rank_vector(const BlockAlgebra& a, const RankVector& ranks);

// Some block with dimension >= 2 exists, so non-central projections exist.
bool admits_noncentral(const BlockAlgebra& a);

// Projection with 0 < rank < dim on at least one block. Throws when the
// algebra has no such projection (all blocks one-dimensional).
ProjectionElement random_noncentral_projection(const BlockAlgebra& a, std::uint64_t seed,
                                               const Tolerance& tol = {});

// Subalgebra generated by one or two commuting random projections-like
// Hermitians (shared eigenbasis, small integer spectra), with or without the
// centre thrown in. Degenerate draws are kept: they exercise coarse cases.
CommutativeSubalgebra random_subalgebra(const BlockAlgebra& a, std::uint64_t seed,
                                        const Tolerance& tol = {});

// Random coarsening of v: atoms merged along a random partition.
CommutativeSubalgebra random_coarsening(const CommutativeSubalgebra& v, std::uint64_t seed,
                                        const Tolerance& tol = {});

ChainSample random_chain(const BlockAlgebra& a, std::uint64_t seed, const Tolerance& tol = {});

}  // namespace vna
