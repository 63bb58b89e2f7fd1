#pragma once

#include "vna/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vna {

// Witness of partial orthogonality: on the mask the pair is orthogonal, on
// its complement the pair is equal.
struct PartialOrthWitness {
    CentralProjection orthogonal_mask;
};

// Per-block decision: a block is orthogonal-eligible when p_k q_k ~ 0 and
// equal-eligible when p_k ~ q_k; a witness exists iff every block is
// eligible for at least one side. When both hold (p_k = q_k = 0) the
// orthogonal side is preferred, so the output is canonical.
std::optional<PartialOrthWitness> partially_orthogonal(const ProjectionElement& p,
                                                       const ProjectionElement& q,
                                                       const Tolerance& tol = {});

bool witness_valid(const ProjectionElement& p, const ProjectionElement& q,
                   const PartialOrthWitness& w, const Tolerance& tol = {});

// Glue witnesses across a central cut z: y witnesses partial orthogonality
// of (z p1, z p2) and x of (z' p1, z' p2), with the equal parts carried by
// y and x and the orthogonal parts by their complements. The combined
// witness has orthogonal side y'z + x'z'. Throws, naming the failing
// identity, when the claimed witnesses do not hold.
PartialOrthWitness glue_witnesses(const ProjectionElement& p1, const ProjectionElement& p2,
                                  const CentralProjection& z, const CentralProjection& y,
                                  const CentralProjection& x, const Tolerance& tol = {});

// Deterministic packing replacing the maximality argument: per block b with
// rank r_b > 0, floor(n_b / r_b) pairwise-orthogonal copies of the range of
// q_b are laid out along an orthonormal frame, and member i of the family
// takes copy (i mod t_b) in block b. The family is pairwise partially
// orthogonal, contains q, and lies in the unitary orbit of q. Throws when
// q = 0 (the strict remainder bound below is unattainable).
std::vector<ProjectionElement> maximal_partially_orthogonal_family(const ProjectionElement& q,
                                                                   const Tolerance& tol = {});

struct PairWitness {
    int i;
    int j;
    PartialOrthWitness witness;
};

// Certificate for the covering construction: q in family, family inside the
// unitary orbit and pairwise partially orthogonal, supremum s, remainder
// s_rem = C(q) - s, and a unitary with s_rem < u q u* strictly in rank on
// every carrier block.
struct CoverCertificate {
    ProjectionElement q;
    std::vector<ProjectionElement> family;
    ProjectionElement supremum;
    ProjectionElement remainder;
    BlockElement conjugator;
    std::vector<PairWitness> pairwise;
};

CoverCertificate main_lemma_cover(const ProjectionElement& q, const Tolerance& tol = {});

struct CoverValidation {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> checks;
};

// Re-derives every certificate claim from scratch.
CoverValidation validate_cover(const CoverCertificate& cert, const Tolerance& tol = {});

}  // namespace vna
