#pragma once

#include "vna/commutative.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vna {

// Evaluable rule assigning a projection to each commutative subalgebra.
// Three forms cover everything the theory quantifies over: the family
// induced by a projection, the family induced by a central projection, and
// finite tables for hand-built counterexamples.
class FamilyRule {
public:
    struct FromProjection {
        ProjectionElement p;
    };
    struct FromCentral {
        CentralProjection z;
    };
    struct Table {
        std::vector<std::pair<CommutativeSubalgebra, ProjectionElement>> entries;
    };

    static FamilyRule from_projection(ProjectionElement p);
    static FamilyRule from_central(CentralProjection z);
    // Validates that every value is a sum of atoms of its key.
    static FamilyRule table(std::vector<std::pair<CommutativeSubalgebra, ProjectionElement>> entries,
                            const Tolerance& tol = {});

    const BlockAlgebra& algebra() const;

    const FromProjection* as_projection() const { return std::get_if<FromProjection>(&rule_); }
    const FromCentral* as_central() const { return std::get_if<FromCentral>(&rule_); }
    const Table* as_table() const { return std::get_if<Table>(&rule_); }

private:
    explicit FamilyRule(std::variant<FromProjection, FromCentral, Table> r) : rule_(std::move(r)) {}
    std::variant<FromProjection, FromCentral, Table> rule_;
};

// FromProjection(p): the largest projection of V below p. FromCentral(z):
// likewise below z. Table: the stored value; evaluation off the keys is an
// error.
ProjectionElement evaluate(const FamilyRule& rule, const CommutativeSubalgebra& v,
                           const Tolerance& tol = {});

struct InvarianceSample {
    CommutativeSubalgebra v;
    BlockElement u;
};

struct Counterexample {
    std::string kind;  // "consistency" | "invariance" | "round_trip"
    int trial = 0;
    CommutativeSubalgebra v;
    std::optional<CommutativeSubalgebra> v_large;  // consistency failures
    std::optional<BlockElement> u;                 // invariance failures
    BlockElement lhs;
    BlockElement rhs;
    double distance = 0.0;
};

struct CheckReport {
    bool passed = true;
    int trials = 0;
    std::optional<Counterexample> counterexample;           // smallest failing trial
    std::optional<CentralProjection> recovered_center;      // set by verify_theorem
};

// For every chain (V, V') verifies evaluate(V) = largest projection of V
// below evaluate(V'). Throws when a pair is not actually a chain.
CheckReport check_consistency(const FamilyRule& rule, const std::vector<ChainSample>& chains,
                              const Tolerance& tol = {});

// For every sample (V, u) verifies evaluate(u V u*) = u evaluate(V) u*.
CheckReport check_invariance(const FamilyRule& rule, const std::vector<InvarianceSample>& samples,
                             const Tolerance& tol = {});

// Evaluation at the centre, returned as a mask. Throws when the value is
// not central (possible only for table rules).
CentralProjection center_value(const FamilyRule& rule, const Tolerance& tol = {});

// The theorem's round trip: consistency on chains derived from the samples,
// invariance on all (V, u) pairs, then z = center_value and
// evaluate(V) = largest projection of V below z on every sampled V.
CheckReport verify_theorem(const FamilyRule& rule,
                           const std::vector<CommutativeSubalgebra>& subalgebras,
                           const std::vector<BlockElement>& unitaries, const Tolerance& tol = {});

// Constructive refutation of invariance for the family of a non-central
// projection: V is generated by p and the centre, u swaps a range direction
// with a kernel direction inside a block where 0 < rank < dim.
struct ViolationWitness {
    CommutativeSubalgebra v;
    BlockElement u;
    ProjectionElement lhs;  // evaluate(u V u*)
    ProjectionElement rhs;  // u evaluate(V) u*
    double gap = 0.0;       // max-norm distance, >= 1e-4
};

ViolationWitness find_invariance_violation(const ProjectionElement& p, const Tolerance& tol = {});

// Recomputes lhs and rhs from (V, u) and checks they match the stored ones.
bool reverify_witness(const ProjectionElement& p, const ViolationWitness& w,
                      const Tolerance& tol = {});

inline constexpr double violation_gap_threshold = 1e-4;

}  // namespace vna
