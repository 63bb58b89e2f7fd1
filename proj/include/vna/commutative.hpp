#pragma once

#include "vna/algebra.hpp"

#include <vector>

namespace vna {

// Commutative unital sub-von-Neumann-algebra, represented by its atoms: an
// ordered list of pairwise-orthogonal projections summing to the identity.
// Every projection of the subalgebra is a sum of atoms, so the ideal lattice
// below is exact set arithmetic on atom indices.
class CommutativeSubalgebra {
public:
    // Validates orthogonality and the resolution of the identity, and
    // computes whether every minimal central projection is a sum of atoms.
    static CommutativeSubalgebra from_atoms(std::vector<ProjectionElement> atoms,
                                            const Tolerance& tol = {});

    const BlockAlgebra& algebra() const { return algebra_; }
    const std::vector<ProjectionElement>& atoms() const { return atoms_; }
    const ProjectionElement& atom(int i) const { return atoms_.at(i); }
    int size() const { return static_cast<int>(atoms_.size()); }
    bool contains_center() const { return contains_center_; }

    ProjectionElement sum_of(const std::vector<int>& indices) const;

    bool operator==(const CommutativeSubalgebra&) const = default;

private:
    CommutativeSubalgebra(BlockAlgebra a, std::vector<ProjectionElement> atoms, bool cc)
        : algebra_(std::move(a)), atoms_(std::move(atoms)), contains_center_(cc) {}

    BlockAlgebra algebra_;
    std::vector<ProjectionElement> atoms_;
    bool contains_center_;
};

// The subalgebra generated by a commuting normal family (together with the
// centre when with_center is set), realized by joint eigenspace splitting.
CommutativeSubalgebra generate(const BlockAlgebra& algebra,
                               const std::vector<BlockElement>& generators, bool with_center,
                               const Tolerance& tol = {});

// Z(A): atoms are the minimal central projections, in block order.
CommutativeSubalgebra center_subalgebra(const BlockAlgebra& a, const Tolerance& tol = {});

// {scalars}: the single atom is the identity.
CommutativeSubalgebra trivial_subalgebra(const BlockAlgebra& a, const Tolerance& tol = {});

// True iff every atom of inner is a sum of atoms of outer; then inner is
// included in outer as an algebra.
bool includes(const CommutativeSubalgebra& inner, const CommutativeSubalgebra& outer,
              const Tolerance& tol = {});

// Equality as algebras: mutual inclusion.
bool subalgebra_equal(const CommutativeSubalgebra& a, const CommutativeSubalgebra& b,
                      const Tolerance& tol = {});

// Atoms conjugated elementwise; contains_center is preserved.
CommutativeSubalgebra conjugate_subalgebra(const CommutativeSubalgebra& v, const BlockElement& u,
                                           const Tolerance& tol = {});

// Merge atoms by groups (a partition of the atom indices): a coarser
// subalgebra included in the original.
CommutativeSubalgebra coarsen(const CommutativeSubalgebra& v,
                              const std::vector<std::vector<int>>& groups,
                              const Tolerance& tol = {});

// sup{ q projection in V : q <= p } = the sum of the atoms of V below p,
// where e <= p is decided by ||p e - e||_max <= tol.leq_eps().
ProjectionElement largest_projection_below(const CommutativeSubalgebra& v,
                                           const ProjectionElement& p, const Tolerance& tol = {});
ProjectionElement largest_projection_below(const CommutativeSubalgebra& v,
                                           const CentralProjection& z, const Tolerance& tol = {});

// A nested pair of subalgebras: small is included in large.
struct ChainSample {
    CommutativeSubalgebra small;
    CommutativeSubalgebra large;
};

// Ideal of a commutative subalgebra: the span of a subset of its atoms.
struct CommutativeIdeal {
    CommutativeSubalgebra subalgebra;
    std::vector<int> atom_indices;  // sorted ascending, unique
};

// The unit of the ideal: the sum of the selected atoms.
ProjectionElement ideal_support(const CommutativeIdeal& ideal);

// zA cut down to V: the atoms lying under z.
CommutativeIdeal total_partial_ideal(const CentralProjection& z, const CommutativeSubalgebra& v,
                                     const Tolerance& tol = {});

enum class IdealSide { left, right };

// pA cut down to V (right) or Ap cut down to V (left): the atoms e with
// p e = e respectively e p = e.
CommutativeIdeal one_sided_partial_ideal(const ProjectionElement& p, IdealSide side,
                                         const CommutativeSubalgebra& v, const Tolerance& tol = {});

}  // namespace vna
