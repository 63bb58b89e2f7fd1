#include "vna/commutative.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace vna {

namespace {

std::vector<ProjectionElement> minimal_central_projections(const BlockAlgebra& a) {
    std::vector<ProjectionElement> out;
    out.reserve(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k) {
        std::vector<bool> mask(a.num_blocks(), false);
        mask[k] = true;
        out.push_back(CentralProjection(a, mask).to_projection());
    }
    return out;
}

bool atom_below(const ProjectionElement& e, const BlockElement& p, double thr) {
    return max_abs_diff(p * e.element(), e.element()) <= thr;
}

}  // namespace

CommutativeSubalgebra CommutativeSubalgebra::from_atoms(std::vector<ProjectionElement> atoms,
                                                        const Tolerance& tol) {
    if (atoms.empty())
        throw std::invalid_argument("CommutativeSubalgebra: at least one atom required");
    const BlockAlgebra a = atoms.front().algebra();
    BlockElement sum = BlockElement::zero(a);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].algebra() == a))
            throw std::invalid_argument("CommutativeSubalgebra: atoms from different algebras");
        sum = sum + atoms[i].element();
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if ((atoms[i].element() * atoms[j].element()).max_abs() > tol.atom_eps())
                throw std::invalid_argument("CommutativeSubalgebra: atoms " + std::to_string(i) +
                                            " and " + std::to_string(j) +
                                            " are not orthogonal");
    }
    if (max_abs_diff(sum, BlockElement::identity(a)) > tol.atom_eps())
        throw std::invalid_argument("CommutativeSubalgebra: atoms do not sum to the identity");

    // contains_center: every minimal central projection is a sum of atoms
    bool cc = true;
    for (const ProjectionElement& z : minimal_central_projections(a)) {
        BlockElement zsum = BlockElement::zero(a);
        for (const ProjectionElement& e : atoms)
            if (atom_below(e, z.element(), tol.leq_eps())) zsum = zsum + e.element();
        if (max_abs_diff(zsum, z.element()) > tol.leq_eps()) {
            cc = false;
            break;
        }
    }
    return CommutativeSubalgebra(a, std::move(atoms), cc);
}

ProjectionElement CommutativeSubalgebra::sum_of(const std::vector<int>& indices) const {
    BlockElement sum = BlockElement::zero(algebra_);
    for (int i : indices) sum = sum + atoms_.at(i).element();
    return ProjectionElement(sum);
}

CommutativeSubalgebra generate(const BlockAlgebra& algebra,
                               const std::vector<BlockElement>& generators, bool with_center,
                               const Tolerance& tol) {
    const int n = algebra.total_dim();
    std::vector<CMatrix> big;
    if (with_center && algebra.num_blocks() > 1) {
        // block-index observable: scalar k+1 on block k; its eigenspaces are
        // exactly the minimal central projections, so the generated algebra
        // contains the centre
        std::vector<Complex> d;
        d.reserve(n);
        for (int k = 0; k < algebra.num_blocks(); ++k)
            for (int i = 0; i < algebra.dim(k); ++i) d.push_back(Complex(k + 1, 0.0));
        big.push_back(CMatrix::diagonal(d));
    }
    for (const BlockElement& g : generators) {
        if (!(g.algebra() == algebra))
            throw std::invalid_argument("generate: generator from a different algebra");
        big.push_back(g.to_dense());
    }

    const std::vector<CMatrix> dense_atoms = joint_spectral_atoms(n, big, tol);
    std::vector<ProjectionElement> atoms;
    atoms.reserve(dense_atoms.size());
    for (const CMatrix& m : dense_atoms) {
        if (off_block_leakage(algebra, m) > tol.atom_eps())
            throw std::runtime_error("generate: atom is not block diagonal");
        atoms.emplace_back(BlockElement::from_dense(algebra, m), tol);
    }
    return CommutativeSubalgebra::from_atoms(std::move(atoms), tol);
}

CommutativeSubalgebra center_subalgebra(const BlockAlgebra& a, const Tolerance& tol) {
    return CommutativeSubalgebra::from_atoms(minimal_central_projections(a), tol);
}

CommutativeSubalgebra trivial_subalgebra(const BlockAlgebra& a, const Tolerance& tol) {
    return CommutativeSubalgebra::from_atoms({ProjectionElement::identity(a)}, tol);
}

bool includes(const CommutativeSubalgebra& inner, const CommutativeSubalgebra& outer,
              const Tolerance& tol) {
    if (!(inner.algebra() == outer.algebra()))
        throw std::invalid_argument("includes: algebra mismatch");
    for (const ProjectionElement& e : inner.atoms()) {
        BlockElement sum = BlockElement::zero(inner.algebra());
        for (const ProjectionElement& f : outer.atoms())
            if (atom_below(f, e.element(), tol.leq_eps())) sum = sum + f.element();
        if (max_abs_diff(sum, e.element()) > tol.leq_eps()) return false;
    }
    return true;
}

bool subalgebra_equal(const CommutativeSubalgebra& a, const CommutativeSubalgebra& b,
                      const Tolerance& tol) {
    return a.algebra() == b.algebra() && a.size() == b.size() && includes(a, b, tol) &&
           includes(b, a, tol);
}

CommutativeSubalgebra conjugate_subalgebra(const CommutativeSubalgebra& v, const BlockElement& u,
                                           const Tolerance& tol) {
    std::vector<ProjectionElement> atoms;
    atoms.reserve(v.size());
    for (const ProjectionElement& e : v.atoms()) atoms.push_back(unitary_conjugate(e, u));
    CommutativeSubalgebra out = CommutativeSubalgebra::from_atoms(std::move(atoms), tol);
    // conjugation fixes the centre pointwise, so the flag carries over; the
    // recomputation inside from_atoms agrees up to float noise
    return out;
}

CommutativeSubalgebra coarsen(const CommutativeSubalgebra& v,
                              const std::vector<std::vector<int>>& groups, const Tolerance& tol) {
    std::vector<bool> seen(v.size(), false);
    std::vector<ProjectionElement> atoms;
    atoms.reserve(groups.size());
    for (const auto& group : groups) {
        if (group.empty()) throw std::invalid_argument("coarsen: empty group");
        for (int i : group) {
            if (i < 0 || i >= v.size() || seen[i])
                throw std::invalid_argument("coarsen: groups must partition the atom indices");
            seen[i] = true;
        }
        atoms.push_back(v.sum_of(group));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("coarsen: groups must cover all atoms");
    return CommutativeSubalgebra::from_atoms(std::move(atoms), tol);
}

ProjectionElement largest_projection_below(const CommutativeSubalgebra& v,
                                           const ProjectionElement& p, const Tolerance& tol) {
    if (!(v.algebra() == p.algebra()))
        throw std::invalid_argument("largest_projection_below: algebra mismatch");
    BlockElement sum = BlockElement::zero(v.algebra());
    for (const ProjectionElement& e : v.atoms())
        if (atom_below(e, p.element(), tol.leq_eps())) sum = sum + e.element();
    return ProjectionElement(sum);
}

ProjectionElement largest_projection_below(const CommutativeSubalgebra& v,
                                           const CentralProjection& z, const Tolerance& tol) {
    return largest_projection_below(v, z.to_projection(), tol);
}

ProjectionElement ideal_support(const CommutativeIdeal& ideal) {
    return ideal.subalgebra.sum_of(ideal.atom_indices);
}

CommutativeIdeal total_partial_ideal(const CentralProjection& z, const CommutativeSubalgebra& v,
                                     const Tolerance& tol) {
    if (!(z.algebra() == v.algebra()))
        throw std::invalid_argument("total_partial_ideal: algebra mismatch");
    const ProjectionElement zp = z.to_projection();
    std::vector<int> indices;
    for (int i = 0; i < v.size(); ++i)
        if (atom_below(v.atom(i), zp.element(), tol.leq_eps())) indices.push_back(i);
    return CommutativeIdeal{v, std::move(indices)};
}

CommutativeIdeal one_sided_partial_ideal(const ProjectionElement& p, IdealSide side,
                                         const CommutativeSubalgebra& v, const Tolerance& tol) {
    if (!(p.algebra() == v.algebra()))
        throw std::invalid_argument("one_sided_partial_ideal: algebra mismatch");
    std::vector<int> indices;
    for (int i = 0; i < v.size(); ++i) {
        const BlockElement& e = v.atom(i).element();
        const BlockElement prod = side == IdealSide::right ? p.element() * e : e * p.element();
        if (max_abs_diff(prod, e) <= tol.leq_eps()) indices.push_back(i);
    }
    return CommutativeIdeal{v, std::move(indices)};
}

}  // namespace vna
