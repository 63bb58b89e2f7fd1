#pragma once

#include "vna/cmatrix.hpp"
#include "vna/linalg.hpp"
#include "vna/tolerance.hpp"

#include <vector>

namespace vna {

// The ambient finite-dimensional von Neumann algebra: a direct sum of full
// matrix blocks M_{n_1} + ... + M_{n_K}, identified by its dimension vector.
class BlockAlgebra {
public:
    explicit BlockAlgebra(std::vector<int> dims);

    int num_blocks() const { return static_cast<int>(dims_.size()); }
    int dim(int k) const { return dims_.at(k); }
    int total_dim() const;
    const std::vector<int>& dims() const { return dims_; }

    bool operator==(const BlockAlgebra&) const = default;

private:
    std::vector<int> dims_;
};

// Block-diagonal element of the algebra.
class BlockElement {
public:
    BlockElement(BlockAlgebra algebra, std::vector<CMatrix> blocks);

    static BlockElement zero(const BlockAlgebra& a);
    static BlockElement identity(const BlockAlgebra& a);

    const BlockAlgebra& algebra() const { return algebra_; }
    int num_blocks() const { return algebra_.num_blocks(); }
    const CMatrix& block(int k) const { return blocks_.at(k); }
    CMatrix& block(int k) { return blocks_.at(k); }
    const std::vector<CMatrix>& blocks() const { return blocks_; }

    BlockElement adjoint() const;
    BlockElement operator+(const BlockElement& o) const;
    BlockElement operator-(const BlockElement& o) const;
    BlockElement operator*(const BlockElement& o) const;
    BlockElement operator-() const;
    friend BlockElement operator*(Complex s, const BlockElement& x);

    double max_abs() const;

    // embedding into a single (sum of dims) x (sum of dims) matrix and back
    CMatrix to_dense() const;
    static BlockElement from_dense(const BlockAlgebra& a, const CMatrix& big);

    bool operator==(const BlockElement&) const = default;

private:
    BlockAlgebra algebra_;
    std::vector<CMatrix> blocks_;
};

double max_abs_diff(const BlockElement& a, const BlockElement& b);
bool approx_equal(const BlockElement& a, const BlockElement& b, double eps);
bool is_unitary(const BlockElement& u, double eps = 1e-8);

// Largest magnitude found outside the diagonal blocks of `big`.
double off_block_leakage(const BlockAlgebra& a, const CMatrix& big);

// Block element that is self-adjoint and idempotent blockwise; the
// constructor validates and throws otherwise.
class ProjectionElement {
public:
    ProjectionElement(BlockElement e, const Tolerance& tol = {});

    static ProjectionElement zero(const BlockAlgebra& a);
    static ProjectionElement identity(const BlockAlgebra& a);

    const BlockElement& element() const { return elem_; }
    const BlockAlgebra& algebra() const { return elem_.algebra(); }
    const CMatrix& block(int k) const { return elem_.block(k); }
    int num_blocks() const { return elem_.num_blocks(); }

    bool operator==(const ProjectionElement&) const = default;

private:
    BlockElement elem_;
};

ProjectionElement complement(const ProjectionElement& p);
double max_abs_diff(const ProjectionElement& a, const ProjectionElement& b);
bool approx_equal(const ProjectionElement& a, const ProjectionElement& b, double eps);

// Central projection: scalar 0 or identity per block, stored as a mask so
// the lattice operations stay exact.
class CentralProjection {
public:
    CentralProjection(BlockAlgebra algebra, std::vector<bool> mask);

    static CentralProjection zero(const BlockAlgebra& a);
    static CentralProjection identity(const BlockAlgebra& a);

    const BlockAlgebra& algebra() const { return algebra_; }
    const std::vector<bool>& mask() const { return mask_; }
    bool bit(int k) const { return mask_.at(k); }
    int count() const;

    CentralProjection complement() const;
    CentralProjection meet(const CentralProjection& o) const;
    CentralProjection join(const CentralProjection& o) const;
    bool leq(const CentralProjection& o) const;

    ProjectionElement to_projection() const;
    BlockElement apply(const BlockElement& x) const;  // z x, blockwise cut
    ProjectionElement apply(const ProjectionElement& p) const;

    bool operator==(const CentralProjection&) const = default;

private:
    BlockAlgebra algebra_;
    std::vector<bool> mask_;
};

// Per-block numerical ranks: the complete invariant of the unitary orbit.
using RankVector = std::vector<int>;

RankVector rank_vector(const ProjectionElement& p, const Tolerance& tol = {});

// Least central projection z with z q = q: mask of the nonzero blocks.
CentralProjection central_carrier(const ProjectionElement& q, const Tolerance& tol = {});

// True iff every block is 0 or the identity, i.e. p = central_carrier(p).
bool is_central(const ProjectionElement& p, const Tolerance& tol = {});

enum class MvnOrder { equivalent, below, above, incomparable };

struct MvnReport {
    std::vector<int> block_sign;  // sign(rank p_k - rank q_k)
    MvnOrder verdict;
};

// Murray-von Neumann comparison, blockwise in rank.
MvnReport mvn_compare(const ProjectionElement& p, const ProjectionElement& q,
                      const Tolerance& tol = {});

// Central z with z p >= z q blockwise in rank and z' p < z' q strictly on
// every block of the complement.
CentralProjection comparison_split(const ProjectionElement& p, const ProjectionElement& q,
                                   const Tolerance& tol = {});

// u x u* blockwise; u must be unitary within 1e-8.
BlockElement unitary_conjugate(const BlockElement& x, const BlockElement& u);
ProjectionElement unitary_conjugate(const ProjectionElement& p, const BlockElement& u);

// Unitary witnessing equal rank vectors: u p u* = q. Throws when the rank
// vectors differ (the projections are not unitarily equivalent).
BlockElement orbit_conjugator(const ProjectionElement& p, const ProjectionElement& q,
                              const Tolerance& tol = {});

}  // namespace vna
