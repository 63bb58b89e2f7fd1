#include "vna/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vna {

BlockAlgebra::BlockAlgebra(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("BlockAlgebra: dims must be nonempty");
    for (int n : dims_)
        if (n < 1) throw std::invalid_argument("BlockAlgebra: every block dimension must be >= 1");
}

int BlockAlgebra::total_dim() const {
    int total = 0;
    for (int n : dims_) total += n;
    return total;
}

BlockElement::BlockElement(BlockAlgebra algebra, std::vector<CMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.num_blocks())
        throw std::invalid_argument("BlockElement: block count does not match the algebra");
    for (int k = 0; k < algebra_.num_blocks(); ++k)
        if (blocks_[k].rows() != algebra_.dim(k) || blocks_[k].cols() != algebra_.dim(k))
            throw std::invalid_argument("BlockElement: block " + std::to_string(k) +
                                        " has the wrong shape");
}

BlockElement BlockElement::zero(const BlockAlgebra& a) {
    std::vector<CMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k) blocks.push_back(CMatrix::zero(a.dim(k), a.dim(k)));
    return BlockElement(a, std::move(blocks));
}

BlockElement BlockElement::identity(const BlockAlgebra& a) {
    std::vector<CMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k) blocks.push_back(CMatrix::identity(a.dim(k)));
    return BlockElement(a, std::move(blocks));
}

namespace {
void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b, const char* op) {
    if (!(a == b)) throw std::invalid_argument(std::string(op) + ": algebra mismatch");
}
}  // namespace

BlockElement BlockElement::adjoint() const {
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const auto& b : blocks_) blocks.push_back(b.adjoint());
    return BlockElement(algebra_, std::move(blocks));
}

BlockElement BlockElement::operator+(const BlockElement& o) const {
    require_same_algebra(algebra_, o.algebra_, "BlockElement::operator+");
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks.push_back(blocks_[k] + o.blocks_[k]);
    return BlockElement(algebra_, std::move(blocks));
}

BlockElement BlockElement::operator-(const BlockElement& o) const {
    require_same_algebra(algebra_, o.algebra_, "BlockElement::operator-");
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks.push_back(blocks_[k] - o.blocks_[k]);
    return BlockElement(algebra_, std::move(blocks));
}

BlockElement BlockElement::operator*(const BlockElement& o) const {
    require_same_algebra(algebra_, o.algebra_, "BlockElement::operator*");
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks.push_back(blocks_[k] * o.blocks_[k]);
    return BlockElement(algebra_, std::move(blocks));
}

BlockElement BlockElement::operator-() const {
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const auto& b : blocks_) blocks.push_back(-b);
    return BlockElement(algebra_, std::move(blocks));
}

BlockElement operator*(Complex s, const BlockElement& x) {
    std::vector<CMatrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (const auto& b : x.blocks_) blocks.push_back(s * b);
    return BlockElement(x.algebra_, std::move(blocks));
}

double BlockElement::max_abs() const {
    double best = 0.0;
    for (const auto& b : blocks_) best = std::max(best, b.max_abs());
    return best;
}

CMatrix BlockElement::to_dense() const {
    const int n = algebra_.total_dim();
    CMatrix big(n, n);
    int off = 0;
    for (int k = 0; k < algebra_.num_blocks(); ++k) {
        const int nk = algebra_.dim(k);
        for (int i = 0; i < nk; ++i)
            for (int j = 0; j < nk; ++j) big.at(off + i, off + j) = blocks_[k].at(i, j);
        off += nk;
    }
    return big;
}

BlockElement BlockElement::from_dense(const BlockAlgebra& a, const CMatrix& big) {
    if (big.rows() != a.total_dim() || big.cols() != a.total_dim())
        throw std::invalid_argument("BlockElement::from_dense: size mismatch");
    std::vector<CMatrix> blocks;
    blocks.reserve(a.num_blocks());
    int off = 0;
    for (int k = 0; k < a.num_blocks(); ++k) {
        const int nk = a.dim(k);
        CMatrix b(nk, nk);
        for (int i = 0; i < nk; ++i)
            for (int j = 0; j < nk; ++j) b.at(i, j) = big.at(off + i, off + j);
        blocks.push_back(std::move(b));
        off += nk;
    }
    return BlockElement(a, std::move(blocks));
}

double max_abs_diff(const BlockElement& a, const BlockElement& b) {
    require_same_algebra(a.algebra(), b.algebra(), "max_abs_diff");
    double best = 0.0;
    for (int k = 0; k < a.num_blocks(); ++k)
        best = std::max(best, max_abs_diff(a.block(k), b.block(k)));
    return best;
}

bool approx_equal(const BlockElement& a, const BlockElement& b, double eps) {
    return a.algebra() == b.algebra() && max_abs_diff(a, b) <= eps;
}

bool is_unitary(const BlockElement& u, double eps) {
    return max_abs_diff(u.adjoint() * u, BlockElement::identity(u.algebra())) <= eps;
}

double off_block_leakage(const BlockAlgebra& a, const CMatrix& big) {
    if (big.rows() != a.total_dim() || big.cols() != a.total_dim())
        throw std::invalid_argument("off_block_leakage: size mismatch");
    const CMatrix inside = BlockElement::from_dense(a, big).to_dense();
    return max_abs_diff(big, inside);
}

ProjectionElement::ProjectionElement(BlockElement e, const Tolerance& tol) : elem_(std::move(e)) {
    for (int k = 0; k < elem_.num_blocks(); ++k)
        if (!is_projection(elem_.block(k), tol))
            throw std::invalid_argument("ProjectionElement: block " + std::to_string(k) +
                                        " is not a projection");
}

ProjectionElement ProjectionElement::zero(const BlockAlgebra& a) {
    return ProjectionElement(BlockElement::zero(a));
}

ProjectionElement ProjectionElement::identity(const BlockAlgebra& a) {
    return ProjectionElement(BlockElement::identity(a));
}

ProjectionElement complement(const ProjectionElement& p) {
    return ProjectionElement(BlockElement::identity(p.algebra()) - p.element());
}

double max_abs_diff(const ProjectionElement& a, const ProjectionElement& b) {
    return max_abs_diff(a.element(), b.element());
}

bool approx_equal(const ProjectionElement& a, const ProjectionElement& b, double eps) {
    return approx_equal(a.element(), b.element(), eps);
}

CentralProjection::CentralProjection(BlockAlgebra algebra, std::vector<bool> mask)
    : algebra_(std::move(algebra)), mask_(std::move(mask)) {
    if (static_cast<int>(mask_.size()) != algebra_.num_blocks())
        throw std::invalid_argument("CentralProjection: mask length does not match the algebra");
}

CentralProjection CentralProjection::zero(const BlockAlgebra& a) {
    return CentralProjection(a, std::vector<bool>(a.num_blocks(), false));
}

CentralProjection CentralProjection::identity(const BlockAlgebra& a) {
    return CentralProjection(a, std::vector<bool>(a.num_blocks(), true));
}

int CentralProjection::count() const {
    int c = 0;
    for (bool b : mask_)
        if (b) ++c;
    return c;
}

CentralProjection CentralProjection::complement() const {
    std::vector<bool> m(mask_.size());
    for (std::size_t k = 0; k < mask_.size(); ++k) m[k] = !mask_[k];
    return CentralProjection(algebra_, std::move(m));
}

CentralProjection CentralProjection::meet(const CentralProjection& o) const {
    require_same_algebra(algebra_, o.algebra_, "CentralProjection::meet");
    std::vector<bool> m(mask_.size());
    for (std::size_t k = 0; k < mask_.size(); ++k) m[k] = mask_[k] && o.mask_[k];
    return CentralProjection(algebra_, std::move(m));
}

CentralProjection CentralProjection::join(const CentralProjection& o) const {
    require_same_algebra(algebra_, o.algebra_, "CentralProjection::join");
    std::vector<bool> m(mask_.size());
    for (std::size_t k = 0; k < mask_.size(); ++k) m[k] = mask_[k] || o.mask_[k];
    return CentralProjection(algebra_, std::move(m));
}

bool CentralProjection::leq(const CentralProjection& o) const {
    require_same_algebra(algebra_, o.algebra_, "CentralProjection::leq");
    for (std::size_t k = 0; k < mask_.size(); ++k)
        if (mask_[k] && !o.mask_[k]) return false;
    return true;
}

ProjectionElement CentralProjection::to_projection() const {
    std::vector<CMatrix> blocks;
    blocks.reserve(mask_.size());
    for (int k = 0; k < algebra_.num_blocks(); ++k)
        blocks.push_back(mask_[k] ? CMatrix::identity(algebra_.dim(k))
                                  : CMatrix::zero(algebra_.dim(k), algebra_.dim(k)));
    return ProjectionElement(BlockElement(algebra_, std::move(blocks)));
}

BlockElement CentralProjection::apply(const BlockElement& x) const {
    require_same_algebra(algebra_, x.algebra(), "CentralProjection::apply");
    std::vector<CMatrix> blocks;
    blocks.reserve(mask_.size());
    for (int k = 0; k < algebra_.num_blocks(); ++k)
        blocks.push_back(mask_[k] ? x.block(k) : CMatrix::zero(algebra_.dim(k), algebra_.dim(k)));
    return BlockElement(algebra_, std::move(blocks));
}

ProjectionElement CentralProjection::apply(const ProjectionElement& p) const {
    return ProjectionElement(apply(p.element()));
}

RankVector rank_vector(const ProjectionElement& p, const Tolerance& tol) {
    RankVector ranks(p.num_blocks());
    for (int k = 0; k < p.num_blocks(); ++k) ranks[k] = numerical_rank(p.block(k), tol);
    return ranks;
}

CentralProjection central_carrier(const ProjectionElement& q, const Tolerance& tol) {
    const RankVector ranks = rank_vector(q, tol);
    std::vector<bool> mask(ranks.size());
    for (std::size_t k = 0; k < ranks.size(); ++k) mask[k] = ranks[k] > 0;
    return CentralProjection(q.algebra(), std::move(mask));
}

bool is_central(const ProjectionElement& p, const Tolerance& tol) {
    for (int k = 0; k < p.num_blocks(); ++k) {
        const CMatrix& b = p.block(k);
        const bool is_zero = b.max_abs() <= tol.eps;
        const bool is_one = max_abs_diff(b, CMatrix::identity(b.rows())) <= tol.eps;
        if (!is_zero && !is_one) return false;
    }
    return true;
}

MvnReport mvn_compare(const ProjectionElement& p, const ProjectionElement& q,
                      const Tolerance& tol) {
    require_same_algebra(p.algebra(), q.algebra(), "mvn_compare");
    const RankVector rp = rank_vector(p, tol);
    const RankVector rq = rank_vector(q, tol);
    MvnReport rep;
    rep.block_sign.resize(rp.size());
    bool some_neg = false;
    bool some_pos = false;
    for (std::size_t k = 0; k < rp.size(); ++k) {
        const int d = rp[k] - rq[k];
        rep.block_sign[k] = (d > 0) - (d < 0);
        some_neg |= d < 0;
        some_pos |= d > 0;
    }
    if (!some_neg && !some_pos)
        rep.verdict = MvnOrder::equivalent;
    else if (!some_pos)
        rep.verdict = MvnOrder::below;
    else if (!some_neg)
        rep.verdict = MvnOrder::above;
    else
        rep.verdict = MvnOrder::incomparable;
    return rep;
}

CentralProjection comparison_split(const ProjectionElement& p, const ProjectionElement& q,
                                   const Tolerance& tol) {
    require_same_algebra(p.algebra(), q.algebra(), "comparison_split");
    const RankVector rp = rank_vector(p, tol);
    const RankVector rq = rank_vector(q, tol);
    std::vector<bool> mask(rp.size());
    for (std::size_t k = 0; k < rp.size(); ++k) mask[k] = rp[k] >= rq[k];
    return CentralProjection(p.algebra(), std::move(mask));
}

BlockElement unitary_conjugate(const BlockElement& x, const BlockElement& u) {
    require_same_algebra(x.algebra(), u.algebra(), "unitary_conjugate");
    if (!is_unitary(u))
        throw std::invalid_argument("unitary_conjugate: u is not unitary within 1e-8");
    return u * x * u.adjoint();
}

ProjectionElement unitary_conjugate(const ProjectionElement& p, const BlockElement& u) {
    return ProjectionElement(unitary_conjugate(p.element(), u));
}

BlockElement orbit_conjugator(const ProjectionElement& p, const ProjectionElement& q,
                              const Tolerance& tol) {
    require_same_algebra(p.algebra(), q.algebra(), "orbit_conjugator");
    if (rank_vector(p, tol) != rank_vector(q, tol))
        throw std::invalid_argument(
            "orbit_conjugator: rank vectors differ, projections are not unitarily equivalent");
    std::vector<CMatrix> blocks;
    blocks.reserve(p.num_blocks());
    for (int k = 0; k < p.num_blocks(); ++k)
        blocks.push_back(range_matching_unitary(p.block(k), q.block(k), tol));
    return BlockElement(p.algebra(), std::move(blocks));
}

}  // namespace vna
