#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vna/algebra.hpp"
#include "vna/rng.hpp"

#include <stdexcept>
#include <vector>

using namespace vna;

namespace {

CMatrix e11(int n) {
    CMatrix m(n, n);
    m.at(0, 0) = 1.0;
    return m;
}

BlockElement random_block_unitary_local(const BlockAlgebra& a, std::uint64_t seed) {
    std::vector<CMatrix> blocks;
    for (int k = 0; k < a.num_blocks(); ++k)
        blocks.push_back(random_unitary(a.dim(k), mix_seed(seed, k)));
    return BlockElement(a, std::move(blocks));
}

ProjectionElement random_block_projection_local(const BlockAlgebra& a, const RankVector& ranks,
                                                std::uint64_t seed) {
    std::vector<CMatrix> blocks;
    for (int k = 0; k < a.num_blocks(); ++k)
        blocks.push_back(random_projection(a.dim(k), ranks[k], mix_seed(seed, 100 + k)));
    return ProjectionElement(BlockElement(a, std::move(blocks)));
}

// oracle: minimum over all 2^K masks z with ||z q - q|| <= 1e-8; valid masks
// are closed under intersection, so the minimum is their meet
CentralProjection brute_force_central_carrier(const ProjectionElement& q) {
    const BlockAlgebra& a = q.algebra();
    const int K = a.num_blocks();
    CentralProjection acc = CentralProjection::identity(a);
    for (int bits = 0; bits < (1 << K); ++bits) {
        std::vector<bool> mask(K);
        for (int k = 0; k < K; ++k) mask[k] = (bits >> k) & 1;
        const CentralProjection z(a, mask);
        if (max_abs_diff(z.apply(q.element()), q.element()) <= 1e-8) acc = acc.meet(z);
    }
    return acc;
}

}  // namespace

TEST_CASE("BlockAlgebra validation") {
    CHECK_THROWS_AS(BlockAlgebra(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(BlockAlgebra({2, 0}), std::invalid_argument);
    const BlockAlgebra a({2, 3});
    CHECK(a.total_dim() == 5);
}

TEST_CASE("BlockElement dense round trip") {
    const BlockAlgebra a({2, 3});
    const BlockElement x = random_block_unitary_local(a, 5);
    CHECK(max_abs_diff(BlockElement::from_dense(a, x.to_dense()), x) == 0.0);
    CHECK(off_block_leakage(a, x.to_dense()) == 0.0);
}

TEST_CASE("rank_vector examples") {
    const BlockAlgebra a23({2, 3});
    CHECK(rank_vector(ProjectionElement::zero(a23)) == RankVector{0, 0});
    CHECK(rank_vector(ProjectionElement::identity(a23)) == RankVector{2, 3});

    const BlockAlgebra a22({2, 2});
    const ProjectionElement p(BlockElement(a22, {e11(2), CMatrix::identity(2)}));
    CHECK(rank_vector(p) == RankVector{1, 2});
}

TEST_CASE("central_carrier examples and oracle agreement") {
    const BlockAlgebra a22({2, 2});
    CHECK(central_carrier(ProjectionElement::zero(a22)) == CentralProjection::zero(a22));

    const ProjectionElement q(BlockElement(a22, {e11(2), CMatrix::zero(2, 2)}));
    CHECK(central_carrier(q).mask() == std::vector<bool>{true, false});

    // unitary invariance and brute-force minimality on random samples
    const BlockAlgebra a({2, 3, 2});
    SplitMix64 rng(77);
    for (int t = 0; t < 25; ++t) {
        RankVector ranks(3);
        for (int k = 0; k < 3; ++k) ranks[k] = static_cast<int>(rng.next_below(a.dim(k) + 1));
        const ProjectionElement p = random_block_projection_local(a, ranks, rng.next());
        const BlockElement u = random_block_unitary_local(a, rng.next());
        CHECK(central_carrier(unitary_conjugate(p, u)) == central_carrier(p));
        CHECK(central_carrier(p) == brute_force_central_carrier(p));
    }

    // brute-force minimality over all 4096 masks of a twelve-block algebra
    const BlockAlgebra wide({2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1});
    for (int t = 0; t < 5; ++t) {
        RankVector ranks(12);
        for (int k = 0; k < 12; ++k) ranks[k] = static_cast<int>(rng.next_below(wide.dim(k) + 1));
        const ProjectionElement p = random_block_projection_local(wide, ranks, rng.next());
        CHECK(central_carrier(p) == brute_force_central_carrier(p));
    }
}

TEST_CASE("is_central") {
    const BlockAlgebra a2({2});
    CHECK(is_central(ProjectionElement::identity(a2)));
    CHECK_FALSE(is_central(ProjectionElement(BlockElement(a2, {e11(2)}))));

    const BlockAlgebra a23({2, 3});
    const ProjectionElement p(BlockElement(a23, {CMatrix::identity(2), CMatrix::zero(3, 3)}));
    CHECK(is_central(p));
    CHECK(p == central_carrier(p).to_projection());
}

TEST_CASE("is_central iff commutes with random elements") {
    const BlockAlgebra a({2, 2});
    SplitMix64 rng(31);
    for (int t = 0; t < 20; ++t) {
        RankVector ranks(2);
        for (int k = 0; k < 2; ++k) ranks[k] = static_cast<int>(rng.next_below(3));
        const ProjectionElement p = random_block_projection_local(a, ranks, rng.next());
        bool commutes = true;
        for (int s = 0; s < 100 && commutes; ++s) {
            const BlockElement x = random_block_unitary_local(a, rng.next());
            commutes = max_abs_diff(p.element() * x, x * p.element()) <= 1e-7;
        }
        CHECK(is_central(p) == commutes);
    }
}

TEST_CASE("mvn_compare verdicts") {
    const BlockAlgebra a({3, 3});
    const ProjectionElement zero = ProjectionElement::zero(a);
    const ProjectionElement one = ProjectionElement::identity(a);
    CHECK(mvn_compare(zero, one).verdict == MvnOrder::below);
    CHECK(mvn_compare(one, zero).verdict == MvnOrder::above);
    CHECK(mvn_compare(zero, zero).verdict == MvnOrder::equivalent);

    const ProjectionElement p = random_block_projection_local(a, {2, 1}, 4);
    const ProjectionElement q = random_block_projection_local(a, {1, 2}, 5);
    const MvnReport rep = mvn_compare(p, q);
    CHECK(rep.verdict == MvnOrder::incomparable);
    CHECK(rep.block_sign == std::vector<int>{1, -1});

    const BlockElement u = random_block_unitary_local(a, 6);
    CHECK(mvn_compare(p, unitary_conjugate(p, u)).verdict == MvnOrder::equivalent);

    const BlockAlgebra b({2});
    CHECK_THROWS_AS(mvn_compare(p, ProjectionElement::zero(b)), std::invalid_argument);
}

TEST_CASE("comparison_split") {
    const BlockAlgebra a({3, 3});
    const ProjectionElement p = random_block_projection_local(a, {2, 1}, 14);
    const ProjectionElement q = random_block_projection_local(a, {1, 2}, 15);

    CHECK(comparison_split(p, p).mask() == std::vector<bool>{true, true});
    CHECK(comparison_split(p, q).mask() == std::vector<bool>{true, false});

    const BlockAlgebra a2({2});
    const CentralProjection z =
        comparison_split(ProjectionElement::zero(a2), ProjectionElement::identity(a2));
    CHECK(z.mask() == std::vector<bool>{false});

    // both blockwise inequalities hold by construction; check on random pairs
    SplitMix64 rng(314);
    for (int t = 0; t < 30; ++t) {
        RankVector rp(2), rq(2);
        for (int k = 0; k < 2; ++k) {
            rp[k] = static_cast<int>(rng.next_below(4));
            rq[k] = static_cast<int>(rng.next_below(4));
        }
        const ProjectionElement pp = random_block_projection_local(a, rp, rng.next());
        const ProjectionElement qq = random_block_projection_local(a, rq, rng.next());
        const CentralProjection split = comparison_split(pp, qq);
        for (int k = 0; k < 2; ++k) {
            if (split.bit(k))
                CHECK(rp[k] >= rq[k]);
            else
                CHECK(rp[k] < rq[k]);
        }
    }
}

TEST_CASE("unitary_conjugate") {
    const BlockAlgebra a({2});
    const ProjectionElement p(BlockElement(a, {e11(2)}));

    CHECK(unitary_conjugate(p, BlockElement::identity(a)) == p);

    const CMatrix swap = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const BlockElement u(a, {swap});
    const CMatrix e22 = CMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    CHECK(max_abs_diff(unitary_conjugate(p, u).block(0), e22) < 1e-14);

    CHECK_THROWS_AS(unitary_conjugate(p.element(), 2.0 * BlockElement::identity(a)),
                    std::invalid_argument);

    // conjugation preserves rank vectors
    const BlockAlgebra b({2, 3});
    SplitMix64 rng(9);
    for (int t = 0; t < 20; ++t) {
        RankVector ranks{static_cast<int>(rng.next_below(3)), static_cast<int>(rng.next_below(4))};
        const ProjectionElement q = random_block_projection_local(b, ranks, rng.next());
        const BlockElement w = random_block_unitary_local(b, rng.next());
        CHECK(rank_vector(unitary_conjugate(q, w)) == rank_vector(q));
    }
}

TEST_CASE("orbit_conjugator") {
    const BlockAlgebra a({2, 2});
    const ProjectionElement p(BlockElement(a, {e11(2), e11(2)}));
    const CMatrix e22 = CMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const ProjectionElement q(BlockElement(a, {e22, e11(2)}));

    const BlockElement u = orbit_conjugator(p, q);
    CHECK(is_unitary(u, 1e-10));
    CHECK(max_abs_diff(unitary_conjugate(p, u), q) <= 1e-7);

    const BlockElement v = orbit_conjugator(p, p);
    CHECK(max_abs_diff(unitary_conjugate(p, v), p) <= 1e-7);

    const ProjectionElement r1(BlockElement(a, {e11(2), CMatrix::zero(2, 2)}));
    const ProjectionElement r2(BlockElement(a, {CMatrix::zero(2, 2), e11(2)}));
    CHECK_THROWS_AS(orbit_conjugator(r1, r2), std::invalid_argument);

    // rank_vector is a complete orbit invariant: equal ranks always conjugate
    const BlockAlgebra b({3, 2});
    SplitMix64 rng(55);
    for (int t = 0; t < 20; ++t) {
        RankVector ranks{static_cast<int>(rng.next_below(4)), static_cast<int>(rng.next_below(3))};
        const ProjectionElement x = random_block_projection_local(b, ranks, rng.next());
        const ProjectionElement y = random_block_projection_local(b, ranks, rng.next());
        const BlockElement w = orbit_conjugator(x, y);
        CHECK(max_abs_diff(unitary_conjugate(x, w), y) <= 1e-7);
    }
}

TEST_CASE("CentralProjection lattice and application") {
    const BlockAlgebra a({2, 3, 2});
    const CentralProjection z1(a, {true, false, true});
    const CentralProjection z2(a, {true, true, false});
    CHECK(z1.meet(z2).mask() == std::vector<bool>{true, false, false});
    CHECK(z1.join(z2).mask() == std::vector<bool>{true, true, true});
    CHECK(z1.complement().mask() == std::vector<bool>{false, true, false});
    CHECK(z1.meet(z2).leq(z1));
    CHECK(z1.count() == 2);

    const ProjectionElement pz = z1.to_projection();
    CHECK(is_central(pz));
    CHECK(central_carrier(pz) == z1);

    const BlockElement x = BlockElement::identity(a);
    CHECK(max_abs_diff(z1.apply(x), pz.element()) == 0.0);
}
