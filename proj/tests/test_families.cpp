#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vna/covering.hpp"
#include "vna/families.hpp"
#include "vna/sampling.hpp"

#include <stdexcept>

using namespace vna;

namespace {

CMatrix e_mat(int n, int i) {
    CMatrix m(n, n);
    m.at(i, i) = 1.0;
    return m;
}

CommutativeSubalgebra diag_subalgebra(const BlockAlgebra& a) {
    std::vector<BlockElement> gens;
    std::vector<CMatrix> blocks;
    for (int k = 0; k < a.num_blocks(); ++k) {
        std::vector<Complex> d(a.dim(k));
        for (int i = 0; i < a.dim(k); ++i) d[i] = static_cast<double>(i + 1);
        blocks.push_back(CMatrix::diagonal(d));
    }
    gens.emplace_back(a, std::move(blocks));
    return generate(a, gens, true);
}

}  // namespace

TEST_CASE("evaluate the three rule forms") {
    const BlockAlgebra a({2});
    const CommutativeSubalgebra diag = diag_subalgebra(a);

    SUBCASE("FromCentral(identity) gives the identity") {
        const FamilyRule rule = FamilyRule::from_central(CentralProjection::identity(a));
        CHECK(max_abs_diff(evaluate(rule, diag), ProjectionElement::identity(a)) == 0.0);
    }
    SUBCASE("FromProjection with p inside V returns p") {
        const ProjectionElement p(BlockElement(a, {e_mat(2, 0)}));
        const FamilyRule rule = FamilyRule::from_projection(p);
        CHECK(max_abs_diff(evaluate(rule, diag), p) <= 1e-12);
    }
    SUBCASE("FromProjection with a tilted p gives zero on the diagonal algebra") {
        const ProjectionElement p(
            BlockElement(a, {CMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})}));
        const FamilyRule rule = FamilyRule::from_projection(p);
        CHECK(evaluate(rule, diag).element().max_abs() <= 1e-12);
    }
    SUBCASE("table rules evaluate only on their keys") {
        const FamilyRule rule =
            FamilyRule::table({{diag, ProjectionElement::identity(a)}});
        CHECK(max_abs_diff(evaluate(rule, diag), ProjectionElement::identity(a)) == 0.0);
        const CommutativeSubalgebra other =
            generate(a, {BlockElement(a, {CMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})})}, true);
        CHECK_THROWS_AS(evaluate(rule, other), std::domain_error);
    }
    SUBCASE("table values must live in their keys") {
        const ProjectionElement tilted(
            BlockElement(a, {CMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})}));
        CHECK_THROWS_AS(FamilyRule::table({{diag, tilted}}), std::invalid_argument);
    }
}

TEST_CASE("check_consistency") {
    const BlockAlgebra a({2, 3});

    SUBCASE("projection families are consistent on random chains") {
        std::vector<ChainSample> chains;
        for (std::uint64_t t = 0; t < 100; ++t) chains.push_back(random_chain(a, mix_seed(50, t)));
        for (std::uint64_t s = 0; s < 5; ++s) {
            const ProjectionElement p = random_block_projection(
                a, random_rank_vector(a, mix_seed(51, s)), mix_seed(52, s));
            const CheckReport rep =
                check_consistency(FamilyRule::from_projection(p), chains);
            CHECK(rep.passed);
            CHECK(rep.trials == 100);
        }
        const CheckReport rep = check_consistency(
            FamilyRule::from_central(CentralProjection(a, {true, false})), chains);
        CHECK(rep.passed);
    }
    SUBCASE("a table breaking monotonicity fails with a counterexample") {
        const CommutativeSubalgebra centre = center_subalgebra(a);
        const CommutativeSubalgebra big = diag_subalgebra(a);
        const FamilyRule rule = FamilyRule::table({
            {centre, ProjectionElement::identity(a)},
            {big, ProjectionElement::zero(a)},
        });
        const CheckReport rep = check_consistency(rule, {{centre, big}});
        REQUIRE_FALSE(rep.passed);
        REQUIRE(rep.counterexample.has_value());
        const Counterexample& ce = *rep.counterexample;
        CHECK(ce.kind == "consistency");
        CHECK(ce.distance == 1.0);
        CHECK(ce.trial == 0);

        // the counterexample re-checks from its stored subalgebra pair
        REQUIRE(ce.v_large.has_value());
        const ProjectionElement lhs = evaluate(rule, ce.v);
        const ProjectionElement rhs =
            largest_projection_below(ce.v, evaluate(rule, *ce.v_large));
        CHECK(max_abs_diff(lhs.element(), ce.lhs) <= 1e-12);
        CHECK(max_abs_diff(rhs.element(), ce.rhs) <= 1e-12);
        CHECK(max_abs_diff(lhs, rhs) == ce.distance);
    }
    SUBCASE("non-chain input is rejected") {
        const CommutativeSubalgebra big = diag_subalgebra(a);
        const FamilyRule rule = FamilyRule::from_central(CentralProjection::identity(a));
        CHECK_THROWS_AS(check_consistency(rule, {{big, center_subalgebra(a)}}),
                        std::invalid_argument);
    }
}

TEST_CASE("check_invariance") {
    const BlockAlgebra a({2, 2});

    SUBCASE("central families are invariant") {
        std::vector<InvarianceSample> samples;
        for (std::uint64_t t = 0; t < 100; ++t)
            samples.push_back({random_subalgebra(a, mix_seed(60, t)),
                               random_block_unitary(a, mix_seed(61, t))});
        for (int bits = 0; bits < 4; ++bits) {
            const CentralProjection z(a, {(bits & 1) != 0, (bits & 2) != 0});
            const CheckReport rep = check_invariance(FamilyRule::from_central(z), samples);
            CHECK(rep.passed);
            CHECK(rep.trials == 100);
        }
    }
    SUBCASE("the identity unitary never violates") {
        const ProjectionElement p = random_block_projection(a, {1, 1}, 3);
        const CheckReport rep = check_invariance(
            FamilyRule::from_projection(p),
            {{random_subalgebra(a, 77), BlockElement::identity(a)}});
        CHECK(rep.passed);
    }
    SUBCASE("a non-central projection family fails on the constructed sample") {
        const ProjectionElement p = random_block_projection(a, {1, 2}, 5);
        const ViolationWitness w = find_invariance_violation(p);
        const CheckReport rep =
            check_invariance(FamilyRule::from_projection(p), {{w.v, w.u}});
        REQUIRE_FALSE(rep.passed);
        REQUIRE(rep.counterexample.has_value());
        CHECK(rep.counterexample->kind == "invariance");
        CHECK(rep.counterexample->distance >= violation_gap_threshold);
    }
}

TEST_CASE("center_value") {
    SUBCASE("round trip over every mask, twelve blocks") {
        std::vector<int> dims(12, 1);
        dims[3] = 2;  // one non-abelian block
        const BlockAlgebra a(dims);
        for (int bits = 0; bits < (1 << 12); ++bits) {
            std::vector<bool> mask(12);
            for (int k = 0; k < 12; ++k) mask[k] = (bits >> k) & 1;
            const CentralProjection z(a, mask);
            CHECK(center_value(FamilyRule::from_central(z)) == z);
        }
    }
    SUBCASE("projection rules give the blocks filled by p") {
        const BlockAlgebra a({2, 2});
        const ProjectionElement p(BlockElement(a, {e_mat(2, 0), CMatrix::identity(2)}));
        CHECK(center_value(FamilyRule::from_projection(p)).mask() ==
              std::vector<bool>{false, true});
        CHECK(center_value(FamilyRule::from_projection(ProjectionElement::identity(a))) ==
              CentralProjection::identity(a));
    }
}

TEST_CASE("verify_theorem") {
    const BlockAlgebra a({2, 3});
    std::vector<CommutativeSubalgebra> vs;
    std::vector<BlockElement> us;
    for (std::uint64_t t = 0; t < 8; ++t) {
        vs.push_back(random_subalgebra(a, mix_seed(70, t)));
        us.push_back(random_block_unitary(a, mix_seed(71, t)));
    }

    SUBCASE("central rules pass and recover their mask") {
        for (int bits = 0; bits < 4; ++bits) {
            const CentralProjection z(a, {(bits & 1) != 0, (bits & 2) != 0});
            const CheckReport rep = verify_theorem(FamilyRule::from_central(z), vs, us);
            CHECK(rep.passed);
            REQUIRE(rep.recovered_center.has_value());
            CHECK(*rep.recovered_center == z);
        }
    }
    SUBCASE("a central projection presented as a projection rule passes") {
        const CentralProjection z(a, {true, false});
        const CheckReport rep =
            verify_theorem(FamilyRule::from_projection(z.to_projection()), vs, us);
        CHECK(rep.passed);
        CHECK(*rep.recovered_center == z);
    }
    SUBCASE("a non-central projection rule fails at invariance") {
        const ProjectionElement p = random_block_projection(a, {1, 2}, 99);
        const ViolationWitness w = find_invariance_violation(p);
        std::vector<CommutativeSubalgebra> vs2 = vs;
        std::vector<BlockElement> us2 = us;
        vs2.push_back(w.v);
        us2.push_back(w.u);
        const CheckReport rep = verify_theorem(FamilyRule::from_projection(p), vs2, us2);
        REQUIRE_FALSE(rep.passed);
        REQUIRE(rep.counterexample.has_value());
        CHECK(rep.counterexample->kind == "invariance");
    }
}

TEST_CASE("find_invariance_violation in M2") {
    const BlockAlgebra a({2});
    const ProjectionElement p(BlockElement(a, {e_mat(2, 0)}));
    const ViolationWitness w = find_invariance_violation(p);

    // the swap sends the diagonal algebra to itself, so the family still
    // answers E11 there while u p u* = E22; the gap is exactly one
    CHECK(max_abs_diff(w.lhs, p) <= 1e-12);
    CHECK(max_abs_diff(w.rhs.block(0), e_mat(2, 1)) <= 1e-12);
    CHECK(w.gap == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(reverify_witness(p, w));
}

TEST_CASE("find_invariance_violation leaves full blocks alone") {
    const BlockAlgebra a({2, 2});
    const ProjectionElement p(BlockElement(a, {e_mat(2, 0), CMatrix::identity(2)}));
    const ViolationWitness w = find_invariance_violation(p);
    CHECK(w.gap >= violation_gap_threshold);
    CHECK(max_abs_diff(w.u.block(1), CMatrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(w.lhs.block(1), CMatrix::identity(2)) <= 1e-10);
    CHECK(max_abs_diff(w.rhs.block(1), CMatrix::identity(2)) <= 1e-10);
    CHECK(reverify_witness(p, w));
}

TEST_CASE("find_invariance_violation rejects central projections") {
    const BlockAlgebra a({2, 3});
    CHECK_THROWS_AS(find_invariance_violation(ProjectionElement::identity(a)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        find_invariance_violation(CentralProjection(a, {true, false}).to_projection()),
        std::invalid_argument);
}

TEST_CASE("violations exist for every sampled non-central projection") {
    for (const auto& dims : {std::vector<int>{2}, {3}, {2, 2}, {2, 3}, {4, 1, 3}}) {
        const BlockAlgebra a(dims);
        for (std::uint64_t t = 0; t < 10; ++t) {
            const ProjectionElement p = random_noncentral_projection(a, mix_seed(80, t));
            const ViolationWitness w = find_invariance_violation(p);
            CHECK(w.gap >= violation_gap_threshold);
            CHECK(reverify_witness(p, w));
        }
    }
}

TEST_CASE("monotonicity along chains") {
    const BlockAlgebra a({2, 3});
    for (std::uint64_t t = 0; t < 40; ++t) {
        const ChainSample chain = random_chain(a, mix_seed(90, t));
        const ProjectionElement p =
            random_block_projection(a, random_rank_vector(a, mix_seed(91, t)), mix_seed(92, t));
        for (const FamilyRule& rule :
             {FamilyRule::from_projection(p),
              FamilyRule::from_central(central_carrier(p))}) {
            const ProjectionElement lo = evaluate(rule, chain.small);
            const ProjectionElement hi = evaluate(rule, chain.large);
            CHECK(max_abs_diff(hi.element() * lo.element(), lo.element()) <= 1e-7);
        }
    }
}

TEST_CASE("supremum property on covering families") {
    const BlockAlgebra a({3, 2});
    for (std::uint64_t t = 0; t < 6; ++t) {
        RankVector ranks = random_rank_vector(a, mix_seed(95, t));
        if (ranks[0] == 0 && ranks[1] == 0) ranks[0] = 1;
        const ProjectionElement q = random_block_projection(a, ranks, mix_seed(96, t));
        const CoverCertificate cert = main_lemma_cover(q);
        const FamilyRule rule = FamilyRule::from_projection(cert.supremum);

        for (const ProjectionElement& m : cert.family) {
            const CommutativeSubalgebra vm = generate(a, {m.element()}, true);
            const ProjectionElement val = evaluate(rule, vm);
            CHECK(max_abs_diff(val.element() * m.element(), m.element()) <= 1e-7);
        }
        const CommutativeSubalgebra vs = generate(a, {cert.supremum.element()}, true);
        const ProjectionElement val = evaluate(rule, vs);
        CHECK(max_abs_diff(val.element() * cert.supremum.element(), cert.supremum.element()) <=
              1e-7);
    }
}
