#include "vna/covering.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace vna {

std::optional<PartialOrthWitness> partially_orthogonal(const ProjectionElement& p,
                                                       const ProjectionElement& q,
                                                       const Tolerance& tol) {
    if (!(p.algebra() == q.algebra()))
        throw std::invalid_argument("partially_orthogonal: algebra mismatch");
    const double thr = tol.leq_eps();
    std::vector<bool> mask(p.num_blocks());
    for (int k = 0; k < p.num_blocks(); ++k) {
        if ((p.block(k) * q.block(k)).max_abs() <= thr) {
            mask[k] = true;
        } else if (max_abs_diff(p.block(k), q.block(k)) <= thr) {
            mask[k] = false;
        } else {
            return std::nullopt;
        }
    }
    return PartialOrthWitness{CentralProjection(p.algebra(), std::move(mask))};
}

bool witness_valid(const ProjectionElement& p, const ProjectionElement& q,
                   const PartialOrthWitness& w, const Tolerance& tol) {
    const double thr = tol.leq_eps();
    const CentralProjection& z = w.orthogonal_mask;
    const BlockElement zp = z.apply(p.element());
    const BlockElement zq = z.apply(q.element());
    if ((zp * zq).max_abs() > thr) return false;
    const CentralProjection zc = z.complement();
    return max_abs_diff(zc.apply(p.element()), zc.apply(q.element())) <= thr;
}

PartialOrthWitness glue_witnesses(const ProjectionElement& p1, const ProjectionElement& p2,
                                  const CentralProjection& z, const CentralProjection& y,
                                  const CentralProjection& x, const Tolerance& tol) {
    const BlockAlgebra& a = p1.algebra();
    if (!(p2.algebra() == a) || !(z.algebra() == a) || !(y.algebra() == a) || !(x.algebra() == a))
        throw std::invalid_argument("glue_witnesses: algebra mismatch");
    const double thr = tol.leq_eps();

    const auto cut = [&](const CentralProjection& c, const ProjectionElement& p) {
        return c.apply(p.element());
    };

    const CentralProjection yz = y.meet(z);
    if (max_abs_diff(cut(yz, p1), cut(yz, p2)) > thr)
        throw std::invalid_argument("glue_witnesses: yz p1 != yz p2");
    const CentralProjection ycz = y.complement().meet(z);
    if ((cut(ycz, p1) * cut(ycz, p2)).max_abs() > thr)
        throw std::invalid_argument("glue_witnesses: y'z p1 not orthogonal to y'z p2");
    const CentralProjection xzc = x.meet(z.complement());
    if (max_abs_diff(cut(xzc, p1), cut(xzc, p2)) > thr)
        throw std::invalid_argument("glue_witnesses: xz' p1 != xz' p2");
    const CentralProjection xczc = x.complement().meet(z.complement());
    if ((cut(xczc, p1) * cut(xczc, p2)).max_abs() > thr)
        throw std::invalid_argument("glue_witnesses: x'z' p1 not orthogonal to x'z' p2");

    PartialOrthWitness out{ycz.join(xczc)};
    if (!witness_valid(p1, p2, out, tol))
        throw std::logic_error("glue_witnesses: combined witness failed validation");
    return out;
}

namespace {

struct Packing {
    // per block: orthonormal frame whose first r columns span range(q_b),
    // the rank r, and the copy count t = floor(n / r) (0 on zero blocks)
    std::vector<CMatrix> frames;
    RankVector ranks;
    std::vector<int> copies;
    int family_size = 0;  // max over copies

    const BlockAlgebra* algebra = nullptr;
};

Packing build_packing(const ProjectionElement& q, const Tolerance& tol) {
    Packing pack;
    pack.algebra = &q.algebra();
    pack.ranks = rank_vector(q, tol);
    bool all_zero = true;
    for (int k = 0; k < q.num_blocks(); ++k) {
        const int n = q.algebra().dim(k);
        const int r = pack.ranks[k];
        pack.frames.push_back(projection_frame(q.block(k), r));
        pack.copies.push_back(r > 0 ? n / r : 0);
        if (r > 0) all_zero = false;
    }
    if (all_zero)
        throw std::invalid_argument("main lemma construction: q = 0 is degenerate, the strict "
                                    "remainder bound has no meaning");
    pack.family_size = *std::max_element(pack.copies.begin(), pack.copies.end());
    return pack;
}

// projection onto the span of frame columns [first, first + count)
CMatrix frame_slice_projector(const CMatrix& frame, int first, int count) {
    const int n = frame.rows();
    CMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex acc{};
            for (int c = first; c < first + count; ++c)
                acc += frame.at(i, c) * std::conj(frame.at(j, c));
            p.at(i, j) = acc;
        }
    return p;
}

std::vector<ProjectionElement> packing_family(const ProjectionElement& q, const Packing& pack,
                                              const Tolerance& tol) {
    const BlockAlgebra& a = q.algebra();
    std::vector<ProjectionElement> family;
    family.reserve(pack.family_size);
    for (int i = 0; i < pack.family_size; ++i) {
        if (i == 0) {
            family.push_back(q);  // copy 0 is q itself
            continue;
        }
        std::vector<CMatrix> blocks;
        for (int k = 0; k < a.num_blocks(); ++k) {
            const int n = a.dim(k);
            const int r = pack.ranks[k];
            if (r == 0) {
                blocks.push_back(CMatrix::zero(n, n));
                continue;
            }
            const int copy = i % pack.copies[k];
            blocks.push_back(frame_slice_projector(pack.frames[k], copy * r, r));
        }
        family.emplace_back(BlockElement(a, std::move(blocks)), tol);
    }
    return family;
}

}  // namespace

std::vector<ProjectionElement> maximal_partially_orthogonal_family(const ProjectionElement& q,
                                                                   const Tolerance& tol) {
    const Packing pack = build_packing(q, tol);
    return packing_family(q, pack, tol);
}

CoverCertificate main_lemma_cover(const ProjectionElement& q, const Tolerance& tol) {
    const BlockAlgebra& a = q.algebra();
    const Packing pack = build_packing(q, tol);
    std::vector<ProjectionElement> family = packing_family(q, pack, tol);

    std::vector<CMatrix> sup_blocks;
    std::vector<CMatrix> rem_blocks;
    std::vector<CMatrix> u_blocks;
    for (int k = 0; k < a.num_blocks(); ++k) {
        const int n = a.dim(k);
        const int r = pack.ranks[k];
        if (r == 0) {
            sup_blocks.push_back(CMatrix::zero(n, n));
            rem_blocks.push_back(CMatrix::zero(n, n));
            u_blocks.push_back(CMatrix::identity(n));
            continue;
        }
        const int covered = r * pack.copies[k];
        const int rem = n - covered;  // = n mod r, strictly below r
        sup_blocks.push_back(frame_slice_projector(pack.frames[k], 0, covered));
        if (rem == 0) {
            rem_blocks.push_back(CMatrix::zero(n, n));
            u_blocks.push_back(CMatrix::identity(n));
            continue;
        }
        rem_blocks.push_back(frame_slice_projector(pack.frames[k], covered, rem));
        // map range(q_b) onto a rank-r subspace containing the remainder:
        // the leftover frame columns padded with the first r - rem columns
        CMatrix target(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex acc{};
                for (int c = covered; c < n; ++c)
                    acc += pack.frames[k].at(i, c) * std::conj(pack.frames[k].at(j, c));
                for (int c = 0; c < r - rem; ++c)
                    acc += pack.frames[k].at(i, c) * std::conj(pack.frames[k].at(j, c));
                target.at(i, j) = acc;
            }
        u_blocks.push_back(range_matching_unitary(q.block(k), target, tol));
    }

    CoverCertificate cert{
        q,
        std::move(family),
        ProjectionElement(BlockElement(a, std::move(sup_blocks)), tol),
        ProjectionElement(BlockElement(a, std::move(rem_blocks)), tol),
        BlockElement(a, std::move(u_blocks)),
        {},
    };
    for (std::size_t i = 0; i < cert.family.size(); ++i)
        for (std::size_t j = i + 1; j < cert.family.size(); ++j) {
            auto w = partially_orthogonal(cert.family[i], cert.family[j], tol);
            if (!w)
                throw std::logic_error("main_lemma_cover: packing pair lost partial orthogonality");
            cert.pairwise.push_back(
                {static_cast<int>(i), static_cast<int>(j), std::move(*w)});
        }
    return cert;
}

CoverValidation validate_cover(const CoverCertificate& cert, const Tolerance& tol) {
    CoverValidation val;
    const double thr = tol.leq_eps();
    const BlockAlgebra& a = cert.q.algebra();
    const RankVector q_ranks = rank_vector(cert.q, tol);
    const CentralProjection carrier = central_carrier(cert.q, tol);

    const auto check = [&](const std::string& name, bool ok) {
        val.checks.emplace_back(name, ok);
        val.ok = val.ok && ok;
    };

    bool q_found = false;
    for (const auto& m : cert.family) q_found |= max_abs_diff(m, cert.q) <= thr;
    check("q_in_family", q_found);

    bool orbit = true;
    for (const auto& m : cert.family) orbit &= rank_vector(m, tol) == q_ranks;
    check("orbit_membership", orbit);

    bool commute = true;
    for (std::size_t i = 0; i < cert.family.size(); ++i)
        for (std::size_t j = i + 1; j < cert.family.size(); ++j) {
            const BlockElement& x = cert.family[i].element();
            const BlockElement& y = cert.family[j].element();
            commute &= max_abs_diff(x * y, y * x) <= thr;
        }
    check("pairwise_commute", commute);

    const std::size_t nm = cert.family.size();
    bool witnesses = cert.pairwise.size() == nm * (nm - 1) / 2;
    std::vector<std::vector<bool>> seen(nm, std::vector<bool>(nm, false));
    for (const auto& pw : cert.pairwise) {
        if (pw.i < 0 || pw.j < 0 || pw.i >= static_cast<int>(nm) || pw.j >= static_cast<int>(nm) ||
            pw.i == pw.j || seen[pw.i][pw.j]) {
            witnesses = false;
            break;
        }
        seen[pw.i][pw.j] = seen[pw.j][pw.i] = true;
        witnesses &= witness_valid(cert.family[pw.i], cert.family[pw.j], pw.witness, tol);
    }
    check("pairwise_witnesses", witnesses);

    bool dominated = true;
    for (const auto& m : cert.family)
        dominated &=
            max_abs_diff(cert.supremum.element() * m.element(), m.element()) <= thr;
    check("supremum_dominates", dominated);

    const RankVector s_ranks = rank_vector(cert.supremum, tol);
    const RankVector rem_ranks = rank_vector(cert.remainder, tol);
    bool sup_rank = true;
    bool rem_min = true;
    for (int k = 0; k < a.num_blocks(); ++k) {
        const int r = q_ranks[k];
        if (r == 0) {
            sup_rank &= s_ranks[k] == 0;
            rem_min &= rem_ranks[k] == 0;
        } else {
            const int t = a.dim(k) / r;
            sup_rank &= s_ranks[k] == r * t;
            rem_min &= rem_ranks[k] == a.dim(k) % r && rem_ranks[k] < r;
        }
    }
    check("supremum_rank", sup_rank);
    check("remainder_minimality", rem_min);

    check("remainder_orthogonal",
          (cert.remainder.element() * cert.supremum.element()).max_abs() <= thr);

    bool decomposition = max_abs_diff(cert.supremum.element() + cert.remainder.element(),
                                      carrier.to_projection().element()) <= thr;
    for (int k = 0; k < a.num_blocks(); ++k)
        decomposition &= s_ranks[k] + rem_ranks[k] == (carrier.bit(k) ? a.dim(k) : 0);
    check("carrier_decomposition", decomposition);

    check("conjugator_unitary", is_unitary(cert.conjugator, 1e-8));

    // plain products here: the validator must report, not throw, when handed
    // a broken certificate
    const BlockElement uqu =
        cert.conjugator * cert.q.element() * cert.conjugator.adjoint();
    bool covered = max_abs_diff(uqu * cert.remainder.element(), cert.remainder.element()) <= thr;
    for (int k = 0; k < a.num_blocks(); ++k)
        if (carrier.bit(k)) covered &= rem_ranks[k] < numerical_rank(uqu.block(k), tol);
    check("remainder_strictly_covered", covered);

    return val;
}

}  // namespace vna
