#include "vna/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace vna {

BlockElement random_block_unitary(const BlockAlgebra& a, std::uint64_t seed) {
    std::vector<CMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k)
        blocks.push_back(random_unitary(a.dim(k), mix_seed(seed, k)));
    return BlockElement(a, std::move(blocks));
}

ProjectionElement random_block_projection(const BlockAlgebra& a, const RankVector& ranks,
                                          std::uint64_t seed, const Tolerance& tol) {
    if (static_cast<int>(ranks.size()) != a.num_blocks())
        throw std::invalid_argument("random_block_projection: rank vector length mismatch");
    std::vector<CMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k) {
        if (ranks[k] < 0 || ranks[k] > a.dim(k))
            throw std::out_of_range("random_block_projection: rank outside [0, dim] in block " +
                                    std::to_string(k));
        blocks.push_back(random_projection(a.dim(k), ranks[k], mix_seed(seed, 100 + k)));
    }
    return ProjectionElement(BlockElement(a, std::move(blocks)), tol);
}

RankVector random_rank_vector(const BlockAlgebra& a, std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, 0x7A));
    RankVector ranks(a.num_blocks());
    for (int k = 0; k < a.num_blocks(); ++k)
        ranks[k] = static_cast<int>(rng.next_below(a.dim(k) + 1));
    return ranks;
}

bool is_central_rank_vector(const BlockAlgebra& a, const RankVector& ranks) {
    for (int k = 0; k < a.num_blocks(); ++k)
        if (ranks[k] != 0 && ranks[k] != a.dim(k)) return false;
    return true;
}

bool admits_noncentral(const BlockAlgebra& a) {
    for (int n : a.dims())
        if (n >= 2) return true;
    return false;
}

ProjectionElement random_noncentral_projection(const BlockAlgebra& a, std::uint64_t seed,
                                               const Tolerance& tol) {
    if (!admits_noncentral(a))
        throw std::invalid_argument(
            "random_noncentral_projection: every block is one-dimensional, all projections "
            "are central");
    SplitMix64 rng(mix_seed(seed, 0x9C));
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const RankVector ranks = random_rank_vector(a, rng.next());
        if (!is_central_rank_vector(a, ranks))
            return random_block_projection(a, ranks, rng.next(), tol);
    }
    throw std::runtime_error("random_noncentral_projection: sampling failed");
}

CommutativeSubalgebra random_subalgebra(const BlockAlgebra& a, std::uint64_t seed,
                                        const Tolerance& tol) {
    SplitMix64 rng(mix_seed(seed, 0x5A));
    const int gen_count = 1 + static_cast<int>(rng.next_below(2));
    const BlockElement u = random_block_unitary(a, rng.next());
    std::vector<BlockElement> gens;
    for (int g = 0; g < gen_count; ++g) {
        std::vector<CMatrix> blocks;
        for (int k = 0; k < a.num_blocks(); ++k) {
            std::vector<Complex> d(a.dim(k));
            for (auto& v : d) v = Complex(static_cast<double>(rng.next_below(3)), 0.0);
            const CMatrix& uk = u.block(k);
            blocks.push_back(uk * CMatrix::diagonal(d) * uk.adjoint());
        }
        gens.emplace_back(a, std::move(blocks));
    }
    const bool with_center = rng.next_below(2) == 1;
    return generate(a, gens, with_center, tol);
}

CommutativeSubalgebra random_coarsening(const CommutativeSubalgebra& v, std::uint64_t seed,
                                        const Tolerance& tol) {
    const int n = v.size();
    if (n == 1) return v;
    SplitMix64 rng(mix_seed(seed, 0xC0));
    const int g = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<std::vector<int>> groups(g);
    for (int i = 0; i < g; ++i) groups[i].push_back(perm[i]);  // every group nonempty
    for (int i = g; i < n; ++i) groups[rng.next_below(static_cast<std::uint64_t>(g))].push_back(perm[i]);
    for (auto& grp : groups) std::sort(grp.begin(), grp.end());
    return coarsen(v, groups, tol);
}

ChainSample random_chain(const BlockAlgebra& a, std::uint64_t seed, const Tolerance& tol) {
    const CommutativeSubalgebra large = random_subalgebra(a, mix_seed(seed, 1), tol);
    const CommutativeSubalgebra small = random_coarsening(large, mix_seed(seed, 2), tol);
    return ChainSample{small, large};
}

}  // namespace vna
