// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every threshold is pinned here, in code.

#include "vna/cli.hpp"
#include "vna/covering.hpp"
#include "vna/families.hpp"
#include "vna/json_io.hpp"
#include "vna/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace vna;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

const std::vector<std::vector<int>> kTheoremDims = {{1},    {2},       {3},      {2, 2},
                                                    {2, 3}, {2, 3, 2}, {4, 1, 3}};

ExperimentConfig config_for(std::vector<int> dims, std::uint64_t seed, int trials) {
    ExperimentConfig c;
    c.dims = std::move(dims);
    c.master_seed = seed;
    c.trials = trials;
    return c;
}

bool criterion_theorem_round_trip(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    int masks_passed = 0;
    int witnesses = 0;
    for (const auto& dims : kTheoremDims) {
        const BlockAlgebra a(dims);
        std::vector<CommutativeSubalgebra> vs;
        std::vector<BlockElement> us;
        for (std::uint64_t i = 0; i < 12; ++i) {
            vs.push_back(random_subalgebra(a, mix_seed(101, i * 100 + a.total_dim())));
            us.push_back(random_block_unitary(a, mix_seed(102, i * 100 + a.total_dim())));
        }
        const int K = a.num_blocks();
        for (unsigned bits = 0; bits < (1u << K); ++bits) {
            std::vector<bool> mask(K);
            for (int k = 0; k < K; ++k) mask[k] = (bits >> k) & 1u;
            const CentralProjection z(a, mask);
            const CheckReport rep = verify_theorem(FamilyRule::from_central(z), vs, us);
            if (!rep.passed || !rep.recovered_center || !(*rep.recovered_center == z)) {
                detail = "mask round trip failed";
                return false;
            }
            ++masks_passed;
        }
        if (!admits_noncentral(a)) continue;
        for (std::uint64_t t = 0; t < 50; ++t) {
            const ProjectionElement p =
                random_noncentral_projection(a, mix_seed(103, t * 1000 + a.total_dim()));
            const ViolationWitness w = find_invariance_violation(p);
            if (w.gap < 1e-4 || !reverify_witness(p, w)) {
                detail = "witness failed to re-verify";
                return false;
            }
            ++witnesses;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = std::to_string(masks_passed) + " masks, " + std::to_string(witnesses) +
             " witnesses, " + std::to_string(secs) + " s";
    return witnesses == 50 * 6 && secs < 30.0;
}

bool criterion_easy_direction(std::string& detail) {
    int rules_checked = 0;
    for (const auto& dims : kTheoremDims) {
        const BlockAlgebra a(dims);
        const int K = a.num_blocks();
        const std::uint64_t tag = static_cast<std::uint64_t>(a.total_dim());
        std::vector<InvarianceSample> samples;
        std::vector<ChainSample> chains;
        for (std::uint64_t t = 0; t < 100; ++t) {
            samples.push_back({random_subalgebra(a, mix_seed(201, t * 10 + tag)),
                               random_block_unitary(a, mix_seed(202, t * 10 + tag))});
            chains.push_back(random_chain(a, mix_seed(203, t * 10 + tag)));
        }
        // every central projection of the algebra, against all 100 samples
        for (unsigned bits = 0; bits < (1u << K); ++bits) {
            std::vector<bool> mask(K);
            for (int k = 0; k < K; ++k) mask[k] = (bits >> k) & 1u;
            const FamilyRule rule = FamilyRule::from_central(CentralProjection(a, mask));
            const CheckReport inv = check_invariance(rule, samples);
            if (!inv.passed || inv.trials != 100) {
                detail = "invariance failed";
                return false;
            }
            const CheckReport cons = check_consistency(rule, chains);
            if (!cons.passed || cons.trials != 100) {
                detail = "consistency failed";
                return false;
            }
            ++rules_checked;
        }
    }
    detail = std::to_string(rules_checked) +
             " central rules, each on 100 invariance samples and 100 chains";
    return rules_checked >= 30;
}

bool criterion_projection_families_consistent(std::string& detail) {
    int projections = 0;
    for (const auto& dims : kTheoremDims) {
        const BlockAlgebra a(dims);
        std::vector<ChainSample> chains;
        for (std::uint64_t t = 0; t < 10; ++t)
            chains.push_back(random_chain(a, mix_seed(301, t * 10 + a.total_dim())));
        for (std::uint64_t s = 0; s < 15; ++s) {
            const ProjectionElement p = random_block_projection(
                a, random_rank_vector(a, mix_seed(302, s * 10 + a.total_dim())),
                mix_seed(303, s * 10 + a.total_dim()));
            if (!check_consistency(FamilyRule::from_projection(p), chains).passed) {
                detail = "consistency failed";
                return false;
            }
            ++projections;
        }
    }
    detail = std::to_string(projections) + " projections checked";
    return projections >= 100;
}

bool criterion_main_lemma_certificates(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::vector<int>> dims_list = {{1},    {2},    {3},    {4},       {5},
                                                     {2, 2}, {3, 2}, {4, 3}, {5, 4, 3}};
    int certificates = 0;
    for (const auto& dims : dims_list) {
        const BlockAlgebra a(dims);
        const int K = a.num_blocks();
        std::vector<int> ranks(K, 1);
        while (true) {
            const ProjectionElement q = random_block_projection(
                a, ranks, mix_seed(401, static_cast<std::uint64_t>(certificates)));
            const CoverValidation val = validate_cover(main_lemma_cover(q));
            if (!val.ok) {
                detail = "certificate failed for a rank vector";
                for (const auto& [name, ok] : val.checks)
                    if (!ok) detail += " [" + name + "]";
                return false;
            }
            ++certificates;
            int k = K - 1;
            while (k >= 0 && ranks[k] == a.dim(k)) ranks[k--] = 1;
            if (k < 0) break;
            ++ranks[k];
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = std::to_string(certificates) + " certificates, " + std::to_string(secs) + " s";
    return secs < 10.0;
}

bool criterion_partial_orthogonality_oracle(std::string& detail) {
    const BlockAlgebra a({2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1});  // K = 12
    const int K = a.num_blocks();
    int pairs = 0;
    int witnessed = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ProjectionElement p =
            random_block_projection(a, random_rank_vector(a, mix_seed(501, t)), mix_seed(502, t));
        ProjectionElement q = p;
        if (t % 2 == 0) {
            q = random_block_projection(a, random_rank_vector(a, mix_seed(503, t)),
                                        mix_seed(504, t));
        } else {
            // partner equal on some blocks, orthogonal on the rest
            SplitMix64 rng(mix_seed(505, t));
            std::vector<CMatrix> blocks;
            for (int k = 0; k < K; ++k) {
                const int n = a.dim(k);
                const int rp = numerical_rank(p.block(k));
                if (rng.next_below(2) == 0) {
                    blocks.push_back(p.block(k));
                } else if (rp == n) {
                    blocks.push_back(CMatrix::zero(n, n));
                } else {
                    const CMatrix frame = projection_frame(p.block(k), rp);
                    CMatrix b(n, n);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            Complex acc{};
                            for (int c = rp; c < n; ++c)
                                acc += frame.at(i, c) * std::conj(frame.at(j, c));
                            b.at(i, j) = acc;
                        }
                    blocks.push_back(std::move(b));
                }
            }
            q = ProjectionElement(BlockElement(a, std::move(blocks)));
        }

        // oracle: direct matrix arithmetic per block, then every mask
        std::vector<bool> orth_ok(K), eq_ok(K);
        for (int k = 0; k < K; ++k) {
            orth_ok[k] = (p.block(k) * q.block(k)).max_abs() <= 1e-7;
            eq_ok[k] = max_abs_diff(p.block(k), q.block(k)) <= 1e-7;
        }
        bool oracle_exists = false;
        for (unsigned bits = 0; bits < (1u << K) && !oracle_exists; ++bits) {
            bool valid = true;
            for (int k = 0; k < K && valid; ++k)
                valid = ((bits >> k) & 1u) ? orth_ok[k] : eq_ok[k];
            oracle_exists = valid;
        }

        const auto fast = partially_orthogonal(p, q);
        if (fast.has_value() != oracle_exists) {
            detail = "disagreement at pair " + std::to_string(t);
            return false;
        }
        if (fast) {
            if (!witness_valid(p, q, *fast)) {
                detail = "invalid witness at pair " + std::to_string(t);
                return false;
            }
            ++witnessed;
        }
        ++pairs;
    }
    detail = std::to_string(pairs) + " pairs, " + std::to_string(witnessed) +
             " with witnesses, zero disagreements";
    return pairs == 200 && witnessed > 0;
}

bool criterion_comparison_split_exhaustive(std::string& detail) {
    const BlockAlgebra a({3, 3, 2});
    std::vector<RankVector> all;
    for (int r1 = 0; r1 <= 3; ++r1)
        for (int r2 = 0; r2 <= 3; ++r2)
            for (int r3 = 0; r3 <= 2; ++r3) all.push_back({r1, r2, r3});

    const auto diag_projection = [&](const RankVector& ranks) {
        std::vector<CMatrix> blocks;
        for (int k = 0; k < 3; ++k) {
            CMatrix b(a.dim(k), a.dim(k));
            for (int i = 0; i < ranks[k]; ++i) b.at(i, i) = 1.0;
            blocks.push_back(std::move(b));
        }
        return ProjectionElement(BlockElement(a, std::move(blocks)));
    };

    int checked = 0;
    for (const RankVector& rp : all)
        for (const RankVector& rq : all) {
            const ProjectionElement p = diag_projection(rp);
            const ProjectionElement q = diag_projection(rq);
            const CentralProjection z = comparison_split(p, q);
            for (int k = 0; k < 3; ++k) {
                const bool ok = z.bit(k) ? rp[k] >= rq[k] : rp[k] < rq[k];
                if (!ok) {
                    detail = "inequality failed";
                    return false;
                }
            }
            ++checked;
        }
    detail = std::to_string(checked) + " rank-vector pairs";
    return checked == static_cast<int>(all.size() * all.size());
}

bool criterion_one_sided_counterexample(std::string& detail) {
    const CommandResult r = run_partial_ideal(config_for({3}, 601, 25), {1}, IdealSide::right);
    const bool consistency = r.report.at("consistency").at("verdict") == "pass";
    const bool invariance_fails = r.report.at("invariance").at("verdict") == "fail";
    const auto& ce = r.report.at("invariance").at("counterexample");
    const bool witness_present = !ce.is_null() && ce.at("distance").get<double>() >= 1e-4;
    detail = std::string("consistency ") + (consistency ? "pass" : "fail") + ", invariance " +
             (invariance_fails ? "fail with witness" : "unexpected pass");
    return r.passed && consistency && invariance_fails && witness_present;
}

bool criterion_linalg_kernel(std::string& detail) {
    int families = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const int n = 1 + static_cast<int>(t % 16);
        SplitMix64 rng(mix_seed(701, t));
        const CMatrix u = random_unitary(n, rng.next());
        const int count = 1 + static_cast<int>(t % 3);
        std::vector<CMatrix> family;
        for (int g = 0; g < count; ++g) {
            std::vector<Complex> d(n);
            for (auto& v : d) {
                const double re = static_cast<double>(rng.next_below(3));
                const double im = (t % 2 == 0) ? 0.0 : static_cast<double>(rng.next_below(3));
                v = Complex{re, im};
            }
            family.push_back(u * CMatrix::diagonal(d) * u.adjoint());
        }
        const auto atoms = joint_spectral_atoms(n, family);
        CMatrix sum(n, n);
        for (const auto& e : atoms) sum = sum + e;
        if (max_abs_diff(sum, CMatrix::identity(n)) > 1e-8) {
            detail = "resolution of identity failed";
            return false;
        }
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if ((atoms[i] * atoms[j]).max_abs() > 1e-8) {
                    detail = "orthogonality failed";
                    return false;
                }
        for (const auto& m : family) {
            CMatrix rebuilt(n, n);
            for (const auto& e : atoms) {
                Complex num{}, den{};
                const CMatrix me = m * e;
                for (int i = 0; i < n; ++i) {
                    num += me.at(i, i);
                    den += e.at(i, i);
                }
                rebuilt = rebuilt + (num / den) * e;
            }
            if (max_abs_diff(rebuilt, m) > 1e-7) {
                detail = "reconstruction failed";
                return false;
            }
        }
        ++families;
    }
    for (std::uint64_t t = 0; t < 100; ++t) {
        const int n = 1 + static_cast<int>(t % 16);
        const CMatrix u = random_unitary(n, mix_seed(702, t));
        if (max_abs_diff(u.adjoint() * u, CMatrix::identity(n)) > 1e-10) {
            detail = "unitarity failed";
            return false;
        }
    }
    detail = std::to_string(families) + " commuting families, 100 unitaries";
    return families == 100;
}

bool criterion_determinism(std::string& detail) {
    const CommandResult a = run_theorem(config_for({2, 3}, 801, 10));
    const CommandResult b = run_theorem(config_for({2, 3}, 801, 10));
    const std::string ja = a.report.dump(2);
    const std::string jb = b.report.dump(2);
    const CommandResult c = run_theorem(config_for({2, 3, 2}, 802, 5));
    const CommandResult d = run_theorem(config_for({2, 3, 2}, 802, 5));
    detail = "reports of " + std::to_string(ja.size()) + " bytes";
    return a.passed && ja == jb && c.report.dump(2) == d.report.dump(2);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "theorem round trip and violation witnesses", criterion_theorem_round_trip},
        {2, "easy direction: central families invariant and consistent", criterion_easy_direction},
        {3, "projection families are consistent", criterion_projection_families_consistent},
        {4, "main lemma covering certificates", criterion_main_lemma_certificates},
        {5, "partial orthogonality oracle equivalence", criterion_partial_orthogonality_oracle},
        {6, "comparison split exhaustive", criterion_comparison_split_exhaustive},
        {7, "one-sided ideal counterexample in M3", criterion_one_sided_counterexample},
        {8, "linear algebra kernel invariants", criterion_linalg_kernel},
        {9, "theorem report determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
