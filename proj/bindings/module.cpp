#include "vna/cli.hpp"
#include "vna/covering.hpp"
#include "vna/families.hpp"
#include "vna/json_io.hpp"
#include "vna/sampling.hpp"

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

namespace py = pybind11;
using namespace vna;

namespace {

using Rows = std::vector<std::vector<Complex>>;

CMatrix matrix_from_rows(const Rows& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix: at least one row required");
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.front().size());
    CMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("matrix: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Rows matrix_to_rows(const CMatrix& m) {
    Rows rows(m.rows(), std::vector<Complex>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

BlockElement element_from_blocks(const BlockAlgebra& a, const std::vector<Rows>& blocks) {
    std::vector<CMatrix> mats;
    mats.reserve(blocks.size());
    for (const Rows& rows : blocks) mats.push_back(matrix_from_rows(rows));
    return BlockElement(a, std::move(mats));
}

std::vector<Rows> element_to_blocks(const BlockElement& x) {
    std::vector<Rows> blocks;
    blocks.reserve(x.num_blocks());
    for (const CMatrix& b : x.blocks()) blocks.push_back(matrix_to_rows(b));
    return blocks;
}

ExperimentConfig build_config(const std::vector<int>& dims, std::uint64_t seed, int trials,
                              double eps, double rank_eps) {
    ExperimentConfig c;
    c.dims = dims;
    c.master_seed = seed;
    c.trials = trials;
    c.tol = Tolerance(eps, rank_eps);
    return c;
}

std::pair<std::string, bool> result_to_pair(const CommandResult& r) {
    return {r.report.dump(2), r.passed};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Projections, partial ideals, and invariant families in finite-dimensional "
              "von Neumann algebras";

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("eps"), py::arg("rank_eps"))
        .def_readonly("eps", &Tolerance::eps)
        .def_readonly("rank_eps", &Tolerance::rank_eps);

    // dense kernel on plain nested lists
    m.def(
        "numerical_rank",
        [](const Rows& rows, const Tolerance& tol) { return numerical_rank(matrix_from_rows(rows), tol); },
        py::arg("matrix"), py::arg("tol") = Tolerance{});
    m.def(
        "is_projection",
        [](const Rows& rows, const Tolerance& tol) { return is_projection(matrix_from_rows(rows), tol); },
        py::arg("matrix"), py::arg("tol") = Tolerance{});
    m.def(
        "joint_spectral_atoms",
        [](int dim, const std::vector<Rows>& ms, const Tolerance& tol) {
            std::vector<CMatrix> mats;
            for (const Rows& rows : ms) mats.push_back(matrix_from_rows(rows));
            std::vector<Rows> out;
            for (const CMatrix& atom : joint_spectral_atoms(dim, mats, tol))
                out.push_back(matrix_to_rows(atom));
            return out;
        },
        py::arg("dim"), py::arg("matrices"), py::arg("tol") = Tolerance{});
    m.def(
        "random_unitary",
        [](int n, std::uint64_t seed) { return matrix_to_rows(random_unitary(n, seed)); },
        py::arg("n"), py::arg("seed"));
    m.def(
        "random_projection",
        [](int n, int r, std::uint64_t seed) { return matrix_to_rows(random_projection(n, r, seed)); },
        py::arg("n"), py::arg("rank"), py::arg("seed"));
    m.def(
        "range_matching_unitary",
        [](const Rows& p, const Rows& q, const Tolerance& tol) {
            return matrix_to_rows(range_matching_unitary(matrix_from_rows(p), matrix_from_rows(q), tol));
        },
        py::arg("p"), py::arg("q"), py::arg("tol") = Tolerance{});

    py::class_<BlockAlgebra>(m, "BlockAlgebra")
        .def(py::init<std::vector<int>>(), py::arg("dims"))
        .def_property_readonly("dims", &BlockAlgebra::dims)
        .def_property_readonly("num_blocks", &BlockAlgebra::num_blocks)
        .def_property_readonly("total_dim", &BlockAlgebra::total_dim)
        .def(py::self == py::self);

    py::class_<BlockElement>(m, "BlockElement")
        .def(py::init(&element_from_blocks), py::arg("algebra"), py::arg("blocks"))
        .def_static("zero", &BlockElement::zero)
        .def_static("identity", &BlockElement::identity)
        .def_property_readonly("algebra", &BlockElement::algebra)
        .def_property_readonly("blocks", &element_to_blocks)
        .def("adjoint", &BlockElement::adjoint)
        .def(py::self == py::self)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self);
    m.def("max_abs_diff",
          [](const BlockElement& a, const BlockElement& b) { return max_abs_diff(a, b); });

    py::class_<ProjectionElement>(m, "ProjectionElement")
        .def(py::init([](const BlockAlgebra& a, const std::vector<Rows>& blocks,
                         const Tolerance& tol) {
                 return ProjectionElement(element_from_blocks(a, blocks), tol);
             }),
             py::arg("algebra"), py::arg("blocks"), py::arg("tol") = Tolerance{})
        .def(py::init<BlockElement, const Tolerance&>(), py::arg("element"),
             py::arg("tol") = Tolerance{})
        .def_static("zero", &ProjectionElement::zero)
        .def_static("identity", &ProjectionElement::identity)
        .def_property_readonly("algebra", &ProjectionElement::algebra)
        .def_property_readonly("element", &ProjectionElement::element)
        .def_property_readonly("blocks",
                               [](const ProjectionElement& p) { return element_to_blocks(p.element()); })
        .def(py::self == py::self);

    py::class_<CentralProjection>(m, "CentralProjection")
        .def(py::init<BlockAlgebra, std::vector<bool>>(), py::arg("algebra"), py::arg("mask"))
        .def_static("zero", &CentralProjection::zero)
        .def_static("identity", &CentralProjection::identity)
        .def_property_readonly("algebra", &CentralProjection::algebra)
        .def_property_readonly("mask", &CentralProjection::mask)
        .def("complement", &CentralProjection::complement)
        .def("to_projection", &CentralProjection::to_projection)
        .def(py::self == py::self);

    m.def("rank_vector", &rank_vector, py::arg("p"), py::arg("tol") = Tolerance{});
    m.def("central_carrier", &central_carrier, py::arg("q"), py::arg("tol") = Tolerance{});
    m.def("is_central", &is_central, py::arg("p"), py::arg("tol") = Tolerance{});
    m.def("comparison_split", &comparison_split, py::arg("p"), py::arg("q"),
          py::arg("tol") = Tolerance{});
    m.def(
        "mvn_compare",
        [](const ProjectionElement& p, const ProjectionElement& q, const Tolerance& tol) {
            const MvnReport rep = mvn_compare(p, q, tol);
            const char* verdict = rep.verdict == MvnOrder::equivalent  ? "equivalent"
                                  : rep.verdict == MvnOrder::below     ? "below"
                                  : rep.verdict == MvnOrder::above     ? "above"
                                                                       : "incomparable";
            return std::make_pair(std::string(verdict), rep.block_sign);
        },
        py::arg("p"), py::arg("q"), py::arg("tol") = Tolerance{});
    m.def("unitary_conjugate",
          py::overload_cast<const ProjectionElement&, const BlockElement&>(&unitary_conjugate),
          py::arg("p"), py::arg("u"));
    m.def("orbit_conjugator", &orbit_conjugator, py::arg("p"), py::arg("q"),
          py::arg("tol") = Tolerance{});

    py::class_<CommutativeSubalgebra>(m, "CommutativeSubalgebra")
        .def_static("from_atoms", &CommutativeSubalgebra::from_atoms, py::arg("atoms"),
                    py::arg("tol") = Tolerance{})
        .def_property_readonly("algebra", &CommutativeSubalgebra::algebra)
        .def_property_readonly("atoms", &CommutativeSubalgebra::atoms)
        .def_property_readonly("contains_center", &CommutativeSubalgebra::contains_center)
        .def("__len__", &CommutativeSubalgebra::size);

    m.def("generate", &generate, py::arg("algebra"), py::arg("generators"),
          py::arg("with_center"), py::arg("tol") = Tolerance{});
    m.def("center_subalgebra", &center_subalgebra, py::arg("algebra"),
          py::arg("tol") = Tolerance{});
    m.def("trivial_subalgebra", &trivial_subalgebra, py::arg("algebra"),
          py::arg("tol") = Tolerance{});
    m.def("includes", &includes, py::arg("inner"), py::arg("outer"), py::arg("tol") = Tolerance{});
    m.def("subalgebra_equal", &subalgebra_equal, py::arg("a"), py::arg("b"),
          py::arg("tol") = Tolerance{});
    m.def("conjugate_subalgebra", &conjugate_subalgebra, py::arg("v"), py::arg("u"),
          py::arg("tol") = Tolerance{});
    m.def("largest_projection_below",
          py::overload_cast<const CommutativeSubalgebra&, const ProjectionElement&,
                            const Tolerance&>(&largest_projection_below),
          py::arg("v"), py::arg("p"), py::arg("tol") = Tolerance{});

    py::class_<CommutativeIdeal>(m, "CommutativeIdeal")
        .def_readonly("atom_indices", &CommutativeIdeal::atom_indices)
        .def_property_readonly("subalgebra",
                               [](const CommutativeIdeal& i) { return i.subalgebra; })
        .def_property_readonly("support", &ideal_support);

    py::enum_<IdealSide>(m, "IdealSide")
        .value("left", IdealSide::left)
        .value("right", IdealSide::right);

    m.def("total_partial_ideal", &total_partial_ideal, py::arg("z"), py::arg("v"),
          py::arg("tol") = Tolerance{});
    m.def("one_sided_partial_ideal", &one_sided_partial_ideal, py::arg("p"), py::arg("side"),
          py::arg("v"), py::arg("tol") = Tolerance{});

    m.def(
        "partially_orthogonal",
        [](const ProjectionElement& p, const ProjectionElement& q, const Tolerance& tol)
            -> std::optional<CentralProjection> {
            const auto w = partially_orthogonal(p, q, tol);
            if (!w) return std::nullopt;
            return w->orthogonal_mask;
        },
        py::arg("p"), py::arg("q"), py::arg("tol") = Tolerance{});

    py::class_<CoverCertificate>(m, "CoverCertificate")
        .def_readonly("q", &CoverCertificate::q)
        .def_readonly("family", &CoverCertificate::family)
        .def_readonly("supremum", &CoverCertificate::supremum)
        .def_readonly("remainder", &CoverCertificate::remainder)
        .def_readonly("conjugator", &CoverCertificate::conjugator);

    m.def("main_lemma_cover", &main_lemma_cover, py::arg("q"), py::arg("tol") = Tolerance{});
    m.def(
        "validate_cover",
        [](const CoverCertificate& cert, const Tolerance& tol) {
            const CoverValidation val = validate_cover(cert, tol);
            std::map<std::string, bool> checks(val.checks.begin(), val.checks.end());
            return std::make_pair(val.ok, std::move(checks));
        },
        py::arg("certificate"), py::arg("tol") = Tolerance{});

    py::class_<FamilyRule>(m, "FamilyRule")
        .def_static("from_projection", &FamilyRule::from_projection, py::arg("p"))
        .def_static("from_central", &FamilyRule::from_central, py::arg("z"));

    m.def("evaluate", &evaluate, py::arg("rule"), py::arg("v"), py::arg("tol") = Tolerance{});
    m.def("center_value", &center_value, py::arg("rule"), py::arg("tol") = Tolerance{});

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("passed", &CheckReport::passed)
        .def_readonly("trials", &CheckReport::trials)
        .def_property_readonly("counterexample_kind",
                               [](const CheckReport& r) -> std::optional<std::string> {
                                   if (!r.counterexample) return std::nullopt;
                                   return r.counterexample->kind;
                               })
        .def_property_readonly("recovered_center",
                               [](const CheckReport& r) { return r.recovered_center; });

    m.def(
        "check_consistency",
        [](const FamilyRule& rule,
           const std::vector<std::pair<CommutativeSubalgebra, CommutativeSubalgebra>>& chains,
           const Tolerance& tol) {
            std::vector<ChainSample> cs;
            for (const auto& [small, large] : chains) cs.push_back({small, large});
            return check_consistency(rule, cs, tol);
        },
        py::arg("rule"), py::arg("chains"), py::arg("tol") = Tolerance{});
    m.def(
        "check_invariance",
        [](const FamilyRule& rule,
           const std::vector<std::pair<CommutativeSubalgebra, BlockElement>>& samples,
           const Tolerance& tol) {
            std::vector<InvarianceSample> ss;
            for (const auto& [v, u] : samples) ss.push_back({v, u});
            return check_invariance(rule, ss, tol);
        },
        py::arg("rule"), py::arg("samples"), py::arg("tol") = Tolerance{});
    m.def("verify_theorem", &verify_theorem, py::arg("rule"), py::arg("subalgebras"),
          py::arg("unitaries"), py::arg("tol") = Tolerance{});

    py::class_<ViolationWitness>(m, "ViolationWitness")
        .def_readonly("v", &ViolationWitness::v)
        .def_readonly("u", &ViolationWitness::u)
        .def_readonly("lhs", &ViolationWitness::lhs)
        .def_readonly("rhs", &ViolationWitness::rhs)
        .def_readonly("gap", &ViolationWitness::gap);

    m.def("find_invariance_violation", &find_invariance_violation, py::arg("p"),
          py::arg("tol") = Tolerance{});
    m.def("reverify_witness", &reverify_witness, py::arg("p"), py::arg("witness"),
          py::arg("tol") = Tolerance{});

    // seeded samplers
    m.def("random_block_unitary", &random_block_unitary, py::arg("algebra"), py::arg("seed"));
    m.def("random_block_projection", &random_block_projection, py::arg("algebra"),
          py::arg("ranks"), py::arg("seed"), py::arg("tol") = Tolerance{});
    m.def("random_noncentral_projection", &random_noncentral_projection, py::arg("algebra"),
          py::arg("seed"), py::arg("tol") = Tolerance{});
    m.def("random_subalgebra", &random_subalgebra, py::arg("algebra"), py::arg("seed"),
          py::arg("tol") = Tolerance{});

    // CLI pipelines, returning (json_report, passed)
    m.def(
        "run_theorem",
        [](const std::vector<int>& dims, std::uint64_t seed, int trials, double eps,
           double rank_eps) {
            return result_to_pair(run_theorem(build_config(dims, seed, trials, eps, rank_eps)));
        },
        py::arg("dims"), py::arg("seed") = 0, py::arg("trials") = 20, py::arg("eps") = 1e-9,
        py::arg("rank_eps") = 1e-9);
    m.def(
        "run_cover",
        [](const std::vector<int>& dims, const RankVector& ranks, std::uint64_t seed, double eps,
           double rank_eps) {
            return result_to_pair(run_cover(build_config(dims, seed, 1, eps, rank_eps), ranks));
        },
        py::arg("dims"), py::arg("ranks"), py::arg("seed") = 0, py::arg("eps") = 1e-9,
        py::arg("rank_eps") = 1e-9);
    m.def(
        "run_partial_ideal",
        [](const std::vector<int>& dims, const RankVector& ranks, const std::string& side,
           std::uint64_t seed, int trials, double eps, double rank_eps) {
            return result_to_pair(
                run_partial_ideal(build_config(dims, seed, trials, eps, rank_eps), ranks,
                                  side == "left" ? IdealSide::left : IdealSide::right));
        },
        py::arg("dims"), py::arg("ranks"), py::arg("side") = "right", py::arg("seed") = 0,
        py::arg("trials") = 20, py::arg("eps") = 1e-9, py::arg("rank_eps") = 1e-9);
    m.def(
        "run_witness",
        [](const std::vector<int>& dims, const std::optional<RankVector>& ranks,
           std::uint64_t seed, double eps, double rank_eps) {
            return result_to_pair(
                run_witness(build_config(dims, seed, 1, eps, rank_eps), ranks));
        },
        py::arg("dims"), py::arg("ranks") = std::nullopt, py::arg("seed") = 0,
        py::arg("eps") = 1e-9, py::arg("rank_eps") = 1e-9);
    m.def(
        "run_check",
        [](const std::vector<int>& dims, std::uint64_t seed, int trials, double eps,
           double rank_eps) {
            return result_to_pair(run_check(build_config(dims, seed, trials, eps, rank_eps)));
        },
        py::arg("dims"), py::arg("seed") = 0, py::arg("trials") = 20, py::arg("eps") = 1e-9,
        py::arg("rank_eps") = 1e-9);
}
