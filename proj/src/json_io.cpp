#include "vna/json_io.hpp"

#include <stdexcept>

namespace vna {

using nlohmann::json;

void to_json(json& j, const CMatrix& m) {
    json data = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int jj = 0; jj < m.cols(); ++jj)
            data.push_back({m.at(i, jj).real(), m.at(i, jj).imag()});
    j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

void to_json(json& j, const BlockElement& x) {
    j = json{{"dims", x.algebra().dims()}, {"blocks", x.blocks()}};
}

void to_json(json& j, const ProjectionElement& p) { to_json(j, p.element()); }

void to_json(json& j, const CentralProjection& z) { j = json{{"mask", z.mask()}}; }

void to_json(json& j, const CommutativeSubalgebra& v) {
    j = json{{"atoms", v.atoms()}, {"contains_center", v.contains_center()}};
}

void to_json(json& j, const CommutativeIdeal& ideal) {
    j = json{{"subalgebra", ideal.subalgebra}, {"atom_indices", ideal.atom_indices}};
}

void to_json(json& j, const PartialOrthWitness& w) {
    j = json{{"mask", w.orthogonal_mask.mask()}};
}

void to_json(json& j, const CoverCertificate& cert) {
    json pairs = json::array();
    for (const auto& pw : cert.pairwise)
        pairs.push_back(json{{"i", pw.i}, {"j", pw.j}, {"mask", pw.witness.orthogonal_mask.mask()}});
    j = json{{"q", cert.q},
             {"family", cert.family},
             {"supremum", cert.supremum},
             {"remainder", cert.remainder},
             {"conjugator", cert.conjugator},
             {"pair_witnesses", std::move(pairs)}};
}

void to_json(json& j, const CoverValidation& val) {
    json checks = json::object();
    for (const auto& [name, ok] : val.checks) checks[name] = ok;
    j = json{{"ok", val.ok}, {"checks", std::move(checks)}};
}

void to_json(json& j, const Counterexample& c) {
    j = json{{"kind", c.kind},
             {"trial", c.trial},
             {"subalgebra", c.v},
             {"lhs", c.lhs},
             {"rhs", c.rhs},
             {"distance", c.distance}};
    if (c.v_large) j["larger_subalgebra"] = *c.v_large;
    if (c.u) j["unitary"] = *c.u;
}

void to_json(json& j, const CheckReport& r) {
    j = json{{"verdict", r.passed ? "pass" : "fail"}, {"trials", r.trials}};
    j["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
    if (r.recovered_center) j["recovered_center"] = *r.recovered_center;
}

void to_json(json& j, const ViolationWitness& w) {
    j = json{{"subalgebra", w.v},
             {"unitary", w.u},
             {"lhs", w.lhs},
             {"rhs", w.rhs},
             {"gap", w.gap}};
}

CMatrix parse_matrix(const json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& data = j.at("data");
    if (static_cast<int>(data.size()) != rows * cols)
        throw std::invalid_argument("parse_matrix: data length mismatch");
    CMatrix m(rows, cols);
    int idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj, ++idx)
            m.at(i, jj) = Complex{data[idx].at(0).get<double>(), data[idx].at(1).get<double>()};
    return m;
}

BlockElement parse_element(const json& j) {
    const BlockAlgebra a(j.at("dims").get<std::vector<int>>());
    std::vector<CMatrix> blocks;
    for (const auto& bj : j.at("blocks")) blocks.push_back(parse_matrix(bj));
    return BlockElement(a, std::move(blocks));
}

ProjectionElement parse_projection(const json& j, const Tolerance& tol) {
    return ProjectionElement(parse_element(j), tol);
}

CentralProjection parse_central(const json& j, const BlockAlgebra& a) {
    return CentralProjection(a, j.at("mask").get<std::vector<bool>>());
}

CommutativeSubalgebra parse_subalgebra(const json& j, const Tolerance& tol) {
    std::vector<ProjectionElement> atoms;
    for (const auto& aj : j.at("atoms")) atoms.push_back(parse_projection(aj, tol));
    return CommutativeSubalgebra::from_atoms(std::move(atoms), tol);
}

}  // namespace vna
