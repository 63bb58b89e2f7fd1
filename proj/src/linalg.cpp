#include "vna/linalg.hpp"

#include "vna/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace vna {

int numerical_rank(const CMatrix& m, const Tolerance& tol) {
    CMatrix a = m;
    const int rows = a.rows();
    const int cols = a.cols();
    const double thresh = tol.rank_eps * std::max(1.0, a.max_abs());
    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = row;
        double best = std::abs(a.at(row, col));
        for (int i = row + 1; i < rows; ++i) {
            const double v = std::abs(a.at(i, col));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= thresh) continue;
        if (piv != row)
            for (int j = 0; j < cols; ++j) std::swap(a.at(row, j), a.at(piv, j));
        for (int i = row + 1; i < rows; ++i) {
            const Complex f = a.at(i, col) / a.at(row, col);
            if (f == Complex{}) continue;
            for (int j = col; j < cols; ++j) a.at(i, j) -= f * a.at(row, j);
        }
        ++rank;
        ++row;
    }
    return rank;
}

bool is_projection(const CMatrix& m, const Tolerance& tol) {
    if (!m.is_square())
        throw std::invalid_argument("is_projection: matrix must be square");
    return max_abs_diff(m, m.adjoint()) <= tol.eps && max_abs_diff(m * m, m) <= tol.eps;
}

EigenDecomposition hermitian_eigen(const CMatrix& a_in) {
    if (!a_in.is_square())
        throw std::invalid_argument("hermitian_eigen: matrix must be square");
    const int n = a_in.rows();

    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (a_in.at(i, j) + std::conj(a_in.at(j, i)));

    CMatrix v = CMatrix::identity(n);
    const double stop = 1e-15 * std::max(1.0, a.max_abs());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop) continue;

                // 2x2 rotation zeroing a_pq; t is the smaller root of
                // t^2 + 2 tau t - 1 = 0, keeping the rotation close to I
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex phase = apq / mag;

                // A <- J* A J with J = [[c, s*phase], [-s*conj(phase), c]]
                for (int i = 0; i < n; ++i) {
                    const Complex aip = a.at(i, p);
                    const Complex aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a.at(i, q) = s * phase * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const Complex apj = a.at(p, j);
                    const Complex aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * phase * aqj;
                    a.at(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex vip = v.at(i, p);
                    const Complex viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * std::conj(phase) * viq;
                    v.at(i, q) = s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a.at(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

namespace {

// basis* m basis for an n x r orthonormal basis
CMatrix compress(const CMatrix& basis, const CMatrix& m) {
    return basis.adjoint() * (m * basis);
}

CMatrix projector_from_basis(const CMatrix& basis) {
    return basis * basis.adjoint();
}

struct AtomBasis {
    CMatrix basis;              // n x r, orthonormal columns
    std::vector<double> chain;  // accumulated eigenvalues, one per pass
};

}  // namespace

std::vector<CMatrix> joint_spectral_atoms(int dim, const std::vector<CMatrix>& ms,
                                          const Tolerance& tol) {
    if (dim < 1) throw std::invalid_argument("joint_spectral_atoms: dim must be >= 1");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].rows() != dim || ms[i].cols() != dim)
            throw std::invalid_argument("joint_spectral_atoms: input " + std::to_string(i) +
                                        " is not " + std::to_string(dim) + "x" +
                                        std::to_string(dim));
        const CMatrix adj = ms[i].adjoint();
        if (max_abs_diff(ms[i] * adj, adj * ms[i]) > tol.eps)
            throw std::invalid_argument("joint_spectral_atoms: input " + std::to_string(i) +
                                        " is not normal");
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (max_abs_diff(ms[i] * ms[j], ms[j] * ms[i]) > tol.eps)
                throw std::invalid_argument("joint_spectral_atoms: inputs " + std::to_string(i) +
                                            " and " + std::to_string(j) + " do not commute");

    std::vector<AtomBasis> atoms;
    atoms.push_back({CMatrix::identity(dim), {}});

    for (const CMatrix& m : ms) {
        const CMatrix adj = m.adjoint();
        const CMatrix herm = 0.5 * (m + adj);
        const CMatrix skew = Complex{0.0, -0.5} * (m - adj);  // (m - m*)/(2i)
        std::vector<CMatrix> passes{herm};
        if (skew.max_abs() > tol.eps) passes.push_back(skew);

        for (const CMatrix& gen : passes) {
            // Eigenvalues closer than this merge into one atom; sits well
            // above Jacobi noise and below the reconstruction tolerance.
            const double gap = 10.0 * tol.eps * std::max(1.0, gen.max_abs());
            std::vector<AtomBasis> next;
            for (AtomBasis& atom : atoms) {
                const int r = atom.basis.cols();
                const CMatrix comp = compress(atom.basis, gen);
                if (r == 1) {
                    atom.chain.push_back(comp.at(0, 0).real());
                    next.push_back(std::move(atom));
                    continue;
                }
                const EigenDecomposition eig = hermitian_eigen(comp);
                int start = 0;
                for (int k = 1; k <= r; ++k) {
                    if (k < r && eig.values[k] - eig.values[k - 1] <= gap) continue;
                    CMatrix w(r, k - start);
                    double rep = 0.0;
                    for (int jj = start; jj < k; ++jj) {
                        rep += eig.values[jj];
                        for (int ii = 0; ii < r; ++ii) w.at(ii, jj - start) = eig.vectors.at(ii, jj);
                    }
                    rep /= (k - start);
                    AtomBasis sub;
                    sub.basis = atom.basis * w;
                    sub.chain = atom.chain;
                    sub.chain.push_back(rep);
                    next.push_back(std::move(sub));
                    start = k;
                }
            }
            atoms = std::move(next);
        }
    }

    std::vector<CMatrix> out;
    out.reserve(atoms.size());
    for (const AtomBasis& atom : atoms) out.push_back(projector_from_basis(atom.basis));
    return out;
}

namespace {

Complex column_dot(const CMatrix& m, int col_a, int col_b) {
    // <col_a, col_b> with conjugation on the first argument
    Complex acc{};
    for (int i = 0; i < m.rows(); ++i) acc += std::conj(m.at(i, col_a)) * m.at(i, col_b);
    return acc;
}

double column_norm(const CMatrix& m, int col) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i) acc += std::norm(m.at(i, col));
    return std::sqrt(acc);
}

// Modified Gram-Schmidt on the columns of m, in place, two passes per
// column. Throws if a column collapses (the caller promised independence).
void orthonormalize_columns(CMatrix& m, const char* who) {
    const int n = m.rows();
    const int k = m.cols();
    for (int j = 0; j < k; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int b = 0; b < j; ++b) {
                const Complex ip = column_dot(m, b, j);
                for (int i = 0; i < n; ++i) m.at(i, j) -= ip * m.at(i, b);
            }
        }
        const double nrm = column_norm(m, j);
        if (nrm < 1e-12)
            throw std::runtime_error(std::string(who) + ": dependent columns");
        for (int i = 0; i < n; ++i) m.at(i, j) /= nrm;
    }
}

// Collect `count` orthonormal vectors spanning the column space of src,
// writing them into dst starting at column dst_off. Pivoted MGS: always
// take the residual column of largest norm (ties to the lowest index).
void collect_range_basis(const CMatrix& src, int count, CMatrix& dst, int dst_off,
                         const char* who) {
    const int n = src.rows();
    CMatrix res = src;
    for (int k = 0; k < count; ++k) {
        int best = 0;
        double best_norm = -1.0;
        for (int j = 0; j < res.cols(); ++j) {
            const double v = column_norm(res, j);
            if (v > best_norm) {
                best_norm = v;
                best = j;
            }
        }
        if (best_norm < 1e-10)
            throw std::runtime_error(std::string(who) + ": projection has lower rank than stated");
        std::vector<Complex> v(n);
        for (int i = 0; i < n; ++i) v[i] = res.at(i, best);
        for (int pass = 0; pass < 2; ++pass) {
            for (int b = 0; b < k; ++b) {
                Complex ip{};
                for (int i = 0; i < n; ++i) ip += std::conj(dst.at(i, dst_off + b)) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= ip * dst.at(i, dst_off + b);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(v[i]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-10)
            throw std::runtime_error(std::string(who) + ": projection has lower rank than stated");
        for (int i = 0; i < n; ++i) dst.at(i, dst_off + k) = v[i] / nrm;
        for (int j = 0; j < res.cols(); ++j) {
            Complex ip{};
            for (int i = 0; i < n; ++i) ip += std::conj(dst.at(i, dst_off + k)) * res.at(i, j);
            for (int i = 0; i < n; ++i) res.at(i, j) -= ip * dst.at(i, dst_off + k);
        }
    }
}

}  // namespace

CMatrix orthonormal_range_basis(const CMatrix& p, int rank) {
    if (!p.is_square())
        throw std::invalid_argument("orthonormal_range_basis: matrix must be square");
    if (rank < 1 || rank > p.rows())
        throw std::invalid_argument("orthonormal_range_basis: rank out of range");
    CMatrix basis(p.rows(), rank);
    collect_range_basis(p, rank, basis, 0, "orthonormal_range_basis");
    return basis;
}

CMatrix projection_frame(const CMatrix& p, int rank) {
    if (!p.is_square())
        throw std::invalid_argument("projection_frame: matrix must be square");
    const int n = p.rows();
    if (rank < 0 || rank > n)
        throw std::invalid_argument("projection_frame: rank out of range");
    CMatrix frame(n, n);
    if (rank > 0) collect_range_basis(p, rank, frame, 0, "projection_frame");
    if (rank < n) collect_range_basis(CMatrix::identity(n) - p, n - rank, frame, rank,
                                      "projection_frame");
    // polish: the two halves are orthogonal only up to the projection defect
    orthonormalize_columns(frame, "projection_frame");
    return frame;
}

CMatrix random_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_unitary: n must be >= 1");
    SplitMix64 rng(seed);
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = rng.next_complex_gaussian();
    orthonormalize_columns(g, "random_unitary");
    return g;
}

CMatrix random_projection(int n, int r, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_projection: n must be >= 1");
    if (r < 0 || r > n) throw std::out_of_range("random_projection: rank outside [0, n]");
    const CMatrix u = random_unitary(n, seed);
    CMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex acc{};
            for (int k = 0; k < r; ++k) acc += u.at(i, k) * std::conj(u.at(j, k));
            p.at(i, j) = acc;
        }
    // symmetrize away accumulation noise
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Complex v = 0.5 * (p.at(i, j) + std::conj(p.at(j, i)));
            p.at(i, j) = v;
            p.at(j, i) = std::conj(v);
        }
    return p;
}

CMatrix range_matching_unitary(const CMatrix& p, const CMatrix& q, const Tolerance& tol) {
    if (!is_projection(p, tol) || !is_projection(q, tol))
        throw std::invalid_argument("range_matching_unitary: inputs must be projections");
    if (p.rows() != q.rows())
        throw std::invalid_argument("range_matching_unitary: size mismatch");
    const int rp = numerical_rank(p, tol);
    const int rq = numerical_rank(q, tol);
    if (rp != rq)
        throw std::invalid_argument("range_matching_unitary: rank mismatch (" +
                                    std::to_string(rp) + " vs " + std::to_string(rq) + ")");
    const CMatrix a = projection_frame(p, rp);
    const CMatrix b = projection_frame(q, rq);
    return b * a.adjoint();
}

}  // namespace vna
