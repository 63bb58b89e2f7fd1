#include "vna/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace vna {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("CMatrix: rows and cols must be positive");
    data_.assign(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0});
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Complex{1.0, 0.0};
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Complex>& entries) {
    const int n = static_cast<int>(entries.size());
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const int r = static_cast<int>(rows.size());
    if (r == 0) throw std::invalid_argument("CMatrix::from_rows: empty");
    const int c = static_cast<int>(rows.begin()->size());
    CMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c)
            throw std::invalid_argument("CMatrix::from_rows: ragged rows");
        int j = 0;
        for (const Complex& v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

namespace {
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}
}  // namespace

CMatrix CMatrix::operator+(const CMatrix& o) const {
    require_same_shape(*this, o, "CMatrix::operator+");
    CMatrix m = *this;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += o.data_[i];
    return m;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    require_same_shape(*this, o, "CMatrix::operator-");
    CMatrix m = *this;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= o.data_[i];
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("CMatrix::operator*: inner dimension mismatch");
    CMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Complex aik = at(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

CMatrix CMatrix::operator-() const {
    CMatrix m = *this;
    for (auto& v : m.data_) v = -v;
    return m;
}

CMatrix operator*(Complex s, const CMatrix& m) {
    CMatrix r = m;
    for (auto& v : r.data_) v *= s;
    return r;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double eps) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= eps;
}

}  // namespace vna
