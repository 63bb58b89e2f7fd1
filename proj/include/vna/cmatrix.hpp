#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace vna {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Sized for desk-scale work (block
// dimensions up to ~32); no attempt at BLAS-level throughput.
class CMatrix {
public:
    CMatrix() : CMatrix(1, 1) {}
    CMatrix(int rows, int cols);

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    static CMatrix identity(int n);
    static CMatrix diagonal(const std::vector<Complex>& entries);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

    CMatrix adjoint() const;

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator-() const;
    friend CMatrix operator*(Complex s, const CMatrix& m);

    double max_abs() const;

    bool operator==(const CMatrix& o) const = default;

private:
    int rows_;
    int cols_;
    std::vector<Complex> data_;
};

// max |a_ij - b_ij|; shapes must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double eps);

}  // namespace vna
