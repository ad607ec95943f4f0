// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rieszq {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Construction rejects non-finite entries.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::int64_t rows, std::int64_t cols);
    ComplexMatrix(std::int64_t rows, std::int64_t cols, std::vector<cplx> entries);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    cplx& at(std::int64_t i, std::int64_t j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
    const cplx& at(std::int64_t i, std::int64_t j) const {
        return a_[static_cast<std::size_t>(i * cols_ + j)];
    }
    const std::vector<cplx>& entries() const { return a_; }

    void require_finite() const;

    static ComplexMatrix identity(std::int64_t n);

  private:
    std::int64_t rows_, cols_;
    std::vector<cplx> a_;
};

/// Singular values in ascending order. Square matrices only. Columns are
/// orthogonalized in place by cyclic Jacobi rotations; the rotation angles
/// come from the 2x2 Gram blocks of M*M, so this is the Hermitian Jacobi
/// eigensolver applied implicitly, which keeps small singular values at
/// rounding level instead of sqrt(eps) level.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Same solver on a column-major n x n buffer; destroys the buffer. `out` is
/// resized to n and sorted ascending. Allocation-free when capacities fit.
void jacobi_singular_values(cplx* columns, std::int64_t n, std::vector<double>& out);

/// |det M| by partially pivoted elimination.
double abs_determinant(const ComplexMatrix& m);

/// Kronecker product. Throws cap_exceeded if the result would hold more than
/// kron_entry_cap entries.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::int64_t entry_cap = 1 << 22);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace rieszq
