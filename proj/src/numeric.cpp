// SPDX-License-Identifier: Apache-2.0
#include "rieszq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rieszq/group.hpp"  // cap_exceeded

namespace rieszq {

ComplexMatrix::ComplexMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

ComplexMatrix::ComplexMatrix(std::int64_t rows, std::int64_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (a_.size() != static_cast<std::size_t>(rows * cols))
        throw std::invalid_argument("entry count does not match dimensions");
    require_finite();
}

void ComplexMatrix::require_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::int64_t n) {
    ComplexMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

void jacobi_singular_values(cplx* col, std::int64_t n, std::vector<double>& out) {
    const double tol = 1e-14;
    const int max_sweeps = 64;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                cplx* cp = col + p * n;
                cplx* cq = col + q * n;
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::int64_t k = 0; k < n; ++k) {
                    alpha += std::norm(cp[k]);
                    beta += std::norm(cq[k]);
                    gamma += std::conj(cp[k]) * cq[k];
                }
                double g = std::abs(gamma);
                if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
                converged = false;
                // Rotate the pair (p, q e^{-i arg(gamma)}) by the classical
                // real Jacobi angle for [[alpha, g], [g, beta]].
                cplx phase = gamma / g;
                double tau = (beta - alpha) / (2.0 * g);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::int64_t k = 0; k < n; ++k) {
                    cplx vq = cq[k] * std::conj(phase);
                    cplx vp = cp[k];
                    cp[k] = c * vp - s * vq;
                    cq[k] = s * vp + c * vq;
                }
            }
        }
    }

    out.resize(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        double nrm2 = 0.0;
        for (std::int64_t i = 0; i < n; ++i) nrm2 += std::norm(col[j * n + i]);
        out[static_cast<std::size_t>(j)] = std::sqrt(nrm2);
    }
    std::sort(out.begin(), out.end());
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("singular_values expects a square matrix");
    if (m.rows() == 0) return {};
    m.require_finite();
    const std::int64_t n = m.rows();
    std::vector<cplx> col(static_cast<std::size_t>(n * n));
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < n; ++i) col[static_cast<std::size_t>(j * n + i)] = m.at(i, j);
    std::vector<double> sv;
    jacobi_singular_values(col.data(), n, sv);
    return sv;
}

double abs_determinant(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("abs_determinant expects a square matrix");
    m.require_finite();
    const std::int64_t n = m.rows();
    if (n == 0) return 1.0;
    std::vector<cplx> a(m.entries());
    double det = 1.0;
    for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t pivot = k;
        double best = std::abs(a[static_cast<std::size_t>(k * n + k)]);
        for (std::int64_t i = k + 1; i < n; ++i) {
            double v = std::abs(a[static_cast<std::size_t>(i * n + k)]);
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != k)
            for (std::int64_t j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k * n + j)],
                          a[static_cast<std::size_t>(pivot * n + j)]);
        cplx akk = a[static_cast<std::size_t>(k * n + k)];
        det *= std::abs(akk);
        for (std::int64_t i = k + 1; i < n; ++i) {
            cplx f = a[static_cast<std::size_t>(i * n + k)] / akk;
            if (f == cplx(0.0, 0.0)) continue;
            for (std::int64_t j = k; j < n; ++j)
                a[static_cast<std::size_t>(i * n + j)] -= f * a[static_cast<std::size_t>(k * n + j)];
        }
    }
    return det;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::int64_t entry_cap) {
    a.require_finite();
    b.require_finite();
    std::int64_t rows = a.rows() * b.rows();
    std::int64_t cols = a.cols() * b.cols();
    if (rows * cols > entry_cap)
        throw cap_exceeded("kron result exceeds entry cap");
    ComplexMatrix out(rows, cols);
    for (std::int64_t i = 0; i < a.rows(); ++i)
        for (std::int64_t j = 0; j < a.cols(); ++j) {
            cplx f = a.at(i, j);
            for (std::int64_t k = 0; k < b.rows(); ++k)
                for (std::int64_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = f * b.at(k, l);
        }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i)
        for (std::int64_t k = 0; k < a.cols(); ++k) {
            cplx f = a.at(i, k);
            if (f == cplx(0.0, 0.0)) continue;
            for (std::int64_t j = 0; j < b.cols(); ++j) out.at(i, j) += f * b.at(k, j);
        }
    return out;
}

ComplexMatrix conj_transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::int64_t i = 0; i < m.rows(); ++i)
        for (std::int64_t j = 0; j < m.cols(); ++j) out.at(j, i) = std::conj(m.at(i, j));
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& v : m.entries()) s += std::norm(v);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("frobenius_distance dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

}  // namespace rieszq
