// Dense complex matrices and Hermitian spectral routines.
//
// Everything here is sized for few-qubit states (n <= 32), so storage is a
// plain row-major vector and the eigensolver is cyclic Jacobi.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lii {

using cplx = std::complex<double>;

/// Raised when a numerical routine cannot reach its stated accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
        }
    }

    /// Row-by-row literal, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw std::invalid_argument("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> values) {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }

    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const cplx> v) {
        ComplexMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> entries() const { return data_; }
    std::span<cplx> entries() { return data_; }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix out = *this;
        for (auto& z : out.data_) z = std::conj(z);
        return out;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("ComplexMatrix: inner dimensions differ");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    /// Largest elementwise modulus of (a - b).
    friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_shape(b);
        double m = 0.0;
        for (std::size_t i = 0; i < a.data_.size(); ++i) m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
        return m;
    }

    bool approx_equal(const ComplexMatrix& o, double abs_tol) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && max_abs_diff(*this, o) <= abs_tol;
    }

    /// Max elementwise deviation from Hermiticity; infinite for non-square input.
    double hermitian_defect() const {
        if (!is_square()) return INFINITY;
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("ComplexMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Tensor product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

namespace pauli {
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return {{0.0, cplx{0, -1}}, {cplx{0, 1}, 0.0}}; }
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column i pairs with values[i]
};

struct JacobiOptions {
    double off_diagonal_tol = 1e-12;
    int max_sweeps = 100;
    double hermitian_tol = 1e-10;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix, m = V diag(values) V^dagger.
///
/// Each rotation zeroes one off-diagonal pair (p, q) with the unitary
///   [ c            s e^{i a} ]
///   [ -s e^{-i a}  c         ]
/// where a = arg(m_pq). Iteration stops once every off-diagonal modulus
/// falls below off_diagonal_tol * max(1, max|m_ij|).
inline EigenSystem eig_hermitian(const ComplexMatrix& m, const JacobiOptions& opt = {}) {
    if (!m.is_square()) throw std::invalid_argument("eig_hermitian: matrix is not square");
    if (m.hermitian_defect() > opt.hermitian_tol) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 1.0;
    for (const auto& z : a.entries()) scale = std::max(scale, std::abs(z));
    const double threshold = opt.off_diagonal_tol * scale;

    // Symmetrize and pin the diagonal real so round-off does not accumulate.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    auto max_off = [&] {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
        return off;
    };

    int sweep = 0;
    while (max_off() >= threshold) {
        if (sweep++ >= opt.max_sweeps) {
            throw NumericalError("eig_hermitian: Jacobi iteration did not converge");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g < 1e-300) continue;
                const cplx phase = apq / g;  // e^{i a}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx upq = s * phase;
                const cplx uqp = -s * std::conj(phase);

                // a <- a U (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * c + akq * uqp;
                    a(k, q) = akp * upq + akq * c;
                }
                // a <- U^dagger a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * g;
                a(q, q) = aqq + t * g;

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

/// Eigenvalues only, ascending. 2x2 inputs use the closed form.
inline std::vector<double> eigvals_hermitian(const ComplexMatrix& m) {
    if (m.rows() == 2 && m.cols() == 2) {
        if (m.hermitian_defect() > 1e-10) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
        const double mid = 0.5 * (a + d);
        return {mid - half_gap, mid + half_gap};
    }
    return eig_hermitian(m).values;
}

/// Eigenvalues in [-1e-9, 0) are treated as round-off and clamped to zero.
inline constexpr double kNegativeEigenvalueTol = 1e-9;

/// Principal square root of a positive semidefinite Hermitian matrix.
inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const EigenSystem es = eig_hermitian(m);
    const std::size_t n = m.rows();
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (es.values[i] < -kNegativeEigenvalueTol) {
            throw std::domain_error("matrix_sqrt_psd: eigenvalue below -1e-9, matrix is not PSD");
        }
        roots[i] = std::sqrt(std::max(0.0, es.values[i]));
    }
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += es.vectors(i, k) * roots[k] * std::conj(es.vectors(j, k));
            out(i, j) = acc;
        }
    return out;
}

}  // namespace lii
