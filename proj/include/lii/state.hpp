// Multipartite density matrices and pure states.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lii/matrix.hpp"

namespace lii {

using Dims = std::vector<std::size_t>;

inline std::size_t total_dim(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

/// Validation thresholds shared by the state types.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

namespace detail {

inline void check_dims(std::span<const std::size_t> dims, const char* who) {
    if (dims.empty()) throw std::invalid_argument(std::string(who) + ": empty dimension list");
    for (auto d : dims) {
        if (d == 0) throw std::invalid_argument(std::string(who) + ": zero subsystem dimension");
    }
}

// Mixed-radix digits of a flat index, most significant subsystem first.
inline void unflatten(std::size_t index, std::span<const std::size_t> dims, std::span<std::size_t> digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

inline std::size_t flatten(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
    return index;
}

// For every flat index of the full space, its flat index in the space of the
// subsystems listed in `which` (in that order).
inline std::vector<std::size_t> sub_index_table(std::span<const std::size_t> dims,
                                                std::span<const std::size_t> which) {
    const std::size_t n = total_dim(dims);
    std::vector<std::size_t> digits(dims.size());
    std::vector<std::size_t> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        unflatten(i, dims, digits);
        std::size_t sub = 0;
        for (auto w : which) sub = sub * dims[w] + digits[w];
        table[i] = sub;
    }
    return table;
}

inline void check_keep(std::span<const std::size_t> keep, std::size_t parties) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= parties) throw std::out_of_range("partial_trace: subsystem index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) {
            throw std::invalid_argument("partial_trace: keep indices must be strictly increasing");
        }
    }
}

inline std::vector<std::size_t> complement(std::span<const std::size_t> keep, std::size_t parties) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < parties; ++k) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) rest.push_back(k);
    }
    return rest;
}

inline void check_permutation(std::span<const std::size_t> perm, std::size_t parties) {
    if (perm.size() != parties) throw std::invalid_argument("permute_subsystems: permutation has wrong length");
    std::vector<bool> seen(parties, false);
    for (auto p : perm) {
        if (p >= parties || seen[p]) throw std::invalid_argument("permute_subsystems: malformed permutation");
        seen[p] = true;
    }
}

}  // namespace detail

/// Hermitian, unit-trace, positive semidefinite matrix over a list of subsystems.
class DensityMatrix {
public:
    /// Validates every invariant; the error message names the one violated.
    DensityMatrix(ComplexMatrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
        detail::check_dims(dims_, "DensityMatrix");
        if (!m_.is_square() || m_.rows() != total_dim(dims_)) {
            throw std::invalid_argument("DensityMatrix: matrix side does not equal the product of dims");
        }
        if (m_.hermitian_defect() > kHermitianTol) {
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian within 1e-10");
        }
        const cplx tr = m_.trace();
        if (std::abs(tr - 1.0) > kTraceTol) {
            throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1 within 1e-10");
        }
        spectrum_ = eigvals_hermitian(m_);
        if (spectrum_.front() < -kNegativeEigenvalueTol) {
            throw std::invalid_argument("DensityMatrix: eigenvalue " + std::to_string(spectrum_.front()) +
                                        " is below -1e-9 (not positive semidefinite)");
        }
    }

    /// Single-subsystem convenience.
    explicit DensityMatrix(ComplexMatrix m) : DensityMatrix(m, Dims{m.rows()}) {}

    const ComplexMatrix& matrix() const { return m_; }
    const Dims& dims() const { return dims_; }
    std::size_t dim() const { return m_.rows(); }
    std::size_t parties() const { return dims_.size(); }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    /// Ascending eigenvalues, computed once at construction.
    const std::vector<double>& spectrum() const { return spectrum_; }

    std::size_t numerical_rank(double cutoff = 1e-10) const {
        return static_cast<std::size_t>(
            std::count_if(spectrum_.begin(), spectrum_.end(), [&](double l) { return l > cutoff; }));
    }

    static DensityMatrix maximally_mixed(Dims dims) {
        const std::size_t n = total_dim(dims);
        return DensityMatrix(ComplexMatrix::identity(n) * cplx(1.0 / static_cast<double>(n)), std::move(dims));
    }

private:
    ComplexMatrix m_;
    Dims dims_;
    std::vector<double> spectrum_;
};

/// Normalized state vector over a list of subsystems.
class PureState {
public:
    PureState(std::vector<cplx> amplitudes, Dims dims) : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
        detail::check_dims(dims_, "PureState");
        if (amps_.size() != total_dim(dims_)) {
            throw std::invalid_argument("PureState: amplitude count does not equal the product of dims");
        }
        double norm2 = 0.0;
        for (const auto& a : amps_) norm2 += std::norm(a);
        if (std::abs(norm2 - 1.0) > kNormTol) {
            throw std::invalid_argument("PureState: squared norm is not 1 within 1e-10");
        }
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static PureState normalized(std::vector<cplx> amplitudes, Dims dims) {
        double norm2 = 0.0;
        for (const auto& a : amplitudes) norm2 += std::norm(a);
        if (norm2 <= 0.0) throw std::invalid_argument("PureState: zero vector cannot be normalized");
        const double s = 1.0 / std::sqrt(norm2);
        for (auto& a : amplitudes) a *= s;
        return PureState(std::move(amplitudes), std::move(dims));
    }

    /// Computational basis state |digits>.
    static PureState basis(Dims dims, std::span<const std::size_t> digits) {
        if (digits.size() != dims.size()) throw std::invalid_argument("PureState::basis: digit count mismatch");
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (digits[k] >= dims[k]) throw std::out_of_range("PureState::basis: digit out of range");
        }
        std::vector<cplx> amps(total_dim(dims));
        amps[detail::flatten(digits, dims)] = 1.0;
        return PureState(std::move(amps), std::move(dims));
    }

    const std::vector<cplx>& amplitudes() const { return amps_; }
    const Dims& dims() const { return dims_; }
    std::size_t dim() const { return amps_.size(); }
    std::size_t parties() const { return dims_.size(); }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    DensityMatrix density() const { return DensityMatrix(ComplexMatrix::outer(amps_), dims_); }

    /// Same amplitudes, different grouping of the tensor factors. Adjacent
    /// subsystems can be merged, e.g. {2,2,2,2} -> {2,2,4}.
    PureState regrouped(Dims dims) const {
        if (total_dim(dims) != dim()) throw std::invalid_argument("PureState::regrouped: total dimension differs");
        return PureState(amps_, std::move(dims));
    }

private:
    std::vector<cplx> amps_;
    Dims dims_;
};

inline PureState tensor(const PureState& a, const PureState& b) {
    std::vector<cplx> amps;
    amps.reserve(a.dim() * b.dim());
    for (const auto& x : a.amplitudes())
        for (const auto& y : b.amplitudes()) amps.push_back(x * y);
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(amps), std::move(dims));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

/// Reduced state on the subsystems in `keep` (strictly increasing), in their original order.
inline DensityMatrix partial_trace(const DensityMatrix& state, std::span<const std::size_t> keep) {
    detail::check_keep(keep, state.parties());
    const auto rest = detail::complement(keep, state.parties());
    const auto& dims = state.dims();
    const auto kept = detail::sub_index_table(dims, keep);
    const auto traced = detail::sub_index_table(dims, rest);

    Dims out_dims;
    for (auto k : keep) out_dims.push_back(dims[k]);
    const std::size_t n = state.dim();
    ComplexMatrix out(total_dim(out_dims), total_dim(out_dims));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (traced[i] == traced[j]) out(kept[i], kept[j]) += state(i, j);
        }
    return DensityMatrix(std::move(out), std::move(out_dims));
}

inline DensityMatrix partial_trace(const DensityMatrix& state, std::initializer_list<std::size_t> keep) {
    return partial_trace(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Reduced state of a pure state, computed as M M^dagger with M the
/// (kept x traced) reshaping of the amplitudes.
inline DensityMatrix partial_trace(const PureState& psi, std::span<const std::size_t> keep) {
    detail::check_keep(keep, psi.parties());
    const auto rest = detail::complement(keep, psi.parties());
    const auto& dims = psi.dims();
    const auto kept = detail::sub_index_table(dims, keep);
    const auto traced = detail::sub_index_table(dims, rest);

    Dims out_dims;
    for (auto k : keep) out_dims.push_back(dims[k]);
    Dims rest_dims;
    for (auto r : rest) rest_dims.push_back(dims[r]);
    const std::size_t dk = total_dim(out_dims);
    const std::size_t dr = rest.empty() ? 1 : total_dim(rest_dims);

    ComplexMatrix reshaped(dk, dr);
    for (std::size_t i = 0; i < psi.dim(); ++i) reshaped(kept[i], rest.empty() ? 0 : traced[i]) = psi[i];

    ComplexMatrix out(dk, dk);
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t b = a; b < dk; ++b) {
            cplx acc = 0.0;
            for (std::size_t r = 0; r < dr; ++r) acc += reshaped(a, r) * std::conj(reshaped(b, r));
            out(a, b) = acc;
            out(b, a) = std::conj(acc);
        }
    return DensityMatrix(std::move(out), std::move(out_dims));
}

inline DensityMatrix partial_trace(const PureState& psi, std::initializer_list<std::size_t> keep) {
    return partial_trace(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Reorders tensor factors: subsystem k of the result is subsystem perm[k] of the input.
inline DensityMatrix permute_subsystems(const DensityMatrix& state, std::span<const std::size_t> perm) {
    detail::check_permutation(perm, state.parties());
    const auto& dims = state.dims();
    Dims out_dims;
    for (auto p : perm) out_dims.push_back(dims[p]);
    const auto index = detail::sub_index_table(dims, perm);
    const std::size_t n = state.dim();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(index[i], index[j]) = state(i, j);
    return DensityMatrix(std::move(out), std::move(out_dims));
}

inline DensityMatrix permute_subsystems(const DensityMatrix& state, std::initializer_list<std::size_t> perm) {
    return permute_subsystems(state, std::span<const std::size_t>(perm.begin(), perm.size()));
}

inline PureState permute_subsystems(const PureState& psi, std::span<const std::size_t> perm) {
    detail::check_permutation(perm, psi.parties());
    const auto& dims = psi.dims();
    Dims out_dims;
    for (auto p : perm) out_dims.push_back(dims[p]);
    const auto index = detail::sub_index_table(dims, perm);
    std::vector<cplx> amps(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) amps[index[i]] = psi[i];
    return PureState(std::move(amps), std::move(out_dims));
}

inline PureState permute_subsystems(const PureState& psi, std::initializer_list<std::size_t> perm) {
    return permute_subsystems(psi, std::span<const std::size_t>(perm.begin(), perm.size()));
}

/// Minimal purification: rho = sum_i l_i |e_i><e_i| becomes
/// sum_i sqrt(l_i) |e_i>|i> with one ancilla level per eigenvalue above 1e-10.
/// A pure input gets an ancilla of dimension 1.
inline PureState purify(const DensityMatrix& rho) {
    constexpr double cutoff = 1e-10;
    const EigenSystem es = eig_hermitian(rho.matrix());
    std::vector<std::size_t> support;
    for (std::size_t i = es.values.size(); i-- > 0;) {
        if (es.values[i] > cutoff) support.push_back(i);
    }
    const std::size_t r = support.size();
    const std::size_t n = rho.dim();
    std::vector<cplx> amps(n * r);
    double norm2 = 0.0;
    for (std::size_t s = 0; s < r; ++s) {
        const double w = std::sqrt(es.values[support[s]]);
        for (std::size_t i = 0; i < n; ++i) {
            amps[i * r + s] = w * es.vectors(i, support[s]);
            norm2 += std::norm(amps[i * r + s]);
        }
    }
    // Dropping sub-cutoff eigenvalues loses at most n * 1e-10 of weight.
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= s;
    Dims dims = rho.dims();
    dims.push_back(r);
    return PureState(std::move(amps), std::move(dims));
}

/// Haar-distributed pure state: a normalized vector of i.i.d. complex Gaussians.
/// Deterministic for a given seed.
inline PureState haar_random_pure(Dims dims, std::uint64_t seed) {
    detail::check_dims(dims, "haar_random_pure");
    for (auto d : dims) {
        if (d < 2) throw std::invalid_argument("haar_random_pure: subsystem dimensions must be >= 2");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(total_dim(dims));
    for (auto& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = {re, im};
    }
    return PureState::normalized(std::move(amps), std::move(dims));
}

}  // namespace lii
