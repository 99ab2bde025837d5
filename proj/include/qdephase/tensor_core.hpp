#pragma once

// Fixed-size complex linear algebra for one- and two-qubit operators.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit 1 the left Kronecker
// factor, so kron(a, b)(2i+k, 2j+l) = a(i,j) * b(k,l).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>

#include "qdephase/errors.hpp"

namespace qdephase {

using complex = std::complex<double>;

namespace tol {
inline constexpr double hermitian = 1e-12;       // DensityMatrix4 check
inline constexpr double trace = 1e-12;
inline constexpr double eigen_input = 1e-10;     // eigensolver precondition
inline constexpr double negative_clamp = 1e-10;  // round-off vs. genuine negativity
inline constexpr double jacobi_offdiag = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
}  // namespace tol

template <std::size_t N>
class matrix {
    static_assert(N == 2 || N == 4, "only qubit and two-qubit operators are supported");

public:
    static constexpr std::size_t dim = N;

    constexpr matrix() = default;

    static matrix identity() {
        matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static matrix diagonal(const std::array<complex, N>& d) {
        matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    // Row-major initializer: matrix<2>::from_rows({{a, b}, {c, d}}).
    static matrix from_rows(const std::array<std::array<complex, N>, N>& rows) {
        matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = rows[i][j];
        return m;
    }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

    const std::array<complex, N * N>& entries() const { return data_; }

    matrix& operator+=(const matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
        return *this;
    }
    matrix& operator-=(const matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    matrix& operator*=(complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend matrix operator+(matrix a, const matrix& b) { return a += b; }
    friend matrix operator-(matrix a, const matrix& b) { return a -= b; }
    friend matrix operator*(matrix a, complex s) { return a *= s; }
    friend matrix operator*(complex s, matrix a) { return a *= s; }

    friend matrix operator*(const matrix& a, const matrix& b) {
        matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const complex aik = a(i, k);
                if (aik == complex{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const matrix&, const matrix&) = default;

private:
    std::array<complex, N * N> data_{};
};

using matrix2 = matrix<2>;
using matrix4 = matrix<4>;

namespace pauli {
inline matrix2 identity() { return matrix2::identity(); }
inline matrix2 x() { return matrix2::from_rows({{{0.0, 1.0}, {1.0, 0.0}}}); }
inline matrix2 y() { return matrix2::from_rows({{{0.0, complex{0.0, -1.0}}, {complex{0.0, 1.0}, 0.0}}}); }
inline matrix2 z() { return matrix2::from_rows({{{1.0, 0.0}, {0.0, -1.0}}}); }
}  // namespace pauli

template <std::size_t N>
matrix<N> adjoint(const matrix<N>& m) {
    matrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

// Entry-wise complex conjugate (not the adjoint).
template <std::size_t N>
matrix<N> conjugate(const matrix<N>& m) {
    matrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(i, j));
    return r;
}

template <std::size_t N>
complex trace(const matrix<N>& m) {
    complex t{};
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

template <std::size_t N>
double max_abs_diff(const matrix<N>& a, const matrix<N>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

template <std::size_t N>
double hermiticity_defect(const matrix<N>& m) {
    return max_abs_diff(m, adjoint(m));
}

template <std::size_t N>
bool all_finite(const matrix<N>& m) {
    return std::all_of(m.entries().begin(), m.entries().end(),
                       [](const complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

inline matrix4 kron(const matrix2& a, const matrix2& b) {
    matrix4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

// D * m * D^dagger for diagonal D given by its entries. Cheaper than two
// dense products and exact in the sense that (i, j) and (j, i) stay
// conjugates of each other bit for bit.
inline matrix4 conjugate_by_diagonal(const matrix4& m, const std::array<complex, 4>& d) {
    matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = d[i] * m(i, j) * std::conj(d[j]);
    return r;
}

enum class subsystem { first = 1, second = 2 };

inline subsystem subsystem_from_index(int index) {
    if (index == 1) return subsystem::first;
    if (index == 2) return subsystem::second;
    throw usage_error("subsystem index must be 1 or 2, got " + std::to_string(index));
}

// Reduced state of the kept qubit.
inline matrix2 partial_trace(const matrix4& rho, subsystem keep) {
    matrix2 r;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t t = 0; t < 2; ++t) {
                if (keep == subsystem::first)
                    r(a, b) += rho(2 * a + t, 2 * b + t);
                else
                    r(a, b) += rho(2 * t + a, 2 * t + b);
            }
    return r;
}

template <std::size_t N>
struct eigensystem {
    std::array<double, N> values{};  // descending
    matrix<N> vectors;               // column k pairs with values[k]
};

namespace detail {

template <std::size_t N>
double offdiag_norm(const matrix<N>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

template <std::size_t N>
matrix<N> checked_symmetrize(const matrix<N>& m) {
    if (!all_finite(m)) throw domain_error("eigensolver input has non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > tol::eigen_input)
        throw domain_error("eigensolver input is not Hermitian (max |M - M^dagger| = " + std::to_string(defect) + ")");
    return (m + adjoint(m)) * complex{0.5};
}

}  // namespace detail

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// (p, q) with a diagonal unitary, then applies the real symmetric rotation
// that zeroes it. Converged when the off-diagonal Frobenius norm drops below
// tol::jacobi_offdiag.
template <std::size_t N>
eigensystem<N> hermitian_eigensystem(const matrix<N>& m) {
    matrix<N> a = detail::checked_symmetrize(m);
    matrix<N> v = matrix<N>::identity();

    int sweep = 0;
    for (; sweep < tol::jacobi_max_sweeps; ++sweep) {
        if (detail::offdiag_norm(a) < tol::jacobi_offdiag) break;
        for (std::size_t p = 0; p + 1 < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                const complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // g = diag(1, .., conj(phase) at q, ..) * real rotation
                matrix<N> g = matrix<N>::identity();
                g(p, p) = c;
                g(p, q) = s;
                g(q, p) = -s * std::conj(phase);
                g(q, q) = c * std::conj(phase);

                a = adjoint(g) * a * g;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                v = v * g;
            }
    }
    if (detail::offdiag_norm(a) >= tol::jacobi_offdiag)
        throw domain_error("Jacobi eigensolver did not converge in " + std::to_string(tol::jacobi_max_sweeps) + " sweeps");

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    eigensystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const matrix<N>& m) {
    return hermitian_eigensystem(m).values;
}

// Round-off negatives in [-tol::negative_clamp, 0) become 0; anything more
// negative is a positivity_error.
template <std::size_t N>
std::array<double, N> clamp_spectrum(std::array<double, N> values) {
    for (auto& x : values) {
        if (x < -tol::negative_clamp)
            throw positivity_error("negative eigenvalue " + std::to_string(x) + " in a density matrix");
        if (x < 0.0) x = 0.0;
    }
    return values;
}

// f(M) = V f(Lambda) V^dagger for Hermitian M.
template <std::size_t N, class F>
matrix<N> hermitian_function(const matrix<N>& m, F&& f) {
    const auto es = hermitian_eigensystem(m);
    matrix<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const double fk = f(es.values[k]);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) += es.vectors(i, k) * fk * std::conj(es.vectors(j, k));
    }
    return r;
}

// A validated two-qubit state: Hermitian, unit trace, positive semidefinite,
// finite. Construction is the only way to get one, so every instance in the
// program satisfies the invariants.
class density_matrix4 {
public:
    explicit density_matrix4(const matrix4& m) : m_(m) { validate(m_); }

    const matrix4& matrix() const { return m_; }
    const complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    std::array<double, 4> spectrum() const { return clamp_spectrum(hermitian_eigenvalues(m_)); }

    static void validate(const matrix4& m) {
        if (!all_finite(m)) throw domain_error("density matrix has non-finite entries");
        const double herm = hermiticity_defect(m);
        if (herm > tol::hermitian)
            throw domain_error("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
        const complex tr = trace(m);
        if (std::abs(tr - 1.0) > tol::trace)
            throw domain_error("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
        clamp_spectrum(hermitian_eigenvalues(m));
    }

private:
    matrix4 m_;
};

}  // namespace qdephase
