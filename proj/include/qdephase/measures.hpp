#pragma once

// Entropic uncertainty with quantum memory, concurrence and the
// entanglement witness. All entropies are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qdephase/errors.hpp"
#include "qdephase/tensor_core.hpp"

namespace qdephase {

// -sum l log2 l over a spectrum, 0 log 0 = 0.
template <std::size_t N>
double entropy_of_spectrum(const std::array<double, N>& values) {
    double s = 0.0;
    for (double x : clamp_spectrum(values))
        if (x > 0.0) s -= x * std::log2(x);
    return s;
}

template <std::size_t N>
double von_neumann_entropy(const matrix<N>& rho) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho));
}

inline double von_neumann_entropy(const density_matrix4& rho) { return von_neumann_entropy(rho.matrix()); }

// Eigenprojectors of a two-level observable with distinct eigenvalues.
inline std::array<matrix2, 2> eigenprojectors(const matrix2& obs) {
    const auto es = hermitian_eigensystem(obs);
    if (std::abs(es.values[0] - es.values[1]) < 1e-12) throw domain_error("observable is degenerate");
    std::array<matrix2, 2> proj;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) proj[k](i, j) = es.vectors(i, k) * std::conj(es.vectors(j, k));
    return proj;
}

// State after measuring `obs` on qubit 1 and forgetting the outcome.
inline density_matrix4 post_measurement_state(const density_matrix4& rho, const matrix2& obs) {
    matrix4 out;
    for (const matrix2& pn : eigenprojectors(obs)) {
        const matrix4 op = kron(pn, pauli::identity());
        out += op * rho.matrix() * op;
    }
    return density_matrix4{(out + adjoint(out)) * complex{0.5}};
}

// Observables measured on qubit 1, and their complementarity
// c = max |<a_i|b_j>|^2 over eigenvectors.
class measurement_pair {
public:
    measurement_pair(const matrix2& a, const matrix2& b) : a_(a), b_(b) {
        check_observable(a_, "A");
        check_observable(b_, "B");
        const auto ea = hermitian_eigensystem(a_);
        const auto eb = hermitian_eigensystem(b_);
        double c = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                complex overlap{};
                for (std::size_t r = 0; r < 2; ++r) overlap += std::conj(ea.vectors(r, i)) * eb.vectors(r, j);
                c = std::max(c, std::norm(overlap));
            }
        c_ = c;
    }

    // sigma_x and sigma_z, c = 1/2.
    static measurement_pair standard() { return {pauli::x(), pauli::z()}; }

    const matrix2& a() const { return a_; }
    const matrix2& b() const { return b_; }
    double complementarity() const { return c_; }

private:
    static void check_observable(const matrix2& m, const char* name) {
        const auto v = hermitian_eigenvalues(m);  // throws unless Hermitian
        if (std::abs(v[0] - 1.0) > 1e-10 || std::abs(v[1] + 1.0) > 1e-10)
            throw domain_error(std::string("observable ") + name + " must have eigenvalues +1 and -1");
    }

    matrix2 a_, b_;
    double c_ = 1.0;
};

struct uncertainty {
    double lhs = 0.0;        // S(A|2) + S(B|2)
    double rhs = 0.0;        // S(1|2) + log2(1/c)
    double tightness = 0.0;  // lhs - rhs
};

inline uncertainty uncertainty_sides(const density_matrix4& rho, const measurement_pair& mp = measurement_pair::standard()) {
    const double s12 = von_neumann_entropy(rho);
    const double s2 = von_neumann_entropy(partial_trace(rho.matrix(), subsystem::second));
    const double sa2 = von_neumann_entropy(post_measurement_state(rho, mp.a()));
    const double sb2 = von_neumann_entropy(post_measurement_state(rho, mp.b()));
    uncertainty u;
    u.lhs = (sa2 - s2) + (sb2 - s2);
    u.rhs = s12 - s2 + std::log2(1.0 / mp.complementarity());
    u.tightness = u.lhs - u.rhs;
    return u;
}

// sigma_y (x) sigma_y rho* sigma_y (x) sigma_y
inline matrix4 spin_flip(const matrix4& rho) {
    const matrix4 yy = kron(pauli::y(), pauli::y());
    return yy * conjugate(rho) * yy;
}

// Wootters concurrence. The eigenvalues nu_i of rho * spin_flip(rho) are
// obtained from the Hermitian matrix sqrt(rho) spin_flip(rho) sqrt(rho),
// which has the same spectrum.
inline double concurrence_wootters(const density_matrix4& rho) {
    const matrix4 root = hermitian_function(rho.matrix(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const matrix4 h = root * spin_flip(rho.matrix()) * root;
    const auto nu = clamp_spectrum(hermitian_eigenvalues((h + adjoint(h)) * complex{0.5}));
    const double c = std::sqrt(nu[0]) - std::sqrt(nu[1]) - std::sqrt(nu[2]) - std::sqrt(nu[3]);
    return std::clamp(c, 0.0, 1.0);
}

// Closed form for the dephased Werner X-state: corners p Gamma / 2,
// populations (1 +- p)/4.
inline double concurrence_xstate(double p, double gamma) {
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("concurrence_xstate: p must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw domain_error("concurrence_xstate: gamma must lie in [0, 1]");
    return std::max(0.0, p * gamma - (1.0 - p) / 2.0);
}

// EW = -Tr[rho_t (I/2 - rho_0)] = Tr[rho_t rho_0] - 1/2. Positive values
// certify entanglement.
inline double entanglement_witness(const density_matrix4& rho_t, const density_matrix4& rho_0) {
    const complex tr = trace(rho_t.matrix() * rho_0.matrix());
    if (std::abs(tr.imag()) >= 1e-12) throw domain_error("entanglement witness has a nonzero imaginary part");
    return tr.real() - 0.5;
}

struct measure_record {
    double tau = 0.0;
    double L = 0.0;
    double R = 0.0;
    double U = 0.0;
    double C = 0.0;
    double EW = 0.0;
};

inline measure_record measure(const density_matrix4& rho, const density_matrix4& rho_0, double tau,
                              const measurement_pair& mp = measurement_pair::standard()) {
    const auto u = uncertainty_sides(rho, mp);
    return {tau, u.lhs, u.rhs, u.tightness, concurrence_wootters(rho), entanglement_witness(rho, rho_0)};
}

}  // namespace qdephase
