#pragma once

// Two non-interacting qubits, each with H_n(t) = kappa I + lambda chi_n(t) sigma_z,
// prepared in a Werner state and dephased by OU noise.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "qdephase/errors.hpp"
#include "qdephase/noise_model.hpp"
#include "qdephase/parallel.hpp"
#include "qdephase/tensor_core.hpp"

namespace qdephase {

struct werner_params {
    double p = 1.0;      // purity, 0 <= p <= 1
    double kappa = 0.0;  // single-qubit energy; drops out of every averaged quantity

    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) throw domain_error("purity p must lie in [0, 1]");
    }
};

enum class provenance { deterministic, analytic_averaged, monte_carlo_averaged };

inline std::string_view to_string(provenance p) {
    switch (p) {
        case provenance::deterministic: return "Deterministic";
        case provenance::analytic_averaged: return "AnalyticAveraged";
        case provenance::monte_carlo_averaged: return "MonteCarloAveraged";
    }
    return "?";
}

struct evolved_state {
    density_matrix4 rho;
    double tau = 0.0;
    provenance origin = provenance::deterministic;
};

// (|00> + |11>) / sqrt(2)
inline matrix4 bell_projector() {
    matrix4 m;
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

// X-shaped state with Werner diagonal ((1+p)/4, (1-p)/4, (1-p)/4, (1+p)/4)
// and anti-diagonal corners `corner` / conj(corner).
inline matrix4 werner_x_matrix(double p, complex corner) {
    matrix4 m;
    m(0, 0) = m(3, 3) = (1.0 + p) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 - p) / 4.0;
    m(0, 3) = corner;
    m(3, 0) = std::conj(corner);
    return m;
}

inline density_matrix4 werner_state(double p) {
    werner_params{p}.validate();
    return density_matrix4{werner_x_matrix(p, p / 2.0)};
}

// Diagonal of exp(-i int_0^t H) in terms of the accumulated phases
// kappa_t = kappa t and theta_n = lambda int_0^t chi_n. Sign pattern follows
// the published unitary, including the odd sign on the |00> entry.
inline std::array<complex, 4> unitary_phases(double kappa_t, double theta_a, double theta_b) {
    const complex i{0.0, 1.0};
    return {
        std::exp(i * (-2.0 * kappa_t + (theta_a + theta_b))),
        std::exp(-i * (2.0 * kappa_t + (-theta_a + theta_b))),
        std::exp(-i * (2.0 * kappa_t + (theta_a - theta_b))),
        std::exp(-i * (2.0 * kappa_t + (theta_a + theta_b))),
    };
}

// Unitary for constant chi over [0, t].
inline matrix4 unitary(double t, double kappa, double lambda, double chi_a, double chi_b) {
    if (!(t >= 0.0)) throw domain_error("unitary: t must be >= 0");
    return matrix4::diagonal(unitary_phases(kappa * t, lambda * chi_a * t, lambda * chi_b * t));
}

inline evolved_state evolve_deterministic(const werner_params& wp, double t, double lambda, double chi_a, double chi_b) {
    const auto rho0 = werner_state(wp.p);
    const matrix4 u = unitary(t, wp.kappa, lambda, chi_a, chi_b);
    return {density_matrix4{u * rho0.matrix() * adjoint(u)}, t, provenance::deterministic};
}

// Dephasing factor Gamma(tau) for the given noise.
inline double coherence_factor(const noise_params& np, double tau) {
    np.validate();
    return dephasing_factor(np, ou_beta(np.g, tau));
}

inline evolved_state averaged_state(const werner_params& wp, const noise_params& np, double tau) {
    wp.validate();
    if (!(tau >= 0.0)) throw domain_error("averaged_state: tau must be >= 0");
    const double gamma = coherence_factor(np, tau);
    return {density_matrix4{werner_x_matrix(wp.p, wp.p / 2.0 * gamma)}, tau, provenance::analytic_averaged};
}

// ---------------------------------------------------------------------------
// Monte Carlo ensemble averaging

struct mc_settings {
    std::size_t n_traj = 100000;
    double dt = 0.01;
    std::uint64_t seed = 20240601;
    unsigned workers = 1;

    void validate() const {
        if (n_traj < 100) throw usage_error("n_traj must be >= 100");
        if (!(dt > 0.0)) throw usage_error("dt must be > 0");
    }
};

struct mc_state {
    evolved_state state;
    matrix4 std_error;  // per entry: SE of real part + i SE of imaginary part
    std::size_t n_traj = 0;
};

namespace detail {

// Trajectories are processed in fixed blocks; per-block sums are combined
// with a pairwise tree so the result does not depend on how blocks were
// scheduled across workers.
inline constexpr std::size_t mc_block_size = 1024;

struct mc_moments {
    std::vector<matrix4> sum;
    std::vector<std::array<double, 32>> sum_sq;  // re^2 and im^2 per entry

    explicit mc_moments(std::size_t n = 0) : sum(n), sum_sq(n, std::array<double, 32>{}) {}

    mc_moments& operator+=(const mc_moments& o) {
        for (std::size_t k = 0; k < sum.size(); ++k) {
            sum[k] += o.sum[k];
            for (std::size_t e = 0; e < 32; ++e) sum_sq[k][e] += o.sum_sq[k][e];
        }
        return *this;
    }
};

}  // namespace detail

// Brute-force ensemble average of U rho0 U^dagger over sampled OU paths at
// each time in `taus` (ascending, >= 0). CQN shares one path between the
// qubits; IQN draws two independent paths. Trajectory k uses stream
// 2k (qubit a) and 2k + 1 (qubit b).
inline std::vector<mc_state> mc_averaged_series(const werner_params& wp, const noise_params& np,
                                                std::span<const double> taus, const mc_settings& mc) {
    wp.validate();
    np.validate();
    mc.validate();
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (!(taus[k] >= 0.0)) throw domain_error("Monte Carlo times must be >= 0");
        if (k > 0 && taus[k] < taus[k - 1]) throw usage_error("Monte Carlo times must be ascending");
    }

    const double lam = effective_lambda(np);
    // The path itself is sampled exactly; dt only sets the quadrature step
    // of the phase integral, which must resolve the memory time 1/g.
    const double dt = std::min(mc.dt, 0.1 / np.g);
    const matrix4 rho0 = werner_state(wp.p).matrix();
    const std::size_t n_tau = taus.size();
    const std::size_t n_blocks = (mc.n_traj + detail::mc_block_size - 1) / detail::mc_block_size;

    auto run_block = [&](std::size_t b) {
        detail::mc_moments acc(n_tau);
        std::vector<double> int_a(n_tau), int_b(n_tau);
        const std::size_t first = b * detail::mc_block_size;
        const std::size_t last = std::min(mc.n_traj, first + detail::mc_block_size);
        for (std::size_t k = first; k < last; ++k) {
            auto rng_a = make_stream(mc.seed, 2 * k);
            ou_process path_a(np.g, rng_a);
            integrate_ou_at(path_a, taus, dt, int_a);
            if (np.config == noise_config::iqn) {
                auto rng_b = make_stream(mc.seed, 2 * k + 1);
                ou_process path_b(np.g, rng_b);
                integrate_ou_at(path_b, taus, dt, int_b);
            } else {
                int_b = int_a;
            }
            for (std::size_t j = 0; j < n_tau; ++j) {
                const auto d = unitary_phases(wp.kappa * taus[j], lam * int_a[j], lam * int_b[j]);
                const matrix4 rho = conjugate_by_diagonal(rho0, d);
                acc.sum[j] += rho;
                for (std::size_t e = 0; e < 16; ++e) {
                    const complex z = rho.entries()[e];
                    acc.sum_sq[j][2 * e] += z.real() * z.real();
                    acc.sum_sq[j][2 * e + 1] += z.imag() * z.imag();
                }
            }
        }
        return acc;
    };

    std::vector<detail::mc_moments> blocks(n_blocks);
    parallel_for(n_blocks, mc.workers, [&](std::size_t b) { blocks[b] = run_block(b); });
    detail::mc_moments total = pairwise_reduce(std::move(blocks), detail::mc_moments(n_tau));

    const double n = static_cast<double>(mc.n_traj);
    std::vector<mc_state> out;
    out.reserve(n_tau);
    for (std::size_t j = 0; j < n_tau; ++j) {
        matrix4 mean = total.sum[j] * complex{1.0 / n};
        matrix4 se;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                const std::size_t e = 4 * r + c;
                const complex m = mean(r, c);
                const double var_re = std::max(0.0, total.sum_sq[j][2 * e] / n - m.real() * m.real());
                const double var_im = std::max(0.0, total.sum_sq[j][2 * e + 1] / n - m.imag() * m.imag());
                se(r, c) = complex{std::sqrt(var_re / (n - 1.0)), std::sqrt(var_im / (n - 1.0))};
            }
        // Averages of exactly Hermitian samples are Hermitian up to summation
        // order; make them exactly so before validation.
        mean = (mean + adjoint(mean)) * complex{0.5};
        out.push_back({evolved_state{density_matrix4{mean}, taus[j], provenance::monte_carlo_averaged}, se, mc.n_traj});
    }
    return out;
}

inline mc_state mc_averaged_state(const werner_params& wp, const noise_params& np, double tau, const mc_settings& mc) {
    const double taus[] = {tau};
    return mc_averaged_series(wp, np, taus, mc).front();
}

}  // namespace qdephase
