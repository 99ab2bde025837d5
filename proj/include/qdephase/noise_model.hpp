#pragma once

// Ornstein-Uhlenbeck dephasing noise.
//
// The classical field chi(t) is a stationary zero-mean Gaussian process with
// autocorrelation A(dt) = (g/2) exp(-g |dt|). Its double time integral
// beta(tau) = Var(int_0^tau chi) controls how fast coherences decay.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdephase/errors.hpp"

namespace qdephase {

// CQN: both qubits see one noise realization. IQN: each qubit has its own.
enum class noise_config { cqn, iqn };

// paper_literal reproduces the published averaged matrices, in which the
// coupling is absorbed: Gamma = exp(-2 beta) (CQN), exp(-4 beta) (IQN).
// gaussian_exact applies <exp(i phi)> = exp(-<phi^2>/2) to the accumulated
// phases: Gamma = exp(-8 lambda^2 beta) (CQN), exp(-4 lambda^2 beta) (IQN).
enum class averaging_mode { paper_literal, gaussian_exact };

inline std::string_view to_string(noise_config c) { return c == noise_config::cqn ? "CQN" : "IQN"; }
inline std::string_view to_string(averaging_mode m) {
    return m == averaging_mode::paper_literal ? "PaperLiteral" : "GaussianExact";
}

inline noise_config parse_noise_config(std::string_view s) {
    if (s == "CQN" || s == "cqn") return noise_config::cqn;
    if (s == "IQN" || s == "iqn") return noise_config::iqn;
    throw usage_error("config must be CQN or IQN, got '" + std::string(s) + "'");
}

inline averaging_mode parse_averaging_mode(std::string_view s) {
    if (s == "PaperLiteral" || s == "paper-literal" || s == "paper_literal") return averaging_mode::paper_literal;
    if (s == "GaussianExact" || s == "gaussian-exact" || s == "gaussian_exact") return averaging_mode::gaussian_exact;
    throw usage_error("mode must be PaperLiteral or GaussianExact, got '" + std::string(s) + "'");
}

struct noise_params {
    double g = 0.4;       // inverse memory time
    double lambda = 1.0;  // qubit-field coupling
    noise_config config = noise_config::cqn;
    averaging_mode mode = averaging_mode::paper_literal;

    void validate() const {
        if (!(g > 0.0) || !std::isfinite(g)) throw domain_error("noise parameter g must be > 0");
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw domain_error("coupling lambda must be > 0");
    }
};

inline double ou_autocorrelation(double g, double dt_abs) {
    if (!(g > 0.0)) throw domain_error("ou_autocorrelation: g must be > 0");
    if (!(dt_abs >= 0.0)) throw domain_error("ou_autocorrelation: |t - t'| must be >= 0");
    return 0.5 * g * std::exp(-g * dt_abs);
}

// (1/g)(g tau + exp(-g tau) - 1), with a series for small g tau where the
// closed form cancels catastrophically.
inline double ou_beta(double g, double tau) {
    if (!(g > 0.0)) throw domain_error("ou_beta: g must be > 0");
    if (!(tau >= 0.0)) throw domain_error("ou_beta: tau must be >= 0");
    const double x = g * tau;
    if (x < 1e-6) return g * tau * tau / 2.0 - g * g * tau * tau * tau / 6.0;
    return (x + std::expm1(-x)) / g;
}

// Coupling that makes gaussian_exact reproduce a given mode's decay rate.
// In paper_literal mode the printed exponents correspond to lambda = 1/2
// (CQN, 8 lambda^2 = 2) and lambda = 1 (IQN, 4 lambda^2 = 4).
inline double effective_lambda(const noise_params& np) {
    if (np.mode == averaging_mode::gaussian_exact) return np.lambda;
    return np.config == noise_config::cqn ? 0.5 : 1.0;
}

// Decay rate k in Gamma = exp(-k beta).
inline double dephasing_rate(const noise_params& np) {
    const double lam = effective_lambda(np);
    return (np.config == noise_config::cqn ? 8.0 : 4.0) * lam * lam;
}

inline double dephasing_factor(const noise_params& np, double beta) {
    if (!(beta >= 0.0)) throw domain_error("dephasing_factor: beta must be >= 0");
    return std::exp(-dephasing_rate(np) * beta);
}

// ---------------------------------------------------------------------------
// Trajectory sampling

// Per-trajectory generator: std::mt19937_64 seeded with
// splitmix64(splitmix64(seed) + stream). Hashing the seed first keeps
// nearby seeds from sharing shifted streams. Streams are independent of
// scheduling, so trajectory k is the same path no matter which worker
// draws it.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64{splitmix64(splitmix64(seed) + stream)};
}

struct ou_trajectory {
    double dt = 0.0;
    std::vector<double> values;    // chi at t_k = k dt
    std::vector<double> integral;  // trapezoidal int_0^{t_k} chi
};

// Exact-discretization OU propagator over arbitrary (nonnegative) steps.
// Draws chi_0 from the stationary law on construction.
class ou_process {
public:
    ou_process(double g, std::mt19937_64& rng) : g_(g), rng_(&rng) {
        if (!(g > 0.0)) throw domain_error("OU process: g must be > 0");
        chi_ = std::sqrt(0.5 * g_) * normal_(*rng_);
    }

    double value() const { return chi_; }
    double integral() const { return integral_; }

    // Advance by h, accumulating the integral with the trapezoid rule.
    void step(double h) {
        if (h <= 0.0) return;
        const double decay = std::exp(-g_ * h);
        const double sd = std::sqrt(-0.5 * g_ * std::expm1(-2.0 * g_ * h));
        const double next = chi_ * decay + sd * normal_(*rng_);
        integral_ += 0.5 * h * (chi_ + next);
        chi_ = next;
    }

private:
    double g_;
    std::mt19937_64* rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    double chi_ = 0.0;
    double integral_ = 0.0;
};

// n_steps samples chi_0 .. chi_{n_steps-1}; deterministic given seed.
inline ou_trajectory sample_ou_trajectory(double g, double dt, std::size_t n_steps, std::uint64_t seed) {
    if (!(dt > 0.0)) throw usage_error("sample_ou_trajectory: dt must be > 0");
    if (n_steps < 1) throw usage_error("sample_ou_trajectory: n_steps must be >= 1");
    auto rng = make_stream(seed, 0);
    ou_process proc(g, rng);

    ou_trajectory tr;
    tr.dt = dt;
    tr.values.reserve(n_steps);
    tr.integral.reserve(n_steps);
    tr.values.push_back(proc.value());
    tr.integral.push_back(0.0);
    for (std::size_t k = 1; k < n_steps; ++k) {
        proc.step(dt);
        tr.values.push_back(proc.value());
        tr.integral.push_back(proc.integral());
    }
    return tr;
}

// Integrals of one OU path at each of the (ascending) times in `taus`,
// stepping no further than dt at a time. Time grids need not be multiples
// of dt: the exact propagator handles the ragged final step.
inline void integrate_ou_at(ou_process& proc, std::span<const double> taus, double dt, std::span<double> out) {
    double t = 0.0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        while (taus[k] - t > dt) {
            proc.step(dt);
            t += dt;
        }
        proc.step(taus[k] - t);
        t = std::max(t, taus[k]);
        out[k] = proc.integral();
    }
}

}  // namespace qdephase
