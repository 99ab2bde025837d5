#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qdephase/noise_model.hpp"

using namespace qdephase;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ou_autocorrelation", "[noise_model]") {
    CHECK_THAT(ou_autocorrelation(0.4, 0.0), WithinAbs(0.2, 1e-15));
    CHECK_THAT(ou_autocorrelation(1.0, 1.0), WithinAbs(0.183939720585721, 1e-14));
    CHECK_THAT(ou_autocorrelation(0.4, 1e6), WithinAbs(0.0, 1e-300));
    CHECK_THROWS_AS(ou_autocorrelation(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(ou_autocorrelation(-1.0, 1.0), domain_error);
}

TEST_CASE("ou_beta values", "[noise_model]") {
    CHECK(ou_beta(0.4, 0.0) == 0.0);
    CHECK_THAT(ou_beta(1.0, 1.0), WithinRel(0.367879441171442, 1e-13));
    CHECK_THAT(ou_beta(0.4, 10.0), WithinRel(7.54578909722184, 1e-13));
    CHECK_THAT(ou_beta(0.4, 2.0), WithinRel(0.623322410293054, 1e-13));
    CHECK_THROWS_AS(ou_beta(0.4, -1.0), domain_error);
    CHECK_THROWS_AS(ou_beta(0.0, 1.0), domain_error);
}

TEST_CASE("ou_beta matches the double integral of the autocorrelation", "[noise_model]") {
    // Midpoint quadrature of int_0^t int_0^t A(s - s') ds ds'.
    for (double g : {0.01, 0.4, 1.0, 3.0})
        for (double tau : {0.1, 1.0, 4.0}) {
            const int n = 800;
            const double h = tau / n;
            double q = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q += ou_autocorrelation(g, std::abs(i - j) * h);
            q *= h * h;
            // The diagonal cells carry the cusp of |s - s'|; O(h) error.
            CHECK_THAT(ou_beta(g, tau), WithinRel(q, 2e-3));
        }
}

TEST_CASE("ou_beta small-argument series is continuous with the closed form", "[noise_model]") {
    const double g = 0.5;
    const double tau = 2e-6 / g;  // just above the switch
    const double below = ou_beta(g, tau * 0.49);
    const double exact_below = g * std::pow(tau * 0.49, 2) / 2.0;
    CHECK_THAT(below, WithinRel(exact_below, 1e-5));
    CHECK_THAT(ou_beta(g, tau), WithinRel(g * tau * tau / 2.0, 1e-5));
    CHECK(ou_beta(1e-3, 1e-6) > 0.0);
}

TEST_CASE("ou_beta is monotone in tau and in g", "[noise_model]") {
    const std::vector<double> gs{0.001, 0.01, 0.1, 0.4, 1.0, 5.0};
    for (double g : gs) {
        double prev = 0.0;
        for (int k = 0; k <= 2000; ++k) {
            const double b = ou_beta(g, 0.01 * k);
            CHECK(b >= prev);
            prev = b;
        }
    }
    for (double tau : {0.5, 2.0, 20.0}) {
        double prev = 0.0;
        for (double g = 0.001; g < 10.0; g *= 1.1) {
            const double b = ou_beta(g, tau);
            CHECK(b >= prev);
            prev = b;
        }
    }
}

TEST_CASE("dephasing_factor modes", "[noise_model]") {
    noise_params np;
    for (auto c : {noise_config::cqn, noise_config::iqn})
        for (auto m : {averaging_mode::paper_literal, averaging_mode::gaussian_exact}) {
            np.config = c;
            np.mode = m;
            CHECK(dephasing_factor(np, 0.0) == 1.0);
        }

    np = {0.4, 3.0, noise_config::cqn, averaging_mode::paper_literal};
    CHECK_THAT(dephasing_factor(np, 0.5), WithinRel(std::exp(-1.0), 1e-15));  // lambda ignored
    np.config = noise_config::iqn;
    CHECK_THAT(dephasing_factor(np, 0.5), WithinRel(std::exp(-2.0), 1e-15));

    np = {0.4, 1.0, noise_config::iqn, averaging_mode::gaussian_exact};
    CHECK_THAT(dephasing_factor(np, 0.25), WithinRel(std::exp(-1.0), 1e-15));
    np.config = noise_config::cqn;
    np.lambda = 0.5;
    CHECK_THAT(dephasing_factor(np, 0.25), WithinRel(std::exp(-0.5), 1e-15));

    CHECK_THROWS_AS(dephasing_factor(np, -0.1), domain_error);
}

TEST_CASE("dephasing_factor is in (0, 1] and strictly decreasing", "[noise_model]") {
    for (auto c : {noise_config::cqn, noise_config::iqn})
        for (auto m : {averaging_mode::paper_literal, averaging_mode::gaussian_exact}) {
            const noise_params np{0.4, 0.7, c, m};
            double prev = dephasing_factor(np, 0.0);
            CHECK(prev == 1.0);
            for (int k = 1; k <= 200; ++k) {
                const double gamma = dephasing_factor(np, 0.05 * k);
                CHECK(gamma > 0.0);
                CHECK(gamma < prev);
                prev = gamma;
            }
        }
}

TEST_CASE("paper_literal matches gaussian_exact at the effective coupling", "[noise_model]") {
    for (auto c : {noise_config::cqn, noise_config::iqn}) {
        const noise_params lit{0.4, 1.0, c, averaging_mode::paper_literal};
        const noise_params ex{0.4, effective_lambda(lit), c, averaging_mode::gaussian_exact};
        for (double beta : {0.0, 0.3, 2.0}) CHECK(dephasing_factor(lit, beta) == dephasing_factor(ex, beta));
    }
}

TEST_CASE("parsing of config and mode names", "[noise_model]") {
    CHECK(parse_noise_config("CQN") == noise_config::cqn);
    CHECK(parse_noise_config("iqn") == noise_config::iqn);
    CHECK_THROWS_AS(parse_noise_config("XQN"), usage_error);
    CHECK(parse_averaging_mode("GaussianExact") == averaging_mode::gaussian_exact);
    CHECK(parse_averaging_mode("paper-literal") == averaging_mode::paper_literal);
    CHECK_THROWS_AS(parse_averaging_mode("exact"), usage_error);
}

TEST_CASE("sample_ou_trajectory structure", "[noise_model]") {
    const auto tr = sample_ou_trajectory(0.4, 0.01, 500, 42);
    REQUIRE(tr.values.size() == 500);
    REQUIRE(tr.integral.size() == 500);
    CHECK(tr.integral[0] == 0.0);
    double acc = 0.0;
    for (std::size_t k = 1; k < tr.values.size(); ++k) {
        acc += 0.5 * tr.dt * (tr.values[k - 1] + tr.values[k]);
        CHECK_THAT(tr.integral[k], WithinAbs(acc, 1e-12));
    }

    const auto again = sample_ou_trajectory(0.4, 0.01, 500, 42);
    CHECK(again.values == tr.values);
    const auto other = sample_ou_trajectory(0.4, 0.01, 500, 43);
    CHECK(other.values != tr.values);

    CHECK_THROWS_AS(sample_ou_trajectory(0.4, 0.0, 10, 1), usage_error);
    CHECK_THROWS_AS(sample_ou_trajectory(0.4, 0.01, 0, 1), usage_error);
    CHECK_THROWS_AS(sample_ou_trajectory(-0.4, 0.01, 10, 1), domain_error);
}

namespace {

// Statistics of chi_k, chi_{k+m} and the integral over many independent paths.
struct path_stats {
    double mean_k = 0, var_k = 0, cov_lag = 0, var_int = 0, var_cov = 0, var_var_int = 0;
    double phase_re = 0, phase_se = 0;
};

path_stats sample_stats(double g, double dt, std::size_t k, std::size_t m, std::size_t n_paths, double lambda) {
    std::vector<double> a(n_paths), b(n_paths), in(n_paths);
    std::vector<double> taus{static_cast<double>(k + m) * dt};
    for (std::size_t i = 0; i < n_paths; ++i) {
        auto rng = make_stream(99, i);
        ou_process proc(g, rng);
        for (std::size_t s = 0; s < k; ++s) proc.step(dt);
        a[i] = proc.value();
        for (std::size_t s = 0; s < m; ++s) proc.step(dt);
        b[i] = proc.value();
        in[i] = proc.integral();
    }
    const double n = static_cast<double>(n_paths);
    path_stats st;
    double s_cov2 = 0, s_int2 = 0, s_int4 = 0, s_cos = 0, s_cos2 = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        st.mean_k += a[i];
        st.var_k += a[i] * a[i];
        st.cov_lag += a[i] * b[i];
        s_cov2 += a[i] * a[i] * b[i] * b[i];
        s_int2 += in[i] * in[i];
        s_int4 += std::pow(in[i], 4);
        const double c = std::cos(4.0 * lambda * in[i]);
        s_cos += c;
        s_cos2 += c * c;
    }
    st.mean_k /= n;
    st.var_k /= n;
    st.cov_lag /= n;
    st.var_cov = (s_cov2 / n - st.cov_lag * st.cov_lag) / n;
    st.var_int = s_int2 / n;
    st.var_var_int = (s_int4 / n - st.var_int * st.var_int) / n;
    st.phase_re = s_cos / n;
    st.phase_se = std::sqrt((s_cos2 / n - st.phase_re * st.phase_re) / n);
    return st;
}

}  // namespace

TEST_CASE("OU sampler reproduces the stationary law and autocorrelation", "[noise_model][slow]") {
    const double g = 0.4, dt = 0.05;
    const std::size_t n = 100000, k = 20, m = 30;
    const auto st = sample_stats(g, dt, k, m, n, 0.5);

    CHECK(std::abs(st.mean_k) <= 3.0 * std::sqrt(g / 2.0 / n));
    CHECK_THAT(st.var_k, WithinRel(g / 2.0, 0.05));
    const double expected_cov = ou_autocorrelation(g, m * dt);
    CHECK(std::abs(st.cov_lag - expected_cov) <= 3.0 * std::sqrt(st.var_cov));
}

TEST_CASE("integrated OU phase has variance beta and Gaussian characteristic function", "[noise_model][slow]") {
    for (double g : {0.4, 1.0}) {
        const double dt = 0.01;
        const std::size_t steps = 200;  // tau = 2
        const double tau = steps * dt;
        const double lambda = 0.5;
        const auto st = sample_stats(g, dt, 0, steps, 100000, lambda);
        const double beta = ou_beta(g, tau);
        CHECK(std::abs(st.var_int - beta) <= 3.0 * std::sqrt(st.var_var_int));

        const noise_params np{g, lambda, noise_config::cqn, averaging_mode::gaussian_exact};
        CHECK(std::abs(st.phase_re - dephasing_factor(np, beta)) <= 3.0 * st.phase_se);
    }
}

TEST_CASE("integrate_ou_at handles ragged time grids", "[noise_model]") {
    const std::vector<double> taus{0.0, 0.013, 0.5, 0.5, 1.0};
    std::vector<double> out(taus.size());
    auto rng = make_stream(5, 0);
    ou_process proc(1.0, rng);
    integrate_ou_at(proc, taus, 0.01, out);
    CHECK(out[0] == 0.0);
    CHECK(out[2] == out[3]);
    CHECK(out[4] != out[2]);
}
