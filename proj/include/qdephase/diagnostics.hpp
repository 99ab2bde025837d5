#pragma once

// The published closed-form expressions for U(tau) and C(tau), transcribed
// term by term (natural logarithms). They are kept for side-by-side
// comparison plots only: for 0 < p < 1 they disagree with the Wootters
// concurrence and with the entropies computed from the averaged state, and
// several radicands and logarithm arguments go negative, yielding NaN.
// Nothing in the sweep pipeline consumes them.

#include <cmath>
#include <numbers>

namespace qdephase::diagnostics {

// ---- common noise, decay e^{-n^2 beta / 2}; n = 2 reproduces exp(-2 beta)

struct cqn_terms {
    double t1, t2, t3, t4, t5;
};

inline cqn_terms published_cqn_terms(double p, double beta, double n = 2.0) {
    const double x = std::exp(-0.5 * n * n * beta);
    const double ix = 1.0 / x;
    const double log16 = std::log(16.0);
    return {
        -4.0 * std::atanh(x) - 2.0 * std::log(1.0 - 2.0 * x + p) + 2.0 * std::log(1.0 + 2.0 * x + p),
        -log16 - 2.0 * std::log(0.25 - 0.25 * x) - 2.0 * std::log(1.0 + x) - 2.0 * (1.0 + p) * std::log(1.0 + p),
        (1.0 + p) * std::log(1.0 - 2.0 * x + p) + (1.0 + p) * std::log(1.0 + 2.0 * x + p),
        std::sqrt(x * (-2.0 + ix + ix * p)),
        std::sqrt(x * (2.0 + ix + ix * p)),
    };
}

inline double published_cqn_tightness(double p, double beta, double n = 2.0) {
    const double x = std::exp(-0.5 * n * n * beta);
    const auto t = published_cqn_terms(p, beta, n);
    return x * (t.t1 + (t.t2 + t.t3) / x) / std::log(16.0);
}

inline double published_cqn_concurrence(double p, double beta, double n = 2.0) {
    const auto t = published_cqn_terms(p, beta, n);
    return -std::sqrt(1.0 - p) - 0.5 * t.t4 + 0.5 * t.t5;
}

// ---- independent noise, decay e^{-4 beta}

struct iqn_terms {
    double u1, u2, u3, u4;
};

inline iqn_terms published_iqn_terms(double p, double beta) {
    const double y = std::exp(-4.0 * beta);
    return {
        2.0 * std::atanh(y * p) + std::log(1.0 + p - 2.0 * y * p) - std::log(1.0 + p + 2.0 * y * p),
        -2.0 * (1.0 + p) * std::log(1.0 + p) + (1.0 + p) * std::log(1.0 + p - 2.0 * y * p),
        std::log(1.0 - y * p) + std::log(1.0 + y * p),
        (1.0 + p) * std::log(1.0 + p + 2.0 * y * p),
    };
}

inline double published_iqn_tightness(double p, double beta) {
    const double y = std::exp(-4.0 * beta);
    const auto u = published_iqn_terms(p, beta);
    return y * (-2.0 * p * u.u1 + (u.u2 - 2.0 * u.u3 + u.u4) / y) / std::log(16.0);
}

inline double published_iqn_concurrence(double p, double beta) {
    const double y = std::exp(-4.0 * beta);
    return -std::sqrt(1.0 - p) - 0.5 * std::sqrt(1.0 + p - 2.0 * y * p) +
           0.5 * std::sqrt(y * (1.0 / y + 2.0 * p + p / y));
}

}  // namespace qdephase::diagnostics
