#include <catch_amalgamated.hpp>

#include <cmath>

#include "qdephase/diagnostics.hpp"
#include "qdephase/measures.hpp"

using namespace qdephase;
using Catch::Matchers::WithinAbs;

TEST_CASE("published concurrence agrees with Wootters for the pure Bell state", "[diagnostics]") {
    CHECK_THAT(diagnostics::published_cqn_concurrence(1.0, 0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(diagnostics::published_iqn_concurrence(1.0, 0.0), WithinAbs(1.0, 1e-15));
}

TEST_CASE("published concurrence departs from Wootters for mixed states", "[diagnostics]") {
    // p = 0.5, no dephasing: Wootters gives 0.25.
    const double iqn = diagnostics::published_iqn_concurrence(0.5, 0.0);
    CHECK_THAT(iqn, WithinAbs(-0.270090756737727, 1e-12));
    CHECK(iqn < 0.0);
    CHECK_THAT(concurrence_xstate(0.5, 1.0), WithinAbs(0.25, 1e-15));

    // The common-noise form takes the square root of 1 + p - 2 Gamma < 0 here.
    CHECK(std::isnan(diagnostics::published_cqn_concurrence(0.5, 0.0)));
}

TEST_CASE("published tightness terms are transcribed consistently", "[diagnostics]") {
    // With n = 2 the common-noise decay is exp(-2 beta), as in the averaged matrix.
    const double beta = 0.3;
    const auto t = diagnostics::published_cqn_terms(1.0, beta);
    const double x = std::exp(-2.0 * beta);
    CHECK_THAT(t.t4, WithinAbs(std::sqrt(2.0 - 2.0 * x), 1e-14));
    CHECK_THAT(t.t5, WithinAbs(std::sqrt(2.0 + 2.0 * x), 1e-14));

    const double u_cqn = diagnostics::published_cqn_tightness(1.0, beta);
    const double u_iqn = diagnostics::published_iqn_tightness(1.0, beta);
    CHECK(std::isfinite(u_cqn));
    CHECK(std::isfinite(u_iqn));
}
