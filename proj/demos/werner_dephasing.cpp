// Concurrence and entropic uncertainty of a Werner state under common and
// independent OU dephasing, closed form next to a Monte Carlo estimate.

#include <cstdio>

#include "qdephase/qdephase.hpp"

int main() {
    using namespace qdephase;

    const werner_params wp{0.8, 0.0};
    const density_matrix4 rho0 = werner_state(wp.p);
    const mc_settings mc{20000, 0.01, 7, 1};

    std::printf("%-4s %5s %10s %10s %10s %10s %12s\n", "cfg", "tau", "L", "R", "C", "C(mc)", "corner(mc)");
    for (noise_config c : {noise_config::cqn, noise_config::iqn}) {
        const noise_params np{0.4, 0.5, c, averaging_mode::gaussian_exact};
        for (double tau : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const auto exact = measure(averaged_state(wp, np, tau).rho, rho0, tau);
            const auto sampled = mc_averaged_state(wp, np, tau, mc);
            std::printf("%-4s %5.2f %10.6f %10.6f %10.6f %10.6f %12.6f\n", std::string(to_string(c)).c_str(), tau,
                        exact.L, exact.R, exact.C, concurrence_wootters(sampled.state.rho),
                        sampled.state.rho(0, 3).real());
        }
    }
}
