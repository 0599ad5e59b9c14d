#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "cavsim/time_domain.hpp"

using namespace cavsim;

namespace {

SystemParams symmetric(double kappa, double gamma, double lambda) {
    SystemParams p;
    p.kappa1 = p.kappa2 = kappa;
    p.gamma = gamma;
    p.lambda1 = p.lambda2 = lambda;
    return p;
}

struct OracleRun {
    AmplitudeTrajectory traj;
    Pulse pulse;
};

// Narrowband probe pulse centered at omega1 + delta; window of +-6/sigma.
// The systematic extraction error is ~ r'' sigma^2 / 2, so sigma has to sit
// well below the narrowest spectral feature (set by kappa or gamma).
OracleRun probe(const SystemParams& params, double delta, double sigma_frac = 1.0 / 200.0,
                double dt_factor = 0.006, Port port = Port::One) {
    Pulse pulse;
    pulse.center_frequency = params.omega1 + delta;
    const double feature = std::min({params.kappa1, params.kappa2,
                                     params.gamma > 0 ? params.gamma : params.kappa1});
    pulse.bandwidth_sigma = sigma_frac * feature;
    pulse.arrival_time = 0.0;
    pulse.port = port;
    const double half = 6.0 / pulse.bandwidth_sigma;
    const double dt = default_time_step(params, pulse) * (dt_factor / 0.001);
    return {integrate_amplitudes(params, pulse, -half, half, dt), pulse};
}

}  // namespace

TEST_CASE("zero input leaves the system dark") {
    const SystemParams p = symmetric(1.0, 0.7, 1.3);
    auto zero = [](double) { return Complex(0.0); };
    const AmplitudeTrajectory traj = integrate_driven(p, 0.0, zero, zero, Port::One, 0.0, 50.0, 1e-3);
    for (std::size_t k = 0; k < traj.time.size(); ++k) {
        CHECK(std::abs(traj.c[k]) == 0.0);
        CHECK(std::abs(traj.d[k]) == 0.0);
        CHECK(std::abs(traj.e[k]) == 0.0);
        CHECK(std::abs(traj.a_out[k]) == 0.0);
        CHECK(std::abs(traj.b_out[k]) == 0.0);
    }
    CHECK(energy_balance(traj, p) == 0.0);
}

TEST_CASE("decoupled emitter: no transmission, unit reflection") {
    const SystemParams p = symmetric(1.0, 1.0, 0.0);
    const OracleRun run = probe(p, 0.0);

    for (std::size_t k = 0; k < run.traj.time.size(); ++k) {
        CHECK(std::abs(run.traj.b_out[k]) < 1e-12);
    }
    CHECK(std::abs(run.traj.int_a_out2 - run.traj.int_a_in2) < 1e-6);

    const ScatterCoeffs c = extract_scatter_coefficients(run.traj, run.pulse);
    CHECK(std::abs(c.r - Complex(-1.0, 0.0)) < 1e-3);
    CHECK(std::abs(c.t) < 1e-3);
    CHECK(energy_balance(run.traj, p) < 1e-6);
}

TEST_CASE("resonant coupled system reproduces r0 and t0") {
    const SystemParams p = symmetric(1.0, 1.0, 2.0);
    const OracleRun run = probe(p, 0.0);
    const ScatterCoeffs c = extract_scatter_coefficients(run.traj, run.pulse);
    CHECK(std::abs(c.r - Complex(-1.0 / 33.0, 0.0)) < 1e-3);
    CHECK(std::abs(c.t - Complex(32.0 / 33.0, 0.0)) < 1e-3);
    CHECK(energy_balance(run.traj, p) < 1e-6);
}

TEST_CASE("detuned probe matches the frequency-domain coefficients") {
    const SystemParams p = symmetric(1.0, 0.8, 1.4);
    const double delta = p.kappa1;
    const OracleRun run = probe(p, delta);
    const ScatterCoeffs from_time = extract_scatter_coefficients(run.traj, run.pulse);
    const ScatterCoeffs from_freq = scatter_coefficients(p, run.pulse.center_frequency);
    CHECK(std::abs(from_time.r - from_freq.r) < 1e-3);
    CHECK(std::abs(from_time.t - from_freq.t) < 1e-3);
    CHECK(energy_balance(run.traj, p) < 1e-6);
}

TEST_CASE("port-2 injection sees the swapped system") {
    SystemParams p = symmetric(1.0, 0.9, 1.2);
    p.kappa2 = 0.6;
    const OracleRun run = probe(p, 0.3, 1.0 / 60.0, 0.004, Port::Two);
    const ScatterCoeffs from_time = extract_scatter_coefficients(run.traj, run.pulse);
    const ScatterCoeffs from_freq =
        scatter_coefficients(swap_ports(p), run.pulse.center_frequency);
    CHECK(std::abs(from_time.r - from_freq.r) < 1e-3);
    CHECK(std::abs(from_time.t - from_freq.t) < 1e-3);
}

TEST_CASE("output arrays satisfy the input-output relation pointwise") {
    const SystemParams p = symmetric(1.0, 0.5, 0.9);
    const OracleRun run = probe(p, 0.4);
    const double sk1 = std::sqrt(p.kappa1);
    const double sk2 = std::sqrt(p.kappa2);
    for (std::size_t k = 0; k < run.traj.time.size(); ++k) {
        CHECK(std::abs(run.traj.a_out[k] - (run.traj.a_in[k] + sk1 * run.traj.c[k])) == 0.0);
        CHECK(std::abs(run.traj.b_out[k] - (run.traj.b_in[k] + sk2 * run.traj.d[k])) == 0.0);
    }
}

TEST_CASE("no loss channel when gamma vanishes") {
    const SystemParams p = symmetric(1.0, 0.0, 1.5);
    const OracleRun run = probe(p, 0.0);
    CHECK(energy_balance(run.traj, p) < 1e-6);
    CHECK(std::abs(run.traj.int_a_out2 + run.traj.int_b_out2 - run.traj.int_a_in2) < 1e-6);
}

TEST_CASE("doubling the drive doubles every amplitude exactly") {
    const SystemParams p = symmetric(1.0, 0.6, 1.1);
    auto envelope = [](double t) { return Complex(std::exp(-t * t / 100.0), 0.0); };
    auto doubled = [&](double t) { return 2.0 * envelope(t); };
    auto zero = [](double) { return Complex(0.0); };
    const AmplitudeTrajectory one =
        integrate_driven(p, 0.0, envelope, zero, Port::One, -60.0, 60.0, 1e-3);
    const AmplitudeTrajectory two =
        integrate_driven(p, 0.0, doubled, zero, Port::One, -60.0, 60.0, 1e-3);
    REQUIRE(one.time.size() == two.time.size());
    for (std::size_t k = 0; k < one.time.size(); ++k) {
        CHECK(two.c[k] == 2.0 * one.c[k]);
        CHECK(two.d[k] == 2.0 * one.d[k]);
        CHECK(two.e[k] == 2.0 * one.e[k]);
        CHECK(two.a_out[k] == 2.0 * one.a_out[k]);
        CHECK(two.b_out[k] == 2.0 * one.b_out[k]);
    }
}

TEST_CASE("halving dt leaves the extracted coefficients unchanged") {
    const SystemParams p = symmetric(1.0, 0.9, 1.8);
    const OracleRun coarse = probe(p, 0.5, 1.0 / 100.0, 0.006);
    const OracleRun fine = probe(p, 0.5, 1.0 / 100.0, 0.003);
    const ScatterCoeffs a = extract_scatter_coefficients(coarse.traj, coarse.pulse);
    const ScatterCoeffs b = extract_scatter_coefficients(fine.traj, fine.pulse);
    CHECK(std::abs(a.r - b.r) < 1e-6);
    CHECK(std::abs(a.t - b.t) < 1e-6);
}

TEST_CASE("step and window guards") {
    const SystemParams p = symmetric(1.0, 1.0, 2.0);
    Pulse pulse;
    pulse.center_frequency = 0.0;
    pulse.bandwidth_sigma = 0.02;
    pulse.arrival_time = 0.0;

    CHECK_THROWS_WITH_AS(integrate_amplitudes(p, pulse, -300.0, 300.0, 1.0),
                         doctest::Contains("StepTooLarge"), Error);
    // window ends at the pulse peak: amplitudes have not rung down
    CHECK_THROWS_WITH_AS(integrate_amplitudes(p, pulse, -300.0, 0.0, 1e-3),
                         doctest::Contains("WindowTooShort"), Error);
    // pulse support sticks out of the window
    CHECK_THROWS_AS(integrate_amplitudes(p, pulse, -100.0, 300.0, 1e-3), Error);
}

TEST_CASE("broadband pulses are rejected at extraction") {
    const SystemParams p = symmetric(1.0, 1.0, 1.0);
    Pulse pulse;
    pulse.center_frequency = 0.0;
    pulse.bandwidth_sigma = 0.1;  // kappa/10, way over kappa/50
    pulse.arrival_time = 0.0;
    const AmplitudeTrajectory traj = integrate_amplitudes(p, pulse, -80.0, 80.0, 1e-3);
    CHECK_THROWS_WITH_AS(extract_scatter_coefficients(traj, pulse),
                         doctest::Contains("TooBroadband"), Error);
}

TEST_CASE("random parameter sets agree with the frequency domain") {
    std::mt19937 rng(4321);
    std::uniform_real_distribution<double> ratio(0.5, 2.0);
    std::uniform_real_distribution<double> coupling(0.0, 5.0);
    std::uniform_real_distribution<double> detuning(-2.0, 2.0);
    for (int i = 0; i < 5; ++i) {
        SystemParams p;
        p.kappa1 = 1.0;
        p.kappa2 = ratio(rng);
        p.gamma = ratio(rng);
        p.lambda1 = p.lambda2 = coupling(rng) * std::sqrt(p.kappa1 * p.gamma);
        p.omega2 = detuning(rng);
        p.omega_ge = detuning(rng);
        const OracleRun run = probe(p, detuning(rng));
        const ScatterCoeffs from_time = extract_scatter_coefficients(run.traj, run.pulse);
        const ScatterCoeffs from_freq = scatter_coefficients(p, run.pulse.center_frequency);
        CHECK(std::abs(from_time.r - from_freq.r) < 1e-3);
        CHECK(std::abs(from_time.t - from_freq.t) < 1e-3);
        CHECK(energy_balance(run.traj, p) < 1e-6);
    }
}

TEST_CASE("trajectory CSV has the documented columns") {
    const SystemParams p = symmetric(1.0, 1.0, 0.0);
    const OracleRun run = probe(p, 0.0);
    const std::string csv = trajectory_csv(run.traj, run.traj.time.size() / 4 + 1);
    CHECK(csv.rfind("t,re_C,im_C,re_D,im_D,re_E,im_E,re_Aout,im_Aout,re_Bout,im_Bout\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 4);
}
