#include "cavsim/time_domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace cavsim {

namespace {

double max_rate(const SystemParams& p, const Detunings& d) {
    return std::max({p.kappa1, p.kappa2, p.gamma, p.lambda1, p.lambda2,
                     std::abs(d.delta1), std::abs(d.delta2), std::abs(d.delta_ge)});
}

using State3 = std::array<Complex, 3>;

State3 operator+(const State3& a, const State3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

State3 operator*(double s, const State3& a) { return {s * a[0], s * a[1], s * a[2]}; }

void append_row(std::string& out, double t, std::initializer_list<Complex> values) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", t);
    out += buf;
    for (Complex v : values) {
        std::snprintf(buf, sizeof(buf), ",%.12g,%.12g", v.real(), v.imag());
        out += buf;
    }
    out += '\n';
}

}  // namespace

double default_time_step(const SystemParams& params, const Pulse& pulse) {
    validate(params);
    const Detunings d = detunings(params, pulse.center_frequency);
    const double rate = std::max(max_rate(params, d), pulse.bandwidth_sigma);
    if (rate <= 0.0) fail(ErrorCode::InvalidArgument, "no time scale in parameters or pulse");
    return 0.001 / rate;
}

AmplitudeTrajectory integrate_driven(const SystemParams& params, double frame_frequency,
                                     const std::function<Complex(double)>& a_in,
                                     const std::function<Complex(double)>& b_in,
                                     Port reference,
                                     double t_start, double t_end, double dt,
                                     std::size_t record_stride) {
    validate(params);
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_end <= t_start) {
        fail(ErrorCode::InvalidArgument, "need t_start < t_end");
    }
    if (!std::isfinite(dt) || dt <= 0.0) fail(ErrorCode::InvalidArgument, "dt must be positive");

    const Detunings det = detunings(params, frame_frequency);
    const double rate = max_rate(params, det);
    if (rate > 0.0 && dt > 0.01 / rate) {
        fail(ErrorCode::StepTooLarge, "dt exceeds 0.01 / max rate");
    }

    const double span = t_end - t_start;
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
    const double h = span / static_cast<double>(n_steps);
    if (record_stride == 0) record_stride = std::max<std::size_t>(1, (n_steps + 1) / 100000);

    const Complex i(0.0, 1.0);
    const Complex gc = i * det.delta1 - 0.5 * params.kappa1;
    const Complex gd = i * det.delta2 - 0.5 * params.kappa2;
    const Complex ge = i * det.delta_ge - 0.5 * params.gamma;
    const double sk1 = std::sqrt(params.kappa1);
    const double sk2 = std::sqrt(params.kappa2);
    const double l1 = params.lambda1;
    const double l2 = params.lambda2;

    auto deriv = [&](const State3& y, Complex a, Complex b) -> State3 {
        return {gc * y[0] - sk1 * a - l1 * y[2],
                gd * y[1] - sk2 * b - l2 * y[2],
                ge * y[2] + l1 * y[0] + l2 * y[1]};
    };

    AmplitudeTrajectory traj;
    traj.params = params;
    traj.frame_frequency = frame_frequency;
    traj.injected_port = reference;
    const std::size_t reserve = n_steps / record_stride + 2;
    traj.time.reserve(reserve);
    for (auto* v : {&traj.c, &traj.d, &traj.e, &traj.a_in, &traj.b_in, &traj.a_out, &traj.b_out}) {
        v->reserve(reserve);
    }

    State3 y{0.0, 0.0, 0.0};
    double peak = 0.0;
    double final_amp = 0.0;

    for (std::size_t k = 0; k <= n_steps; ++k) {
        const double t = t_start + h * static_cast<double>(k);
        const Complex a = a_in(t);
        const Complex b = b_in(t);
        const Complex aout = a + sk1 * y[0];
        const Complex bout = b + sk2 * y[1];

        const double w = (k == 0 || k == n_steps) ? 0.5 * h : h;
        traj.int_a_in2 += w * std::norm(a);
        traj.int_b_in2 += w * std::norm(b);
        traj.int_a_out2 += w * std::norm(aout);
        traj.int_b_out2 += w * std::norm(bout);
        traj.int_e2 += w * std::norm(y[2]);
        const Complex ref = (reference == Port::One) ? a : b;
        traj.overlap_a += w * aout * std::conj(ref);
        traj.overlap_b += w * bout * std::conj(ref);
        traj.int_ref2 += w * std::norm(ref);

        const double amp = std::abs(y[0]) + std::abs(y[1]) + std::abs(y[2]);
        peak = std::max(peak, amp);
        final_amp = amp;

        if (k % record_stride == 0 || k == n_steps) {
            traj.time.push_back(t);
            traj.c.push_back(y[0]);
            traj.d.push_back(y[1]);
            traj.e.push_back(y[2]);
            traj.a_in.push_back(a);
            traj.b_in.push_back(b);
            traj.a_out.push_back(aout);
            traj.b_out.push_back(bout);
        }
        if (k == n_steps) break;

        const State3 k1 = deriv(y, a, b);
        const Complex am = a_in(t + 0.5 * h);
        const Complex bm = b_in(t + 0.5 * h);
        const State3 k2 = deriv(y + (0.5 * h) * k1, am, bm);
        const State3 k3 = deriv(y + (0.5 * h) * k2, am, bm);
        const State3 k4 = deriv(y + h * k3, a_in(t + h), b_in(t + h));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    if (peak > 0.0 && final_amp > 1e-6 * peak) {
        fail(ErrorCode::WindowTooShort,
             "system amplitudes have not decayed to 1e-6 of peak by t_end");
    }
    return traj;
}

AmplitudeTrajectory integrate_amplitudes(const SystemParams& params, const Pulse& pulse,
                                         double t_start, double t_end, double dt,
                                         std::size_t record_stride) {
    if (!std::isfinite(pulse.bandwidth_sigma) || pulse.bandwidth_sigma <= 0.0) {
        fail(ErrorCode::InvalidArgument, "pulse bandwidth_sigma must be positive");
    }
    if (t_start >= pulse.arrival_time - 5.0 / pulse.bandwidth_sigma) {
        fail(ErrorCode::InvalidArgument,
             "t_start must precede arrival_time - 5/bandwidth_sigma");
    }

    // Fourier-limited Gaussian: sigma_t * sigma_omega = 1/2, unit energy.
    const double sigma_t = 0.5 / pulse.bandwidth_sigma;
    const double norm = std::pow(2.0 * std::numbers::pi * sigma_t * sigma_t, -0.25);
    const double t0 = pulse.arrival_time;
    auto envelope = [norm, sigma_t, t0](double t) -> Complex {
        const double u = (t - t0) / (2.0 * sigma_t);
        return Complex(norm * std::exp(-u * u), 0.0);
    };
    auto zero = [](double) -> Complex { return 0.0; };

    if (pulse.port == Port::One) {
        return integrate_driven(params, pulse.center_frequency, envelope, zero, Port::One,
                                t_start, t_end, dt, record_stride);
    }
    return integrate_driven(params, pulse.center_frequency, zero, envelope, Port::Two,
                            t_start, t_end, dt, record_stride);
}

double energy_balance(const AmplitudeTrajectory& traj, const SystemParams& params) {
    return std::abs(traj.int_a_in2 + traj.int_b_in2 - traj.int_a_out2 - traj.int_b_out2 -
                    params.gamma * traj.int_e2);
}

ScatterCoeffs extract_scatter_coefficients(const AmplitudeTrajectory& traj, const Pulse& pulse) {
    const double kmin = std::min(traj.params.kappa1, traj.params.kappa2);
    if (pulse.bandwidth_sigma > kmin / 50.0 * (1.0 + 1e-12)) {
        fail(ErrorCode::TooBroadband,
             "pulse bandwidth exceeds min(kappa1, kappa2)/50; r, t not constant over the pulse");
    }
    if (traj.int_ref2 <= 0.0) {
        fail(ErrorCode::InvalidArgument, "reference envelope carries no energy");
    }
    const Complex port1 = traj.overlap_a / traj.int_ref2;
    const Complex port2 = traj.overlap_b / traj.int_ref2;
    if (traj.injected_port == Port::One) return {port1, port2};
    return {port2, port1};
}

std::string trajectory_csv(const AmplitudeTrajectory& traj, std::size_t stride) {
    if (stride == 0) stride = 1;
    std::string out = "t,re_C,im_C,re_D,im_D,re_E,im_E,re_Aout,im_Aout,re_Bout,im_Bout\n";
    for (std::size_t k = 0; k < traj.time.size(); k += stride) {
        append_row(out, traj.time[k],
                   {traj.c[k], traj.d[k], traj.e[k], traj.a_out[k], traj.b_out[k]});
    }
    return out;
}

}
