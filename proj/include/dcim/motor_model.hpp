#pragma once

// Steady-state evaluation of the seven-parameter double-cage induction motor
// equivalent circuit: series stator impedance feeding a rotor node where the
// magnetizing branch and two cage branches (r/s + jx each) sit in parallel.
// Everything here is pure and thread-safe.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcim {

using complexd = std::complex<double>;

// Manufacturer (nameplate) data. Torques in N*m, currents in A (phase RMS),
// voltage is line-to-line RMS, power in W.
struct Nameplate {
    double t_start = 0.0;
    double t_full_load = 0.0;
    double t_max = 0.0;
    double i_start = 0.0;
    double i_full_load = 0.0;
    double pf_full_load = 0.0;
    double s_full_load = 0.0;
    double v_line = 0.0;
    double freq = 0.0;
    double p_rated = 0.0;
    int pole_pairs = 0;

    double phase_voltage() const { return v_line / std::sqrt(3.0); }
    double electrical_speed() const { return 2.0 * std::numbers::pi * freq; }

    void validate() const {
        auto require_positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("nameplate: ") + name +
                                            " must be positive and finite");
        };
        require_positive(t_start, "t_start");
        require_positive(t_full_load, "t_full_load");
        require_positive(t_max, "t_max");
        require_positive(i_start, "i_start");
        require_positive(i_full_load, "i_full_load");
        require_positive(v_line, "v_line");
        require_positive(freq, "freq");
        require_positive(p_rated, "p_rated");
        if (!(s_full_load > 0.0 && s_full_load < 1.0))
            throw std::invalid_argument("nameplate: s_full_load must lie in (0,1)");
        if (!(pf_full_load > 0.0 && pf_full_load <= 1.0))
            throw std::invalid_argument("nameplate: pf_full_load must lie in (0,1]");
        if (t_max < t_full_load)
            throw std::invalid_argument("nameplate: t_max must dominate t_full_load");
        if (pole_pairs < 1)
            throw std::invalid_argument("nameplate: pole_pairs must be a positive integer");
    }
};

// The seven unknowns of the equivalent circuit. Canonical order everywhere
// (vectors, CSV files): r_s, x_sd, x_m, r_1, x_1d, r_2, x_2d.
// Note: some published tables label the stator resistance "R_1" and the cage
// resistances "R_1d"/"R_2d"; here r_s is always the stator, r_1/x_1d the
// first cage, r_2/x_2d the second.
struct CircuitParams {
    double r_s = 0.0;
    double x_sd = 0.0;
    double x_m = 0.0;
    double r_1 = 0.0;
    double x_1d = 0.0;
    double r_2 = 0.0;
    double x_2d = 0.0;

    static constexpr std::size_t count = 7;

    static constexpr std::array<const char*, count> names() {
        return {"r_s", "x_sd", "x_m", "r_1", "x_1d", "r_2", "x_2d"};
    }

    std::array<double, count> to_array() const {
        return {r_s, x_sd, x_m, r_1, x_1d, r_2, x_2d};
    }

    template <class Seq>
    static CircuitParams from_array(const Seq& a) {
        return CircuitParams{a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    void validate() const {
        const auto vals = to_array();
        const auto labels = names();
        for (std::size_t i = 0; i < count; ++i)
            if (!(vals[i] > 0.0) || !std::isfinite(vals[i]))
                throw std::invalid_argument(std::string("circuit params: ") + labels[i] +
                                            " must be positive and finite");
    }
};

// All circuit quantities at one slip.
struct SteadyState {
    double slip = 0.0;
    complexd z_parallel;
    complexd i_stator;
    complexd i_cage1;
    complexd i_cage2;
    double torque = 0.0;
    double power_factor = 0.0;
};

struct MaxTorque {
    double s_m = 0.0;
    double t_max = 0.0;
};

inline void require_motoring_slip(double slip) {
    if (!(slip > 0.0))
        throw std::domain_error("slip must be positive (motoring region)");
}

// One cage branch at the given slip: r/slip + jx.
inline complexd rotor_branch_impedance(double r, double x, double slip) {
    require_motoring_slip(slip);
    return {r / slip, x};
}

// Shunt (magnetizing) branch admittance. Positive-susceptance convention;
// the reference tables under data/ and the pinned test values assume it.
inline complexd magnetizing_admittance(double x_m) {
    return {0.0, 1.0 / x_m};
}

// Rotor-node impedance: magnetizing branch in parallel with both cages.
inline complexd parallel_impedance(const CircuitParams& p, double slip) {
    require_motoring_slip(slip);
    const complexd y = magnetizing_admittance(p.x_m) +
                       1.0 / rotor_branch_impedance(p.r_1, p.x_1d, slip) +
                       1.0 / rotor_branch_impedance(p.r_2, p.x_2d, slip);
    return 1.0 / y;
}

// Full phasor solution at one slip. Torque is the air-gap power over the
// synchronous mechanical speed: T = (3*pole_pairs/w_s) * sum |I_i|^2 r_i/s.
inline SteadyState steady_state(const CircuitParams& p, const Nameplate& n, double slip) {
    require_motoring_slip(slip);
    SteadyState out;
    out.slip = slip;
    out.z_parallel = parallel_impedance(p, slip);
    const complexd z_total = complexd{p.r_s, p.x_sd} + out.z_parallel;
    if (std::abs(z_total) < 1e-12)
        throw std::runtime_error("steady_state: total series impedance is singular");
    out.i_stator = n.phase_voltage() / z_total;
    const complexd node_voltage = out.z_parallel * out.i_stator;
    out.i_cage1 = node_voltage / rotor_branch_impedance(p.r_1, p.x_1d, slip);
    out.i_cage2 = node_voltage / rotor_branch_impedance(p.r_2, p.x_2d, slip);
    const double scale = 3.0 * static_cast<double>(n.pole_pairs) / n.electrical_speed();
    out.torque = scale * (std::norm(out.i_cage1) * p.r_1 / slip +
                          std::norm(out.i_cage2) * p.r_2 / slip);
    out.power_factor = std::cos(std::arg(z_total));
    return out;
}

// Lean torque-only path for search loops; algebraically identical to
// steady_state().torque through the air-gap identity T = k * Re(Zp) |I|^2.
inline double torque_at(const CircuitParams& p, const Nameplate& n, double slip) {
    require_motoring_slip(slip);
    const double inv_s = 1.0 / slip;
    // admittance of each cage branch, done with scalar arithmetic
    const double a1 = p.r_1 * inv_s, b1 = p.x_1d;
    const double a2 = p.r_2 * inv_s, b2 = p.x_2d;
    const double m1 = 1.0 / (a1 * a1 + b1 * b1);
    const double m2 = 1.0 / (a2 * a2 + b2 * b2);
    const double g = a1 * m1 + a2 * m2;
    const double b = -b1 * m1 - b2 * m2 + 1.0 / p.x_m;
    const double my = 1.0 / (g * g + b * b);
    const double zp_re = g * my;
    const double zp_im = -b * my;
    const double zt_re = p.r_s + zp_re;
    const double zt_im = p.x_sd + zp_im;
    const double v = n.phase_voltage();
    const double i_sq = v * v / (zt_re * zt_re + zt_im * zt_im);
    return 3.0 * static_cast<double>(n.pole_pairs) / n.electrical_speed() * zp_re * i_sq;
}

namespace detail {

constexpr double golden_ratio_conj = 0.6180339887498949;

// Golden-section maximization of torque on [lo, hi].
inline MaxTorque golden_max_torque(const CircuitParams& p, const Nameplate& n,
                                   double lo, double hi, double tol) {
    double a = lo, b = hi;
    double c = b - (b - a) * golden_ratio_conj;
    double d = a + (b - a) * golden_ratio_conj;
    double fc = torque_at(p, n, c);
    double fd = torque_at(p, n, d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * golden_ratio_conj;
            fc = torque_at(p, n, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * golden_ratio_conj;
            fd = torque_at(p, n, d);
        }
    }
    const double s = 0.5 * (a + b);
    return {s, torque_at(p, n, s)};
}

}  // namespace detail

// Peak of the torque-slip curve on (0, 1]: coarse 1000-point scan, then
// golden-section refinement to 1e-8 in slip. A double-cage curve can carry
// two humps, and a hump narrower than the grid step can hide between
// samples, so every grid-local maximum is bracketed and the best few are
// refined. A curve still rising at s = 1 reports the boundary point.
inline MaxTorque find_max_torque(const CircuitParams& p, const Nameplate& n) {
    constexpr int grid_points = 1000;
    constexpr double step = 1.0 / grid_points;
    constexpr double tol = 1e-8;
    std::array<double, grid_points + 1> t{};
    for (int j = 1; j <= grid_points; ++j)
        t[j] = torque_at(p, n, j * step);

    // grid-local maxima, best first (plateaus keep their first sample)
    std::vector<int> peaks;
    if (t[1] >= t[2])
        peaks.push_back(1);
    for (int j = 2; j < grid_points; ++j)
        if (t[j] > t[j - 1] && t[j] >= t[j + 1])
            peaks.push_back(j);
    if (t[grid_points] >= t[grid_points - 1])
        peaks.push_back(grid_points);
    std::sort(peaks.begin(), peaks.end(), [&t](int a, int b) { return t[a] > t[b]; });

    MaxTorque best{1.0, t[grid_points]};
    const std::size_t refine = std::min<std::size_t>(peaks.size(), 3);
    for (std::size_t k = 0; k < refine; ++k) {
        const int j = peaks[k];
        const double lo = (j == 1) ? 1e-9 : (j - 1) * step;
        const double hi = (j == grid_points) ? 1.0 : (j + 1) * step;
        const MaxTorque refined = detail::golden_max_torque(p, n, lo, hi, tol);
        if (refined.t_max > best.t_max)
            best = refined;
        if (t[j] > best.t_max)
            best = {j * step, t[j]};
    }
    const double boundary = t[grid_points];
    if (boundary >= best.t_max)
        return {1.0, boundary};
    return best;
}

// Lowest slip sampled by the curve emitters; avoids the r/s blow-up at s = 0.
constexpr double min_curve_slip = 1e-4;

inline std::vector<std::pair<double, double>> torque_curve(const CircuitParams& p,
                                                           const Nameplate& n,
                                                           int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("torque_curve: need at least 2 points");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double s = min_curve_slip +
                         (1.0 - min_curve_slip) * static_cast<double>(i) / (n_points - 1);
        out.emplace_back(s, torque_at(p, n, s));
    }
    return out;
}

inline std::vector<std::pair<double, double>> current_curve(const CircuitParams& p,
                                                            const Nameplate& n,
                                                            int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("current_curve: need at least 2 points");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double s = min_curve_slip +
                         (1.0 - min_curve_slip) * static_cast<double>(i) / (n_points - 1);
        out.emplace_back(s, std::abs(steady_state(p, n, s).i_stator));
    }
    return out;
}

}  // namespace dcim
