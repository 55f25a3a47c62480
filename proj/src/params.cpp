#include "kuperberg/params.hpp"

#include <cmath>
#include <numbers>

#include "kuperberg/curves.hpp"

namespace kup {

namespace {
constexpr double two_pi = 2 * std::numbers::pi;
}

double wrap_angle(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0) y += two_pi;
    if (y >= two_pi) y = 0;
    return y;
}

plug_params validate(plug_params p) {
    if (!std::isfinite(p.a) || !(p.a > 0)) throw param_error("a must be positive");
    if (!(p.R > 0 && p.R < 1)) throw param_error("R out of (0,1)");
    if (!(p.b > 0 && p.b < 1)) throw param_error("b out of (0,1)");
    if (!(p.epsilon > 0)) throw param_error("epsilon must be positive");
    if (p.epsilon > p.b) throw param_error("epsilon exceeds b");
    if (!std::isfinite(p.delta) || !(p.delta > 0)) throw param_error("delta must be positive");
    if (!std::isfinite(p.alpha)) throw param_error("alpha must be finite");
    if (!std::isfinite(p.beta)) throw param_error("beta must be finite");
    p.alpha = wrap_angle(p.alpha);
    p.beta = wrap_angle(p.beta);
    return p;
}

// v_i -> -aR^2/(2 pi i)
double vertex_decay_constant(const plug_params& p) { return p.a * p.R * p.R / two_pi; }

// least squares of i*v_i against 1/i; the intercept is -p
double fit_vertex_decay(const plug_params& p, long i_lo, long i_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (long i = i_lo; i <= i_hi; ++i) {
        double x = 1.0 / double(i);
        double y = double(i) * vertex_level1(p, i);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icpt = (sy - slope * sx) / n;
    return -icpt;
}

derived_constants derive_constants(const plug_params& p) {
    derived_constants dc;
    double a = p.a, R = p.R;
    dc.C = (p.alpha - p.beta + a * (1 - R)) / two_pi;
    dc.p = vertex_decay_constant(p);
    dc.p_fit = fit_vertex_decay(p);
    if (std::abs(dc.p_fit - dc.p) > 1e-6 * dc.p)
        throw std::runtime_error("vertex decay fit disagrees with the small-s limit");
    dc.K = a * R * R / (2 * dc.p * dc.p);
    dc.K_width = a * R * R / 2;
    dc.C_floor = static_cast<long>(std::floor(dc.C));
    dc.K_floor = static_cast<long>(std::floor(dc.K));
    if (dc.K_floor < 1) throw std::runtime_error("K_floor < 1: incidence matrix degenerate");
    dc.N_eps = n_threshold(p, p.epsilon);
    dc.N_b = n_threshold(p, p.b);
    return dc;
}

}  // namespace kup
