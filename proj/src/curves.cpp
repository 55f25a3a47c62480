#include "kuperberg/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace kup {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2 * pi;
constexpr double pole_guard = 1e-9;

double angle_diff(double x, double y) {
    double d = std::remainder(x - y, two_pi);
    return std::abs(d);
}

// state of the recursion after the whole word, evaluated at s
level_state state_at(const plug_params& p, const word& w, double s, bool guard_q) {
    level_state st{0.0, s};
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (guard_q && k > 0 && st.q > p.R) throw out_of_strip("intermediate q exceeds R");
        st = advance(p, w[k], st);
    }
    return st;
}

double f_from(const plug_params& p, long sym, level_state prev) {
    double x = prev.x + prev.q * prev.q;
    if (x == 0) return -pi;
    double T = return_time(p, sym, prev.q);
    return x * T / (p.R * p.R) - 2 * std::atan(p.R / x);
}

level_state prefix_state(const plug_params& p, const word& w, double s) {
    level_state st{0.0, s};
    for (std::size_t k = 0; k + 1 < w.size(); ++k) st = advance(p, w[k], st);
    return st;
}

double root_in(const plug_params& p, const word& w, double lo, double hi, double flo, double fhi) {
    auto f = [&](double s) { return f_from(p, w.back(), prefix_state(p, w, s)); };
    boost::uintmax_t it = 200;
    auto tol = [](double u, double v) { return std::abs(u - v) <= 2 * std::numeric_limits<double>::epsilon() * std::max(std::abs(u), std::abs(v)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, it);
    // keep the endpoint closest to zero of f
    double fa = std::abs(f(r.first)), fb = std::abs(f(r.second));
    return fa <= fb ? r.first : r.second;
}

}  // namespace

cyl_point wilson_outside(const plug_params& p, cyl_point pt, double t) {
    double top = -1 - p.R;
    double z1 = pt.z + t;
    constexpr double slack = 1e-12;
    if (pt.z < -2 - slack || pt.z > top + slack || z1 < -2 - slack || z1 > top + slack)
        throw out_of_strip("segment leaves the region below the critical strip");
    return {pt.r, wrap_angle(pt.theta + p.a * t), z1};
}

cyl_point wilson_inside(const plug_params& p, cyl_point pt, double t) {
    double rho = pt.r - 2;
    double zeta = pt.z + 1;
    if (!(rho > 0)) throw out_of_strip("inside flow needs r > 2");
    if (std::abs(zeta) > p.R * (1 + 1e-12)) throw out_of_strip("start point outside the critical strip");
    double phi = rho * t / (p.R * p.R) + std::atan(zeta / rho);
    if (std::abs(phi) >= pi / 2 - pole_guard) throw out_of_strip("orbit exits the strip before time t");
    double z1 = rho * std::tan(phi);
    if (std::abs(z1) > p.R * (1 + 1e-12)) throw out_of_strip("orbit exits the strip before time t");
    double f = (pt.z < 0) ? p.a : -p.a;
    return {pt.r, wrap_angle(pt.theta + f * t), -1 + z1};
}

cyl_point wilson_field(const plug_params& p, cyl_point pt) {
    double rho = pt.r - 2, zeta = pt.z + 1;
    double g = std::abs(zeta) <= p.R ? (rho * rho + zeta * zeta) / (p.R * p.R) : 1.0;
    double f = (pt.z < 0) ? p.a : -p.a;
    return {0.0, f, g};
}

cyl_point insertion_inverse(const plug_params& p, cyl_point pt) {
    double rho = pt.r - 2, zeta = pt.z + 1;
    if (angle_diff(pt.theta, p.beta) > 1e-9) throw out_of_strip("point not on the section angle");
    if (rho < -1e-15 || rho > p.b * (1 + 1e-12)) throw out_of_strip("point radially outside the section");
    if (std::abs(zeta) > p.R * (1 + 1e-12)) throw out_of_strip("point outside the critical strip");
    rho = std::max(rho, 0.0);
    return {2 + rho + zeta * zeta, wrap_angle(p.alpha - zeta), -2};
}

double return_time(const plug_params& p, long sym, double q_prev) {
    return (two_pi * double(sym) + p.beta - p.alpha + q_prev) / p.a + p.R - 1;
}

// q = x tan(xT/R^2 - atan(R/x)) written as -x cot(xT/R^2 + atan(x/R)), which
// is regular at x = 0
level_state advance(const plug_params& p, long sym, level_state st) {
    double R2 = p.R * p.R;
    double x = st.x + st.q * st.q;
    double T = return_time(p, sym, st.q);
    if (x == 0) return {0.0, -R2 / (T + p.R)};
    double y = x * T / R2 + std::atan(x / p.R);
    if (!(y < pi - pole_guard)) throw out_of_strip("tan argument at the pole");
    return {x, -x * std::cos(y) / std::sin(y)};
}

level_state q_eval(const plug_params& p, const word& w, double s) {
    if (w.empty()) throw std::invalid_argument("q_eval needs a non-empty word");
    if (std::abs(s) > p.R) throw out_of_strip("s outside [-R, R]");
    return state_at(p, w, s, true);
}

cyl_point curve_point(const plug_params& p, const word& w, double s) {
    if (std::abs(s) > p.R) throw out_of_strip("s outside [-R, R]");
    if (w.empty()) return {2.0, p.beta, -1 + s};
    level_state st = state_at(p, w, s, true);
    return {2 + st.x, p.beta, -1 + st.q};
}

double vertex_level1(const plug_params& p, long i) { return -p.R * p.R / (return_time(p, i, 0.0) + p.R); }

double vertex(const plug_params& p, const word& w) {
    if (w.empty()) throw std::invalid_argument("vertex needs a non-empty word");
    double v = vertex_level1(p, w[0]);
    if (v > p.R || v <= -p.R) throw out_of_strip("vertex leaves (-R, R]");
    if (w.size() == 1) return v;
    word tail(w.begin() + 1, w.end());
    double out = state_at(p, tail, v, true).q;
    return out;
}

double endpoint_fn(const plug_params& p, const word& w, double s) {
    if (w.empty()) throw std::invalid_argument("endpoint_fn needs a non-empty word");
    return f_from(p, w.back(), prefix_state(p, w, s));
}

endpoints solve_endpoints(const plug_params& p, const word& w, const endpoints& prefix) {
    if (w.empty()) throw std::invalid_argument("solve_endpoints needs a non-empty word");
    double f0 = endpoint_fn(p, w, 0.0);
    if (!(f0 < 0)) throw no_root("vertex above R: curve " + format_word(w) + " escaped");
    double fp = endpoint_fn(p, w, prefix.s_plus);
    double fm = endpoint_fn(p, w, prefix.s_minus);
    if (!(fp > 0) || !(fm > 0)) throw no_root("curve " + format_word(w) + " does not reach the top of the strip");
    endpoints e;
    e.s_plus = root_in(p, w, 0.0, prefix.s_plus, f0, fp);
    e.s_minus = root_in(p, w, prefix.s_minus, 0.0, fm, f0);
    return e;
}

endpoints solve_endpoints(const plug_params& p, const word& w) {
    if (w.empty()) throw std::invalid_argument("solve_endpoints needs a non-empty word");
    endpoints e{-p.R, p.R};
    word pre;
    for (long sym : w) {
        pre.push_back(sym);
        e = solve_endpoints(p, pre, e);
    }
    return e;
}

curve_domain domain_of(const plug_params& p, const word& w) {
    curve_domain d{{-p.R, p.R}, false, false};
    word pre;
    for (long sym : w) {
        pre.push_back(sym);
        double f0 = endpoint_fn(p, pre, 0.0);
        if (!(f0 < 0)) throw no_root("vertex above R: curve " + format_word(pre) + " escaped");
        double fp = endpoint_fn(p, pre, d.e.s_plus);
        double fm = endpoint_fn(p, pre, d.e.s_minus);
        d.reaches_plus = fp > 0;
        d.reaches_minus = fm > 0;
        if (d.reaches_plus) d.e.s_plus = root_in(p, pre, 0.0, d.e.s_plus, f0, fp);
        if (d.reaches_minus) d.e.s_minus = root_in(p, pre, d.e.s_minus, 0.0, fm, f0);
    }
    return d;
}

long escape_time(const plug_params& p, const word& w) {
    if (w.empty()) throw unbounded_escape("empty prefix: the level-0 curve never escapes");
    level_state st = state_at(p, w, 0.0, true);
    if (st.q > p.R) throw out_of_strip("prefix " + format_word(w) + " already escaped");
    auto escaped = [&](long m) { return f_from(p, m, st) > 0; };
    if (escaped(1)) return 0;
    long lo = 1, hi = 2;
    while (!escaped(hi)) {
        lo = hi;
        if (hi > (1L << 60)) throw unbounded_escape("escape search overflow");
        hi *= 2;
    }
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (escaped(mid))
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

long n_threshold(const plug_params& p, double width) {
    if (!(width > 0) || width > p.b) throw std::invalid_argument("width must lie in (0, b]");
    endpoints top{-p.R, p.R};
    auto ok = [&](long i) {
        try {
            endpoints e = solve_endpoints(p, word{i}, top);
            return e.s_plus * e.s_plus <= width;
        } catch (const no_root&) {
            return false;
        }
    };
    long last_fail = 0, first_ok = 0;
    for (long i = 1;; ++i) {
        if (ok(i)) {
            if (!first_ok) first_ok = i;
        } else {
            last_fail = i;
        }
        if (first_ok && i >= 2 * first_ok + 20) break;
        if (i > 100000000) throw std::runtime_error("threshold search did not terminate");
    }
    return last_fail + 1;
}

curve_record make_record(const plug_params& p, const word& w) {
    curve_record rec;
    rec.w = w;
    endpoints e = solve_endpoints(p, w);
    rec.s_minus = e.s_minus;
    rec.s_plus = e.s_plus;
    rec.vertex = vertex(p, w);
    rec.a_minus = state_at(p, w, e.s_plus, false).x;
    rec.a_plus = state_at(p, w, e.s_minus, false).x;
    rec.width = rec.a_plus - rec.a_minus;
    return rec;
}

std::vector<double> sample_grid(double s_minus, double s_plus, int n_points, double ratio) {
    if (n_points < 2) throw std::invalid_argument("need at least two samples");
    int n_neg = n_points / 2, n_pos = n_points - n_neg;
    std::vector<double> g;
    for (int k = 0; k < n_neg; ++k) g.push_back(s_minus * std::pow(ratio, k));
    for (int k = n_pos - 1; k >= 0; --k) g.push_back(s_plus * std::pow(ratio, k));
    std::sort(g.begin(), g.end());
    return g;
}

std::vector<cyl_point> sample_curve(const plug_params& p, const word& w, int n_points) {
    endpoints e = w.empty() ? endpoints{-p.R, p.R} : domain_of(p, w).e;
    std::vector<cyl_point> out;
    for (double s : sample_grid(e.s_minus, e.s_plus, n_points)) {
        if (w.empty()) {
            out.push_back({2.0, p.beta, -1 + s});
            continue;
        }
        level_state st = state_at(p, w, s, false);
        out.push_back({2 + st.x, p.beta, -1 + st.q});
    }
    return out;
}

}  // namespace kup
