#include "kuperberg/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace kup::oracle {

namespace {

using ld = long double;
constexpr ld pi_l = std::numbers::pi_v<long double>;

struct lstate {
    ld x = 0, q = 0;
    bool valid = true;
};

// tan form, no shared code with the production recursion
lstate direct_state(const plug_params& p, const word& w, ld s) {
    const ld R = p.R, a = p.a;
    lstate st{0, s, true};
    if (fabsl(s) > R) {
        st.valid = false;
        return st;
    }
    ld comp = 0;  // Kahan term for the radial sum
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k > 0 && st.q > R) {
            st.valid = false;
            return st;
        }
        ld y = st.q * st.q - comp;
        ld t = st.x + y;
        comp = (t - st.x) - y;
        st.x = t;
        if (st.x <= 0) {
            st.valid = false;
            return st;
        }
        ld T = (2 * pi_l * ld(w[k]) + ld(p.beta) - ld(p.alpha) + st.q) / a + R - 1;
        ld phi = st.x * T / (R * R) - atanl(R / st.x);
        if (fabsl(phi) >= pi_l / 2) {
            st.valid = false;
            return st;
        }
        st.q = st.x * tanl(phi);
    }
    return st;
}

bool below_top(const plug_params& p, const word& w, ld s) {
    lstate st = direct_state(p, w, s);
    return st.valid && st.q < ld(p.R);
}

ld bisect(const plug_params& p, const word& w, ld inside, ld outside) {
    for (int it = 0; it < 200; ++it) {
        ld mid = 0.5L * (inside + outside);
        if (mid == inside || mid == outside) break;
        if (below_top(p, w, mid))
            inside = mid;
        else
            outside = mid;
    }
    lstate st = direct_state(p, w, outside);
    if (!st.valid) throw std::runtime_error("oracle: curve " + format_word(w) + " leaves its domain before the top");
    return 0.5L * (inside + outside);
}

ld scan_side(const plug_params& p, const word& w, int sign, long grid) {
    const ld h = ld(p.R) / ld(grid);
    ld prev = 0;
    for (long k = 1; k <= grid; ++k) {
        ld s = sign * h * ld(k);
        if (!below_top(p, w, s)) return bisect(p, w, prev, s);
        prev = s;
    }
    throw std::runtime_error("oracle: no crossing of the top for " + format_word(w));
}

double width_from(const plug_params& p, const word& w, ld s_minus, ld s_plus) {
    return double(direct_state(p, w, s_minus).x - direct_state(p, w, s_plus).x);
}

}  // namespace

long double q_direct(const plug_params& p, const word& w, long double s, bool* valid) {
    lstate st = direct_state(p, w, s);
    if (valid) *valid = st.valid;
    return st.valid ? st.q : std::numeric_limits<long double>::quiet_NaN();
}

std::pair<double, double> brute_endpoints(const plug_params& p, const word& w, long grid) {
    if (w.empty()) throw std::invalid_argument("oracle needs a non-empty word");
    ld sm = scan_side(p, w, -1, grid);
    ld sp = scan_side(p, w, +1, grid);
    return {double(sm), double(sp)};
}

std::pair<double, double> bisect_endpoints(const plug_params& p, const word& w, double lo, double hi) {
    ld sm = bisect(p, w, 0.0L, ld(lo));
    ld sp = bisect(p, w, 0.0L, ld(hi));
    return {double(sm), double(sp)};
}

double oracle_width(const plug_params& p, const word& w, long grid) {
    ld sm = scan_side(p, w, -1, grid);
    ld sp = scan_side(p, w, +1, grid);
    return width_from(p, w, sm, sp);
}

double vertex_extrapolate(const plug_params& p, const word& w) {
    if (w.empty()) throw std::invalid_argument("oracle needs a non-empty word");
    std::array<ld, 3> h{1e-2L, 1e-3L, 1e-4L};
    std::array<ld, 3> e{};
    for (int k = 0; k < 3; ++k) {
        bool v1 = false, v2 = false;
        ld a = q_direct(p, w, h[k], &v1);
        ld b = q_direct(p, w, -h[k], &v2);
        if (!v1 || !v2) throw std::runtime_error("oracle: vertex probe outside the curve domain");
        e[k] = 0.5L * (a + b);
    }
    // Richardson in s^2, step ratio 100
    ld r1 = (100 * e[1] - e[0]) / 99;
    ld r2 = (100 * e[2] - e[1]) / 99;
    ld r = (10000 * r2 - r1) / 9999;
    if (fabsl(r2 - r1) > 1e-6L * std::max<ld>(1, fabsl(r)))
        throw std::runtime_error("oracle: vertex extrapolation did not settle");
    return double(r);
}

long escape_enumerate(const plug_params& p, const word& w) {
    if (w.empty()) throw std::invalid_argument("empty prefix never escapes");
    ld v = vertex_extrapolate(p, word{w[0]});
    word tail(w.begin() + 1, w.end());
    tail.push_back(1);
    for (long m = 1;; ++m) {
        tail.back() = m;
        bool ok = false;
        ld q = q_direct(p, tail, v, &ok);
        if (!ok || q > ld(p.R)) return m - 1;
        if (m > 2000000000L) throw std::runtime_error("oracle escape enumeration runaway");
    }
}

point3 integrate_field(const plug_params& p, point3 pt, double t, double tol) {
    using state = std::array<double, 3>;
    auto rhs = [&](const state& y, state& dy, double) {
        double rho = y[0] - 2, zeta = y[2] + 1;
        dy[0] = 0;
        dy[1] = y[2] < 0 ? p.a : -p.a;
        dy[2] = std::abs(zeta) <= p.R ? (rho * rho + zeta * zeta) / (p.R * p.R) : 1.0;
    };
    state y{pt.r, pt.theta, pt.z};
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<state>());
    ode::integrate_adaptive(stepper, rhs, y, 0.0, t, t / 1000);
    return {y[0], y[1], y[2]};
}

nlohmann::json check_escape(const plug_params& p, const derived_constants& dc, window win, double delta) {
    nlohmann::json rows = nlohmann::json::array();
    bool all = true;
    double worst = std::numeric_limits<double>::infinity();
    for (long i = win.lo; i <= win.hi; ++i) {
        long m = escape_enumerate(p, word{i});
        double i2 = double(i) * double(i);
        double lo = dc.C + (dc.K - delta) * i2;
        double hi = dc.C + delta + dc.K * i2;
        double margin = std::min(double(m) - lo, hi - double(m));
        bool ok = double(m) > lo && double(m) < hi;
        all = all && ok;
        worst = std::min(worst, margin);
        rows.push_back({{"i", i}, {"M", m}, {"lo", lo}, {"hi", hi}, {"ok", ok}});
    }
    return {{"check", "escape"}, {"window", {win.lo, win.hi}}, {"delta", delta},
            {"pass", all},       {"worst_margin", worst},      {"rows", rows}};
}

nlohmann::json check_asymptotics(const plug_params& p, const derived_constants& dc, int level, window win, long grid) {
    if (level < 1 || level > 3) throw std::invalid_argument("asymptotic checks exist for levels 1..3");
    const double s_coef = std::pow(dc.K_width, 1.5) / std::numbers::pi;
    const double r_coef = p.a * p.R * p.R / (4 * std::numbers::pi * std::numbers::pi);
    auto s_of = [&](double i) { return s_coef / (i * i * std::sqrt(i)); };
    struct sample {
        word w;
        double margin;
    };
    std::vector<sample> samples;
    auto eval = [&](const word& w) {
        double a = oracle_width(p, w, grid);
        double model = s_of(double(w.back()));
        double bound = p.delta;
        for (std::size_t k = 0; k + 1 < w.size(); ++k) model *= r_coef / (double(w[k]) * double(w[k]));
        for (long x : w) bound /= double(x) * double(x);
        samples.push_back({w, bound - std::abs(a - model)});
    };
    if (level == 1) {
        for (long i = win.lo; i <= win.hi; ++i) eval({i});
    } else if (level == 2) {
        long step = std::max<long>(1, (win.hi - win.lo) / 8);
        for (long i = win.lo; i <= win.hi; i += step)
            for (long j = win.lo; j <= win.hi; j += step) eval({i, j});
    } else {
        long step = std::max<long>(1, (win.hi - win.lo) / 30);
        for (long i = win.lo; i <= win.hi; i += step) eval({i, i, i});
    }
    // first sample from which the inequality holds through the end
    std::ptrdiff_t lock = -1;
    for (std::ptrdiff_t k = std::ptrdiff_t(samples.size()) - 1; k >= 0; --k) {
        if (samples[k].margin > 0)
            lock = k;
        else
            break;
    }
    double worst = std::numeric_limits<double>::infinity();
    for (auto& s : samples) worst = std::min(worst, s.margin);
    nlohmann::json out{{"check", "asymptotics"},  {"level", level},       {"window", {win.lo, win.hi}},
                       {"samples", samples.size()}, {"worst_margin", worst}, {"pass", lock == 0}};
    out["locks_in_at"] = lock >= 0 ? nlohmann::json(format_word(samples[lock].w)) : nlohmann::json(nullptr);
    return out;
}

box_fit box_count_slope(std::vector<box_interval> cover, double l_min, double l_max, int scales) {
    if (cover.empty() || scales < 2 || !(l_min > 0) || !(l_max > l_min))
        throw std::invalid_argument("degenerate box-count regression");
    std::sort(cover.begin(), cover.end(), [](const box_interval& u, const box_interval& v) { return u.lo < v.lo; });
    double k_lo = std::ceil(-std::log2(l_max));
    double k_hi = std::floor(-std::log2(l_min));
    if (k_hi - k_lo < scales - 1) {
        k_lo = -std::log2(l_max);
        k_hi = -std::log2(l_min);
    }
    box_fit fit;
    fit.l_min = std::pow(2.0, -k_hi);
    fit.l_max = std::pow(2.0, -k_lo);
    for (int m = 0; m < scales; ++m) {
        double kk = k_lo + (k_hi - k_lo) * m / (scales - 1);
        if (k_hi - k_lo >= scales - 1) kk = std::round(kk);
        double ell = std::pow(2.0, -kk);
        double count = 0;
        long double last = -1e300L;
        for (const auto& iv : cover) {
            long double c0 = std::floor((long double)iv.lo / ell);
            long double c1 = std::floor((long double)iv.hi / ell);
            long double from = std::max(c0, last + 1);
            if (c1 >= from) {
                count += double(c1 - from + 1);
                last = c1;
            }
        }
        fit.log_inv_scale.push_back(std::log(1 / ell));
        fit.log_count.push_back(std::log(count));
    }
    double n = scales, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int m = 0; m < scales; ++m) {
        sx += fit.log_inv_scale[m];
        sy += fit.log_count[m];
        sxx += fit.log_inv_scale[m] * fit.log_inv_scale[m];
        sxy += fit.log_inv_scale[m] * fit.log_count[m];
    }
    double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0)) throw std::runtime_error("degenerate box-count regression");
    fit.slope = (n * sxy - sx * sy) / den;
    return fit;
}

std::vector<box_interval> stationary_cover(const std::vector<double>& ratios, int n) {
    double total = 0;
    for (double r : ratios) total += r;
    if (ratios.size() < 2 || !(total < 1)) throw std::invalid_argument("control system needs >= 2 branches with sum < 1");
    double gap = (1 - total) / double(ratios.size() - 1);
    std::vector<double> offs;
    double o = 0;
    for (double r : ratios) {
        offs.push_back(o);
        o += r + gap;
    }
    std::vector<box_interval> cur{{0.0, 1.0}}, nxt;
    for (int level = 0; level < n; ++level) {
        nxt.clear();
        for (const auto& iv : cur) {
            double len = iv.hi - iv.lo;
            for (std::size_t k = 0; k < ratios.size(); ++k)
                nxt.push_back({iv.lo + offs[k] * len, iv.lo + (offs[k] + ratios[k]) * len});
        }
        cur.swap(nxt);
    }
    return cur;
}

std::vector<box_interval> oracle_cover(const plug_params& p, const derived_constants& dc, int n, long max_symbol,
                                       long offset, bool interlace) {
    incidence_spec spec{offset > 0 ? offset : dc.N_b, dc.C_floor, dc.K_floor};
    std::vector<box_interval> out;
    word w;
    auto rec = [&](auto&& self, double lo, double hi) -> void {
        long top = w.empty() ? max_symbol : std::min(max_symbol, max_successor(spec, w.back()));
        for (long j = spec.offset; j <= top; ++j) {
            w.push_back(j);
            auto [sm, sp] = bisect_endpoints(p, w, lo, hi);
            if (int(w.size()) == n) {
                lstate a = direct_state(p, w, sp), b = direct_state(p, w, sm);
                out.push_back({double(a.x), double(b.x)});
            } else {
                self(self, sm, sp);
            }
            w.pop_back();
        }
    };
    rec(rec, -p.R, p.R);
    if (interlace) {
        // second copy of the same Cantor set, translated clear of the first
        std::size_t m = out.size();
        double shift = 2 * p.b;
        for (std::size_t k = 0; k < m; ++k) out.push_back({out[k].lo + shift, out[k].hi + shift});
    }
    return out;
}

box_fit box_count_estimate(const plug_params& p, const derived_constants& dc, int n, long max_symbol, long offset) {
    if (n < 2 || n > 4) throw std::invalid_argument("box count supports levels 2..4");
    if (max_symbol > 80) throw std::invalid_argument("box count supports max_symbol <= 80");
    auto cover = oracle_cover(p, dc, n, max_symbol, offset, true);
    auto level1 = oracle_cover(p, dc, 1, max_symbol, offset, false);
    double l_min = 0, l_max = 0;
    for (auto& iv : cover) l_min = std::max(l_min, iv.hi - iv.lo);
    for (auto& iv : level1) l_max = std::max(l_max, iv.hi - iv.lo);
    return box_count_slope(std::move(cover), l_min, l_max, 8);
}

nlohmann::json check_distortion(const plug_params& p, int level, long child, window parents, int stride) {
    if (level < 2 || level > 3) throw std::invalid_argument("distortion check exists for levels 2 and 3");
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    long used = 0;
    auto ratio = [&](const word& parent_dual) {
        word w_dual = parent_dual;
        w_dual.push_back(child);
        // dual word (w, j) is the forward word (j, reverse w)
        word fwd(w_dual.rbegin(), w_dual.rend());
        word pfwd(parent_dual.rbegin(), parent_dual.rend());
        double r = oracle_width(p, fwd, 20000) / oracle_width(p, pfwd, 20000);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++used;
    };
    for (long i = parents.lo; i <= parents.hi; i += stride) {
        if (level == 2)
            ratio({i});
        else
            ratio({i, i});
    }
    double spread = hi / lo;
    return {{"check", "distortion"}, {"level", level},      {"child", child},
            {"parents", {parents.lo, parents.hi}}, {"samples", used}, {"spread", spread},
            {"bounded", spread < 100}};
}

}  // namespace kup::oracle
