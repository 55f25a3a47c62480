#include "kuperberg/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kuperberg/curves.hpp"
#include "kuperberg/parallel.hpp"

namespace kup {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

long effective_offset(const derived_constants& dc, long offset) { return offset > 0 ? offset : dc.N_eps; }

struct lse {
    double m = -inf;
    double s = 0;
    void add(double x) {
        if (x == -inf) return;
        if (x <= m) {
            s += std::exp(x - m);
        } else {
            s = s * std::exp(m - x) + 1;
            m = x;
        }
    }
    void merge(const lse& o) {
        if (o.m == -inf) return;
        if (o.m <= m) {
            s += o.s * std::exp(o.m - m);
        } else {
            s = s * std::exp(m - o.m) + o.s;
            m = o.m;
        }
    }
    double value() const { return m == -inf ? -inf : m + std::log(s); }
};

// one step v'(j) = w(j) * sum_{i admissible before j} v(i), over symbols first..first+L-1
void transfer_step(const std::vector<double>& v, const std::vector<double>& w, const incidence_spec& spec, long first,
                   std::vector<double>& out) {
    std::size_t L = v.size();
    std::vector<double> suffix(L + 1, 0.0);
    for (std::size_t k = L; k-- > 0;) suffix[k] = suffix[k + 1] + v[k];
    out.assign(L, 0.0);
    for (std::size_t k = 0; k < L; ++k) {
        long i0 = min_predecessor(spec, first + long(k));
        long idx = i0 - first;
        if (idx < 0) idx = 0;
        if (std::size_t(idx) >= L) continue;
        out[k] = w[k] * suffix[idx];
    }
}

struct model_weights {
    std::vector<double> log_ratio;  // all but the lead symbol
    std::vector<double> log_lead;
};

model_weights asymptotic_weights(const plug_params& p, const derived_constants& dc, width_model m, double t,
                                 long first, long last) {
    auto rc = make_ratio_coefficients(p, dc, first);
    double sf = 1, rshift = 0;
    if (m == width_model::asymptotic_lower) {
        sf = 1 - p.delta;
        rshift = -p.delta;
    } else if (m == width_model::asymptotic_upper) {
        sf = 1 + p.delta;
        rshift = p.delta;
    }
    double rnum = rc.r_coef + rshift;
    if (!(rnum > 0) || !(sf > 0)) throw std::domain_error("delta too large: lower ratio coefficient not positive");
    model_weights mw;
    for (long i = first; i <= last; ++i) {
        double di = double(i);
        mw.log_ratio.push_back(t * (std::log(rnum) - 2 * std::log(di)));
        mw.log_lead.push_back(t * std::log(sf * rc.s_of(i)));
    }
    return mw;
}

}  // namespace

incidence_spec make_spec(const derived_constants& dc, long offset) {
    return {effective_offset(dc, offset), dc.C_floor, dc.K_floor};
}

double log_partition_sum(const plug_params& p, const derived_constants& dc, double t, int n,
                         const pressure_settings& st) {
    if (n < 1) throw std::invalid_argument("partition sum needs n >= 1");
    incidence_spec spec = make_spec(dc, st.offset);
    long first = spec.offset, last = st.max_symbol;
    if (last < first) throw std::invalid_argument("max_symbol below the alphabet offset");
    double inter = st.interlace ? t * std::log(2.0) : 0.0;

    if (st.model == width_model::exact) {
        std::size_t chunks = last - first + 1;
        std::vector<lse> part(chunks);
        visit_level_intervals(p, spec, n, last, st.threads, [&](std::size_t c, const word&, const interval_ab& iv) {
            part[c].add(t * std::log(iv.width()));
        });
        lse tot;
        for (auto& x : part) tot.merge(x);
        return tot.value() + inter;
    }

    model_weights mw = asymptotic_weights(p, dc, st.model, t, first, last);
    const auto& lead = st.first_weight ? mw.log_lead : mw.log_ratio;
    auto to_lin = [](const std::vector<double>& lw, double& scale) {
        scale = *std::max_element(lw.begin(), lw.end());
        std::vector<double> out(lw.size());
        for (std::size_t k = 0; k < lw.size(); ++k) out[k] = std::exp(lw[k] - scale);
        return out;
    };
    double sr = 0, sl = 0;
    std::vector<double> wr = to_lin(mw.log_ratio, sr);
    std::vector<double> wl = to_lin(lead, sl);
    if (n == 1) {
        double z = 0;
        for (double x : wl) z += x;
        return sl + std::log(z) + inter;
    }
    double log_scale = sr;
    std::vector<double> v = wr, nxt;
    for (int k = 2; k <= n; ++k) {
        bool final_step = (k == n);
        transfer_step(v, final_step ? wl : wr, spec, first, nxt);
        log_scale += final_step ? sl : sr;
        double mx = *std::max_element(nxt.begin(), nxt.end());
        if (!(mx > 0)) return -inf;
        for (auto& x : nxt) x /= mx;
        log_scale += std::log(mx);
        v.swap(nxt);
    }
    double z = 0;
    for (double x : v) z += x;
    return log_scale + std::log(z) + inter;
}

double partition_sum(const plug_params& p, const derived_constants& dc, double t, int n, const pressure_settings& st) {
    return std::exp(log_partition_sum(p, dc, t, n, st));
}

double pressure_upper(const plug_params& p, const derived_constants& dc, double t) {
    if (!(t > 0.5)) throw divergent("upper pressure bound diverges for t <= 1/2");
    double rnum = p.a * p.R * p.R / (4 * std::numbers::pi * std::numbers::pi) + p.delta;
    return t * std::log(rnum) + std::log(hurwitz_tail(2 * t, dc.N_eps));
}

double pressure_lower(const plug_params& p, const derived_constants& dc, double t, const pressure_settings& st) {
    pressure_settings s = st;
    if (s.model == width_model::exact || s.model == width_model::asymptotic_upper) s.model = width_model::asymptotic_lower;
    return log_partition_sum(p, dc, t, s.n_max, s) / s.n_max;
}

spectral_result spectral_radius_log(const std::vector<double>& log_w, const incidence_spec& spec, long first,
                                    double tol, int max_iter) {
    if (log_w.empty()) throw std::invalid_argument("empty operator");
    double scale = *std::max_element(log_w.begin(), log_w.end());
    std::vector<double> w(log_w.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(log_w[k] - scale);
    std::vector<double> v(w.size(), 1.0 / double(w.size())), nxt;
    spectral_result res;
    double lam = 0;
    for (int it = 1; it <= max_iter; ++it) {
        transfer_step(v, w, spec, first, nxt);
        double s = 0;
        for (double x : nxt) s += x;
        if (!(s > 0)) throw std::runtime_error("transfer operator annihilated the vector");
        double lam_new = s;  // v is normalised to unit sum
        for (auto& x : nxt) x /= s;
        v.swap(nxt);
        res.iterations = it;
        if (it > 1 && std::abs(lam_new - lam) <= tol * lam_new) {
            res.converged = true;
            res.log_radius = std::log(lam_new) + scale;
            return res;
        }
        lam = lam_new;
    }
    throw std::runtime_error("power iteration did not converge; last Rayleigh quotient " +
                             std::to_string(std::log(lam) + scale));
}

double spectral_pressure(const plug_params& p, const derived_constants& dc, double t, long M, bool interlace,
                         long offset) {
    if (M < 1) throw std::invalid_argument("spectral truncation needs M >= 1");
    incidence_spec spec = make_spec(dc, offset);
    double r_coef = p.a * p.R * p.R / (4 * std::numbers::pi * std::numbers::pi);
    double mult = interlace ? 2.0 : 1.0;
    std::vector<double> lw(M);
    for (long k = 0; k < M; ++k) {
        double j = double(spec.offset + k);
        lw[k] = t * std::log(mult * r_coef / (j * j));
    }
    return spectral_radius_log(lw, spec, spec.offset).log_radius;
}

double bowen_root(const std::function<double(double)>& f, double t_lo, double t_hi, double tol) {
    double lo = t_lo, hi = t_hi;
    double flo = f(lo), fhi = f(hi);
    auto bad = [&] { return !(flo > 0 && fhi < 0); };
    if (bad()) {
        double span = hi - lo;
        lo = std::max(0.5 * lo, 1e-6);
        hi = hi + span;
        flo = f(lo);
        fhi = f(hi);
        if (bad())
            throw no_sign_change("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                 "]: values " + std::to_string(flo) + ", " + std::to_string(fhi));
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::isnan(fm)) throw std::runtime_error("pressure evaluated to NaN");
        if (fm > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

dimension_report make_dimension_report(const plug_params& p, const pressure_settings& st) {
    plug_params v = validate(p);
    return make_dimension_report(v, derive_constants(v), st);
}

dimension_report make_dimension_report(const plug_params& p, const derived_constants& dc, const pressure_settings& st) {
    dimension_report rep;
    rep.params = p;
    rep.constants = dc;
    rep.settings = st;
    rep.settings.offset = make_spec(dc, st.offset).offset;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool partial = false;
    auto root_of = [&](const std::string& name, const std::string& model, auto fn) {
        nlohmann::json d{{"name", name}, {"width_model", model}};
        try {
            double r = bowen_root(fn, st.t_lo, st.t_hi);
            d["root"] = r;
            rep.diagnostics.push_back(d);
            return r;
        } catch (const std::exception& e) {
            d["error"] = e.what();
            rep.diagnostics.push_back(d);
            partial = true;
            return nan;
        }
    };
    pressure_settings lo = rep.settings;
    lo.model = width_model::asymptotic_lower;
    double r_lower = root_of("pressure_lower", "asymptotic_lower",
                             [&](double t) { return pressure_lower(p, dc, t, lo); });
    pressure_settings lo_nw = lo;
    lo_nw.first_weight = false;
    root_of("pressure_lower_without_first_weight", "asymptotic_lower",
            [&](double t) { return pressure_lower(p, dc, t, lo_nw); });
    double r_spec = root_of("spectral_pressure", "asymptotic", [&](double t) {
        return spectral_pressure(p, dc, t, st.spectral_M, st.interlace, rep.settings.offset);
    });
    double r_upper = root_of("pressure_upper", "asymptotic_upper", [&](double t) {
        if (t <= 0.5) return std::numeric_limits<double>::infinity();
        return pressure_upper(p, dc, t);
    });
    if (std::isnan(r_lower))
        rep.t_lower = r_spec;
    else if (std::isnan(r_spec))
        rep.t_lower = r_lower;
    else
        rep.t_lower = std::max(r_lower, r_spec);
    rep.t_upper = r_upper;
    rep.dim_tau[0] = rep.t_lower;
    rep.dim_tau[1] = rep.t_upper;
    rep.dim_M[0] = 2 + rep.t_lower;
    rep.dim_M[1] = 2 + rep.t_upper;

    auto rc = make_ratio_coefficients(p, dc);
    nlohmann::json tail{{"name", "ratio_tail_sum"}, {"value", rc.r_tail}};
    if (rc.r_tail >= 1) tail["warning"] = "sum of ratio coefficients >= 1";
    rep.diagnostics.push_back(tail);
    bool ordered = rep.t_lower > 0 && rep.t_lower <= rep.t_upper && rep.t_upper < 1;
    rep.diagnostics.push_back({{"name", "bounds_ordered"}, {"value", ordered}});
    rep.diagnostics.push_back(
        {{"name", "reference_interval"}, {"t_lower", reference_t_lower}, {"t_upper", reference_t_upper}});
    if (partial) rep.diagnostics.push_back({{"name", "partial"}, {"value", true}});
    return rep;
}

nlohmann::json to_json(const plug_params& p) {
    return {{"a", p.a},           {"R", p.R},         {"alpha", p.alpha}, {"beta", p.beta},
            {"b", p.b},           {"epsilon", p.epsilon}, {"delta", p.delta}};
}

nlohmann::json to_json(const derived_constants& dc) {
    return {{"C", dc.C},           {"K", dc.K},           {"K_width", dc.K_width}, {"p", dc.p},
            {"p_fit", dc.p_fit},   {"C_floor", dc.C_floor}, {"K_floor", dc.K_floor}, {"N_eps", dc.N_eps},
            {"N_b", dc.N_b}};
}

nlohmann::json to_json(const pressure_settings& st) {
    return {{"n_max", st.n_max},
            {"max_symbol", st.max_symbol},
            {"spectral_M", st.spectral_M},
            {"width_model", to_string(st.model)},
            {"interlace", st.interlace},
            {"first_weight", st.first_weight},
            {"offset", st.offset},
            {"threads", st.threads},
            {"t_bracket", {st.t_lo, st.t_hi}}};
}

nlohmann::json to_json(const dimension_report& r) {
    auto num = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
    return {{"params", to_json(r.params)},
            {"constants", to_json(r.constants)},
            {"settings", to_json(r.settings)},
            {"t_lower", num(r.t_lower)},
            {"t_upper", num(r.t_upper)},
            {"dim_tau", {num(r.dim_tau[0]), num(r.dim_tau[1])}},
            {"dim_M", {num(r.dim_M[0]), num(r.dim_M[1])}},
            {"reference", {{"t_lower", reference_t_lower}, {"t_upper", reference_t_upper}}},
            {"diagnostics", r.diagnostics}};
}

}  // namespace kup
