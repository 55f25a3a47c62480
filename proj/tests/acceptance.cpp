#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "kuperberg/curves.hpp"
#include "kuperberg/oracle.hpp"
#include "kuperberg/parallel.hpp"
#include "kuperberg/pressure.hpp"
#include "kuperberg/transverse.hpp"
#include "kuperberg/verify.hpp"

using namespace kup;

namespace {

const plug_params P = validate({});

const derived_constants& DC() {
    static const derived_constants dc = derive_constants(P);
    return dc;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const dimension_report& report() {
    static const dimension_report r = make_dimension_report(P, DC(), pressure_settings{});
    return r;
}

bool criterion_1(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    dimension_report r = make_dimension_report(P, DC(), pressure_settings{});
    double secs = seconds_since(t0);
    bool ok = 0 < r.t_lower && r.t_lower < r.t_upper && r.t_upper < 1 && r.t_upper - r.t_lower < 0.2 &&
              std::abs(r.t_lower - reference_t_lower) <= 0.05 && std::abs(r.t_upper - reference_t_upper) <= 0.05 &&
              secs < 60;
    char buf[256];
    std::snprintf(buf, sizeof buf, "computed [%.5f, %.5f] reference [%.5f, %.5f] in %.2f s", r.t_lower, r.t_upper,
                  reference_t_lower, reference_t_upper, secs);
    msg = buf;
    return ok;
}

bool criterion_2(std::string& msg) {
    const auto& r = report();
    bool ok = r.dim_M[0] == r.dim_tau[0] + 2 && r.dim_M[1] == r.dim_tau[1] + 2 && r.dim_tau[0] == r.t_lower &&
              r.dim_tau[1] == r.t_upper;
    char buf[256];
    std::snprintf(buf, sizeof buf, "dim_tau [%.6f, %.6f] dim_M [%.6f, %.6f]", r.dim_tau[0], r.dim_tau[1], r.dim_M[0],
                  r.dim_M[1]);
    msg = buf;
    return ok;
}

// smallest L on a 10-step grid with the level-1 inequality on [L, 3L] for the given constant
long locate_window(double k_const, long l_max) {
    const double coef = std::pow(k_const, 1.5) / std::numbers::pi;
    std::vector<double> margin(3 * l_max + 1, -1);
    for (long i = 10; i <= 3 * l_max; ++i) {
        double di = double(i);
        margin[i] = 0.01 / (di * di) - std::abs(width_exact(P, {i}) - coef / (di * di * std::sqrt(di)));
    }
    for (long L = 10; L <= l_max; L += 10) {
        bool all = true;
        for (long i = L; i <= 3 * L && all; ++i) all = margin[i] > 0;
        if (all) return L;
    }
    return -1;
}

bool criterion_3(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    long L = locate_window(DC().K_width, 500);
    bool ok = L > 0;
    double worst = 0;
    if (ok) {
        auto rep = oracle::check_asymptotics(P, DC(), 1, {L, 3 * L});
        ok = rep["pass"].get<bool>();
        worst = rep["worst_margin"].get<double>();
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 30;
    long literal = locate_window(DC().K, 500);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "window [%ld, %ld] with K_width=%.4f, oracle worst margin %.3g, %.2f s; with K=%.4f window %s", L,
                  3 * L, DC().K_width, worst, secs, DC().K, literal > 0 ? "found" : "not found");
    msg = buf;
    return ok;
}

bool criterion_4(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = INFINITY;
    for (long i = 50; i <= 120; ++i) {
        long m = oracle::escape_enumerate(P, {i});
        double i2 = double(i) * i;
        double lo = DC().C + (DC().K - 0.5) * i2, hi = DC().C + 0.5 + DC().K * i2;
        ok = ok && lo < m && m < hi;
        worst = std::min({worst, m - lo, hi - m});
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 60;
    char buf[256];
    std::snprintf(buf, sizeof buf, "i in [50, 120], worst margin %.4g, %.2f s", worst, secs);
    msg = buf;
    return ok;
}

bool criterion_5(std::string& msg) {
    incidence_spec spec{DC().N_eps, DC().C_floor, DC().K_floor};
    auto words = random_words(5, spec, 1000, 2, 2, 5000);
    double worst = 0, worst_limit = 0;
    for (const auto& w : words) {
        double nested = q_eval(P, word{w[1]}, vertex(P, word{w[0]})).q;
        worst = std::max(worst, std::abs(vertex(P, w) - nested));
        // limit of the level-2 curve at s -> 0 taken by the oracle
        worst_limit = std::max(worst_limit, std::abs(oracle::vertex_extrapolate(P, w) - nested));
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "1000 level-2 words, max |diff| %.3g, against the s -> 0 limit %.3g", worst,
                  worst_limit);
    msg = buf;
    return worst < 1e-9 && worst_limit < 1e-9;
}

bool criterion_6(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    incidence_spec spec{DC().N_eps, DC().C_floor, DC().K_floor};
    auto words = random_words(7, spec, 1000, 1, 3, 2000);
    auto rep = check_endpoint_battery(P, words, 100000, default_threads());
    char buf[256];
    std::snprintf(buf, sizeof buf, "1000 words of level <= 3 (seed 7), max |diff| %.3g, %.2f s",
                  rep["max_abs_diff"].get<double>(), seconds_since(t0));
    msg = buf;
    return rep["pass"].get<bool>();
}

bool shape_ok(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k] < v[k - 1])) return false;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        double d2 = v[k + 1] - 2 * v[k] + v[k - 1];
        if (d2 < -1e-12 * (1 + std::abs(v[k]))) return false;
    }
    return true;
}

bool criterion_7(std::string& msg) {
    pressure_settings st;
    std::vector<double> lo, up, sp;
    for (int k = 0; k < 20; ++k) {
        double t = 0.55 + 0.4 * k / 19.0;
        lo.push_back(pressure_lower(P, DC(), t, st));
        up.push_back(pressure_upper(P, DC(), t));
        sp.push_back(spectral_pressure(P, DC(), t, st.spectral_M, st.interlace));
    }
    bool ordered = true;
    for (std::size_t k = 0; k < lo.size(); ++k) ordered = ordered && lo[k] <= up[k] && sp[k] <= up[k];
    bool ok = shape_ok(lo) && shape_ok(up) && shape_ok(sp) && ordered;
    msg = std::string("lower ") + (shape_ok(lo) ? "ok" : "bad") + ", upper " + (shape_ok(up) ? "ok" : "bad") +
          ", spectral " + (shape_ok(sp) ? "ok" : "bad") + ", ordering " + (ordered ? "ok" : "bad");
    return ok;
}

bool criterion_8(std::string& msg) {
    auto rep = check_control_instance(14);
    char buf[256];
    std::snprintf(buf, sizeof buf, "root %.10f slope %.4f expected %.10f", rep["bowen_root"].get<double>(),
                  rep["box_slope"].get<double>(), rep["expected"].get<double>());
    msg = buf;
    return rep["pass"].get<bool>();
}

bool criterion_9(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    double slope = oracle::box_count_estimate(P, DC(), 3, 60).slope;
    double secs = seconds_since(t0);
    const auto& r = report();
    bool ok = r.t_lower - 0.05 <= slope && slope <= r.t_upper + 0.05 && secs < 300;
    char buf[256];
    std::snprintf(buf, sizeof buf, "slope %.4f window [%.4f, %.4f], %.2f s", slope, r.t_lower - 0.05,
                  r.t_upper + 0.05, secs);
    msg = buf;
    return ok;
}

bool criterion_10(std::string& msg) {
    auto rep = check_flow_identities(P);
    char buf[256];
    std::snprintf(buf, sizeof buf, "composition %.3g / %.3g, finite differences %.3g / %.3g",
                  rep["composition_outside"].get<double>(), rep["composition_inside"].get<double>(),
                  rep["field_fd_outside"].get<double>(), rep["field_fd_inside"].get<double>());
    msg = buf;
    return rep["pass"].get<bool>();
}

bool criterion_11(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    incidence_spec spec{DC().N_b, DC().C_floor, DC().K_floor};
    std::vector<double> sums;
    for (int n = 1; n <= 4; ++n) sums.push_back(level_width_sum(P, spec, n, 60, true, default_threads()));
    bool ok = true;
    for (std::size_t k = 1; k < sums.size(); ++k) ok = ok && sums[k] < sums[k - 1];
    char buf[256];
    std::snprintf(buf, sizeof buf, "sums %.4g %.4g %.4g %.4g, %.1f s", sums[0], sums[1], sums[2], sums[3],
                  seconds_since(t0));
    msg = buf;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<bool(std::string&)>> criteria{
        criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
        criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
    std::size_t first = 1, last = criteria.size();
    if (argc > 1) {
        first = last = std::strtoul(argv[1], nullptr, 10);
        if (first < 1 || first > criteria.size()) {
            std::fprintf(stderr, "usage: acceptance [1..%zu]\n", criteria.size());
            return 2;
        }
    }
    int failed = 0;
    for (std::size_t k = first; k <= last; ++k) {
        std::string msg;
        bool ok = false;
        try {
            ok = criteria[k - 1](msg);
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %zu: %s\n", ok ? "PASS" : "FAIL", k, msg.c_str());
        std::fflush(stdout);
        failed += !ok;
    }
    return failed == 0 ? 0 : 1;
}
