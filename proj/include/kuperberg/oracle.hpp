#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kuperberg/params.hpp"
#include "kuperberg/symbolic.hpp"

namespace kup::oracle {

// direct tan form of the curve recursion in long double
long double q_direct(const plug_params& p, const word& w, long double s, bool* valid = nullptr);

std::pair<double, double> brute_endpoints(const plug_params& p, const word& w, long grid = 100000);

// pure bisection on each side of 0 inside the prefix domain [lo, hi]
std::pair<double, double> bisect_endpoints(const plug_params& p, const word& w, double lo, double hi);

// width a(w) from oracle endpoints
double oracle_width(const plug_params& p, const word& w, long grid = 100000);

double vertex_extrapolate(const plug_params& p, const word& w);

// escape time by stepping m = 1, 2, ... until the vertex of (w, m) leaves the strip
long escape_enumerate(const plug_params& p, const word& w);

// flow the vector field numerically from pt for time t
struct point3 {
    double r, theta, z;
};
point3 integrate_field(const plug_params& p, point3 pt, double t, double tol = 1e-12);

struct window {
    long lo = 0;
    long hi = 0;
};

nlohmann::json check_escape(const plug_params& p, const derived_constants& dc, window win, double delta);

nlohmann::json check_asymptotics(const plug_params& p, const derived_constants& dc, int level, window win,
                                 long grid = 20000);

struct box_interval {
    double lo, hi;
};

struct box_fit {
    double slope = 0;
    double l_min = 0;
    double l_max = 0;
    std::vector<double> log_inv_scale;
    std::vector<double> log_count;
};

box_fit box_count_slope(std::vector<box_interval> cover, double l_min, double l_max, int scales = 8);

// self-similar control: branches with ratios r_k placed left to right with equal gaps
std::vector<box_interval> stationary_cover(const std::vector<double>& ratios, int n);

// level-n cover over symbols [offset, max_symbol] (offset 0 means N_b), with a translated second copy
std::vector<box_interval> oracle_cover(const plug_params& p, const derived_constants& dc, int n, long max_symbol,
                                       long offset = 0, bool interlace = true);

box_fit box_count_estimate(const plug_params& p, const derived_constants& dc, int n, long max_symbol,
                           long offset = 0);

nlohmann::json check_distortion(const plug_params& p, int level, long child, window parents, int stride = 1);

}  // namespace kup::oracle
