#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kuperberg/params.hpp"
#include "kuperberg/symbolic.hpp"

namespace kup {

struct cyl_point {
    double r = 2;
    double theta = 0;
    double z = -1;
};

struct out_of_strip : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct no_root : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unbounded_escape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cyl_point wilson_outside(const plug_params& p, cyl_point pt, double t);
cyl_point wilson_inside(const plug_params& p, cyl_point pt, double t);
cyl_point wilson_field(const plug_params& p, cyl_point pt);
cyl_point insertion_inverse(const plug_params& p, cyl_point pt);

// one level of the curve recursion: (x, q) -> (x + q^2, q_next)
struct level_state {
    double x = 0;  // r - 2 accumulator
    double q = 0;  // z + 1
};

double return_time(const plug_params& p, long sym, double q_prev);
level_state advance(const plug_params& p, long sym, level_state st);

// q_w(s) and the radial accumulator x_k(s)
level_state q_eval(const plug_params& p, const word& w, double s);
cyl_point curve_point(const plug_params& p, const word& w, double s);

double vertex_level1(const plug_params& p, long i);
double vertex(const plug_params& p, const word& w);

// monotone endpoint equation, zero exactly where q_w(s) = R
double endpoint_fn(const plug_params& p, const word& w, double s);

struct endpoints {
    double s_minus = 0;
    double s_plus = 0;
};

endpoints solve_endpoints(const plug_params& p, const word& w);
// same, with the prefix's endpoints already known (they bound the domain)
endpoints solve_endpoints(const plug_params& p, const word& w, const endpoints& prefix);

// parameter range of the curve: a root of q_w = R on each side where the curve
// reaches the top of the strip, otherwise the end of the prefix's range
struct curve_domain {
    endpoints e;
    bool reaches_minus = false;
    bool reaches_plus = false;
};
curve_domain domain_of(const plug_params& p, const word& w);

long escape_time(const plug_params& p, const word& w);

long n_threshold(const plug_params& p, double width);

struct curve_record {
    word w;
    double s_minus = 0;
    double s_plus = 0;
    double vertex = 0;
    double a_minus = 0;
    double a_plus = 0;
    double width = 0;
};

curve_record make_record(const plug_params& p, const word& w);

std::vector<double> sample_grid(double s_minus, double s_plus, int n_points, double ratio = 0.8);
std::vector<cyl_point> sample_curve(const plug_params& p, const word& w, int n_points);

}  // namespace kup
