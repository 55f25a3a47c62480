#pragma once

#include <stdexcept>
#include <string>

namespace kup {

struct plug_params {
    double a = 10.0;
    double R = 0.5;
    double alpha = 0.0;
    double beta = 0.0;
    double b = 0.1;
    double epsilon = 0.01;
    double delta = 0.01;
};

// C, K govern escape times and incidence; K_width is the constant in the
// width asymptotics and the alphabet offset (see README, "Two constants").
struct derived_constants {
    double C = 0;
    double K = 0;
    double K_width = 0;
    double p = 0;
    double p_fit = 0;
    long C_floor = 0;
    long K_floor = 0;
    long N_eps = 0;
    long N_b = 0;
};

struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double wrap_angle(double x);

plug_params validate(plug_params p);

double vertex_decay_constant(const plug_params& p);
double fit_vertex_decay(const plug_params& p, long i_lo = 1000, long i_hi = 10000);

derived_constants derive_constants(const plug_params& p);

}  // namespace kup
