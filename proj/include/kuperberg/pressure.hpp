#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kuperberg/params.hpp"
#include "kuperberg/symbolic.hpp"
#include "kuperberg/transverse.hpp"

namespace kup {

struct pressure_settings {
    int n_max = 10;
    long max_symbol = 200;
    long spectral_M = 200;
    width_model model = width_model::asymptotic_lower;
    bool interlace = true;
    bool first_weight = true;
    long offset = 0;  // 0 means N_eps
    int threads = 1;
    double t_lo = 0.35;
    double t_hi = 0.95;
};

incidence_spec make_spec(const derived_constants& dc, long offset = 0);

// log Z_n(t)
double log_partition_sum(const plug_params& p, const derived_constants& dc, double t, int n,
                         const pressure_settings& st);
double partition_sum(const plug_params& p, const derived_constants& dc, double t, int n, const pressure_settings& st);

struct divergent : std::domain_error {
    using std::domain_error::domain_error;
};

double pressure_upper(const plug_params& p, const derived_constants& dc, double t);
double pressure_lower(const plug_params& p, const derived_constants& dc, double t, const pressure_settings& st);

// log spectral radius of the truncated operator (i -> j) with weights w_j^t
struct spectral_result {
    double log_radius = 0;
    int iterations = 0;
    bool converged = false;
};
spectral_result spectral_radius_log(const std::vector<double>& log_w, const incidence_spec& spec, long first,
                                    double tol = 1e-10, int max_iter = 100000);
double spectral_pressure(const plug_params& p, const derived_constants& dc, double t, long M, bool interlace,
                         long offset = 0);

struct no_sign_change : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double bowen_root(const std::function<double(double)>& f, double t_lo, double t_hi, double tol = 1e-10);

struct dimension_report {
    plug_params params;
    derived_constants constants;
    pressure_settings settings;
    double t_lower = 0;
    double t_upper = 0;
    double dim_tau[2] = {0, 0};
    double dim_M[2] = {0, 0};
    nlohmann::json diagnostics = nlohmann::json::array();
};

constexpr double reference_t_lower = 0.40105;
constexpr double reference_t_upper = 0.51826;

dimension_report make_dimension_report(const plug_params& p, const pressure_settings& st);
dimension_report make_dimension_report(const plug_params& p, const derived_constants& dc, const pressure_settings& st);

nlohmann::json to_json(const plug_params& p);
nlohmann::json to_json(const derived_constants& dc);
nlohmann::json to_json(const pressure_settings& st);
nlohmann::json to_json(const dimension_report& r);

}  // namespace kup
