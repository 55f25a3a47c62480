#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kuperberg/curves.hpp"
#include "kuperberg/params.hpp"
#include "kuperberg/symbolic.hpp"

namespace kup {

struct interval_ab {
    double a_minus = 0;
    double a_plus = 0;
    double width() const { return a_plus - a_minus; }
};

interval_ab interval(const plug_params& p, const word& w);
interval_ab interval_from(const plug_params& p, const word& w, const endpoints& e);
double width_exact(const plug_params& p, const word& w);

// s_i = pi^-1 K_w^{3/2} i^{-5/2},  r_i = (2 pi)^-2 a R^2 i^-2
struct ratio_coefficients {
    double s_coef = 0;
    double r_coef = 0;
    long offset = 1;
    double r_tail = 0;  // sum_{i >= offset} r_i
    double s_of(long i) const;
    double r_of(long i) const;
};

ratio_coefficients make_ratio_coefficients(const plug_params& p, const derived_constants& dc);
ratio_coefficients make_ratio_coefficients(const plug_params& p, const derived_constants& dc, long offset);

double width_asymptotic(const plug_params& p, const derived_constants& dc, const word& w, bool dual = false);

enum class width_model { exact, asymptotic, asymptotic_lower, asymptotic_upper };
std::string to_string(width_model m);
width_model parse_width_model(const std::string& s);

// sum_{j >= N} j^{-s}, s > 1
double hurwitz_tail(double s, long N);

struct width_row {
    word w;
    interval_ab iv;
    double asymptotic = 0;
    double rel_err = 0;
};

std::vector<width_row> width_table(const plug_params& p, const derived_constants& dc, const std::vector<word>& words);

// visits every level-n word over [spec.offset, max_symbol] with its interval;
// work is split by first symbol, visit(chunk, w, iv) is called from workers
using interval_visitor = std::function<void(std::size_t, const word&, const interval_ab&)>;
std::size_t visit_level_intervals(const plug_params& p, const incidence_spec& spec, int n, long max_symbol,
                                  int threads, const interval_visitor& visit);

std::vector<interval_ab> level_intervals(const plug_params& p, const incidence_spec& spec, int n, long max_symbol,
                                         int threads = 1);

double level_width_sum(const plug_params& p, const incidence_spec& spec, int n, long max_symbol, bool doubled,
                       int threads = 1);

}  // namespace kup
