#include "kuperberg/transverse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kuperberg/parallel.hpp"

namespace kup {

namespace {
constexpr double pi = std::numbers::pi;
}

interval_ab interval_from(const plug_params& p, const word& w, const endpoints& e) {
    interval_ab iv;
    iv.a_minus = q_eval(p, w, e.s_plus).x;
    iv.a_plus = q_eval(p, w, e.s_minus).x;
    return iv;
}

interval_ab interval(const plug_params& p, const word& w) { return interval_from(p, w, solve_endpoints(p, w)); }

double width_exact(const plug_params& p, const word& w) { return interval(p, w).width(); }

double ratio_coefficients::s_of(long i) const { return s_coef / (double(i) * double(i) * std::sqrt(double(i))); }
double ratio_coefficients::r_of(long i) const { return r_coef / (double(i) * double(i)); }

ratio_coefficients make_ratio_coefficients(const plug_params& p, const derived_constants& dc, long offset) {
    ratio_coefficients rc;
    rc.s_coef = std::pow(dc.K_width, 1.5) / pi;
    rc.r_coef = p.a * p.R * p.R / (4 * pi * pi);
    rc.offset = offset;
    rc.r_tail = rc.r_coef * hurwitz_tail(2.0, offset);
    return rc;
}

ratio_coefficients make_ratio_coefficients(const plug_params& p, const derived_constants& dc) {
    return make_ratio_coefficients(p, dc, dc.N_eps);
}

double width_asymptotic(const plug_params& p, const derived_constants& dc, const word& w, bool dual) {
    if (w.empty()) throw std::invalid_argument("width_asymptotic needs a non-empty word");
    auto rc = make_ratio_coefficients(p, dc, 1);
    std::size_t lead = dual ? 0 : w.size() - 1;
    double v = rc.s_of(w[lead]);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != lead) v *= rc.r_of(w[k]);
    return v;
}

std::string to_string(width_model m) {
    switch (m) {
    case width_model::exact: return "exact";
    case width_model::asymptotic: return "asymptotic";
    case width_model::asymptotic_lower: return "asymptotic_lower";
    case width_model::asymptotic_upper: return "asymptotic_upper";
    }
    return "?";
}

width_model parse_width_model(const std::string& s) {
    if (s == "exact") return width_model::exact;
    if (s == "asymptotic") return width_model::asymptotic;
    if (s == "asymptotic_lower") return width_model::asymptotic_lower;
    if (s == "asymptotic_upper") return width_model::asymptotic_upper;
    throw std::invalid_argument("unknown width model '" + s + "'");
}

// direct sum to 1e5, then integral + half term + first Euler-Maclaurin correction
double hurwitz_tail(double s, long N) {
    if (!(s > 1)) throw std::domain_error("tail sum diverges for s <= 1");
    if (N < 1) throw std::invalid_argument("tail sum needs N >= 1");
    const long cut = 100000;
    long J = std::max(N, cut);
    double Jd = double(J);
    double tail = std::pow(Jd, 1 - s) / (s - 1) + 0.5 * std::pow(Jd, -s) + s * std::pow(Jd, -s - 1) / 12;
    double sum = 0;
    for (long j = J - 1; j >= N; --j) sum += std::pow(double(j), -s);
    return sum + tail;
}

std::vector<width_row> width_table(const plug_params& p, const derived_constants& dc, const std::vector<word>& words) {
    std::vector<width_row> rows;
    rows.reserve(words.size());
    for (const auto& w : words) {
        width_row row;
        row.w = w;
        row.iv = interval(p, w);
        row.asymptotic = width_asymptotic(p, dc, w, false);
        row.rel_err = (row.iv.width() - row.asymptotic) / row.iv.width();
        rows.push_back(row);
    }
    return rows;
}

std::size_t visit_level_intervals(const plug_params& p, const incidence_spec& spec, int n, long max_symbol,
                                  int threads, const interval_visitor& visit) {
    if (n < 1 || max_symbol < spec.offset) return 0;
    std::size_t chunks = max_symbol - spec.offset + 1;
    std::vector<std::size_t> counts(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t c) {
        word w;
        std::size_t cnt = 0;
        auto rec = [&](auto&& self, const endpoints& pre) -> void {
            long lo = spec.offset;
            long hi = w.empty() ? lo + long(c) : std::min(max_symbol, max_successor(spec, w.back()));
            if (w.empty()) lo = hi;
            for (long j = lo; j <= hi; ++j) {
                w.push_back(j);
                endpoints e = solve_endpoints(p, w, pre);
                if (int(w.size()) == n) {
                    visit(c, w, interval_from(p, w, e));
                    ++cnt;
                } else {
                    self(self, e);
                }
                w.pop_back();
            }
        };
        rec(rec, endpoints{-p.R, p.R});
        counts[c] = cnt;
    });
    std::size_t total = 0;
    for (auto k : counts) total += k;
    return total;
}

std::vector<interval_ab> level_intervals(const plug_params& p, const incidence_spec& spec, int n, long max_symbol,
                                         int threads) {
    std::size_t chunks = max_symbol >= spec.offset ? max_symbol - spec.offset + 1 : 0;
    std::vector<std::vector<interval_ab>> parts(chunks);
    visit_level_intervals(p, spec, n, max_symbol, threads,
                          [&](std::size_t c, const word&, const interval_ab& iv) { parts[c].push_back(iv); });
    std::vector<interval_ab> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

double level_width_sum(const plug_params& p, const incidence_spec& spec, int n, long max_symbol, bool doubled,
                       int threads) {
    std::size_t chunks = max_symbol >= spec.offset ? max_symbol - spec.offset + 1 : 0;
    std::vector<double> sum(chunks, 0.0), comp(chunks, 0.0);
    visit_level_intervals(p, spec, n, max_symbol, threads, [&](std::size_t c, const word&, const interval_ab& iv) {
        // Neumaier summation
        double x = iv.width();
        double t = sum[c] + x;
        if (std::abs(sum[c]) >= std::abs(x))
            comp[c] += (sum[c] - t) + x;
        else
            comp[c] += (x - t) + sum[c];
        sum[c] = t;
    });
    double total = 0;
    for (std::size_t c = 0; c < chunks; ++c) total += sum[c] + comp[c];
    return doubled ? 2 * total : total;
}

}  // namespace kup
