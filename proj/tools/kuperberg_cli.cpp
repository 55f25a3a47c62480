#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kuperberg/curves.hpp"
#include "kuperberg/io.hpp"
#include "kuperberg/oracle.hpp"
#include "kuperberg/parallel.hpp"
#include "kuperberg/params.hpp"
#include "kuperberg/pressure.hpp"
#include "kuperberg/symbolic.hpp"
#include "kuperberg/transverse.hpp"
#include "kuperberg/verify.hpp"

using namespace kup;
using nlohmann::json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct range {
    long lo = 0, hi = 0;
};

range parse_range(const std::string& s) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            long v = std::stol(s);
            return {v, v};
        }
        range r{std::stol(s.substr(0, pos)), std::stol(s.substr(pos + 2))};
        if (r.hi < r.lo) throw usage_error("empty range '" + s + "'");
        return r;
    } catch (const std::logic_error&) {
        throw usage_error("bad range '" + s + "', expected a..b");
    }
}

std::string csv_field(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return fmt17(x);
}

struct options {
    std::string config;
    std::string output;
    unsigned long seed = 7;
    int threads = 1;
    bool no_timestamp = false;
    // parameter overrides
    std::optional<double> a, R, alpha, beta, b, epsilon, delta;
    // pressure settings
    pressure_settings st;
    std::string model = "asymptotic_lower";
    bool no_interlace = false;
};

plug_params effective_params(const options& o) {
    plug_params p;
    std::string path = o.config;
    if (path.empty())
        if (const char* env = std::getenv(config_env)) path = env;
    if (!path.empty()) p = load_params(path, p);
    if (o.a) p.a = *o.a;
    if (o.R) p.R = *o.R;
    if (o.alpha) p.alpha = *o.alpha;
    if (o.beta) p.beta = *o.beta;
    if (o.b) p.b = *o.b;
    if (o.epsilon) p.epsilon = *o.epsilon;
    if (o.delta) p.delta = *o.delta;
    return validate(p);
}

pressure_settings effective_settings(const options& o) {
    pressure_settings st = o.st;
    st.model = parse_width_model(o.model);
    st.interlace = !o.no_interlace;
    st.threads = o.threads;
    return st;
}

json config_json(const options& o, const plug_params& p) {
    json j{{"params", to_json(p)}, {"seed", o.seed}, {"threads", o.threads}};
    return j;
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class sink {
public:
    explicit sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw usage_error("cannot write '" + path + "'");
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const options& o, json j) {
    if (!o.no_timestamp) j["generated_at"] = timestamp();
    sink s(o.output);
    s.out() << j.dump(2) << "\n";
}

int cmd_constants(const options& o) {
    plug_params p = effective_params(o);
    derived_constants dc = derive_constants(p);
    auto rc = make_ratio_coefficients(p, dc);
    json j{{"config", config_json(o, p)},
           {"constants", to_json(dc)},
           {"ratio_coefficients", {{"s_coef", rc.s_coef}, {"r_coef", rc.r_coef}, {"r_tail", rc.r_tail}}}};
    emit_json(o, j);
    return 0;
}

int cmd_curves(const options& o, int level, const std::string& indices, const std::string& prefix, int points) {
    plug_params p = effective_params(o);
    if (level < 1) throw usage_error("--level must be >= 1");
    word pre = prefix.empty() ? word{} : parse_word(prefix);
    if (int(pre.size()) != level - 1) throw usage_error("--prefix must have level-1 symbols");
    range r = parse_range(indices);
    sink s(o.output);
    auto& out = s.out();
    json cfg = config_json(o, p);
    cfg["grid_ratio"] = 0.8;
    cfg["points"] = points;
    out << "# " << cfg.dump() << "\n";
    out << "word,s,r,theta,z\n";
    for (long i = r.lo; i <= r.hi; ++i) {
        word w = pre;
        w.push_back(i);
        curve_domain d = domain_of(p, w);
        auto grid = sample_grid(d.e.s_minus, d.e.s_plus, points);
        std::string name = csv_field(format_word(w));
        for (double sv : grid) {
            cyl_point c = w.empty() ? cyl_point{2, p.beta, -1 + sv} : [&] {
                level_state st{0.0, sv};
                for (long sym : w) st = advance(p, sym, st);
                return cyl_point{2 + st.x, p.beta, -1 + st.q};
            }();
            out << name << ',' << num(sv) << ',' << num(c.r) << ',' << num(c.theta) << ',' << num(c.z) << "\n";
        }
    }
    return 0;
}

int cmd_escape(const options& o, const std::string& prefix, const std::string& window) {
    plug_params p = effective_params(o);
    derived_constants dc = derive_constants(p);
    std::vector<word> prefixes;
    if (!prefix.empty()) prefixes.push_back(parse_word(prefix));
    if (!window.empty()) {
        range r = parse_range(window);
        for (long i = r.lo; i <= r.hi; ++i) prefixes.push_back({i});
    }
    if (prefixes.empty()) throw usage_error("escape needs --prefix or --window");
    sink s(o.output);
    auto& out = s.out();
    out << "# " << json{{"config", config_json(o, p)}, {"constants", to_json(dc)}}.dump() << "\n";
    out << "prefix,escape_time,bracket_lo,bracket_hi\n";
    for (const auto& w : prefixes) {
        long m = escape_time(p, w);
        double i2 = double(w.back()) * double(w.back());
        out << csv_field(format_word(w)) << ',' << m << ',' << num(dc.C + (dc.K - p.delta) * i2) << ','
            << num(dc.C + p.delta + dc.K * i2) << "\n";
    }
    return 0;
}

int cmd_widths(const options& o, int level, const std::string& window) {
    plug_params p = effective_params(o);
    derived_constants dc = derive_constants(p);
    range r = parse_range(window);
    incidence_spec spec{r.lo, dc.C_floor, dc.K_floor};
    if (r.lo < 1) throw usage_error("window must start at 1 or above");
    auto words = enumerate_level(spec, level, r.hi);
    std::vector<width_row> rows(words.size());
    parallel_for(words.size(), o.threads, [&](std::size_t k) { rows[k] = width_table(p, dc, {words[k]})[0]; });
    sink s(o.output);
    auto& out = s.out();
    out << "# " << json{{"config", config_json(o, p)}, {"constants", to_json(dc)}, {"level", level},
                        {"window", {r.lo, r.hi}}}.dump()
        << "\n";
    out << "word,a_minus,a_plus,width_exact,width_asymptotic,rel_err\n";
    for (const auto& row : rows)
        out << csv_field(format_word(row.w)) << ',' << num(row.iv.a_minus) << ',' << num(row.iv.a_plus) << ','
            << num(row.iv.width()) << ',' << num(row.asymptotic) << ',' << num(row.rel_err) << "\n";
    return 0;
}

int cmd_pressure(const options& o, const std::string& grid) {
    plug_params p = effective_params(o);
    derived_constants dc = derive_constants(p);
    pressure_settings st = effective_settings(o);
    double t0, t1;
    int steps;
    {
        std::stringstream ss(grid);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
            throw usage_error("--grid expects t0:t1:steps");
        try {
            t0 = std::stod(a);
            t1 = std::stod(b);
            steps = std::stoi(c);
        } catch (const std::logic_error&) {
            throw usage_error("--grid expects t0:t1:steps");
        }
        if (steps < 2 || !(t1 > t0)) throw usage_error("--grid needs t1 > t0 and steps >= 2");
    }
    sink s(o.output);
    auto& out = s.out();
    st.offset = make_spec(dc, st.offset).offset;
    out << "# " << json{{"config", config_json(o, p)}, {"constants", to_json(dc)}, {"settings", to_json(st)}}.dump()
        << "\n";
    out << "t,p_lower,p_upper,p_spectral\n";
    for (int k = 0; k < steps; ++k) {
        double t = t0 + (t1 - t0) * k / (steps - 1);
        double lo = pressure_lower(p, dc, t, st);
        double up = t > 0.5 ? pressure_upper(p, dc, t) : std::numeric_limits<double>::infinity();
        double sp = spectral_pressure(p, dc, t, st.spectral_M, st.interlace, st.offset);
        out << num(t) << ',' << num(lo) << ',' << num(up) << ',' << num(sp) << "\n";
    }
    return 0;
}

int cmd_dimension(const options& o) {
    plug_params p = effective_params(o);
    derived_constants dc = derive_constants(p);
    pressure_settings st = effective_settings(o);
    auto rep = make_dimension_report(p, dc, st);
    json j = to_json(rep);
    j["config"] = config_json(o, p);
    emit_json(o, j);
    return 0;
}

int cmd_verify(const options& o) {
    plug_params p = effective_params(o);
    json rep = run_verify_suite(p, o.seed, o.threads);
    rep["config"] = config_json(o, p);
    emit_json(o, rep);
    return rep.value("pass", false) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transverse Cantor set dimension bounds for the Kuperberg minimal set"};
    app.require_subcommand(1);
    options o;
    app.add_option("--config", o.config, std::string("JSON parameter file (default from $") + config_env + ")");
    app.add_option("--seed", o.seed, "seed for random word batteries");
    app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("-o,--output", o.output, "write to file instead of stdout");
    app.add_flag("--no-timestamp", o.no_timestamp, "omit the generated_at field");
    app.add_option("--a", o.a, "angular speed");
    app.add_option("--R", o.R, "half-height of the critical strip");
    app.add_option("--alpha", o.alpha, "insertion vertex angle");
    app.add_option("--beta", o.beta, "section angle");
    app.add_option("--b", o.b, "section width");
    app.add_option("--epsilon", o.epsilon, "sub-section width");
    app.add_option("--delta", o.delta, "asymptotic tolerance");

    auto add_pressure_opts = [&](CLI::App* sc) {
        sc->add_option("--n-max", o.st.n_max, "word length of the truncated pressure")->check(CLI::Range(2, 1000));
        sc->add_option("--max-symbol", o.st.max_symbol, "largest symbol in direct sums");
        sc->add_option("--spectral-M", o.st.spectral_M, "symbol count of the transfer operator");
        sc->add_option("--offset", o.st.offset, "alphabet offset (0 = N_eps)");
        sc->add_option("--width-model", o.model, "exact | asymptotic | asymptotic_lower | asymptotic_upper");
        sc->add_flag("--no-interlace", o.no_interlace, "drop the interlacing factor");
    };

    auto* c_const = app.add_subcommand("constants", "print derived constants");
    int level = 1, points = 64;
    std::string indices, prefix, window, grid = "0.55:0.95:20";
    auto* c_curves = app.add_subcommand("curves", "CSV curve samples");
    c_curves->add_option("--level", level, "curve level")->required();
    c_curves->add_option("--indices", indices, "last-symbol range a..b")->required();
    c_curves->add_option("--prefix", prefix, "comma-separated prefix word for level > 1");
    c_curves->add_option("--points", points, "samples per curve")->check(CLI::Range(2, 1000000));
    auto* c_escape = app.add_subcommand("escape", "escape times and brackets");
    c_escape->add_option("--prefix", prefix, "comma-separated prefix word");
    c_escape->add_option("--window", window, "level-1 prefixes a..b");
    auto* c_widths = app.add_subcommand("widths", "width tables");
    c_widths->add_option("--level", level, "word length")->required();
    c_widths->add_option("--window", window, "symbol range a..b")->required();
    auto* c_pressure = app.add_subcommand("pressure", "pressure curves CSV");
    c_pressure->add_option("--grid", grid, "t0:t1:steps");
    add_pressure_opts(c_pressure);
    auto* c_dim = app.add_subcommand("dimension", "dimension report JSON");
    add_pressure_opts(c_dim);
    auto* c_verify = app.add_subcommand("verify", "run the oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_const) return cmd_constants(o);
        if (*c_curves) return cmd_curves(o, level, indices, prefix, points);
        if (*c_escape) return cmd_escape(o, prefix, window);
        if (*c_widths) return cmd_widths(o, level, window);
        if (*c_pressure) return cmd_pressure(o, grid);
        if (*c_dim) return cmd_dimension(o);
        if (*c_verify) return cmd_verify(o);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const param_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "parameter"}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "numeric"}}.dump() << "\n";
        return 1;
    }
    return 2;
}
