#include "kuperberg/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace kup {

plug_params params_from_json(const nlohmann::json& j, plug_params p) {
    if (!j.is_object()) throw param_error("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (!it->is_number()) throw param_error("config field '" + k + "' must be a number");
        double v = it->get<double>();
        if (k == "a")
            p.a = v;
        else if (k == "R")
            p.R = v;
        else if (k == "alpha")
            p.alpha = v;
        else if (k == "beta")
            p.beta = v;
        else if (k == "b")
            p.b = v;
        else if (k == "epsilon")
            p.epsilon = v;
        else if (k == "delta")
            p.delta = v;
        else
            throw param_error("unknown config field '" + k + "'");
    }
    return p;
}

plug_params load_params(const std::string& path, plug_params p) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw param_error("config '" + path + "' is not valid JSON: " + e.what());
    }
    return params_from_json(j, p);
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace kup
