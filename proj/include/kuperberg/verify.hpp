#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "kuperberg/params.hpp"
#include "kuperberg/symbolic.hpp"

namespace kup {

// seeded admissible words, length uniform in [1, max_len], symbols in [offset, hi]
std::vector<word> random_words(std::uint64_t seed, const incidence_spec& spec, std::size_t count, int min_len,
                               int max_len, long hi);

nlohmann::json check_endpoint_battery(const plug_params& p, const std::vector<word>& words, long grid = 100000,
                                      int threads = 1);
nlohmann::json check_vertex_nesting(const plug_params& p, const std::vector<word>& words);
nlohmann::json check_flow_identities(const plug_params& p);
nlohmann::json check_control_instance(int levels = 14);

nlohmann::json run_verify_suite(const plug_params& p, std::uint64_t seed, int threads = 1);

}  // namespace kup
