#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kup {

using word = std::vector<long>;

struct incidence_spec {
    long offset = 1;
    long c_floor = 0;
    long k_floor = 1;
};

enum class tag { E, E2 };

struct tagged_symbol {
    long symbol = 0;
    tag t = tag::E;
};

bool admissible(const incidence_spec& spec, long i, long j);

// largest j with admissible(i, j)
long max_successor(const incidence_spec& spec, long i);

// smallest i >= offset with admissible(i, j)
long min_predecessor(const incidence_spec& spec, long j);

bool is_admissible_word(const incidence_spec& spec, const word& w);

// lazy depth-first enumeration in lexicographic order
class level_enumerator {
public:
    level_enumerator(incidence_spec spec, int n, long max_symbol, long first_lo = 0, long first_hi = 0);
    bool next(word& out);

private:
    incidence_spec spec_;
    int n_;
    long max_symbol_;
    long first_hi_;
    word cur_;
    bool started_ = false;
    bool done_ = false;
    long cap(std::size_t pos) const;
};

std::vector<word> enumerate_level(const incidence_spec& spec, int n, long max_symbol);
std::size_t count_level(const incidence_spec& spec, int n, long max_symbol);

word dual(const word& w);
std::optional<word> act_phi(const word& w, long prefix_escape);
word act_theta(const word& w, long n_eps);

bool joint_admissible(const tagged_symbol& x, const tagged_symbol& y, const incidence_spec& spec);

std::string format_word(const word& w);
word parse_word(const std::string& s);
std::string format_tagged(const tagged_symbol& x);
tagged_symbol parse_tagged(const std::string& s);

}  // namespace kup
