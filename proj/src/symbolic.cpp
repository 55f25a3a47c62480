#include "kuperberg/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kup {

bool admissible(const incidence_spec& spec, long i, long j) {
    if (i < spec.offset || j < spec.offset) throw std::invalid_argument("symbol below alphabet offset");
    return j <= max_successor(spec, i);
}

long max_successor(const incidence_spec& spec, long i) {
    // saturate rather than overflow for huge i
    double cap = double(spec.c_floor) + double(spec.k_floor) * double(i) * double(i);
    if (cap > 4e18) return 4000000000000000000L;
    return spec.c_floor + spec.k_floor * i * i;
}

long min_predecessor(const incidence_spec& spec, long j) {
    if (j <= max_successor(spec, spec.offset)) return spec.offset;
    double need = double(j - spec.c_floor) / double(spec.k_floor);
    long i = std::max(spec.offset, static_cast<long>(std::floor(std::sqrt(need))) - 1);
    while (max_successor(spec, i) < j) ++i;
    while (i > spec.offset && max_successor(spec, i - 1) >= j) --i;
    return i;
}

bool is_admissible_word(const incidence_spec& spec, const word& w) {
    for (long s : w)
        if (s < spec.offset) return false;
    for (std::size_t k = 1; k < w.size(); ++k)
        if (!admissible(spec, w[k - 1], w[k])) return false;
    return true;
}

level_enumerator::level_enumerator(incidence_spec spec, int n, long max_symbol, long first_lo, long first_hi)
    : spec_(spec), n_(n), max_symbol_(max_symbol) {
    long lo = first_lo > 0 ? std::max(first_lo, spec.offset) : spec.offset;
    first_hi_ = first_hi > 0 ? std::min(first_hi, max_symbol) : max_symbol;
    if (n < 1 || lo > first_hi_) done_ = true;
    cur_.assign(std::max(n, 0), spec.offset);
    if (!cur_.empty()) cur_[0] = lo;
}

long level_enumerator::cap(std::size_t pos) const {
    if (pos == 0) return first_hi_;
    return std::min(max_symbol_, max_successor(spec_, cur_[pos - 1]));
}

bool level_enumerator::next(word& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        // offset is admissible after anything at or above offset when k_floor*offset^2 >= offset
        for (std::size_t k = 1; k < cur_.size(); ++k)
            if (cap(k) < spec_.offset) {
                done_ = true;
                return false;
            }
        out = cur_;
        return true;
    }
    int pos = n_ - 1;
    while (pos >= 0) {
        if (cur_[pos] < cap(pos)) {
            ++cur_[pos];
            bool ok = true;
            for (int k = pos + 1; k < n_; ++k) {
                cur_[k] = spec_.offset;
                if (cap(k) < spec_.offset) ok = false;
            }
            if (ok) {
                out = cur_;
                return true;
            }
            continue;
        }
        --pos;
    }
    done_ = true;
    return false;
}

std::vector<word> enumerate_level(const incidence_spec& spec, int n, long max_symbol) {
    std::vector<word> out;
    level_enumerator en(spec, n, max_symbol);
    word w;
    while (en.next(w)) out.push_back(w);
    return out;
}

// nested-sum cardinality via counts per last symbol
std::size_t count_level(const incidence_spec& spec, int n, long max_symbol) {
    if (n < 1 || max_symbol < spec.offset) return 0;
    std::size_t m = max_symbol - spec.offset + 1;
    std::vector<double> cnt(m, 1.0), next(m);
    for (int k = 1; k < n; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            long hi = std::min(max_symbol, max_successor(spec, spec.offset + long(i)));
            for (long j = spec.offset; j <= hi; ++j) next[j - spec.offset] += cnt[i];
        }
        cnt.swap(next);
    }
    double total = 0;
    for (double c : cnt) total += c;
    return static_cast<std::size_t>(total);
}

word dual(const word& w) { return word(w.rbegin(), w.rend()); }

std::optional<word> act_phi(const word& w, long prefix_escape) {
    if (w.empty()) throw std::invalid_argument("act_phi on the empty word");
    if (w.back() + 1 > prefix_escape) return std::nullopt;
    word out = w;
    ++out.back();
    return out;
}

word act_theta(const word& w, long n_eps) {
    word out = w;
    out.push_back(n_eps);
    return out;
}

bool joint_admissible(const tagged_symbol& x, const tagged_symbol& y, const incidence_spec& spec) {
    if (x.symbol < spec.offset || y.symbol < spec.offset) throw std::invalid_argument("symbol below alphabet offset");
    if (x.t != y.t) return true;
    return admissible(spec, x.symbol, y.symbol);
}

std::string format_word(const word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(w[k]);
    }
    return s;
}

word parse_word(const std::string& s) {
    word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty symbol in word '" + s + "'");
        tok = tok.substr(b, e - b + 1);
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad symbol '" + tok + "'");
        w.push_back(v);
    }
    return w;
}

std::string format_tagged(const tagged_symbol& x) {
    return (x.t == tag::E ? "E:" : "E2:") + std::to_string(x.symbol);
}

tagged_symbol parse_tagged(const std::string& s) {
    tagged_symbol x;
    std::string rest;
    if (s.rfind("E2:", 0) == 0) {
        x.t = tag::E2;
        rest = s.substr(3);
    } else if (s.rfind("E:", 0) == 0) {
        x.t = tag::E;
        rest = s.substr(2);
    } else {
        throw std::invalid_argument("bad tagged symbol '" + s + "'");
    }
    std::size_t used = 0;
    x.symbol = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("bad tagged symbol '" + s + "'");
    return x;
}

}  // namespace kup
