#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kuperberg/io.hpp"
#include "kuperberg/params.hpp"

using namespace kup;

TEST_CASE("default parameter set validates") {
    plug_params p;
    plug_params v = validate(p);
    CHECK(v.a == 10);
    CHECK(v.R == 0.5);
}

TEST_CASE("validation names the first broken invariant") {
    plug_params p;
    p.a = 0;
    CHECK_THROWS_WITH_AS(validate(p), "a must be positive", param_error);
    p = {};
    p.epsilon = 0.2;
    CHECK_THROWS_WITH_AS(validate(p), "epsilon exceeds b", param_error);
    p = {};
    p.R = 1.0;
    CHECK_THROWS_WITH_AS(validate(p), "R out of (0,1)", param_error);
    p = {};
    p.delta = -1;
    CHECK_THROWS_AS(validate(p), param_error);
}

TEST_CASE("angles are reduced once into [0, 2pi)") {
    plug_params p;
    p.alpha = -0.5;
    p.beta = 7.0;
    auto v = validate(p);
    CHECK(v.alpha == doctest::Approx(2 * std::numbers::pi - 0.5));
    CHECK(v.beta == doctest::Approx(7.0 - 2 * std::numbers::pi));
    CHECK(wrap_angle(2 * std::numbers::pi) == 0.0);
}

TEST_CASE("derived constants at the default parameters") {
    auto dc = derive_constants(validate({}));
    CHECK(dc.C == doctest::Approx(5 / (2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(dc.p == doctest::Approx(0.39788735772973837).epsilon(1e-14));
    CHECK(dc.K == doctest::Approx(7.8956835208714855).epsilon(1e-13));
    CHECK(dc.K_width == doctest::Approx(1.25));
    CHECK(dc.K * dc.K_width == doctest::Approx(std::numbers::pi * std::numbers::pi));
    CHECK(dc.C_floor == 0);
    CHECK(dc.K_floor == 7);
    CHECK(dc.N_eps == 125);
    CHECK(dc.N_b == 12);
    CHECK(std::abs(dc.p_fit - dc.p) < 1e-6 * dc.p);
}

TEST_CASE("C and K only see alpha - beta") {
    plug_params p;
    p.alpha = 0.3;
    p.beta = 0.1;
    auto d1 = derive_constants(validate(p));
    p.alpha = 1.3;
    p.beta = 1.1;
    auto d2 = derive_constants(validate(p));
    CHECK(d1.C == doctest::Approx(d2.C).epsilon(1e-12));
    CHECK(d1.K == doctest::Approx(d2.K).epsilon(1e-12));
}

TEST_CASE("C vanishes as R -> 1 with alpha = beta") {
    plug_params p;
    p.R = 1 - 1e-9;
    p.epsilon = 0.05;
    double C = (p.alpha - p.beta + p.a * (1 - p.R)) / (2 * std::numbers::pi);
    CHECK(std::abs(C) < 1e-8);
}

TEST_CASE("fitted vertex decay matches the small-s limit for i >= 100") {
    plug_params p = validate({});
    for (double beta : {0.0, 0.7}) {
        p.beta = beta;
        double fit = fit_vertex_decay(p, 100, 2000);
        CHECK(std::abs(fit - vertex_decay_constant(p)) < 1e-6 * vertex_decay_constant(p));
    }
}

TEST_CASE("N_eps is non-increasing in epsilon and scales like K_width / epsilon") {
    long prev = 0;
    for (double eps : {0.02, 0.01, 0.005, 0.0025}) {
        plug_params p;
        p.epsilon = eps;
        auto dc = derive_constants(validate(p));
        CHECK(dc.N_eps >= prev);
        prev = dc.N_eps;
        double ratio = dc.N_eps * eps / dc.K_width;
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 2.0);
    }
}

TEST_CASE("config overlay rejects unknown fields") {
    auto p = params_from_json(nlohmann::json{{"a", 12.0}, {"delta", 0.001}});
    CHECK(p.a == 12.0);
    CHECK(p.delta == 0.001);
    CHECK(p.R == 0.5);
    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"gamma", 1.0}}), param_error);
    CHECK(fmt17(0.1) == "0.10000000000000001");
}
