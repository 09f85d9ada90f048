#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "winter/spectral.hpp"

using namespace winter;

TEST_CASE("spectral function reproduces a high-precision reference value") {
    ModelConfig cfg{9, 0.05};
    // 50-digit evaluation of cot(pi k) + cot(pi N k) + 1/(pi g k) at k = 0.95
    const double ref = 0.2291248067644347448;
    CHECK(std::fabs(spectral_fn(0.95, cfg) - ref) < 1e-11);
}

TEST_CASE("spectral function at exactly cancelling rational points") {
    // k = 1/4, N = 3: cot(pi/4) + cot(3pi/4) = 0, leaving 1/(pi g k)
    ModelConfig a{3, 1.0};
    CHECK(spectral_fn(0.25, a) == doctest::Approx(4.0 / pi).epsilon(1e-14));
    // k = 1/2, N = 5: both cotangents vanish
    ModelConfig b{5, 2.0};
    CHECK(spectral_fn(0.5, b) == doctest::Approx(1.0 / pi).epsilon(1e-14));
}

TEST_CASE("pole guard rejects multiples of 1/N, passes nearby points") {
    ModelConfig cfg{3, 1.0};
    CHECK_THROWS_AS(spectral_fn(1.0 / 3.0, cfg), pole_error);
    CHECK_THROWS_AS(spectral_fn(2.0 / 3.0 + 1e-14, cfg), pole_error);
    CHECK_THROWS_AS(spectral_fn(1.0, cfg), pole_error);
    CHECK(std::isfinite(spectral_fn(1.0 / 3.0 + 1e-9, cfg)));
    CHECK_THROWS_AS(spectral_fn(-0.25, cfg), domain_error);
}

TEST_CASE("spectral function diverges with the expected signs at the brackets") {
    ModelConfig cfg{9, 0.3};
    for (int s = 1; s <= 12; ++s) {
        auto [lo, hi] = bracket_for(s, cfg.N);
        CHECK(spectral_fn(lo + 1e-7, cfg) > 1e4);
        CHECK(spectral_fn(hi - 1e-7, cfg) < -1e4);
    }
}

TEST_CASE("spectral function is strictly decreasing inside a bracket") {
    ModelConfig cfg{9, 0.3};
    auto [lo, hi] = bracket_for(3, cfg.N);
    double prev = spectral_fn(lo + 1e-4, cfg);
    for (int i = 1; i <= 20; ++i) {
        double k = lo + 1e-4 + (hi - lo - 2e-4) * i / 20.0;
        double f = spectral_fn(k, cfg);
        CHECK(f < prev);
        CHECK(spectral_fn_dk(k, cfg) < 0.0);
        prev = f;
    }
}

TEST_CASE("coupling derivative of the spectral function matches differencing") {
    ModelConfig cfg{9, 0.2};
    const double k = 0.87;
    const double h = 1e-6;
    double fd = (spectral_fn(k, ModelConfig{9, 0.2 + h})
                 - spectral_fn(k, ModelConfig{9, 0.2 - h})) / (2 * h);
    double an = spectral_fn_dg(k, cfg);
    CHECK(an < 0.0);
    CHECK(std::fabs(fd - an) < 1e-6 * std::fabs(an));
}

TEST_CASE("level labels round-trip and obey the remainder window") {
    for (int N : {1, 2, 3, 4, 9, 10}) {
        for (int s = 1; s <= 3 * N + 2; ++s) {
            LevelLabel lab = label_from_s(s, N);
            REQUIRE(lab.s.has_value());
            CHECK(*lab.s == s);
            CHECK(lab.n * N + lab.l == s);
            CHECK(2 * lab.l > -N);
            CHECK(2 * lab.l <= N);
            CHECK(s_from_label(lab.n, lab.l, N) == s);
            if (lab.l == 0) {
                CHECK(lab.kind == LevelKind::resonant);
                CHECK(lab.n >= 1);
            } else {
                CHECK(lab.kind == LevelKind::nonresonant);
            }
        }
    }
}

TEST_CASE("label edge cases") {
    // even N: the boundary remainder N/2 is kept, -N/2 is not
    LevelLabel lab = label_from_s(15, 10);
    CHECK(lab.n == 1);
    CHECK(lab.l == 5);
    lab = label_from_s(5, 9);
    CHECK(lab.n == 1);
    CHECK(lab.l == -4);
    lab = label_from_s(4, 9);
    CHECK(lab.n == 0);
    CHECK(lab.l == 4);
    CHECK_THROWS_AS(s_from_label(1, 5, 9), domain_error);
    CHECK_THROWS_AS(s_from_label(1, -5, 10), domain_error);
    CHECK_THROWS_AS(s_from_label(0, 0, 9), domain_error);

    LevelLabel ex = exceptional_label(2);
    CHECK(!ex.s.has_value());
    CHECK(ex.n == 2);
    CHECK(ex.kind == LevelKind::exceptional);
    CHECK(ex.free_momentum(9) == 2.0);
    CHECK_THROWS_AS(exceptional_label(0), domain_error);
}

TEST_CASE("strong-coupling limits follow the shifted-index law") {
    CHECK(strong_coupling_limit(9, 9) == doctest::Approx(0.9));    // l = 0
    CHECK(strong_coupling_limit(8, 9) == doctest::Approx(0.8));    // l = -1
    CHECK(strong_coupling_limit(10, 9) == doctest::Approx(1.1));   // l = 1
    CHECK(strong_coupling_limit(3, 3) == doctest::Approx(0.75));
    CHECK(strong_coupling_limit(4, 3) == doctest::Approx(1.25));
    CHECK(strong_coupling_limit(2, 3) == doctest::Approx(0.5));
    for (int N : {3, 9, 10}) {
        for (int s = 1; s <= 3 * N; ++s) {
            LevelLabel lab = label_from_s(s, N);
            int u = s + lab.n - (lab.l <= 0 ? 1 : 0);
            CHECK(strong_coupling_limit(s, N) == doctest::Approx(double(u) / (N + 1)));
        }
    }
}

TEST_CASE("solved levels approach the strong-coupling grid at g = 1e6") {
    for (int N : {3, 9, 99}) {
        ModelConfig cfg{N, 1e6};
        for (int s : {1, 2, N - 1, N, N + 1, 2 * N}) {
            if (s < 1) continue;
            MomentumLevel lev = solve_level(cfg, s);
            CHECK(std::fabs(lev.k - strong_coupling_limit(s, N)) < 1e-6);
        }
    }
}

TEST_CASE("solved levels approach the free grid from below at tiny coupling") {
    for (int N : {3, 9}) {
        ModelConfig cfg{N, 1e-12};
        for (int s = 1; s <= 2 * N; ++s) {
            if (s % N == 0 && label_from_s(s, N).l != 0) continue;
            MomentumLevel lev = solve_level(cfg, s);
            CHECK(lev.k < double(s) / N);
            CHECK(std::fabs(lev.k - double(s) / N) < 1e-10);
        }
    }
}

TEST_CASE("solver postconditions: bracket containment and residual") {
    for (int N : {3, 9, 99}) {
        for (double g : {0.01, 0.3, 5.0}) {
            ModelConfig cfg{N, g};
            for (int s : {1, N, N + 1, 2 * N - 1}) {
                MomentumLevel lev = solve_level(cfg, s);
                auto [lo, hi] = bracket_for(s, N);
                CHECK(lev.k > lo);
                CHECK(lev.k < hi);
                CHECK(lev.iterations > 10);
                CHECK(lev.iterations < 80);
                CHECK(lev.residual < 1e-4);
            }
        }
    }
}

TEST_CASE("momentum reference value at the first resonant level") {
    ModelConfig cfg{9, 0.05};
    MomentumLevel lev = solve_level(cfg, 9);
    CHECK(std::fabs(lev.k - 0.9513625166321495) < 1e-12);
}

TEST_CASE("each level decreases strictly with the coupling") {
    for (int s : {5, 9, 10}) {
        double prev = 2.0;
        for (double g : {1e-3, 1e-2, 0.1, 0.5, 1.0, 5.0, 50.0}) {
            double k = solve_level(ModelConfig{9, g}, s).k;
            CHECK(k < prev);
            prev = k;
        }
    }
}

TEST_CASE("endpoint guards that swallow the bracket raise bracket_error") {
    SolverOptions opts;
    opts.endpoint_guard = 0.6;
    CHECK_THROWS_AS(solve_level(ModelConfig{9, 0.1}, 1, opts), bracket_error);
}

TEST_CASE("an exhausted iteration budget raises convergence_error") {
    SolverOptions opts;
    opts.max_iter = 5;
    CHECK_THROWS_AS(solve_level(ModelConfig{9, 0.1}, 3, opts), convergence_error);
}

TEST_CASE("exceptional level enumeration") {
    CHECK(exceptional_levels(3.2) == std::vector<int>{1, 2, 3});
    CHECK(exceptional_levels(3.0) == std::vector<int>{1, 2, 3});
    CHECK(exceptional_levels(0.5).empty());
}

TEST_CASE("invalid model rejected") {
    CHECK_THROWS_AS(solve_level(ModelConfig{0, 0.1}, 1), config_error);
    CHECK_THROWS_AS(solve_level(ModelConfig{9, 0.0}, 1), config_error);
    CHECK_THROWS_AS(solve_level(ModelConfig{9, -1.0}, 1), config_error);
}
