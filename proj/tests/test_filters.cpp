#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specprop/filters.hpp"

using namespace specprop;

TEST_CASE("builtin filter values at reference points") {
    const auto g0 = builtin_filter("g0", 0.5);
    CHECK(g0.evaluate(0.0) == doctest::Approx(0.5).epsilon(1e-15));

    const auto g4 = builtin_filter("g4");
    const auto g5 = builtin_filter("g5");
    CHECK(g4.evaluate(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g5.evaluate(0.0) == doctest::Approx(0.0).epsilon(1e-15));

    const auto g6 = builtin_filter("g6");
    const auto g7 = builtin_filter("g7");
    CHECK(g6.evaluate(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g7.evaluate(1.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("builtin domains follow the simple/complex split") {
    for (const auto& name : {"g0", "g1", "g2", "g3"}) {
        const auto f = builtin_filter(name, std::string(name) == "g0"
                                                ? std::optional<double>(0.1)
                                                : std::nullopt);
        CHECK(f.domain.lower == doctest::Approx(-0.9));
        CHECK(f.domain.upper == doctest::Approx(0.9));
        CHECK(f.is_adjacency_domain());
    }
    for (const auto& name : {"g4", "g5", "g6", "g7"}) {
        const auto f = builtin_filter(name);
        CHECK(f.domain.lower == doctest::Approx(1e-5));
        CHECK(f.domain.upper == doctest::Approx(2.0));
        CHECK_FALSE(f.is_adjacency_domain());
    }
}

TEST_CASE("builtin filter argument validation") {
    CHECK_THROWS_AS((void)builtin_filter("g9"), std::invalid_argument);
    CHECK_THROWS_AS((void)builtin_filter("g0"), std::invalid_argument);          // missing alpha
    CHECK_THROWS_AS((void)builtin_filter("g0", 1.5), std::invalid_argument);     // out of (0,1)
    CHECK_THROWS_AS((void)builtin_filter("g0", 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)builtin_filter("g1", 0.5), std::invalid_argument);     // unused alpha
}

TEST_CASE("eval_filter reports values in order and rejects out-of-domain points") {
    const auto g1 = builtin_filter("g1");
    const std::vector<double> pts{0.0, 0.5};
    const auto values = eval_filter(g1, pts);
    CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-15));

    const auto g2 = builtin_filter("g2");
    const auto g3 = builtin_filter("g3");
    const std::vector<double> zero{0.0};
    CHECK(eval_filter(g2, zero)[0] == doctest::Approx(0.0));
    CHECK(eval_filter(g3, zero)[0] == doctest::Approx(0.0));

    const auto g4 = builtin_filter("g4");
    const std::vector<double> two{2.0};
    // e^{-40}, cross-checked against a high-precision evaluation.
    CHECK(eval_filter(g4, two)[0] == doctest::Approx(4.248354255291589e-18).epsilon(1e-12));

    const std::vector<double> bad{0.0, 0.95};
    try {
        (void)eval_filter(g1, bad);
        FAIL("expected domain_error");
    } catch (const std::domain_error& err) {
        CHECK(std::string(err.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("complement pairs sum to one pointwise") {
    const auto g4 = builtin_filter("g4");
    const auto g5 = builtin_filter("g5");
    const auto g6 = builtin_filter("g6");
    const auto g7 = builtin_filter("g7");
    for (int i = 0; i <= 1000; ++i) {
        const double w = 1e-5 + (2.0 - 1e-5) * static_cast<double>(i) / 1000.0;
        CHECK(std::fabs(g4.evaluate(w) + g5.evaluate(w) - 1.0) < 1e-15);
        CHECK(std::fabs(g6.evaluate(w) + g7.evaluate(w) - 1.0) < 1e-15);
    }
}

TEST_CASE("random-walk algebraic identities") {
    const auto g0 = builtin_filter("g0", 0.25);
    const auto g1 = builtin_filter("g1");
    const auto g2 = builtin_filter("g2");
    for (int i = 0; i <= 1000; ++i) {
        const double w = -0.9 + 1.8 * static_cast<double>(i) / 1000.0;
        CHECK(std::fabs(g1.evaluate(w) - g2.evaluate(w) - 1.0) < 1e-13);
        CHECK(g0.evaluate(w) == doctest::Approx(0.75 * g1.evaluate(w)).epsilon(1e-15));
    }
}

TEST_CASE("all builtins stay within magnitude 10 on their default domains") {
    std::vector<FilterSpec> filters;
    for (const auto& name : builtin_filter_names())
        filters.push_back(builtin_filter(name, name == "g0" ? std::optional<double>(0.1)
                                                            : std::nullopt));
    for (const auto& f : filters) {
        for (int i = 0; i <= 1000; ++i) {
            const double w =
                f.domain.lower + f.domain.width() * static_cast<double>(i) / 1000.0;
            const double value = f.evaluate(w);
            CHECK(std::isfinite(value));
            CHECK(std::fabs(value) <= 10.0 + 1e-12);
        }
    }
}
