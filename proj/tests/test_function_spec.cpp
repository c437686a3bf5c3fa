#include <random>

#include <doctest.h>

#include "frac/errors.hpp"
#include "frac/function_spec.hpp"

using frac::MonomialSeries;

TEST_CASE("parse_function_spec") {
    CHECK(frac::parse_function_spec("poly:1@0") == MonomialSeries({{1.0, 0.0}}));

    const MonomialSeries y = frac::parse_function_spec("poly:2@1.5,-3@0");
    REQUIRE(y.size() == 2);
    CHECK(y.terms()[0] == frac::Monomial{-3.0, 0.0});
    CHECK(y.terms()[1] == frac::Monomial{2.0, 1.5});

    CHECK(frac::parse_function_spec("poly:1e-3@2.5E0,+4@1") ==
          MonomialSeries({{1e-3, 2.5}, {4.0, 1.0}}));
    CHECK(frac::parse_function_spec("poly:1@1", 2.0).base() == 2.0);
    CHECK(frac::parse_function_spec("poly:1@1,1@1") == MonomialSeries({{2.0, 1.0}}));
}

TEST_CASE("parse errors carry the byte offset") {
    auto offset_of = [](const char* text) -> std::size_t {
        try {
            frac::parse_function_spec(text);
        } catch (const frac::ParseError& e) {
            return e.offset();
        }
        return SIZE_MAX;
    };
    CHECK(offset_of("1@0") == 0);
    CHECK(offset_of("poly:") == 5);
    CHECK(offset_of("poly:1") == 6);
    CHECK(offset_of("poly:1@") == 7);
    CHECK(offset_of("poly:1@0,") == 9);
    CHECK(offset_of("poly:1@0;2@1") == 8);
    CHECK(offset_of("poly:x@1") == 5);

    CHECK_THROWS_WITH_AS(frac::parse_function_spec("poly:1@0x"), doctest::Contains("expected"),
                         frac::ParseError);
}

TEST_CASE("exponents must be integrable") {
    CHECK_THROWS_AS(frac::parse_function_spec("poly:1@-2"), frac::DomainError);
    CHECK_THROWS_AS(frac::parse_function_spec("poly:1@-1"), frac::DomainError);
    CHECK_NOTHROW(frac::parse_function_spec("poly:1@-0.5"));
}

TEST_CASE("format round-trips through parse") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coeff(-1e3, 1e3);
    std::uniform_real_distribution<double> expo(-0.999, 10.0);
    for (int i = 0; i < 2000; ++i) {
        std::vector<frac::Monomial> terms;
        for (int k = 0; k < 1 + i % 4; ++k) {
            terms.push_back({coeff(rng), expo(rng)});
        }
        const MonomialSeries y(std::move(terms));
        const std::string text = frac::format_function_spec(y);
        REQUIRE(frac::parse_function_spec(text) == y);
        REQUIRE(frac::format_function_spec(frac::parse_function_spec(text)) == text);
    }
}
