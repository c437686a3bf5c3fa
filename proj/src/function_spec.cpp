#include "frac/function_spec.hpp"

#include <charconv>
#include <cmath>
#include <iterator>
#include <fmt/format.h>

#include "frac/errors.hpp"

namespace frac {
namespace {

constexpr std::string_view kPrefix = "poly:";

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t offset() const { return pos_; }
    bool done() const { return pos_ == text_.size(); }

    void expect(char c, const char* what) {
        if (done() || text_[pos_] != c) {
            throw ParseError(pos_, what);
        }
        ++pos_;
    }

    bool accept(char c) {
        if (!done() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double number(const char* what) {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        // from_chars rejects a leading '+', which the grammar allows.
        if (first != last && *first == '+') {
            ++first;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) {
            throw ParseError(pos_, what);
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

MonomialSeries parse_function_spec(std::string_view text, double base) {
    if (!text.starts_with(kPrefix)) {
        throw ParseError(0, "'poly:' prefix");
    }
    Cursor cur(text);
    for (char c : kPrefix) {
        cur.accept(c);
    }
    std::vector<Monomial> terms;
    do {
        const double coeff = cur.number("coefficient (decimal or scientific number)");
        cur.expect('@', "'@' between coefficient and exponent");
        const std::size_t exponent_offset = cur.offset();
        const double exponent = cur.number("exponent (decimal or scientific number)");
        if (!std::isfinite(coeff) || !std::isfinite(exponent)) {
            throw ParseError(exponent_offset, "finite number");
        }
        if (exponent <= -1.0) {
            throw DomainError(fmt::format("exponent {} at byte {} must be > -1", exponent,
                                          exponent_offset));
        }
        terms.push_back({coeff, exponent});
    } while (cur.accept(','));
    if (!cur.done()) {
        throw ParseError(cur.offset(), "',' or end of input");
    }
    return MonomialSeries(std::move(terms), base);
}

std::string format_function_spec(const MonomialSeries& y) {
    std::string out(kPrefix);
    bool first = true;
    for (const Monomial& m : y.terms()) {
        if (!first) {
            out += ',';
        }
        first = false;
        fmt::format_to(std::back_inserter(out), "{:.17g}@{:.17g}", m.coeff, m.exponent);
    }
    return out;
}

}  // namespace frac
