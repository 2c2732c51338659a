#include "cag/rational.hpp"

#include "cag/error.hpp"

#include <charconv>
#include <cmath>

namespace cag {

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    std::size_t start = (digits.front() == '-' || digits.front() == '+') ? 1 : 0;
    if (start == digits.size()) {
        throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t i = start; i < digits.size(); ++i) {
        if (digits[i] < '0' || digits[i] > '9') {
            throw InputError("malformed rational '" + std::string(whole) + "'");
        }
    }
    std::string s(digits.front() == '+' ? digits.substr(1) : digits);
    return BigInt(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) {
            throw InputError("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        std::string all(int_part.empty() || int_part == "-" || int_part == "+" ? std::string(int_part) + "0"
                                                                              : std::string(int_part));
        BigInt whole = parse_integer(all, text);
        BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        if (!frac_part.empty() && (frac_part.front() == '-' || frac_part.front() == '+')) {
            throw InputError("malformed rational '" + std::string(text) + "'");
        }
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
        Rational r = Rational(whole) + Rational(frac, scale) * (negative ? -1 : 1);
        return r;
    }
    return Rational(parse_integer(text, text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_upper_bound(double x, double slack) {
    constexpr double kScale = 1e10;
    if (!std::isfinite(x) || slack < 2.0 / kScale) {
        throw InputError("rational_upper_bound: need finite x and slack >= 2e-10");
    }
    double ticks = std::ceil(x * kScale) + 1.0;
    return Rational(BigInt(static_cast<long long>(ticks)), BigInt(static_cast<long long>(kScale)));
}

void RationalSum::add(std::int64_t num, std::int64_t den) {
    for (auto& b : buckets_) {
        if (b.den == den) {
            std::int64_t sum;
            if (__builtin_add_overflow(b.num, num, &sum)) {
                spill_ += make_rational(b.num, den);
                b.num = num;
            } else {
                b.num = sum;
            }
            return;
        }
    }
    buckets_.push_back({den, num});
}

Rational RationalSum::value() const {
    Rational total = spill_;
    for (const auto& b : buckets_) {
        if (b.num != 0) {
            total += make_rational(b.num, b.den);
        }
    }
    return total;
}

HarmonicTable::HarmonicTable(std::size_t max_k) {
    values_.reserve(max_k + 1);
    values_.emplace_back(0);
    for (std::size_t k = 1; k <= max_k; ++k) {
        values_.push_back(values_.back() + make_rational(1, static_cast<std::int64_t>(k)));
    }
}

}  // namespace cag
