#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cag {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Canonical fraction: always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

/// "p/q" form; integers keep the "/1" suffix so every rational has one shape.
std::string to_string(const Rational& r);

/// Accepts "p/q", "p", and finite decimals such as "0.125".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Smallest multiple of 1e-10 strictly above x, plus one more tick; the result
/// lies in [x, x + slack] for slack >= 2e-10.
Rational rational_upper_bound(double x, double slack = 1e-9);

/// Exact accumulator for sums of many small fractions num/den.
///
/// Terms are bucketed by denominator in machine integers and folded into a
/// Rational only when value() is called (or a bucket would overflow).
class RationalSum {
public:
    RationalSum() { buckets_.reserve(8); }

    void add(std::int64_t num, std::int64_t den);
    void add(const Rational& r) { spill_ += r; }

    Rational value() const;

private:
    struct Bucket {
        std::int64_t den;
        std::int64_t num;
    };
    std::vector<Bucket> buckets_;
    Rational spill_;
};

/// Prefix sums H(k) = 1 + 1/2 + ... + 1/k as exact rationals, H(0) = 0.
class HarmonicTable {
public:
    explicit HarmonicTable(std::size_t max_k);

    const Rational& operator()(std::size_t k) const { return values_.at(k); }
    std::size_t max_k() const { return values_.size() - 1; }

private:
    std::vector<Rational> values_;
};

}  // namespace cag
