#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace mergemix {

/// Exact rational quantity. Always held in lowest terms with a positive
/// denominator; no operation ever rounds.
class Amount {
public:
    Amount() = default;
    Amount(std::int64_t value);  // NOLINT: integers convert implicitly
    Amount(std::int64_t numerator, std::int64_t denominator);
    explicit Amount(mpq_class value);

    /// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on anything else,
    /// including a zero denominator.
    static Amount parse(std::string_view text);

    /// 2^exponent for any sign of exponent.
    static Amount pow2(long exponent);

    std::string to_string() const;

    bool is_integer() const;
    int sign() const { return sgn(value_); }
    std::string numerator() const;
    std::string denominator() const;
    const mpq_class& raw() const { return value_; }

    Amount& operator+=(const Amount& rhs);
    Amount& operator-=(const Amount& rhs);
    Amount& operator*=(const Amount& rhs);
    Amount& operator/=(const Amount& rhs);

    friend Amount operator+(Amount lhs, const Amount& rhs) { return lhs += rhs; }
    friend Amount operator-(Amount lhs, const Amount& rhs) { return lhs -= rhs; }
    friend Amount operator*(Amount lhs, const Amount& rhs) { return lhs *= rhs; }
    friend Amount operator/(Amount lhs, const Amount& rhs) { return lhs /= rhs; }
    friend Amount operator-(const Amount& a) { return Amount(mpq_class(-a.value_)); }

    friend bool operator==(const Amount& a, const Amount& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Amount& a, const Amount& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Amount& a);

/// Column of exact amounts; index 0 holds the value for route length 1.
using AmountVector = Eigen::Matrix<Amount, Eigen::Dynamic, 1>;

}  // namespace mergemix

namespace Eigen {

template <>
struct NumTraits<mergemix::Amount> : GenericNumTraits<mergemix::Amount> {
    using Real = mergemix::Amount;
    using NonInteger = mergemix::Amount;
    using Nested = mergemix::Amount;
    using Literal = mergemix::Amount;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 4,
        MulCost = 8
    };
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
