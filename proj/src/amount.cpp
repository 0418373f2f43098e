#include "mergemix/amount.hpp"

#include <cctype>
#include <ostream>

#include "mergemix/error.hpp"

namespace mergemix {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "parse error";
        case ErrorCode::Unbalanced: return "unbalanced";
        case ErrorCode::NonPositiveValue: return "non-positive value";
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::DuplicateNode: return "duplicate node";
        case ErrorCode::MonotonicityViolation: return "monotonicity violation";
        case ErrorCode::NonPositiveReward: return "non-positive reward";
        case ErrorCode::OutOfDomain: return "out of domain";
        case ErrorCode::Infeasible: return "infeasible";
        case ErrorCode::TooLarge: return "too large";
        case ErrorCode::OddSum: return "odd total";
        case ErrorCode::BaseCaseFails: return "base case fails";
        case ErrorCode::InvalidPmf: return "invalid pmf";
        case ErrorCode::SybilCollision: return "sybil collision";
        case ErrorCode::InvalidConfig: return "invalid config";
    }
    return "unknown";
}

namespace {

mpz_class to_mpz(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Amount::Amount(std::int64_t value) : value_(to_mpz(value)) {}

Amount::Amount(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    value_ = mpq_class(to_mpz(numerator), to_mpz(denominator));
    value_.canonicalize();
}

Amount::Amount(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Amount Amount::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    // Denominator takes no sign; the sign lives on the numerator.
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Amount(mpq_class(n, d));
}

Amount Amount::pow2(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Amount(mpq_class(p)) : Amount(mpq_class(mpz_class(1), p));
}

std::string Amount::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

bool Amount::is_integer() const { return value_.get_den() == 1; }

std::string Amount::numerator() const { return value_.get_num().get_str(); }
std::string Amount::denominator() const { return value_.get_den().get_str(); }

Amount& Amount::operator+=(const Amount& rhs) {
    value_ += rhs.value_;
    return *this;
}

Amount& Amount::operator-=(const Amount& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Amount& Amount::operator*=(const Amount& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Amount& Amount::operator/=(const Amount& rhs) {
    if (rhs.sign() == 0) throw Error(ErrorCode::OutOfDomain, "division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Amount& a) { return os << a.to_string(); }

}  // namespace mergemix
