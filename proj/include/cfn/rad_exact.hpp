#pragma once

#include "cfn/rational.hpp"

#include <stdexcept>
#include <string>

namespace cfn {

class NotRational : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact value sign * sqrt(radicand).
class RadExact {
public:
    RadExact() = default;
    RadExact(int sign, Rational radicand);

    static RadExact from_rational(const Rational& r);
    static RadExact sqrt_of(const Rational& r) { return RadExact(r.is_zero() ? 0 : 1, r); }

    int sign() const { return sign_; }
    const Rational& radicand() const { return radicand_; }
    bool is_zero() const { return sign_ == 0; }

    Rational to_rational() const;
    double to_double() const;
    std::string to_string() const;

    friend RadExact operator*(const RadExact& a, const RadExact& b);
    friend RadExact operator/(const RadExact& a, const RadExact& b);
    RadExact operator-() const { return RadExact(-sign_, radicand_); }
    friend bool operator==(const RadExact&, const RadExact&) = default;

private:
    int sign_ = 0;
    Rational radicand_;
};

inline RadExact rad_mul(const RadExact& a, const RadExact& b) { return a * b; }
inline Rational rad_to_rational(const RadExact& a) { return a.to_rational(); }

}  // namespace cfn
