#include "cfn/rad_exact.hpp"

#include <cmath>

namespace cfn {

RadExact::RadExact(int sign, Rational radicand) : sign_(sign), radicand_(std::move(radicand)) {
    if (radicand_.sign() < 0) throw std::domain_error("negative radicand");
    if (sign_ < -1 || sign_ > 1) throw std::invalid_argument("sign must be -1, 0 or 1");
    if (sign_ == 0 || radicand_.is_zero()) {
        sign_ = 0;
        radicand_ = Rational(0);
    }
}

RadExact RadExact::from_rational(const Rational& r) {
    return RadExact(r.sign(), r * r);
}

Rational RadExact::to_rational() const {
    if (sign_ == 0) return Rational(0);
    if (!radicand_.is_square()) throw NotRational("sqrt(" + radicand_.to_string() + ") is irrational");
    Rational root = radicand_.sqrt_exact();
    return sign_ > 0 ? root : -root;
}

double RadExact::to_double() const { return sign_ * std::sqrt(radicand_.to_double()); }

std::string RadExact::to_string() const {
    if (sign_ == 0) return "0";
    return std::string(sign_ < 0 ? "-" : "") + "sqrt(" + radicand_.to_string() + ")";
}

RadExact operator*(const RadExact& a, const RadExact& b) {
    return RadExact(a.sign_ * b.sign_, a.radicand_ * b.radicand_);
}

RadExact operator/(const RadExact& a, const RadExact& b) {
    if (b.sign_ == 0) throw std::domain_error("division by zero");
    return RadExact(a.sign_ * b.sign_, a.radicand_ / b.radicand_);
}

}  // namespace cfn
