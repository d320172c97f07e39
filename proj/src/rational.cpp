#include <cstdlib>
#include "cfn/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace cfn {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_parts(s, "1");
    return from_parts(s.substr(0, slash), s.substr(slash + 1));
}

Rational Rational::from_parts(std::string_view num, std::string_view den) {
    auto valid = [](std::string_view t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false))
        throw std::invalid_argument("malformed rational: " + std::string(num) + "/" + std::string(den));
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0) throw std::domain_error("rational with zero denominator");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

bool Rational::is_square() const {
    if (sgn(q_) < 0) return false;
    return mpz_perfect_square_p(q_.get_num_mpz_t()) && mpz_perfect_square_p(q_.get_den_mpz_t());
}

Rational Rational::sqrt_exact() const {
    if (!is_square()) throw std::domain_error("not a rational square: " + to_string());
    mpz_class n = sqrt(q_.get_num());
    mpz_class d = sqrt(q_.get_den());
    return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, unsigned exp) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exp);
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exp);
    return Rational(mpq_class(n, d));
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

long double Rational::to_long_double() const {
    long double n = std::strtold(num_string().c_str(), nullptr);
    long double d = std::strtold(den_string().c_str(), nullptr);
    return n / d;
}

}  // namespace cfn
