#pragma once

#include "cfn/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfn {

inline constexpr std::size_t kMaxVars = 12;

/// Ordered, immutable list of variable names.
class VarAlphabet {
public:
    explicit VarAlphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const VarAlphabet& a, const VarAlphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using Alphabet = std::shared_ptr<const VarAlphabet>;

Alphabet make_alphabet(std::vector<std::string> names);

/// x
const Alphabet& rank1_alphabet();
/// x, y, z
const Alphabet& rank2_alphabet();
/// t1, t2, t3, t12, t13, t23, t123
const Alphabet& rank3_alphabet();
/// x1_11 ... x3_22, generator-major then row-major
const Alphabet& entry_alphabet();

class AlphabetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Monomial {
    std::array<std::uint8_t, kMaxVars> exp{};

    unsigned degree() const;
    Monomial operator*(const Monomial& o) const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: total degree first, then the larger exponent in
/// the earliest differing variable wins.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    explicit Polynomial(Alphabet alphabet);
    Polynomial(Alphabet alphabet, const Rational& constant);

    static Polynomial variable(Alphabet alphabet, std::size_t index);
    static Polynomial variable(Alphabet alphabet, std::string_view name);

    const Alphabet& alphabet() const { return alpha_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);
    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;

    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    /// Adds c*q to this polynomial in place.
    void add_scaled(const Polynomial& q, const Rational& c);

    Polynomial pow(unsigned n) const;

    /// Values are given in alphabet order.
    Rational evaluate(const std::vector<Rational>& values) const;
    Rational evaluate(const std::map<std::string, Rational>& assignment) const;

    /// Replaces variable i by images[i]; all images share one target alphabet.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    std::string to_text() const;
    std::string to_json() const;
    static Polynomial parse_text(Alphabet alphabet, std::string_view text);
    static Polynomial parse_json(std::string_view json);

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    void check_same(const Polynomial& o) const;

    Alphabet alpha_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace cfn
