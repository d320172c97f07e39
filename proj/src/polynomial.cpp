#include "cfn/polynomial.hpp"

#include <json.hpp>

#include <cctype>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace cfn {

VarAlphabet::VarAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars)
        throw std::invalid_argument("alphabet larger than " + std::to_string(kMaxVars) + " variables");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty variable name");
        if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
    }
}

std::optional<std::size_t> VarAlphabet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Alphabet make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const VarAlphabet>(std::move(names));
}

const Alphabet& rank1_alphabet() {
    static const Alphabet a = make_alphabet({"x"});
    return a;
}

const Alphabet& rank2_alphabet() {
    static const Alphabet a = make_alphabet({"x", "y", "z"});
    return a;
}

const Alphabet& rank3_alphabet() {
    static const Alphabet a = make_alphabet({"t1", "t2", "t3", "t12", "t13", "t23", "t123"});
    return a;
}

const Alphabet& entry_alphabet() {
    static const Alphabet a = [] {
        std::vector<std::string> names;
        for (int k = 1; k <= 3; ++k)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    names.push_back("x" + std::to_string(k) + "_" + std::to_string(i) + std::to_string(j));
        return make_alphabet(std::move(names));
    }();
    return a;
}

unsigned Monomial::degree() const {
    return std::accumulate(exp.begin(), exp.end(), 0u);
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(exp[i]) + o.exp[i];
        if (s > 255) throw std::overflow_error("monomial exponent exceeds 255");
        r.exp[i] = static_cast<std::uint8_t>(s);
    }
    return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
    return false;
}

Polynomial::Polynomial(Alphabet alphabet) : alpha_(std::move(alphabet)) {
    if (!alpha_) throw std::invalid_argument("null alphabet");
}

Polynomial::Polynomial(Alphabet alphabet, const Rational& constant) : Polynomial(std::move(alphabet)) {
    add_term(Monomial{}, constant);
}

Polynomial Polynomial::variable(Alphabet alphabet, std::size_t index) {
    if (index >= alphabet->size()) throw std::out_of_range("variable index out of range");
    Polynomial p(std::move(alphabet));
    Monomial m;
    m.exp[index] = 1;
    p.terms_.emplace(m, Rational(1));
    return p;
}

Polynomial Polynomial::variable(Alphabet alphabet, std::string_view name) {
    auto idx = alphabet->index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable: " + std::string(name));
    return variable(std::move(alphabet), *idx);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial{}); }

unsigned Polynomial::total_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exp.at(var));
    return d;
}

void Polynomial::check_same(const Polynomial& o) const {
    if (alpha_ != o.alpha_ && !(*alpha_ == *o.alpha_))
        throw AlphabetMismatch("polynomials over different alphabets");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

void Polynomial::add_scaled(const Polynomial& q, const Rational& c) {
    check_same(q);
    if (c.is_zero()) return;
    for (const auto& [m, k] : q.terms_) add_term(m, k * c);
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, k] : terms_) k *= c;
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.alpha_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, k] : r.terms_) k = -k;
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result(alpha_, Rational(1));
    Polynomial base(*this);
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
    if (values.size() != alpha_->size())
        throw std::invalid_argument("evaluation needs one value per variable");
    // powers[i][k] = values[i]^k, built lazily up to the needed degree
    std::vector<std::vector<Rational>> powers(values.size());
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < values.size(); ++i) {
            unsigned e = m.exp[i];
            if (!e) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(Rational(1));
            while (pw.size() <= e) pw.push_back(pw.back() * values[i]);
            t *= pw[e];
        }
        total += t;
    }
    return total;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& assignment) const {
    std::vector<bool> used(alpha_->size(), false);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < alpha_->size(); ++i)
            if (m.exp[i]) used[i] = true;
    std::vector<Rational> values(alpha_->size());
    for (std::size_t i = 0; i < alpha_->size(); ++i) {
        auto it = assignment.find(alpha_->name(i));
        if (it != assignment.end()) {
            values[i] = it->second;
        } else if (used[i]) {
            throw std::invalid_argument("missing value for variable " + alpha_->name(i));
        }
    }
    return evaluate(values);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != alpha_->size())
        throw std::invalid_argument("substitution needs one image per variable");
    if (images.empty()) return *this;
    const Alphabet& target = images.front().alphabet();
    std::vector<std::vector<Polynomial>> powers(images.size());
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t(target, c);
        for (std::size_t i = 0; i < images.size(); ++i) {
            unsigned e = m.exp[i];
            if (!e) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.emplace_back(target, Rational(1));
            while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
            t = t * pw[e];
        }
        out += t;
    }
    return out;
}

namespace {

std::string monomial_text(const VarAlphabet& alpha, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!m.exp[i]) continue;
        if (!s.empty()) s += '*';
        s += alpha.name(i);
        if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
    }
    return s;
}

}  // namespace

std::string Polynomial::to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c.sign() < 0;
        Rational mag = neg ? -c : c;
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono = monomial_text(*alpha_, m);
        if (mono.empty()) {
            out += mag.to_string();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.to_string() + "*" + mono;
        }
    }
    return out;
}

std::string Polynomial::to_json() const {
    nlohmann::ordered_json j;
    j["alphabet"] = alpha_->names();
    auto terms = nlohmann::ordered_json::array();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        nlohmann::ordered_json t;
        t["coeff"] = {{"num", it->second.num_string()}, {"den", it->second.den_string()}};
        std::vector<int> exps(alpha_->size());
        for (std::size_t i = 0; i < alpha_->size(); ++i) exps[i] = it->first.exp[i];
        t["exps"] = exps;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

Polynomial Polynomial::parse_json(std::string_view json) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
        auto names = j.at("alphabet").get<std::vector<std::string>>();
        Alphabet alpha;
        for (const Alphabet* std_alpha : {&rank1_alphabet(), &rank2_alphabet(), &rank3_alphabet(), &entry_alphabet()})
            if ((*std_alpha)->names() == names) alpha = *std_alpha;
        if (!alpha) alpha = make_alphabet(names);
        Polynomial p(alpha);
        for (const auto& t : j.at("terms")) {
            Rational c = Rational::from_parts(t.at("coeff").at("num").get<std::string>(),
                                              t.at("coeff").at("den").get<std::string>());
            auto exps = t.at("exps").get<std::vector<int>>();
            if (exps.size() != alpha->size()) throw ParseError("exponent vector length mismatch");
            Monomial m;
            for (std::size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] < 0 || exps[i] > 255) throw ParseError("exponent out of range");
                m.exp[i] = static_cast<std::uint8_t>(exps[i]);
            }
            p.add_term(m, c);
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad polynomial json: ") + e.what());
    }
}

namespace {

class TextParser {
public:
    TextParser(Alphabet alpha, std::string_view s) : alpha_(std::move(alpha)), s_(s) {}

    Polynomial run() {
        Polynomial p(alpha_);
        skip();
        if (pos_ == s_.size()) throw ParseError("empty polynomial text");
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                if (s_[pos_] == '-') sign = -1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [m, c] = term();
            p.add_term(m, sign > 0 ? c : -c);
        }
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::pair<Monomial, Rational> term() {
        Monomial m;
        Rational c(1);
        while (true) {
            skip();
            if (pos_ >= s_.size()) fail("unexpected end of input");
            char ch = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string num = digits();
                std::string den = "1";
                skip();
                if (pos_ < s_.size() && s_[pos_] == '/') {
                    ++pos_;
                    skip();
                    den = digits();
                }
                c *= Rational::from_parts(num, den);
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::size_t start = pos_;
                while (pos_ < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    ++pos_;
                std::string name(s_.substr(start, pos_ - start));
                auto idx = alpha_->index_of(name);
                if (!idx) fail("unknown variable '" + name + "'");
                unsigned e = 1;
                skip();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    skip();
                    e = static_cast<unsigned>(std::stoul(digits()));
                }
                unsigned total = unsigned(m.exp[*idx]) + e;
                if (total > 255) fail("exponent too large");
                m.exp[*idx] = static_cast<std::uint8_t>(total);
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        return {m, c};
    }

    Alphabet alpha_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse_text(Alphabet alphabet, std::string_view text) {
    return TextParser(std::move(alphabet), text).run();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.alpha_ != b.alpha_ && !(*a.alpha_ == *b.alpha_)) return false;
    return a.terms_ == b.terms_;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_text(); }

}  // namespace cfn
