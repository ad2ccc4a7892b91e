#include "nsa/exact_numbers.hpp"

#include "nsa/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

namespace nsa {

namespace {

std::size_t hash_mpz(const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(sgn(z) + 1);
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) +
             0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Integer fdiv(const Integer& n, const Integer& d) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

bool is_squarefree(long d) {
    for (long p = 2; p <= d / p; ++p) {
        if (d % (p * p) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0) {
        throw DomainError("isqrt of a negative integer");
    }
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw DivisionByZero();
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw DivisionByZero();
    }
    value_ /= o.value_;
    return *this;
}

Integer Rational::floor() const { return fdiv(value_.get_num(), value_.get_den()); }

std::string Rational::to_string() const { return value_.get_str(); }

// -------------------------------------------------------- QuadraticElement

QuadraticElement::QuadraticElement(Integer a, Integer b, Integer c, long d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d) {
    if (d_ < 2 || !is_squarefree(d_)) {
        throw DomainError("radicand " + std::to_string(d_) + " is not a squarefree integer >= 2");
    }
    normalize();
}

QuadraticElement QuadraticElement::from_rational(const Rational& r, long d) {
    return QuadraticElement(r.numerator(), 0, r.denominator(), d);
}

void QuadraticElement::normalize() {
    if (c_ == 0) {
        throw DivisionByZero();
    }
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    Integer g = gcd(gcd(a_, b_), c_);
    if (g != 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

int QuadraticElement::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) {
        return sa;
    }
    if (sa == 0 || sa == sb) {
        return sb;
    }
    // Opposite signs: the larger of a^2 and b^2 d wins. They are never equal
    // because d is not a perfect square.
    const Integer a2 = a_ * a_;
    const Integer b2d = b_ * b_ * d_;
    return a2 > b2d ? sa : sb;
}

Integer QuadraticElement::floor() const {
    if (b_ == 0) {
        return fdiv(a_, c_);
    }
    // b*sqrt(d) is irrational, so it lies strictly between s and s + 1, and
    // floor((a + b sqrt d) / c) = floor((a + s) / c) for integer c > 0.
    const Integer root = isqrt(b_ * b_ * d_);
    const Integer s = b_ > 0 ? root : Integer(-root - 1);
    return fdiv(a_ + s, c_);
}

QuadraticElement QuadraticElement::operator-() const {
    QuadraticElement r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadraticElement operator+(const QuadraticElement& x, const QuadraticElement& y) {
    if (x.d_ != y.d_) {
        throw MixedRadicand(x.d_, y.d_);
    }
    return QuadraticElement(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, x.d_);
}

QuadraticElement operator-(const QuadraticElement& x, const QuadraticElement& y) { return x + (-y); }

QuadraticElement operator*(const QuadraticElement& x, const QuadraticElement& y) {
    if (x.d_ != y.d_) {
        throw MixedRadicand(x.d_, y.d_);
    }
    return QuadraticElement(x.a_ * y.a_ + x.b_ * y.b_ * x.d_, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_,
                            x.d_);
}

QuadraticElement operator/(const QuadraticElement& x, const QuadraticElement& y) {
    if (x.d_ != y.d_) {
        throw MixedRadicand(x.d_, y.d_);
    }
    if (y.a_ == 0 && y.b_ == 0) {
        throw DivisionByZero();
    }
    // 1/y = c (a - b sqrt d) / (a^2 - b^2 d)
    const Integer norm = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    const QuadraticElement inv(y.c_ * y.a_, -(y.c_ * y.b_), norm, y.d_);
    return x * inv;
}

std::string QuadraticElement::to_string() const {
    std::string s = "(" + a_.get_str();
    s += b_ < 0 ? "-" : "+";
    s += Integer(abs(b_)).get_str() + "*sqrt(" + std::to_string(d_) + "))/" + c_.get_str();
    return s;
}

// ------------------------------------------------------------- ExactNumber

ExactNumber::ExactNumber(QuadraticElement q) {
    if (q.is_rational()) {
        value_ = Rational(q.a(), q.c());
    } else {
        value_ = std::move(q);
    }
}

long ExactNumber::radicand() const {
    return is_rational() ? 0 : std::get<QuadraticElement>(value_).d();
}

const Rational& ExactNumber::as_rational() const {
    if (!is_rational()) {
        throw NotRational("value " + to_string() + " is not rational");
    }
    return std::get<Rational>(value_);
}

int ExactNumber::sign() const {
    return std::visit([](const auto& v) { return v.sign(); }, value_);
}

Integer ExactNumber::floor() const {
    return std::visit([](const auto& v) { return v.floor(); }, value_);
}

ExactNumber ExactNumber::operator-() const {
    return std::visit([](const auto& v) { return ExactNumber(-v); }, value_);
}

namespace {

template <typename Op>
ExactNumber combine(const ExactNumber& x, const ExactNumber& y, Op op) {
    if (x.is_rational() && y.is_rational()) {
        return ExactNumber(op(x.as_rational(), y.as_rational()));
    }
    const long d = x.is_rational() ? y.radicand() : x.radicand();
    const QuadraticElement qx = x.is_rational() ? QuadraticElement::from_rational(x.as_rational(), d)
                                                : x.as_quadratic();
    const QuadraticElement qy = y.is_rational() ? QuadraticElement::from_rational(y.as_rational(), d)
                                                : y.as_quadratic();
    return ExactNumber(op(qx, qy));
}

} // namespace

ExactNumber operator+(const ExactNumber& x, const ExactNumber& y) {
    return combine(x, y, [](const auto& a, const auto& b) { return a + b; });
}

ExactNumber operator-(const ExactNumber& x, const ExactNumber& y) {
    return combine(x, y, [](const auto& a, const auto& b) { return a - b; });
}

ExactNumber operator*(const ExactNumber& x, const ExactNumber& y) {
    return combine(x, y, [](const auto& a, const auto& b) { return a * b; });
}

ExactNumber operator/(const ExactNumber& x, const ExactNumber& y) {
    return combine(x, y, [](const auto& a, const auto& b) { return a / b; });
}

std::strong_ordering operator<=>(const ExactNumber& x, const ExactNumber& y) {
    if (x.is_rational() && y.is_rational()) {
        return x.as_rational() <=> y.as_rational();
    }
    return (x - y).sign() <=> 0;
}

std::string ExactNumber::to_string() const {
    return std::visit([](const auto& v) { return v.to_string(); }, value_);
}

std::size_t ExactNumber::hash() const {
    if (is_rational()) {
        const auto& r = std::get<Rational>(value_);
        return hash_mpz(r.numerator()) * 31 + hash_mpz(r.denominator());
    }
    const auto& q = std::get<QuadraticElement>(value_);
    std::size_t h = hash_mpz(q.a());
    h = h * 31 + hash_mpz(q.b());
    h = h * 31 + hash_mpz(q.c());
    return h * 31 + static_cast<std::size_t>(q.d());
}

Integer floor(const ExactNumber& x) { return x.floor(); }

int sign(const ExactNumber& x) { return x.sign(); }

std::string to_decimal(const ExactNumber& x, int digits) {
    if (digits < 1) {
        throw DomainError("to_decimal needs at least one fractional digit");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool negative = x.sign() < 0;
    const ExactNumber scaled = x.abs() * ExactNumber(scale) + ExactNumber(Rational(1, 2));
    const std::string body = scaled.floor().get_str();
    std::string padded =
        body.size() <= static_cast<std::size_t>(digits)
            ? std::string(static_cast<std::size_t>(digits) + 1 - body.size(), '0') + body
            : body;
    padded.insert(padded.size() - static_cast<std::size_t>(digits), ".");
    const bool all_zero = padded.find_first_not_of("0.") == std::string::npos;
    return (negative && !all_zero ? "-" : "") + padded;
}

double approximate(const ExactNumber& x) {
    if (x.is_rational()) {
        return x.as_rational().get_mpq().get_d();
    }
    const auto& q = x.as_quadratic();
    return (q.a().get_d() + q.b().get_d() * std::sqrt(static_cast<double>(q.d()))) / q.c().get_d();
}

// ----------------------------------------------------------------- parsing

namespace {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view text) {
        for (char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                s_.push_back(ch);
            }
        }
    }

    ExactNumber parse() {
        if (s_.empty()) {
            fail("empty scalar");
        }
        ExactNumber value = parse_signed_term();
        if (accept('/')) {
            const Integer den = parse_unsigned();
            if (den == 0) {
                fail("zero denominator");
            }
            value = value / ExactNumber(den);
        }
        if (pos_ != s_.size()) {
            fail("unexpected trailing text");
        }
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("bad scalar '" + s_ + "': " + why);
    }

    bool accept(char ch) {
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) {
            fail(std::string("expected '") + ch + "'");
        }
    }

    bool at_sqrt() const { return s_.compare(pos_, 4, "sqrt") == 0; }

    Integer parse_unsigned() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return Integer(s_.substr(start, pos_ - start));
    }

    // [-] ( "(" sum ")" | sqrt_term | integer )
    ExactNumber parse_signed_term() {
        const bool negative = accept('-');
        if (!negative) {
            accept('+');
        }
        ExactNumber v;
        if (accept('(')) {
            v = parse_sum();
            expect(')');
        } else {
            v = parse_product();
        }
        return negative ? -v : v;
    }

    // term (("+" | "-") term)*
    ExactNumber parse_sum() {
        ExactNumber total = parse_signed_product();
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            total += parse_signed_product();
        }
        return total;
    }

    ExactNumber parse_signed_product() {
        const bool negative = accept('-');
        if (!negative) {
            accept('+');
        }
        ExactNumber v = parse_product();
        return negative ? -v : v;
    }

    // integer | integer "*" sqrt | sqrt
    ExactNumber parse_product() {
        if (at_sqrt()) {
            return parse_sqrt(1);
        }
        const Integer coeff = parse_unsigned();
        if (accept('*')) {
            if (!at_sqrt()) {
                fail("expected sqrt(...) after '*'");
            }
            return parse_sqrt(coeff);
        }
        return ExactNumber(coeff);
    }

    ExactNumber parse_sqrt(Integer coeff) {
        pos_ += 4;
        expect('(');
        const Integer radicand = parse_unsigned();
        expect(')');
        if (radicand == 0) {
            return ExactNumber(0);
        }
        if (!radicand.fits_slong_p()) {
            fail("radicand too large");
        }
        long d = radicand.get_si();
        // Pull square factors out: sqrt(k^2 d') = k sqrt(d').
        for (long p = 2; p <= d / p; ++p) {
            while (d % (p * p) == 0) {
                d /= p * p;
                coeff *= p;
            }
        }
        if (d == 1) {
            return ExactNumber(coeff);
        }
        if (radicand_ != 0 && radicand_ != d) {
            fail("mixed radicands");
        }
        radicand_ = d;
        return ExactNumber(QuadraticElement(0, coeff, 1, d));
    }

    std::string s_;
    std::size_t pos_ = 0;
    long radicand_ = 0;
};

} // namespace

ExactNumber parse_exact(std::string_view text) { return ScalarParser(text).parse(); }

} // namespace nsa
