#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace nsa {

using Integer = mpz_class;

/// Canonical rational: denominator > 0, numerator and denominator coprime.
class Rational {
public:
    Rational() = default;
    Rational(long n) : value_(n) {}
    Rational(const Integer& n) : value_(n) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : value_(q) {}

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }
    const mpq_class& get_mpq() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    Integer floor() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return cmp(a.value_, b.value_) <=> 0;
    }

    std::string to_string() const;

private:
    mpq_class value_;
};

/// Real quadratic number (a + b*sqrt(d)) / c with c > 0, gcd(a, b, c) = 1 and
/// d >= 2 squarefree.
class QuadraticElement {
public:
    QuadraticElement(Integer a, Integer b, Integer c, long d);

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    long d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    int sign() const;
    Integer floor() const;

    QuadraticElement operator-() const;
    friend QuadraticElement operator+(const QuadraticElement& x, const QuadraticElement& y);
    friend QuadraticElement operator-(const QuadraticElement& x, const QuadraticElement& y);
    friend QuadraticElement operator*(const QuadraticElement& x, const QuadraticElement& y);
    friend QuadraticElement operator/(const QuadraticElement& x, const QuadraticElement& y);

    static QuadraticElement from_rational(const Rational& r, long d);

    friend bool operator==(const QuadraticElement&, const QuadraticElement&) = default;

    std::string to_string() const;

private:
    void normalize();

    Integer a_;
    Integer b_;
    Integer c_;
    long d_;
};

/// The scalar used by every algorithmic path: a rational or an element of a
/// single real quadratic field. Results whose irrational part cancels are
/// stored as rationals, so equal values have equal representations.
class ExactNumber {
public:
    ExactNumber() = default;
    ExactNumber(long n) : value_(Rational(n)) {}
    ExactNumber(const Integer& n) : value_(Rational(n)) {}
    ExactNumber(Rational r) : value_(std::move(r)) {}
    ExactNumber(QuadraticElement q);

    bool is_rational() const { return std::holds_alternative<Rational>(value_); }
    /// 0 for rationals.
    long radicand() const;
    const Rational& as_rational() const;
    const QuadraticElement& as_quadratic() const { return std::get<QuadraticElement>(value_); }

    int sign() const;
    Integer floor() const;
    bool is_zero() const { return sign() == 0; }
    ExactNumber abs() const { return sign() < 0 ? -*this : *this; }

    ExactNumber operator-() const;
    friend ExactNumber operator+(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator-(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator*(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator/(const ExactNumber& x, const ExactNumber& y);
    ExactNumber& operator+=(const ExactNumber& o) { return *this = *this + o; }
    ExactNumber& operator-=(const ExactNumber& o) { return *this = *this - o; }
    ExactNumber& operator*=(const ExactNumber& o) { return *this = *this * o; }
    ExactNumber& operator/=(const ExactNumber& o) { return *this = *this / o; }

    friend bool operator==(const ExactNumber&, const ExactNumber&) = default;
    friend std::strong_ordering operator<=>(const ExactNumber& x, const ExactNumber& y);

    /// Canonical text in the scalar grammar: "n", "a/b" or "(a+b*sqrt(d))/c".
    std::string to_string() const;
    std::size_t hash() const;

private:
    std::variant<Rational, QuadraticElement> value_;
};

Integer floor(const ExactNumber& x);
int sign(const ExactNumber& x);

/// Decimal expansion with `digits` fractional digits, rounded to nearest
/// (ties away from zero, which only rationals can hit).
std::string to_decimal(const ExactNumber& x, int digits);

/// Parses "n", "a/b", "(a+b*sqrt(d))/c" (also "(a-b*sqrt(d))/c", optional
/// "/c", and "-" prefixes). Whitespace is ignored. Square factors are pulled
/// out of the radicand. Throws ParseError.
ExactNumber parse_exact(std::string_view text);

/// Floor of the square root; `n` must be non-negative.
Integer isqrt(const Integer& n);

/// Rough double value, for display and diagnostics only.
double approximate(const ExactNumber& x);

} // namespace nsa

template <>
struct std::hash<nsa::ExactNumber> {
    std::size_t operator()(const nsa::ExactNumber& x) const { return x.hash(); }
};
