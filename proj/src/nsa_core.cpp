#include "nsa/nsa_core.hpp"

#include "nsa/errors.hpp"

#include <optional>
#include <unordered_map>

namespace nsa {

bool Point::in_unit_square() const {
    return x.sign() >= 0 && y.sign() >= 0 && x <= ExactNumber(1) && y <= ExactNumber(1);
}

long Point::radicand() const {
    const long dx = x.radicand();
    const long dy = y.radicand();
    if (dx != 0 && dy != 0 && dx != dy) {
        throw MixedRadicand(dx, dy);
    }
    return dx != 0 ? dx : dy;
}

Point parse_point(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError("bad point '" + std::string(text) + "': expected \"x,y\"");
    }
    Point p{parse_exact(text.substr(0, comma)), parse_exact(text.substr(comma + 1))};
    p.radicand();
    return p;
}

std::string to_string(const Point& p) { return p.x.to_string() + "," + p.y.to_string(); }

std::string to_string(const Digit& d) {
    return std::string(d.eps > 0 ? "+1" : "-1") + " " + d.n.get_str() + " " + d.m.get_str();
}

std::string_view to_string(StopReason r) {
    switch (r) {
    case StopReason::XZero:
        return "XZero";
    case StopReason::YZero:
        return "YZero";
    case StopReason::AntiDiagonal:
        return "AntiDiagonal";
    }
    return "?";
}

std::string_view to_string(LineFamily f) {
    switch (f) {
    case LineFamily::PlusX:
        return "LinePlusX";
    case LineFamily::PlusY:
        return "LinePlusY";
    case LineFamily::Sym:
        return "LineSym";
    }
    return "?";
}

namespace {

Classification classify_rational(const mpq_class& x, const mpq_class& y) {
    if (sgn(x) < 0 || sgn(y) < 0 || cmp(x, 1) > 0 || cmp(y, 1) > 0) {
        throw DomainError("point " + x.get_str() + "," + y.get_str() + " is outside [0,1]^2");
    }
    if (sgn(x) == 0) {
        return Boundary{StopReason::XZero};
    }
    if (sgn(y) == 0) {
        return Boundary{StopReason::YZero};
    }
    const mpq_class sum = x + y;
    const int side = cmp(sum, 1);
    if (side == 0) {
        return Boundary{StopReason::AntiDiagonal};
    }
    return Interior{side > 0 ? -1 : 1};
}

} // namespace

Classification classify(const Point& p) {
    if (p.is_rational()) {
        return classify_rational(p.x.as_rational().get_mpq(), p.y.as_rational().get_mpq());
    }
    if (!p.in_unit_square()) {
        throw DomainError("point " + to_string(p) + " is outside [0,1]^2");
    }
    if (p.x.is_zero()) {
        return Boundary{StopReason::XZero};
    }
    if (p.y.is_zero()) {
        return Boundary{StopReason::YZero};
    }
    const int side = (p.x + p.y - ExactNumber(1)).sign();
    if (side == 0) {
        return Boundary{StopReason::AntiDiagonal};
    }
    return Interior{side > 0 ? -1 : 1};
}

namespace {

// Splits num/den (den > 0) into its floor and the fractional part.
void split_fraction(const mpz_class& num, const mpz_class& den, Integer& whole, Rational& frac) {
    mpz_class rem;
    mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpq_class f;
    mpz_swap(mpq_numref(f.get_mpq_t()), rem.get_mpz_t());
    mpz_set(mpq_denref(f.get_mpq_t()), den.get_mpz_t());
    frac = Rational(f); // rem and den stay coprime
}

// Same map on raw rationals, skipping the generic field arithmetic. With
// x = a/c, y = b/c the quotients share the denominator |a + b - c|.
StepResult step_rational(const mpq_class& x, const mpq_class& y, int eps) {
    const mpz_class c = lcm(x.get_den(), y.get_den());
    const mpz_class a = x.get_num() * (c / x.get_den());
    const mpz_class b = y.get_num() * (c / y.get_den());
    mpz_class un;
    mpz_class vn;
    mpz_class den;
    if (eps < 0) {
        den = a + b - c;
        un = b;
        vn = a;
    } else {
        den = c - a - b;
        un = c - b;
        vn = c - a;
    }
    StepResult r;
    r.digit.eps = eps;
    Rational fu;
    Rational fv;
    {
        const mpz_class g = gcd(un, den);
        split_fraction(un / g, den / g, r.digit.n, fu);
    }
    {
        const mpz_class g = gcd(vn, den);
        split_fraction(vn / g, den / g, r.digit.m, fv);
    }
    r.image = Point{ExactNumber(std::move(fu)), ExactNumber(std::move(fv))};
    return r;
}

// The step proper, for a point already classified as Interior(eps).
StepResult step_interior(const Point& p, int eps) {
    if (p.is_rational()) {
        StepResult r = step_rational(p.x.as_rational().get_mpq(), p.y.as_rational().get_mpq(), eps);
        if (r.digit.n < 1 || r.digit.m < 1) {
            throw InvariantFailure("digit " + to_string(r.digit) + " produced at " + to_string(p));
        }
        return r;
    }
    const ExactNumber one(1);
    ExactNumber u;
    ExactNumber v;
    if (eps < 0) {
        const ExactNumber excess = p.x + p.y - one;
        u = p.y / excess;
        v = p.x / excess;
    } else {
        const ExactNumber deficit = one - (p.x + p.y);
        u = (one - p.y) / deficit;
        v = (one - p.x) / deficit;
    }
    StepResult r{Digit{eps, u.floor(), v.floor()}, {}};
    if (r.digit.n < 1 || r.digit.m < 1) {
        throw InvariantFailure("digit " + to_string(r.digit) + " produced at " + to_string(p));
    }
    r.image = Point{u - ExactNumber(r.digit.n), v - ExactNumber(r.digit.m)};
    return r;
}

} // namespace

StepResult step(const Point& p) {
    const Classification c = classify(p);
    if (const auto* b = std::get_if<Boundary>(&c)) {
        throw BoundaryPoint("cannot step from boundary point " + to_string(p) + " (" +
                            std::string(to_string(b->reason)) + ")");
    }
    return step_interior(p, std::get<Interior>(c).eps);
}

OrbitRecord expand(const Point& p, std::size_t max_steps, bool detect_period) {
    OrbitRecord rec;
    rec.points.push_back(p);
    const bool track = detect_period && !p.is_rational();
    std::unordered_map<Point, std::size_t, PointHash> seen;
    if (track) {
        seen.emplace(p, 0);
    }
    for (std::size_t k = 0;; ++k) {
        const Classification c = classify(rec.points[k]);
        if (const auto* b = std::get_if<Boundary>(&c)) {
            rec.status = Stopped{k, b->reason};
            return rec;
        }
        if (k == max_steps) {
            rec.status = Truncated{max_steps};
            return rec;
        }
        StepResult s = step_interior(rec.points[k], std::get<Interior>(c).eps);
        rec.digits.push_back(std::move(s.digit));
        rec.points.push_back(std::move(s.image));
        if (track) {
            auto [it, inserted] = seen.emplace(rec.points.back(), k + 1);
            if (!inserted) {
                rec.status = Periodic{it->second, k + 1 - it->second};
                return rec;
            }
        }
    }
}

namespace {

// Smallest p >= p_min with p * s == t (mod modulus) and 0 <= q(p) <= 2p,
// stepping through the solution class up to p_max.
template <typename QOf>
std::optional<StopLine> solve_family(LineFamily family, const Integer& s, const Integer& t,
                                     const Integer& modulus, const Integer& p_min,
                                     const Integer& p_max, QOf q_of) {
    const Integer g = gcd(s, modulus);
    Integer tr;
    mpz_mod(tr.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
    if (g == 0 || tr % g != 0) {
        return std::nullopt;
    }
    const Integer reduced_mod = modulus / g;
    Integer p = 0;
    if (reduced_mod != 1) {
        Integer inv;
        const Integer sr = s / g;
        mpz_invert(inv.get_mpz_t(), sr.get_mpz_t(), reduced_mod.get_mpz_t());
        p = (tr / g) * inv;
        mpz_mod(p.get_mpz_t(), p.get_mpz_t(), reduced_mod.get_mpz_t());
    }
    if (p < p_min) {
        Integer lift = (p_min - p + reduced_mod - 1) / reduced_mod;
        p += lift * reduced_mod;
    }
    for (; p <= p_max; p += reduced_mod) {
        const Integer q = q_of(p);
        if (q >= 0 && q <= 2 * p) {
            return StopLine{family, p, q};
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<StopLine> classify_stop(const Point& pt) {
    const Rational& x = pt.x.as_rational();
    const Rational& y = pt.y.as_rational();
    Integer lcd;
    mpz_lcm(lcd.get_mpz_t(), x.denominator().get_mpz_t(), y.denominator().get_mpz_t());
    // x = a / lcd, y = b / lcd; each family is a linear congruence in p.
    const Integer a = x.numerator() * (lcd / x.denominator());
    const Integer b = y.numerator() * (lcd / y.denominator());
    const Integer s = a + b;

    std::vector<StopLine> lines;
    auto add = [&](std::optional<StopLine> l) {
        if (l) {
            lines.push_back(std::move(*l));
        }
    };
    add(solve_family(LineFamily::PlusX, s, Integer(-a), lcd, 0, lcd,
                     [&](const Integer& p) { return Integer(((p + 1) * a + p * b) / lcd); }));
    add(solve_family(LineFamily::PlusY, s, Integer(-b), lcd, 0, lcd,
                     [&](const Integer& p) { return Integer((p * a + (p + 1) * b) / lcd); }));
    add(solve_family(LineFamily::Sym, s, 0, lcd, 1, lcd,
                     [&](const Integer& p) { return Integer(p * s / lcd); }));
    return lines;
}

} // namespace nsa
