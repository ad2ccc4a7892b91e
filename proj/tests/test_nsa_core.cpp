#include "nsa/errors.hpp"
#include "nsa/nsa_core.hpp"
#include "nsa/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using nsa::Boundary;
using nsa::Digit;
using nsa::ExactNumber;
using nsa::Interior;
using nsa::Point;
using nsa::Rational;
using nsa::StopReason;

namespace {

Point pt(const char* text) { return nsa::parse_point(text); }

Point from_q(const mpq_class& x, const mpq_class& y) {
    return Point{ExactNumber(Rational(x)), ExactNumber(Rational(y))};
}

Digit dg(int eps, long n, long m) { return Digit{eps, n, m}; }

// Smallest p for each line family, found by evaluating the line at every p
// from 0 to the common denominator.
std::vector<nsa::StopLine> brute_stop_lines(const mpq_class& x, const mpq_class& y) {
    mpz_class lcd = lcm(x.get_den(), y.get_den());
    std::vector<nsa::StopLine> out;
    const nsa::LineFamily families[] = {nsa::LineFamily::PlusX, nsa::LineFamily::PlusY, nsa::LineFamily::Sym};
    for (nsa::LineFamily f : families) {
        for (mpz_class p = (f == nsa::LineFamily::Sym ? 1 : 0); p <= lcd; ++p) {
            mpq_class value;
            if (f == nsa::LineFamily::PlusX) {
                value = mpq_class(p + 1) * x + mpq_class(p) * y;
            } else if (f == nsa::LineFamily::PlusY) {
                value = mpq_class(p) * x + mpq_class(p + 1) * y;
            } else {
                value = mpq_class(p) * (x + y);
            }
            if (value.get_den() == 1 && value >= 0 && value <= 2 * p) {
                out.push_back(nsa::StopLine{f, p, value.get_num()});
                break;
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("classify") {
    CHECK(nsa::classify(pt("0,1/2")) == nsa::Classification(Boundary{StopReason::XZero}));
    CHECK(nsa::classify(pt("2/3,1/3")) == nsa::Classification(Boundary{StopReason::AntiDiagonal}));
    CHECK(nsa::classify(pt("7/10,9/10")) == nsa::Classification(Interior{-1}));
    CHECK(nsa::classify(pt("1/3,1/4")) == nsa::Classification(Interior{1}));
    CHECK(nsa::classify(pt("1/2,0")) == nsa::Classification(Boundary{StopReason::YZero}));
    // Several conditions at once: XZero wins, then YZero.
    CHECK(nsa::classify(pt("0,1")) == nsa::Classification(Boundary{StopReason::XZero}));
    CHECK(nsa::classify(pt("1,0")) == nsa::Classification(Boundary{StopReason::YZero}));
    CHECK(nsa::classify(pt("0,0")) == nsa::Classification(Boundary{StopReason::XZero}));
    CHECK(nsa::classify(pt("(0+1*sqrt(2))/2,(0+1*sqrt(2))/2")) == nsa::Classification(Interior{-1}));

    CHECK_THROWS_AS(nsa::classify(pt("2,1/2")), nsa::DomainError);
    CHECK_THROWS_AS(nsa::classify(pt("-1/2,1/2")), nsa::DomainError);
}

TEST_CASE("classify is total and exclusive on the square") {
    oracle::for_each_rational_point(25, [](const mpq_class& x, const mpq_class& y) {
        const auto c = nsa::classify(from_q(x, y));
        const bool boundary = x == 0 || y == 0 || x + y == 1;
        CHECK(std::holds_alternative<Boundary>(c) == boundary);
        if (!boundary) {
            CHECK(std::get<Interior>(c).eps == (x + y > 1 ? -1 : 1));
        }
    });
}

TEST_CASE("step on the worked examples") {
    auto r = nsa::step(pt("7/10,9/10"));
    CHECK(r.digit == dg(-1, 1, 1));
    CHECK(r.image == pt("1/2,1/6"));

    r = nsa::step(pt("1/2,1/6"));
    CHECK(r.digit == dg(1, 2, 1));
    CHECK(r.image == pt("1/2,1/2"));

    r = nsa::step(pt("3/5,4/5"));
    CHECK(r.digit == dg(-1, 2, 1));
    CHECK(r.image == pt("0,1/2"));

    CHECK_THROWS_AS(nsa::step(pt("1/2,1/2")), nsa::BoundaryPoint);
    CHECK_THROWS_AS(nsa::step(pt("0,1/3")), nsa::BoundaryPoint);
    CHECK_THROWS_AS(nsa::step(pt("3/2,1/3")), nsa::DomainError);
}

TEST_CASE("step matches the direct rational formulas, digits bounded below by 1") {
    std::size_t interior = 0;
    oracle::for_each_rational_point(60, [&](const mpq_class& x, const mpq_class& y) {
        if (x == 0 || y == 0 || x + y == 1) {
            return;
        }
        ++interior;
        const auto got = nsa::step(from_q(x, y));
        const auto want = oracle::rational_step(x, y);
        CHECK(got.digit == dg(want.digit.eps, want.digit.n, want.digit.m));
        CHECK(got.image == from_q(want.x, want.y));
        CHECK(got.digit.n >= 1);
        CHECK(got.digit.m >= 1);
        CHECK(got.image.in_unit_square());
    });
    CHECK(interior > 1000);
}

TEST_CASE("digit bounds on random quadratic points") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const Point p = nsa::random_quadratic_point(rng);
        const auto rec = nsa::expand(p, 25);
        for (const Digit& d : rec.digits) {
            CHECK(d.valid());
        }
    }
}

TEST_CASE("expand") {
    auto rec = nsa::expand(pt("7/10,9/10"), 100);
    CHECK(rec.digits == std::vector<Digit>{dg(-1, 1, 1), dg(1, 2, 1)});
    CHECK(rec.status == nsa::OrbitStatus(nsa::Stopped{2, StopReason::AntiDiagonal}));
    REQUIRE(rec.points.size() == 3);
    CHECK(rec.points[0] == pt("7/10,9/10"));
    CHECK(rec.points[2] == pt("1/2,1/2"));

    rec = nsa::expand(pt("0,0"), 100);
    CHECK(rec.digits.empty());
    CHECK(rec.status == nsa::OrbitStatus(nsa::Stopped{0, StopReason::XZero}));
    CHECK(rec.points.size() == 1);

    rec = nsa::expand(pt("7/10,9/10"), 1);
    CHECK(rec.digits.size() == 1);
    CHECK(rec.status == nsa::OrbitStatus(nsa::Truncated{1}));

    // A boundary start is reported as a stop, even with no steps to spend.
    rec = nsa::expand(pt("1/3,2/3"), 1);
    CHECK(rec.status == nsa::OrbitStatus(nsa::Stopped{0, StopReason::AntiDiagonal}));

    const Point s = pt("(0+1*sqrt(2))/2,(0+1*sqrt(2))/2");
    rec = nsa::expand(s, 50);
    CHECK(rec.status == nsa::OrbitStatus(nsa::Truncated{50}));
    CHECK(rec.digits.size() == 50);
    CHECK(rec.points.size() == 51);

    rec = nsa::expand(s, 50, true);
    CHECK(rec.status == nsa::OrbitStatus(nsa::Periodic{0, 1}));
    CHECK(rec.digits == std::vector<Digit>{dg(-1, 1, 1)});
}

TEST_CASE("rational points stop, and the input lies on a stopping line") {
    std::size_t count = 0;
    oracle::for_each_rational_point(50, [&](const mpq_class& x, const mpq_class& y) {
        const Point p = from_q(x, y);
        const auto rec = nsa::expand(p, 1000000, true);
        CHECK(std::holds_alternative<nsa::Stopped>(rec.status));
        CHECK(rec.digits.size() + 1 == rec.points.size());
        CHECK_FALSE(nsa::classify_stop(p).empty());
        ++count;
    });
    CHECK(count > 30000);
}

TEST_CASE("classify_stop") {
    auto lines = nsa::classify_stop(pt("7/10,9/10"));
    CHECK(std::count(lines.begin(), lines.end(), nsa::StopLine{nsa::LineFamily::Sym, 5, 8}) == 1);

    lines = nsa::classify_stop(pt("1/2,1/2"));
    CHECK(std::count(lines.begin(), lines.end(), nsa::StopLine{nsa::LineFamily::Sym, 1, 1}) == 1);

    lines = nsa::classify_stop(pt("1/3,1/4"));
    CHECK(std::count(lines.begin(), lines.end(), nsa::StopLine{nsa::LineFamily::Sym, 12, 7}) == 1);

    CHECK_THROWS_AS(nsa::classify_stop(pt("(0+1*sqrt(2))/2,1/2")), nsa::NotRational);
}

TEST_CASE("classify_stop agrees with a direct search over p") {
    oracle::for_each_rational_point(30, [](const mpq_class& x, const mpq_class& y) {
        auto got = nsa::classify_stop(from_q(x, y));
        auto want = brute_stop_lines(x, y);
        CAPTURE(x.get_str());
        CAPTURE(y.get_str());
        CHECK(got == want);
    });
}

TEST_CASE("period soundness") {
    std::mt19937_64 rng(22);
    std::size_t periodic = 0;
    for (const Point& p : nsa::reference_quadratic_points()) {
        const auto rec = nsa::expand(p, 2000, true);
        REQUIRE(std::holds_alternative<nsa::Periodic>(rec.status));
        const auto per = std::get<nsa::Periodic>(rec.status);
        CHECK(rec.points[per.preperiod] == rec.points[per.preperiod + per.period]);
        Point q = rec.points[per.preperiod];
        for (std::size_t i = 0; i < per.period; ++i) {
            q = nsa::step(q).image;
        }
        CHECK(q == rec.points[per.preperiod]);
        ++periodic;
    }
    for (int i = 0; i < 40; ++i) {
        const auto rec = nsa::expand(nsa::random_quadratic_point(rng), 400, true);
        if (const auto* per = std::get_if<nsa::Periodic>(&rec.status)) {
            Point q = rec.points[per->preperiod];
            for (std::size_t j = 0; j < per->period; ++j) {
                q = nsa::step(q).image;
            }
            CHECK(q == rec.points[per->preperiod]);
            ++periodic;
        }
    }
    CHECK(periodic >= 5);
}

TEST_CASE("distinct quadratic points are told apart within 60 digits") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Point a = nsa::random_quadratic_point(rng);
        const Point b = nsa::random_quadratic_point(rng);
        if (a == b || a.radicand() != b.radicand()) {
            continue;
        }
        const auto ra = nsa::expand(a, 60);
        const auto rb = nsa::expand(b, 60);
        CHECK(ra.digits != rb.digits);
    }
}

TEST_CASE("points and digits print") {
    CHECK(nsa::to_string(dg(-1, 2, 3)) == "-1 2 3");
    CHECK(nsa::to_string(dg(1, 2, 3)) == "+1 2 3");
    CHECK(nsa::to_string(pt("1/2, 2/4")) == "1/2,1/2");
    CHECK_THROWS_AS(nsa::parse_point("1/2"), nsa::ParseError);
    CHECK_THROWS_AS(pt("(0+1*sqrt(2))/2,(0+1*sqrt(3))/2").radicand(), nsa::MixedRadicand);
}
