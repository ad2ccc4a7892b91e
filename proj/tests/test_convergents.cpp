#include "nsa/convergents.hpp"
#include "nsa/errors.hpp"
#include "nsa/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using nsa::Admissibility;
using nsa::Digit;
using nsa::ExactNumber;
using nsa::Mat3;
using nsa::Point;
using nsa::Rational;

namespace {

Digit dg(int eps, long n, long m) { return Digit{eps, n, m}; }

Point pt(const char* text) { return nsa::parse_point(text); }

Mat3 mat(const oracle::IMat& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = m[i][j];
        }
    }
    return r;
}

std::vector<oracle::D> plain(const std::vector<Digit>& ds) {
    std::vector<oracle::D> out;
    for (const Digit& d : ds) {
        out.push_back(oracle::D{d.eps, d.n.get_si(), d.m.get_si()});
    }
    return out;
}

std::vector<Digit> random_sequence(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> len(1, 40);
    return nsa::random_digits(rng, len(rng), 20);
}

ExactNumber linf(const Point& a, const Point& b) {
    return std::max((a.x - b.x).abs(), (a.y - b.y).abs());
}

} // namespace

TEST_CASE("digit matrices") {
    CHECK(nsa::digit_matrix_inverse(dg(1, 2, 1)) == mat({{{1, 0, 1}, {0, 1, 0}, {1, 1, 2}}}));
    CHECK(nsa::digit_matrix_inverse(dg(-1, 1, 1)) == mat({{{0, 1, 1}, {1, 0, 1}, {1, 1, 1}}}));
    CHECK(nsa::digit_matrix(dg(1, 1, 1)) * nsa::digit_matrix_inverse(dg(1, 1, 1)) == Mat3::identity());

    for (int eps : {1, -1}) {
        for (long n = 1; n <= 12; ++n) {
            for (long m = 1; m <= 12; ++m) {
                const Digit d = dg(eps, n, m);
                const Mat3 a = nsa::digit_matrix(d);
                const Mat3 inv = nsa::digit_matrix_inverse(d);
                CHECK(a == mat(oracle::forward_matrix({eps, n, m})));
                CHECK(inv == mat(oracle::inverse_matrix({eps, n, m})));
                CHECK(a * inv == Mat3::identity());
                CHECK(inv * a == Mat3::identity());
                CHECK(inv.det() == 1);
                CHECK(a.det() == 1);
                CHECK(inv.non_negative());
                CHECK(inv.adjugate() == a);
            }
        }
    }
    CHECK_THROWS_AS(nsa::digit_matrix(dg(1, 0, 1)), nsa::InvalidDigit);
    CHECK_THROWS_AS(nsa::digit_matrix_inverse(dg(2, 1, 1)), nsa::InvalidDigit);
}

TEST_CASE("accumulate") {
    const std::vector<Digit> worked{dg(-1, 1, 1), dg(1, 2, 1)};
    const auto psi = nsa::accumulate(worked);
    CHECK(psi.mat == mat(oracle::brute_product(plain(worked))));
    CHECK(psi.mat == mat({{{1, 2, 2}, {2, 1, 3}, {2, 2, 3}}}));
    CHECK(psi.delta == -1);
    CHECK(psi.k == 2);

    const auto empty = nsa::accumulate({});
    CHECK(empty.mat == Mat3::identity());
    CHECK(empty.delta == 1);
    CHECK(empty.k == 0);

    const std::vector<Digit> one{dg(1, 1, 1)};
    CHECK(nsa::accumulate(one).mat == mat({{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}}));
    CHECK(nsa::accumulate(one).delta == 1);

    const std::vector<Digit> bad{dg(1, 1, 1), dg(-1, 1, 0)};
    CHECK_THROWS_AS(nsa::accumulate(bad), nsa::InvalidDigit);
}

TEST_CASE("column updates agree with the full matrix product") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        const auto digits = random_sequence(rng);
        nsa::ConvergentMatrix psi;
        std::vector<oracle::D> prefix;
        for (const Digit& d : digits) {
            const nsa::ConvergentMatrix before = psi;
            psi.append(d);
            prefix.push_back({d.eps, d.n.get_si(), d.m.get_si()});
            CHECK(psi.mat == mat(oracle::brute_product(prefix)));
            // The first two columns are sums with the old third column,
            // swapped on the minus branch.
            const int a = d.eps == 1 ? 0 : 1;
            const int b = d.eps == 1 ? 1 : 0;
            for (int row = 0; row < 3; ++row) {
                CHECK(psi.mat(row, 0) == before.mat(row, a) + before.mat(row, 2));
                CHECK(psi.mat(row, 1) == before.mat(row, b) + before.mat(row, 2));
            }
            CHECK(psi.delta == before.delta * d.eps);
        }
    }
}

TEST_CASE("entry, determinant and ratio identities on random sequences") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 1000; ++i) {
        const auto digits = random_sequence(rng);
        const auto psi = nsa::accumulate(digits);
        const auto brute = oracle::brute_product(plain(digits));
        CHECK(oracle::det(brute) == 1);
        CHECK(psi.mat.det() == 1);
        CHECK(psi.p(1) == psi.p(2) + psi.delta);
        CHECK(psi.r(1) == psi.r(2) - psi.delta);
        CHECK(psi.q(1) == psi.q(2));
        mpq_class s1(psi.p(1) + psi.r(1), psi.q(1));
        mpq_class s2(psi.p(2) + psi.r(2), psi.q(2));
        mpq_class s3(psi.p(3) + psi.r(3), psi.q(3));
        mpq_class corr(psi.delta, psi.q(2) * psi.q(3));
        s1.canonicalize();
        s2.canonicalize();
        s3.canonicalize();
        corr.canonicalize();
        CHECK(s1 == s2);
        CHECK(s2 == s3 + corr);
        CHECK(nsa::entry_identities_hold(psi));
        CHECK(nsa::unimodular(psi));
        CHECK(nsa::ratio_identity_holds(psi));
    }
}

TEST_CASE("entries grow monotonically and stay non-negative") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 300; ++i) {
        const auto digits = random_sequence(rng);
        nsa::ConvergentMatrix psi;
        for (const Digit& d : digits) {
            const nsa::ConvergentMatrix before = psi;
            psi.append(d);
            CHECK(psi.mat.non_negative());
            CHECK(psi.q(1) > before.q(1));
            CHECK(psi.q(3) >= before.q(3));
            CHECK(psi.q(3) >= 1);
        }
    }
}

TEST_CASE("projective_apply") {
    CHECK(nsa::projective_apply(nsa::digit_matrix(dg(-1, 2, 1)), pt("3/5,4/5")) == nsa::step(pt("3/5,4/5")).image);
    CHECK(nsa::projective_apply(nsa::digit_matrix(dg(-1, 2, 1)), pt("3/5,4/5")) == pt("0,1/2"));
    CHECK(nsa::projective_apply(Mat3::identity(), pt("1/3,1/4")) == pt("1/3,1/4"));
    const std::vector<Digit> worked{dg(-1, 1, 1), dg(1, 2, 1)};
    CHECK(nsa::projective_apply(nsa::accumulate(worked).mat, pt("1/2,1/2")) == pt("7/10,9/10"));

    // Third row (-1, -1, 1) vanishes on x + y = 1.
    CHECK_THROWS_AS(nsa::projective_apply(nsa::digit_matrix(dg(1, 1, 1)), pt("1/2,1/2")), nsa::DegenerateImage);
}

TEST_CASE("conjugacy on rational orbits") {
    oracle::for_each_rational_point(30, [](const mpq_class& x, const mpq_class& y) {
        const Point p{ExactNumber(Rational(x)), ExactNumber(Rational(y))};
        const auto rec = nsa::expand(p, 100000);
        CHECK(nsa::conjugacy_holds(rec));
        nsa::ConvergentMatrix psi;
        for (std::size_t k = 0; k < rec.digits.size(); ++k) {
            psi.append(rec.digits[k]);
            CHECK(nsa::projective_apply(psi.mat, rec.points[k + 1]) == p);
        }
    });
}

TEST_CASE("conjugacy on quadratic orbits") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 40; ++i) {
        const Point p = nsa::random_quadratic_point(rng);
        const auto rec = nsa::expand(p, 30);
        nsa::ConvergentMatrix psi;
        for (std::size_t k = 0; k < rec.digits.size(); ++k) {
            psi.append(rec.digits[k]);
            CHECK(nsa::projective_apply(psi.mat, rec.points[k + 1]) == p);
        }
    }
}

TEST_CASE("cylinder") {
    const std::vector<Digit> worked{dg(-1, 1, 1), dg(1, 2, 1)};
    auto c = nsa::cylinder(worked);
    CHECK(c.vertices[0] == pt("2/3,1"));

    const std::vector<Digit> one{dg(1, 1, 1)};
    c = nsa::cylinder(one);
    CHECK(c.vertices[0] == pt("0,0"));

    std::mt19937_64 rng(35);
    for (int i = 0; i < 300; ++i) {
        const auto digits = random_sequence(rng);
        const auto cyl = nsa::cylinder(digits);
        const Mat3 psi = nsa::accumulate(digits).mat;
        const Point corners[] = {pt("0,0"), pt("1,0"), pt("0,1"), pt("1,1")};
        for (int v = 0; v < 4; ++v) {
            CHECK(cyl.vertices[v].in_unit_square());
            CHECK(cyl.vertices[v] == nsa::projective_apply(psi, corners[v]));
            for (int w = 0; w < 4; ++w) {
                CHECK(linf(cyl.vertices[v], cyl.vertices[w]) <= ExactNumber(cyl.diameter_bound));
            }
        }
    }
    CHECK_THROWS_AS(nsa::cylinder({}), nsa::DomainError);
    CHECK_THROWS_AS(nsa::reconstruct({}), nsa::DomainError);
}

TEST_CASE("reconstruct") {
    const std::vector<Digit> worked{dg(-1, 1, 1), dg(1, 2, 1)};
    CHECK(nsa::reconstruct(worked).approx == pt("2/3,1"));
    const std::vector<Digit> one{dg(1, 1, 1)};
    CHECK(nsa::reconstruct(one).approx == pt("0,0"));

    for (const Point& p : nsa::reference_quadratic_points()) {
        const auto rec = nsa::expand(p, 40);
        REQUIRE(rec.digits.size() == 40);
        const auto r = nsa::reconstruct(rec.digits);
        CHECK(r.error_bound < Rational(1, 1000000));
        CHECK(linf(r.approx, p) <= ExactNumber(r.error_bound));
        CHECK(std::abs(nsa::approximate(r.approx.x) - nsa::approximate(p.x)) < 1e-6);
    }
}

TEST_CASE("error bounds shrink along an orbit") {
    std::mt19937_64 rng(36);
    std::vector<Point> bases = nsa::reference_quadratic_points();
    for (int i = 0; i < 10; ++i) {
        bases.push_back(nsa::random_quadratic_point(rng));
    }
    for (const Point& p : bases) {
        const auto rec = nsa::expand(p, 40);
        Rational previous(1);
        for (std::size_t k = 1; k <= rec.digits.size(); ++k) {
            const auto r = nsa::reconstruct(std::span(rec.digits).first(k));
            CHECK(r.error_bound <= previous);
            CHECK(linf(r.approx, p) <= ExactNumber(r.error_bound));
            previous = r.error_bound;
        }
    }
}

TEST_CASE("admissible tails") {
    const std::vector<Digit> none;
    CHECK(nsa::check_admissible_tail(none, std::vector<Digit>{dg(1, 1, 1)}) == Admissibility::ForbiddenTail);
    CHECK(nsa::check_admissible_tail(none, std::vector<Digit>{dg(1, 3, 1), dg(1, 2, 1)}) ==
          Admissibility::ForbiddenTail);
    CHECK(nsa::check_admissible_tail(none, std::vector<Digit>{dg(-1, 1, 1), dg(1, 2, 2)}) ==
          Admissibility::Admissible);
    CHECK(nsa::check_admissible_tail(none, std::vector<Digit>{dg(1, 1, 4), dg(1, 1, 2)}) ==
          Admissibility::ForbiddenTail);
    CHECK(nsa::check_admissible_tail(none, std::vector<Digit>{dg(1, 1, 2), dg(1, 2, 1)}) ==
          Admissibility::Admissible);
    // Only the tail matters.
    CHECK(nsa::check_admissible_tail(std::vector<Digit>{dg(-1, 5, 5)}, std::vector<Digit>{dg(1, 7, 1)}) ==
          Admissibility::ForbiddenTail);
    CHECK_THROWS_AS(nsa::check_admissible_tail(none, none), nsa::DomainError);
}

TEST_CASE("convergent cache replays from checkpoints") {
    std::mt19937_64 rng(37);
    const auto digits = nsa::random_digits(rng, 60, 9);
    for (std::size_t stride : {1u, 3u, 8u, 100u}) {
        nsa::ConvergentCache cache(stride);
        for (const Digit& d : digits) {
            cache.push(d);
        }
        CHECK(cache.size() == 60);
        CHECK(cache.last().mat == nsa::accumulate(digits).mat);
        for (std::size_t k = 0; k <= 60; ++k) {
            const auto got = cache.at(k);
            const auto want = nsa::accumulate(std::span(digits).first(k));
            CHECK(got.mat == want.mat);
            CHECK(got.delta == want.delta);
            CHECK(got.k == k);
        }
        CHECK_THROWS_AS(cache.at(61), nsa::KOutOfRange);
    }
}

TEST_CASE("checkpoint stride from the environment") {
    ::unsetenv("NSA_CHECKPOINT_STRIDE");
    CHECK(nsa::checkpoint_stride_from_env(8) == 8);
    ::setenv("NSA_CHECKPOINT_STRIDE", "5", 1);
    CHECK(nsa::checkpoint_stride_from_env(8) == 5);
    ::setenv("NSA_CHECKPOINT_STRIDE", "0", 1);
    CHECK_THROWS_AS(nsa::checkpoint_stride_from_env(8), nsa::ParseError);
    ::setenv("NSA_CHECKPOINT_STRIDE", "x7", 1);
    CHECK_THROWS_AS(nsa::checkpoint_stride_from_env(8), nsa::ParseError);
    ::unsetenv("NSA_CHECKPOINT_STRIDE");
}

TEST_CASE("digit files") {
    std::istringstream good("# worked orbit\n-1 1 1\n\n+1 2 1\n1 3 4\n");
    CHECK(nsa::parse_digits(good) == std::vector<Digit>{dg(-1, 1, 1), dg(1, 2, 1), dg(1, 3, 4)});

    std::istringstream bad_eps("2 1 1\n");
    CHECK_THROWS_AS(nsa::parse_digits(bad_eps), nsa::ParseError);
    std::istringstream bad_int("+1 x 1\n");
    CHECK_THROWS_AS(nsa::parse_digits(bad_int), nsa::ParseError);
    std::istringstream extra("+1 1 1 1\n");
    CHECK_THROWS_AS(nsa::parse_digits(extra), nsa::ParseError);
    std::istringstream zero("+1 0 1\n");
    CHECK_THROWS_AS(nsa::parse_digits(zero), nsa::InvalidDigit);

    const auto path = std::filesystem::temp_directory_path() / "nsa_unit_digits.txt";
    {
        std::ofstream out(path);
        out << "-1 1 1\n+1 2 1\n";
    }
    CHECK(nsa::read_digit_file(path) == std::vector<Digit>{dg(-1, 1, 1), dg(1, 2, 1)});
    std::filesystem::remove(path);
    CHECK_THROWS_AS(nsa::read_digit_file(path), nsa::Error);
}
