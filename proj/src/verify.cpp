#include "nsa/verify.hpp"

#include "nsa/dimension_group.hpp"
#include "nsa/errors.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

namespace nsa {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

std::vector<Digit> random_digits(std::mt19937_64& rng, std::size_t length, int max_entry) {
    std::vector<Digit> digits;
    digits.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const int eps = uniform(rng, 0, 1) == 0 ? -1 : 1;
        const int n = uniform(rng, 1, max_entry);
        const int m = uniform(rng, 1, max_entry);
        digits.push_back(Digit{eps, n, m});
    }
    return digits;
}

Point random_rational_point(std::mt19937_64& rng, int max_den) {
    const int den = uniform(rng, 1, max_den);
    const int a = uniform(rng, 0, den);
    const int b = uniform(rng, 0, den);
    return Point{Rational(a, den), Rational(b, den)};
}

Point random_quadratic_point(std::mt19937_64& rng) {
    static constexpr std::array<long, 10> radicands{2, 3, 5, 6, 7, 10, 11, 13, 14, 15};
    const long d = radicands[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(radicands.size()) - 1))];
    auto coordinate = [&] {
        // (j + frac(b sqrt d)) / c lies in (0, 1) for 0 <= j < c.
        const int b = uniform(rng, 1, 10);
        const int c = uniform(rng, 2, 40);
        const int j = uniform(rng, 0, c - 1);
        const Integer whole = isqrt(Integer(b) * b * d);
        return ExactNumber(QuadraticElement(Integer(j) - whole, b, c, d));
    };
    ExactNumber x = coordinate();
    ExactNumber y = coordinate();
    return Point{std::move(x), std::move(y)};
}

std::vector<Point> reference_quadratic_points() {
    const char* texts[] = {
        "(0+1*sqrt(2))/2,(0+1*sqrt(2))/2",
        "(-1+1*sqrt(2))/1,(0+1*sqrt(2))/2",
        "(-1+1*sqrt(5))/2,(-2+1*sqrt(5))/1",
        "(-1+1*sqrt(3))/1,(-1+1*sqrt(3))/2",
        "(-2+1*sqrt(7))/1,(-1+1*sqrt(7))/4",
    };
    std::vector<Point> pts;
    for (const char* t : texts) {
        pts.push_back(parse_point(t));
    }
    return pts;
}

bool entry_identities_hold(const ConvergentMatrix& psi) {
    return psi.p(1) == psi.p(2) + psi.delta && psi.r(1) == psi.r(2) - psi.delta && psi.q(1) == psi.q(2);
}

bool unimodular(const ConvergentMatrix& psi) { return psi.mat.det() == 1; }

bool ratio_identity_holds(const ConvergentMatrix& psi) {
    if (psi.q(1) == 0 || psi.q(2) == 0 || psi.q(3) == 0) {
        return false;
    }
    const Rational first(psi.p(1) + psi.r(1), psi.q(1));
    const Rational second(psi.p(2) + psi.r(2), psi.q(2));
    const Rational third = Rational(psi.p(3) + psi.r(3), psi.q(3)) + Rational(psi.delta, psi.q(2) * psi.q(3));
    return first == second && second == third;
}

bool conjugacy_holds(const OrbitRecord& orbit) {
    ConvergentMatrix psi;
    for (std::size_t k = 1; k <= orbit.digits.size(); ++k) {
        psi.append(orbit.digits[k - 1]);
        if (projective_apply(psi.mat, orbit.points[k]) != orbit.points[0]) {
            return false;
        }
    }
    return true;
}

bool VerifyReport::ok() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failed == 0; });
}

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SuiteResult& s : suites) {
        nlohmann::ordered_json j{{"name", s.name}, {"passed", s.passed}, {"failed", s.failed}};
        if (!s.first_failure.empty()) {
            j["first_failure"] = s.first_failure;
        }
        arr.push_back(std::move(j));
    }
    return nlohmann::ordered_json{{"seed", seed}, {"samples", samples}, {"ok", ok()}, {"suites", std::move(arr)}};
}

namespace {

void record(SuiteResult& suite, bool ok, const std::function<std::string()>& describe) {
    if (ok) {
        ++suite.passed;
        return;
    }
    ++suite.failed;
    if (suite.first_failure.empty()) {
        suite.first_failure = describe();
    }
}

void record_checked(SuiteResult& suite, const std::function<bool()>& check,
                    const std::function<std::string()>& describe) {
    bool ok = false;
    std::string error;
    try {
        ok = check();
    } catch (const std::exception& e) {
        error = e.what();
    }
    record(suite, ok, [&] { return error.empty() ? describe() : describe() + ": " + error; });
}

SuiteResult make_suite(std::string name) {
    SuiteResult s;
    s.name = std::move(name);
    return s;
}

std::string describe_digits(const std::vector<Digit>& digits) {
    std::string s;
    for (const Digit& d : digits) {
        s += "(" + to_string(d) + ")";
    }
    return s;
}

} // namespace

VerifyReport run_verification(std::uint64_t seed, std::size_t samples) {
    VerifyReport report;
    report.seed = seed;
    report.samples = samples;
    std::mt19937_64 rng(seed);

    SuiteResult entries = make_suite("entry_identities");
    SuiteResult determinant = make_suite("determinant");
    SuiteResult ratio = make_suite("ratio_identity");
    for (std::size_t i = 0; i < samples; ++i) {
        const auto digits = random_digits(rng, static_cast<std::size_t>(uniform(rng, 1, 40)));
        const ConvergentMatrix psi = accumulate(digits);
        auto what = [&] { return "digits " + describe_digits(digits); };
        record(entries, entry_identities_hold(psi), what);
        record(determinant, unimodular(psi), what);
        record(ratio, ratio_identity_holds(psi), what);
    }

    SuiteResult conjugacy = make_suite("conjugacy");
    for (std::size_t i = 0; i < samples; ++i) {
        const Point p = random_rational_point(rng, 60);
        record_checked(
            conjugacy, [&] { return conjugacy_holds(expand(p, 1'000'000)); },
            [&] { return "point " + to_string(p); });
    }

    SuiteResult termination = make_suite("rational_termination");
    for (std::size_t i = 0; i < samples; ++i) {
        const Point p = random_rational_point(rng, 200);
        record_checked(
            termination,
            [&] {
                const OrbitRecord rec = expand(p, 1'000'000);
                return std::holds_alternative<Stopped>(rec.status) && !classify_stop(p).empty();
            },
            [&] { return "point " + to_string(p); });
    }

    SuiteResult generators = make_suite("generator_positivity");
    SuiteResult composition = make_suite("stage_composition");
    SuiteResult recovery = make_suite("cofactor_recovery");
    const std::size_t bases = std::max<std::size_t>(1, samples / 100);
    for (std::size_t i = 0; i < bases; ++i) {
        const Point base = random_quadratic_point(rng);
        auto what = [&](std::size_t k) {
            return [&base, k] { return "base " + to_string(base) + " k=" + std::to_string(k); };
        };
        std::optional<ThetaContext> ctx;
        try {
            ctx.emplace(base, 101);
        } catch (const std::exception& e) {
            record(generators, false, [&] { return "base " + to_string(base) + ": " + e.what(); });
            continue;
        }
        for (std::size_t k = 0; k <= 50; ++k) {
            record_checked(generators, [&] { return generator_check(*ctx, k).passed(); }, what(k));
            record_checked(composition, [&] { return stage_composition_check(*ctx, k); }, what(k));
        }
        for (std::size_t k = 0; k <= 100; ++k) {
            record_checked(
                recovery, [&] { return recover_orbit_point(*ctx, k) == ctx->orbit_point(k); }, what(k));
        }
    }

    report.suites = {entries, determinant, ratio, conjugacy, termination, generators, composition, recovery};
    return report;
}

} // namespace nsa
