#pragma once

#include "nsa/convergents.hpp"
#include "nsa/nsa_core.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nsa {

// Seeded sample generators shared by the verify command and the test suites.

/// Digits with random eps and n, m uniform in [1, max_entry].
std::vector<Digit> random_digits(std::mt19937_64& rng, std::size_t length, int max_entry = 20);

/// (a/D, b/D) with D uniform in [1, max_den] and 0 <= a, b <= D.
Point random_rational_point(std::mt19937_64& rng, int max_den);

/// A point of Q(sqrt d) in the open unit square whose coordinates both have
/// a positive irrational part. Such points satisfy none of the stopping line
/// equations, so their orbits never stop.
Point random_quadratic_point(std::mt19937_64& rng);

/// Five fixed non-stopping quadratic base points, (1/sqrt2, 1/sqrt2) first.
std::vector<Point> reference_quadratic_points();

/// Invariant identities on a single digit sequence.
bool entry_identities_hold(const ConvergentMatrix& psi);
bool unimodular(const ConvergentMatrix& psi);
bool ratio_identity_holds(const ConvergentMatrix& psi);

/// projective_apply(Psi_k, T^k p) == p for every k the orbit runs.
bool conjugacy_holds(const OrbitRecord& orbit);

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::string first_failure;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<SuiteResult> suites;

    bool ok() const;
    nlohmann::ordered_json to_json() const;
};

/// Runs every invariant suite over `samples` seeded random inputs.
VerifyReport run_verification(std::uint64_t seed, std::size_t samples);

} // namespace nsa
