#pragma once

#include "nsa/convergents.hpp"
#include "nsa/exact_numbers.hpp"
#include "nsa/nsa_core.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace nsa {

/// Orbit data of a non-stopping base point (alpha, beta) up to `cap` steps,
/// serving the stage maps theta_k = transpose(Psi_k)^{-1} of the rank-3
/// dimension group. Immutable once built.
///
/// Group elements are pairs (k, v) identified through the theta maps; the
/// direct-sum quotient itself is never built.
class ThetaContext {
public:
    /// Throws DomainError if the base point is outside the unit square or its
    /// orbit stops within cap steps.
    ThetaContext(Point base, std::size_t cap, std::size_t checkpoint_stride = 8);

    const Point& base() const { return base_; }
    std::size_t cap() const { return cap_; }
    /// Digits 1..cap, stored 0-based.
    const std::vector<Digit>& digits() const { return cache_.digits(); }
    /// T^k(base) for 0 <= k <= cap.
    const Point& orbit_point(std::size_t k) const;
    /// Psi after k digits.
    ConvergentMatrix convergent(std::size_t k) const;
    /// Set when the orbit was found to be eventually periodic.
    const std::optional<Periodic>& period() const { return period_; }

    void check_k(std::size_t k) const;

private:
    Point base_;
    std::size_t cap_;
    std::vector<Point> orbit_;
    std::optional<Periodic> period_;
    ConvergentCache cache_;
};

/// Parses "a,b,c" integers. Throws ParseError.
Vec3 parse_vec3(std::string_view text);

/// (alpha, beta, 1) . v in the field of the base point.
ExactNumber linear_form(const Point& base, const Vec3& v);

/// theta_k^{-1}(v) = transpose(Psi_k) v.
Vec3 theta_inverse(const ThetaContext& ctx, std::size_t k, const Vec3& v);
/// theta_k(v) = transpose(Psi_k^{-1}) v, with the inverse taken as the adjugate.
Vec3 theta(const ThetaContext& ctx, std::size_t k, const Vec3& v);

enum class ConeOutcome { InCone, OutCone, BoundaryNonzero, Undecided };

std::string_view to_string(ConeOutcome o);

struct ConeDecision {
    ConeOutcome outcome = ConeOutcome::Undecided;
    bool zero_vector = false;
    /// Smallest k with theta_inverse(k, v) >= 0 componentwise (InCone, v != 0).
    std::optional<std::size_t> witness_k;
    Vec3 witness_vector{};
    ExactNumber form; ///< (alpha, beta, 1) . v
    int form_sign = 0;
    std::size_t cap = 0;
};

/// Membership of v in {0} u {v : (alpha, beta, 1) v > 0}, with a stage
/// witness for positive members. Undecided means the cap was too small.
ConeDecision cone_decide(const ThetaContext& ctx, const Vec3& v);

struct GeneratorReport {
    std::size_t k = 0;
    std::array<Vec3, 3> generators;       ///< theta_k(e_i)
    std::array<ExactNumber, 3> forms;     ///< (alpha, beta, 1) theta_k(e_i)
    bool all_positive = false;
    ExactNumber e3_expected;              ///< 1 / (q_2 (alpha_k + beta_k) + q_3)
    bool e3_identity = false;

    bool passed() const { return all_positive && e3_identity; }
};

GeneratorReport generator_check(const ThetaContext& ctx, std::size_t k);

/// T^k(alpha, beta) from the cofactors of Psi_k applied to (alpha, beta, 1).
/// Throws DegenerateDenominator if the common denominator vanishes.
Point recover_orbit_point(const ThetaContext& ctx, std::size_t k);

/// transpose(Psi_k)^{-1} == transpose(Psi_{k+1})^{-1} transpose(A^{-1}_{k+1}).
bool stage_composition_check(const ThetaContext& ctx, std::size_t k);

} // namespace nsa
