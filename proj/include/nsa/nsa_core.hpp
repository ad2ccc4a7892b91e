#pragma once

#include "nsa/exact_numbers.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nsa {

/// A point of the plane with exact coordinates. The NSA operations require
/// it to lie in the closed unit square; projective images may not.
struct Point {
    ExactNumber x;
    ExactNumber y;

    bool in_unit_square() const;
    bool is_rational() const { return x.is_rational() && y.is_rational(); }
    /// Shared radicand of the coordinates, 0 if both are rational.
    long radicand() const;

    friend bool operator==(const Point&, const Point&) = default;
};

struct PointHash {
    std::size_t operator()(const Point& p) const { return p.x.hash() * 1000003u ^ p.y.hash(); }
};

/// Parses "x,y" with each coordinate in the scalar grammar.
Point parse_point(std::string_view text);
std::string to_string(const Point& p);

/// One step of the expansion: branch sign eps and the integer parts n, m.
struct Digit {
    int eps = 1;
    Integer n = 1;
    Integer m = 1;

    bool valid() const { return (eps == 1 || eps == -1) && n >= 1 && m >= 1; }
    friend bool operator==(const Digit&, const Digit&) = default;
};

std::string to_string(const Digit& d);

enum class StopReason { XZero, YZero, AntiDiagonal };

std::string_view to_string(StopReason r);

struct Interior {
    int eps;
    friend bool operator==(const Interior&, const Interior&) = default;
};

struct Boundary {
    StopReason reason;
    friend bool operator==(const Boundary&, const Boundary&) = default;
};

using Classification = std::variant<Interior, Boundary>;

/// Boundary when x = 0, y = 0 or x + y = 1, reported in that precedence;
/// otherwise the branch sign (-1 above the antidiagonal, +1 below).
/// Throws DomainError outside the unit square.
Classification classify(const Point& p);

struct StepResult {
    Digit digit;
    Point image;
};

/// Applies the map once. Throws BoundaryPoint if classify(p) is a Boundary.
StepResult step(const Point& p);

struct Stopped {
    std::size_t at;
    StopReason reason;
    friend bool operator==(const Stopped&, const Stopped&) = default;
};

struct Truncated {
    std::size_t at;
    friend bool operator==(const Truncated&, const Truncated&) = default;
};

struct Periodic {
    std::size_t preperiod;
    std::size_t period;
    friend bool operator==(const Periodic&, const Periodic&) = default;
};

using OrbitStatus = std::variant<Stopped, Truncated, Periodic>;

struct OrbitRecord {
    std::vector<Digit> digits;
    /// points[k] = T^k(input); one more entry than digits.
    std::vector<Point> points;
    OrbitStatus status;
};

/// Iterates the map from p until the orbit hits the boundary, max_steps digits
/// are produced, or (with detect_period and quadratic coordinates) an exact
/// point repeats.
OrbitRecord expand(const Point& p, std::size_t max_steps, bool detect_period = false);

enum class LineFamily {
    PlusX, ///< (p+1)x + p y = q
    PlusY, ///< p x + (p+1)y = q
    Sym,   ///< p x + p y = q, p >= 1
};

std::string_view to_string(LineFamily f);

struct StopLine {
    LineFamily family;
    Integer p;
    Integer q;
    friend bool operator==(const StopLine&, const StopLine&) = default;
};

/// Smallest-p member of each line family through a rational point, with
/// integer 0 <= q <= 2p and p bounded by the common denominator of x and y.
/// Empty when no family matches. Throws NotRational for quadratic input.
std::vector<StopLine> classify_stop(const Point& p);

} // namespace nsa
