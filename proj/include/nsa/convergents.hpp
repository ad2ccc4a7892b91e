#pragma once

#include "nsa/exact_numbers.hpp"
#include "nsa/nsa_core.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace nsa {

using Vec3 = std::array<Integer, 3>;

struct Mat3 {
    std::array<std::array<Integer, 3>, 3> m{};

    static Mat3 identity();

    Integer& operator()(int i, int j) { return m[i][j]; }
    const Integer& operator()(int i, int j) const { return m[i][j]; }

    Mat3 transpose() const;
    Integer det() const;
    /// Transposed cofactor matrix; equals the inverse when det() == 1.
    Mat3 adjugate() const;
    bool non_negative() const;

    friend Mat3 operator*(const Mat3& a, const Mat3& b);
    friend Vec3 operator*(const Mat3& a, const Vec3& v);
    friend bool operator==(const Mat3&, const Mat3&) = default;
};

/// A_{(eps,n,m)}: maps (x, y, 1) projectively to T(x, y) on its cylinder.
Mat3 digit_matrix(const Digit& d);
/// Inverse of digit_matrix; all entries non-negative, determinant 1.
Mat3 digit_matrix_inverse(const Digit& d);

/// Psi after k digits, rows p (0), r (1), q (2). Accessors are 1-based to
/// match the usual p_1, p_2, p_3 naming.
struct ConvergentMatrix {
    Mat3 mat = Mat3::identity();
    std::size_t k = 0;
    int delta = 1; ///< eps_1 * ... * eps_k

    const Integer& p(int i) const { return mat(0, i - 1); }
    const Integer& r(int i) const { return mat(1, i - 1); }
    const Integer& q(int i) const { return mat(2, i - 1); }

    /// Right-multiplies by digit_matrix_inverse(d) using column updates.
    void append(const Digit& d);
};

/// Product of inverse digit matrices in digit order. Throws InvalidDigit.
ConvergentMatrix accumulate(std::span<const Digit> digits);

/// Psi_k for every k of a growing digit sequence, storing every `stride`-th
/// matrix and replaying at most stride - 1 digits for the others.
class ConvergentCache {
public:
    explicit ConvergentCache(std::size_t stride = 8);

    void push(const Digit& d);
    std::size_t size() const { return digits_.size(); }
    std::size_t stride() const { return stride_; }
    const std::vector<Digit>& digits() const { return digits_; }
    const ConvergentMatrix& last() const { return current_; }
    /// Psi at length k, 0 <= k <= size(). Throws KOutOfRange.
    ConvergentMatrix at(std::size_t k) const;

private:
    std::size_t stride_;
    std::vector<Digit> digits_;
    std::vector<ConvergentMatrix> checkpoints_;
    ConvergentMatrix current_;
};

/// Checkpoint spacing from NSA_CHECKPOINT_STRIDE, or `fallback`.
std::size_t checkpoint_stride_from_env(std::size_t fallback = 8);

/// (M(x,y,1)_1 / M(x,y,1)_3, M(x,y,1)_2 / M(x,y,1)_3). Throws DegenerateImage
/// when the third coordinate vanishes.
Point projective_apply(const Mat3& m, const Point& p);

/// Convex hull of the cylinder closure: images of the unit-square corners
/// (0,0), (1,0), (0,1), (1,1), in that order.
struct CylinderApprox {
    std::array<Point, 4> vertices;
    Rational diameter_bound; ///< max pairwise L-infinity distance of the vertices
};

/// Throws DomainError for an empty prefix, InvalidDigit for a bad digit.
CylinderApprox cylinder(std::span<const Digit> digits);

struct Reconstruction {
    Point approx;          ///< (p_3/q_3, r_3/q_3)
    Rational error_bound;  ///< L-infinity radius covering the whole cylinder
};

Reconstruction reconstruct(std::span<const Digit> digits);

enum class Admissibility { Admissible, ForbiddenTail };

/// Whether preperiod followed by period repeated forever is realized by a
/// point: the tail may not be constantly (eps, m) = (+1, 1) nor constantly
/// (eps, n) = (+1, 1). Throws DomainError for an empty period.
Admissibility check_admissible_tail(std::span<const Digit> preperiod, std::span<const Digit> period);

/// One digit per line as "eps n m", eps in {+1, -1}. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError / InvalidDigit.
std::vector<Digit> parse_digits(std::istream& in);
std::vector<Digit> read_digit_file(const std::filesystem::path& path);

} // namespace nsa
