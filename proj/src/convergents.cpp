#include "nsa/convergents.hpp"

#include "nsa/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace nsa {

Mat3 Mat3::identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = i == j ? 1 : 0;
        }
    }
    return r;
}

Mat3 Mat3::transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t(i, j) = m[j][i];
        }
    }
    return t;
}

Integer Mat3::det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::adjugate() const {
    Mat3 adj;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // Cofactor of (j, i): rows and columns other than j and i, taken
            // cyclically so the sign comes out right without (-1)^(i+j).
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj(i, j) = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    return adj;
}

bool Mat3::non_negative() const {
    for (const auto& row : m) {
        for (const auto& e : row) {
            if (e < 0) {
                return false;
            }
        }
    }
    return true;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
        }
    }
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) {
        r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
    }
    return r;
}

namespace {

void require_valid(const Digit& d) {
    if (!d.valid()) {
        throw InvalidDigit("invalid digit (" + to_string(d) + "): need eps = +-1, n >= 1, m >= 1");
    }
}

Mat3 from_rows(std::array<std::array<Integer, 3>, 3> rows) {
    Mat3 r;
    r.m = std::move(rows);
    return r;
}

} // namespace

Mat3 digit_matrix(const Digit& d) {
    require_valid(d);
    const Integer& n = d.n;
    const Integer& m = d.m;
    if (d.eps > 0) {
        return from_rows({{{n, n - 1, 1 - n}, {m - 1, m, 1 - m}, {-1, -1, 1}}});
    }
    return from_rows({{{-n, 1 - n, n}, {1 - m, -m, m}, {1, 1, -1}}});
}

Mat3 digit_matrix_inverse(const Digit& d) {
    require_valid(d);
    const Integer& n = d.n;
    const Integer& m = d.m;
    if (d.eps > 0) {
        return from_rows({{{1, 0, n - 1}, {0, 1, m - 1}, {1, 1, n + m - 1}}});
    }
    return from_rows({{{0, 1, m}, {1, 0, n}, {1, 1, n + m - 1}}});
}

void ConvergentMatrix::append(const Digit& d) {
    require_valid(d);
    // Psi * A^{-1} acts on columns c1, c2, c3 of Psi:
    //   eps = +1: (c1 + c3, c2 + c3, (n-1) c1 + (m-1) c2 + (n+m-1) c3)
    //   eps = -1: (c2 + c3, c1 + c3, m c1 + n c2 + (n+m-1) c3)
    const Integer c3_coeff = d.n + d.m - 1;
    for (int row = 0; row < 3; ++row) {
        Integer& c1 = mat(row, 0);
        Integer& c2 = mat(row, 1);
        Integer& c3 = mat(row, 2);
        Integer new3;
        if (d.eps > 0) {
            new3 = (d.n - 1) * c1 + (d.m - 1) * c2 + c3_coeff * c3;
            c1 += c3;
            c2 += c3;
        } else {
            new3 = d.m * c1 + d.n * c2 + c3_coeff * c3;
            std::swap(c1, c2);
            c1 += c3;
            c2 += c3;
        }
        c3 = std::move(new3);
    }
    ++k;
    delta *= d.eps;
}

ConvergentMatrix accumulate(std::span<const Digit> digits) {
    ConvergentMatrix psi;
    for (const Digit& d : digits) {
        psi.append(d);
    }
    return psi;
}

ConvergentCache::ConvergentCache(std::size_t stride) : stride_(std::max<std::size_t>(stride, 1)) {
    checkpoints_.push_back(current_);
}

void ConvergentCache::push(const Digit& d) {
    current_.append(d);
    digits_.push_back(d);
    if (digits_.size() % stride_ == 0) {
        checkpoints_.push_back(current_);
    }
}

ConvergentMatrix ConvergentCache::at(std::size_t k) const {
    if (k > digits_.size()) {
        throw KOutOfRange(k, digits_.size());
    }
    if (k == digits_.size()) {
        return current_;
    }
    ConvergentMatrix psi = checkpoints_[k / stride_];
    for (std::size_t i = psi.k; i < k; ++i) {
        psi.append(digits_[i]);
    }
    return psi;
}

std::size_t checkpoint_stride_from_env(std::size_t fallback) {
    const char* env = std::getenv("NSA_CHECKPOINT_STRIDE");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        throw ParseError(std::string("NSA_CHECKPOINT_STRIDE must be a positive integer, got '") + env +
                         "'");
    }
    return static_cast<std::size_t>(v);
}

Point projective_apply(const Mat3& m, const Point& p) {
    auto row = [&](int i) {
        return ExactNumber(m(i, 0)) * p.x + ExactNumber(m(i, 1)) * p.y + ExactNumber(m(i, 2));
    };
    const ExactNumber w = row(2);
    if (w.is_zero()) {
        throw DegenerateImage("projective image of " + to_string(p) + " is at infinity");
    }
    return Point{row(0) / w, row(1) / w};
}

namespace {

Point column_ratio(const Integer& p, const Integer& r, const Integer& q) {
    return Point{Rational(p, q), Rational(r, q)};
}

Rational abs_diff(const ExactNumber& a, const ExactNumber& b) {
    const ExactNumber d = (a - b).abs();
    return d.as_rational();
}

} // namespace

CylinderApprox cylinder(std::span<const Digit> digits) {
    if (digits.empty()) {
        throw DomainError("a cylinder needs at least one digit");
    }
    const ConvergentMatrix psi = accumulate(digits);
    const Mat3& m = psi.mat;
    CylinderApprox c;
    c.vertices[0] = column_ratio(m(0, 2), m(1, 2), m(2, 2));
    c.vertices[1] = column_ratio(m(0, 0) + m(0, 2), m(1, 0) + m(1, 2), m(2, 0) + m(2, 2));
    c.vertices[2] = column_ratio(m(0, 1) + m(0, 2), m(1, 1) + m(1, 2), m(2, 1) + m(2, 2));
    c.vertices[3] = column_ratio(m(0, 0) + m(0, 1) + m(0, 2), m(1, 0) + m(1, 1) + m(1, 2),
                                 m(2, 0) + m(2, 1) + m(2, 2));
    Rational diameter(0);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            diameter = std::max({diameter, abs_diff(c.vertices[i].x, c.vertices[j].x),
                                 abs_diff(c.vertices[i].y, c.vertices[j].y)});
        }
    }
    c.diameter_bound = diameter;
    return c;
}

Reconstruction reconstruct(std::span<const Digit> digits) {
    CylinderApprox c = cylinder(digits);
    return Reconstruction{c.vertices[0], c.diameter_bound};
}

Admissibility check_admissible_tail(std::span<const Digit> preperiod, std::span<const Digit> period) {
    if (period.empty()) {
        throw DomainError("periodic tail must contain at least one digit");
    }
    for (const Digit& d : preperiod) {
        require_valid(d);
    }
    for (const Digit& d : period) {
        require_valid(d);
    }
    const bool all_m_one =
        std::all_of(period.begin(), period.end(), [](const Digit& d) { return d.eps == 1 && d.m == 1; });
    const bool all_n_one =
        std::all_of(period.begin(), period.end(), [](const Digit& d) { return d.eps == 1 && d.n == 1; });
    return all_m_one || all_n_one ? Admissibility::ForbiddenTail : Admissibility::Admissible;
}

std::vector<Digit> parse_digits(std::istream& in) {
    std::vector<Digit> digits;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string eps_text, n_text, m_text, extra;
        if (!(fields >> eps_text >> n_text >> m_text) || (fields >> extra)) {
            throw ParseError("digit line " + std::to_string(lineno) + ": expected \"eps n m\"");
        }
        Digit d;
        if (eps_text == "+1" || eps_text == "1") {
            d.eps = 1;
        } else if (eps_text == "-1") {
            d.eps = -1;
        } else {
            throw ParseError("digit line " + std::to_string(lineno) + ": eps must be +1 or -1");
        }
        auto parse_int = [&](const std::string& s) {
            Integer v;
            if (s.empty() || v.set_str(s, 10) != 0) {
                throw ParseError("digit line " + std::to_string(lineno) + ": bad integer '" + s + "'");
            }
            return v;
        };
        d.n = parse_int(n_text);
        d.m = parse_int(m_text);
        if (!d.valid()) {
            throw InvalidDigit("digit line " + std::to_string(lineno) + ": n and m must be >= 1");
        }
        digits.push_back(std::move(d));
    }
    return digits;
}

std::vector<Digit> read_digit_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open digit file " + path.string());
    }
    return parse_digits(in);
}

} // namespace nsa
