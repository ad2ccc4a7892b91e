#include "nsa/dimension_group.hpp"

#include "nsa/errors.hpp"

#include <algorithm>
#include <string>

namespace nsa {

ThetaContext::ThetaContext(Point base, std::size_t cap, std::size_t checkpoint_stride)
    : base_(std::move(base)), cap_(cap), cache_(checkpoint_stride) {
    base_.radicand();
    OrbitRecord rec = expand(base_, cap_, true);
    if (const auto* s = std::get_if<Stopped>(&rec.status)) {
        throw DomainError("orbit of " + to_string(base_) + " stops at k = " + std::to_string(s->at) +
                          " (" + std::string(to_string(s->reason)) + ")");
    }
    if (const auto* per = std::get_if<Periodic>(&rec.status)) {
        period_ = *per;
        rec.points.pop_back(); // equals points[preperiod]
    }
    orbit_ = std::move(rec.points);
    for (std::size_t j = 0; j < cap_; ++j) {
        if (j < rec.digits.size()) {
            cache_.push(rec.digits[j]);
        } else {
            const std::size_t pre = period_->preperiod;
            cache_.push(rec.digits[pre + (j - pre) % period_->period]);
        }
    }
}

void ThetaContext::check_k(std::size_t k) const {
    if (k > cap_) {
        throw KOutOfRange(k, cap_);
    }
}

const Point& ThetaContext::orbit_point(std::size_t k) const {
    check_k(k);
    if (k < orbit_.size()) {
        return orbit_[k];
    }
    const std::size_t pre = period_->preperiod;
    return orbit_[pre + (k - pre) % period_->period];
}

ConvergentMatrix ThetaContext::convergent(std::size_t k) const {
    check_k(k);
    return cache_.at(k);
}

Vec3 parse_vec3(std::string_view text) {
    Vec3 v;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(',', start) : text.size();
        if (end == std::string_view::npos) {
            throw ParseError("bad vector '" + std::string(text) + "': expected \"a,b,c\"");
        }
        std::string field;
        for (char ch : text.substr(start, end - start)) {
            if (ch != ' ' && ch != '\t') {
                field.push_back(ch);
            }
        }
        if (field.starts_with('+')) {
            field.erase(0, 1);
        }
        if (field.empty() || v[i].set_str(field, 10) != 0) {
            throw ParseError("bad vector '" + std::string(text) + "': component " + std::to_string(i + 1) +
                             " is not an integer");
        }
        start = end + 1;
    }
    return v;
}

ExactNumber linear_form(const Point& base, const Vec3& v) {
    return base.x * ExactNumber(v[0]) + base.y * ExactNumber(v[1]) + ExactNumber(v[2]);
}

Vec3 theta_inverse(const ThetaContext& ctx, std::size_t k, const Vec3& v) {
    return ctx.convergent(k).mat.transpose() * v;
}

Vec3 theta(const ThetaContext& ctx, std::size_t k, const Vec3& v) {
    return ctx.convergent(k).mat.adjugate().transpose() * v;
}

std::string_view to_string(ConeOutcome o) {
    switch (o) {
    case ConeOutcome::InCone:
        return "InCone";
    case ConeOutcome::OutCone:
        return "OutCone";
    case ConeOutcome::BoundaryNonzero:
        return "BoundaryNonzero";
    case ConeOutcome::Undecided:
        return "Undecided";
    }
    return "?";
}

namespace {

bool non_negative(const Vec3& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& e) { return e >= 0; });
}

} // namespace

ConeDecision cone_decide(const ThetaContext& ctx, const Vec3& v) {
    ConeDecision d;
    d.cap = ctx.cap();
    d.form = linear_form(ctx.base(), v);
    d.form_sign = d.form.sign();
    if (std::all_of(v.begin(), v.end(), [](const Integer& e) { return e == 0; })) {
        d.outcome = ConeOutcome::InCone;
        d.zero_vector = true;
        d.witness_vector = v;
        return d;
    }
    if (d.form_sign < 0) {
        d.outcome = ConeOutcome::OutCone;
        return d;
    }
    if (d.form_sign == 0) {
        d.outcome = ConeOutcome::BoundaryNonzero;
        return d;
    }
    // transpose(Psi_{k+1}) v = transpose(A^{-1}_{k+1}) transpose(Psi_k) v, so one
    // small matrix-vector product per stage.
    Vec3 w = v;
    const auto& digits = ctx.digits();
    for (std::size_t k = 0;; ++k) {
        if (non_negative(w)) {
            d.outcome = ConeOutcome::InCone;
            d.witness_k = k;
            d.witness_vector = w;
            return d;
        }
        if (k == ctx.cap()) {
            break;
        }
        w = digit_matrix_inverse(digits[k]).transpose() * w;
    }
    d.outcome = ConeOutcome::Undecided;
    return d;
}

GeneratorReport generator_check(const ThetaContext& ctx, std::size_t k) {
    const ConvergentMatrix psi = ctx.convergent(k);
    const Mat3 inv = psi.mat.adjugate();
    GeneratorReport r;
    r.k = k;
    r.all_positive = true;
    for (int i = 0; i < 3; ++i) {
        // theta_k(e_i) is column i of transpose(Psi^{-1}), i.e. row i of Psi^{-1}.
        r.generators[i] = Vec3{inv(i, 0), inv(i, 1), inv(i, 2)};
        r.forms[i] = linear_form(ctx.base(), r.generators[i]);
        r.all_positive = r.all_positive && r.forms[i].sign() > 0;
    }
    const Point& pk = ctx.orbit_point(k);
    r.e3_expected = ExactNumber(1) / (ExactNumber(psi.q(2)) * (pk.x + pk.y) + ExactNumber(psi.q(3)));
    r.e3_identity = r.forms[2] == r.e3_expected;
    return r;
}

Point recover_orbit_point(const ThetaContext& ctx, std::size_t k) {
    const Mat3 inv = ctx.convergent(k).mat.adjugate();
    const Point& b = ctx.base();
    auto row_form = [&](int i) {
        return ExactNumber(inv(i, 0)) * b.x + ExactNumber(inv(i, 1)) * b.y + ExactNumber(inv(i, 2));
    };
    const ExactNumber den = row_form(2);
    if (den.is_zero()) {
        throw DegenerateDenominator("cofactor denominator vanishes at k = " + std::to_string(k));
    }
    return Point{row_form(0) / den, row_form(1) / den};
}

bool stage_composition_check(const ThetaContext& ctx, std::size_t k) {
    ctx.check_k(k + 1);
    const Mat3 lhs = ctx.convergent(k).mat.adjugate().transpose();
    const Mat3 next = ctx.convergent(k + 1).mat.adjugate().transpose();
    const Mat3 step = digit_matrix_inverse(ctx.digits()[k]).transpose();
    return lhs == next * step;
}

} // namespace nsa
