#include "nsa/serialize.hpp"

#include <type_traits>

namespace nsa {

using json = nlohmann::ordered_json;

json integer_json(const Integer& z) {
    if (z.fits_slong_p() && sizeof(long) >= 8) {
        return static_cast<std::int64_t>(z.get_si());
    }
    return z.get_str();
}

json scalar_json(const ExactNumber& x, int decimals) {
    return json{{"exact", x.to_string()}, {"decimal", to_decimal(x, decimals)}};
}

json point_json(const Point& p, int decimals) {
    return json{{"x", scalar_json(p.x, decimals)}, {"y", scalar_json(p.y, decimals)}};
}

json digit_json(const Digit& d) { return json::array({d.eps, integer_json(d.n), integer_json(d.m)}); }

json digits_json(std::span<const Digit> digits) {
    json a = json::array();
    for (const Digit& d : digits) {
        a.push_back(digit_json(d));
    }
    return a;
}

json status_json(const OrbitStatus& s) {
    return std::visit(
        [](const auto& st) -> json {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, Stopped>) {
                return json{{"tag", "Stopped"}, {"at", st.at}, {"reason", to_string(st.reason)}};
            } else if constexpr (std::is_same_v<T, Truncated>) {
                return json{{"tag", "Truncated"}, {"at", st.at}};
            } else {
                return json{{"tag", "Periodic"}, {"preperiod", st.preperiod}, {"period", st.period}};
            }
        },
        s);
}

json orbit_json(const Point& input, const OrbitRecord& rec, bool include_points) {
    json doc{{"input", point_json(input)},
             {"digits", digits_json(rec.digits)},
             {"status", status_json(rec.status)}};
    if (include_points) {
        json pts = json::array();
        for (const Point& p : rec.points) {
            pts.push_back(json::array({p.x.to_string(), p.y.to_string()}));
        }
        doc["points"] = std::move(pts);
    }
    return doc;
}

json stop_lines_json(std::span<const StopLine> lines) {
    json a = json::array();
    for (const StopLine& l : lines) {
        a.push_back(json{{"family", to_string(l.family)}, {"p", integer_json(l.p)}, {"q", integer_json(l.q)}});
    }
    return a;
}

json matrix_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        rows.push_back(json::array({integer_json(m(i, 0)), integer_json(m(i, 1)), integer_json(m(i, 2))}));
    }
    return rows;
}

json vec_json(const Vec3& v) {
    return json::array({integer_json(v[0]), integer_json(v[1]), integer_json(v[2])});
}

json convergent_json(const ConvergentMatrix& c) {
    return json{{"k", c.k}, {"delta", c.delta}, {"matrix", matrix_json(c.mat)}};
}

json cylinder_json(const CylinderApprox& c) {
    json verts = json::array();
    for (const Point& v : c.vertices) {
        verts.push_back(point_json(v));
    }
    return json{{"vertices", std::move(verts)},
                {"diameter_bound", scalar_json(ExactNumber(c.diameter_bound))}};
}

json reconstruction_json(const Reconstruction& r) {
    return json{{"approx", point_json(r.approx)}, {"error_bound", scalar_json(ExactNumber(r.error_bound))}};
}

json cone_json(const ThetaContext& ctx, const Vec3& v, const ConeDecision& d) {
    json doc{{"alpha", scalar_json(ctx.base().x)},
             {"beta", scalar_json(ctx.base().y)},
             {"v", vec_json(v)},
             {"decision", to_string(d.outcome)},
             {"cap", d.cap},
             {"trace", json{{"linear_form", scalar_json(d.form)}, {"sign", d.form_sign}}}};
    if (d.outcome == ConeOutcome::InCone) {
        doc["witness_k"] = d.zero_vector ? json("ZeroVector") : json(*d.witness_k);
        doc["witness_vector"] = vec_json(d.witness_vector);
    } else {
        doc["witness_k"] = nullptr;
    }
    return doc;
}

} // namespace nsa
