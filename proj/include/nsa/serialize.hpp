#pragma once

#include "nsa/convergents.hpp"
#include "nsa/dimension_group.hpp"
#include "nsa/nsa_core.hpp"

#include <json.hpp>

#include <span>

namespace nsa {

// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise. Scalars are strings in the scalar grammar.

nlohmann::ordered_json integer_json(const Integer& z);
nlohmann::ordered_json scalar_json(const ExactNumber& x, int decimals = 20);
nlohmann::ordered_json point_json(const Point& p, int decimals = 20);
nlohmann::ordered_json digit_json(const Digit& d);
nlohmann::ordered_json digits_json(std::span<const Digit> digits);
nlohmann::ordered_json status_json(const OrbitStatus& s);
nlohmann::ordered_json orbit_json(const Point& input, const OrbitRecord& rec, bool include_points);
nlohmann::ordered_json stop_lines_json(std::span<const StopLine> lines);
nlohmann::ordered_json matrix_json(const Mat3& m);
nlohmann::ordered_json vec_json(const Vec3& v);
nlohmann::ordered_json convergent_json(const ConvergentMatrix& c);
nlohmann::ordered_json cylinder_json(const CylinderApprox& c);
nlohmann::ordered_json reconstruction_json(const Reconstruction& r);
nlohmann::ordered_json cone_json(const ThetaContext& ctx, const Vec3& v, const ConeDecision& d);

} // namespace nsa
