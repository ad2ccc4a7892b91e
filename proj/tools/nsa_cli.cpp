// nsa: command-line front end for the negative slope expansion, its
// convergent matrices and the rank-3 dimension group cone.
//
// Exit status: 0 ok, 2 parse error, 3 domain error, 4 cone undecided within
// the cap, 5 invariant failure.

#include "nsa/convergents.hpp"
#include "nsa/dimension_group.hpp"
#include "nsa/errors.hpp"
#include "nsa/exit_codes.hpp"
#include "nsa/nsa_core.hpp"
#include "nsa/serialize.hpp"
#include "nsa/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

enum class Format { Human, Json, Csv };

using nsa::kExitInvariant;
using nsa::kExitParse;
using nsa::kExitUndecided;

struct RunConfig {
    Format format = Format::Human;
    std::string point;
    std::string alpha;
    std::string beta;
    std::string vector;
    std::string digits_file;
    std::size_t max_steps = 1000;
    std::size_t cap = 10000;
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    bool detect_period = false;
    bool with_points = false;
};

void print_json(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string status_text(const nsa::OrbitStatus& s) {
    return std::visit(
        [](const auto& st) -> std::string {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, nsa::Stopped>) {
                return "Stopped(k0=" + std::to_string(st.at) + ", " + std::string(nsa::to_string(st.reason)) + ")";
            } else if constexpr (std::is_same_v<T, nsa::Truncated>) {
                return "Truncated(" + std::to_string(st.at) + ")";
            } else {
                return "Periodic(preperiod=" + std::to_string(st.preperiod) +
                       ", period=" + std::to_string(st.period) + ")";
            }
        },
        s);
}

int report_orbit(const RunConfig& cfg, const nsa::Point& p, const nsa::OrbitRecord& rec) {
    switch (cfg.format) {
    case Format::Json: {
        auto doc = nsa::orbit_json(p, rec, cfg.with_points);
        if (p.is_rational() && std::holds_alternative<nsa::Stopped>(rec.status)) {
            doc["stop_lines"] = nsa::stop_lines_json(nsa::classify_stop(p));
        }
        print_json(doc);
        break;
    }
    case Format::Csv:
        std::cout << "k,eps,n,m\n";
        for (std::size_t k = 0; k < rec.digits.size(); ++k) {
            const auto& d = rec.digits[k];
            std::cout << k + 1 << "," << d.eps << "," << d.n.get_str() << "," << d.m.get_str() << "\n";
        }
        std::cout << "# status " << status_text(rec.status) << "\n";
        break;
    case Format::Human:
        std::cout << "point   " << nsa::to_string(p) << "\n";
        std::cout << "status  " << status_text(rec.status) << "\n";
        std::cout << std::setw(6) << "k" << std::setw(5) << "eps" << std::setw(10) << "n" << std::setw(10) << "m"
                  << "\n";
        for (std::size_t k = 0; k < rec.digits.size(); ++k) {
            const auto& d = rec.digits[k];
            std::cout << std::setw(6) << k + 1 << std::setw(5) << (d.eps > 0 ? "+1" : "-1") << std::setw(10)
                      << d.n.get_str() << std::setw(10) << d.m.get_str() << "\n";
        }
        if (cfg.with_points) {
            for (std::size_t k = 0; k < rec.points.size(); ++k) {
                std::cout << "T^" << k << " = " << nsa::to_string(rec.points[k]) << "\n";
            }
        }
        break;
    }
    return 0;
}

int run_expand(const RunConfig& cfg, bool detect_period) {
    const nsa::Point p = nsa::parse_point(cfg.point);
    const nsa::OrbitRecord rec = nsa::expand(p, cfg.max_steps, detect_period);
    return report_orbit(cfg, p, rec);
}

int run_reconstruct(const RunConfig& cfg) {
    const auto digits = nsa::read_digit_file(cfg.digits_file);
    const nsa::Reconstruction r = nsa::reconstruct(digits);
    const nsa::ConvergentMatrix psi = nsa::accumulate(digits);
    switch (cfg.format) {
    case Format::Json: {
        auto doc = nsa::reconstruction_json(r);
        doc["convergent"] = nsa::convergent_json(psi);
        print_json(doc);
        break;
    }
    case Format::Csv:
        std::cout << "x,y,error_bound\n"
                  << r.approx.x.to_string() << "," << r.approx.y.to_string() << "," << r.error_bound.to_string()
                  << "\n";
        break;
    case Format::Human:
        std::cout << "digits       " << digits.size() << "\n"
                  << "approx       " << nsa::to_string(r.approx) << "\n"
                  << "             (" << nsa::to_decimal(r.approx.x, 15) << ", " << nsa::to_decimal(r.approx.y, 15)
                  << ")\n"
                  << "error_bound  " << r.error_bound.to_string() << " ~ "
                  << nsa::to_decimal(nsa::ExactNumber(r.error_bound), 20) << "\n";
        break;
    }
    return 0;
}

int run_cylinder(const RunConfig& cfg) {
    const auto digits = nsa::read_digit_file(cfg.digits_file);
    const nsa::CylinderApprox c = nsa::cylinder(digits);
    static const char* corners[] = {"(0,0)", "(1,0)", "(0,1)", "(1,1)"};
    switch (cfg.format) {
    case Format::Json:
        print_json(nsa::cylinder_json(c));
        break;
    case Format::Csv:
        std::cout << "corner,x,y\n";
        for (std::size_t i = 0; i < 4; ++i) {
            std::cout << "\"" << corners[i] << "\"," << c.vertices[i].x.to_string() << ","
                      << c.vertices[i].y.to_string() << "\n";
        }
        break;
    case Format::Human:
        for (std::size_t i = 0; i < 4; ++i) {
            std::cout << corners[i] << " -> " << nsa::to_string(c.vertices[i]) << "\n";
        }
        std::cout << "diameter_bound " << c.diameter_bound.to_string() << "\n";
        break;
    }
    return 0;
}

int run_cone(const RunConfig& cfg) {
    const nsa::Point base{nsa::parse_exact(cfg.alpha), nsa::parse_exact(cfg.beta)};
    const nsa::Vec3 v = nsa::parse_vec3(cfg.vector);
    const nsa::ThetaContext ctx(base, cfg.cap, nsa::checkpoint_stride_from_env());
    const nsa::ConeDecision d = nsa::cone_decide(ctx, v);
    switch (cfg.format) {
    case Format::Json:
        print_json(nsa::cone_json(ctx, v, d));
        break;
    case Format::Csv:
        std::cout << "decision,witness_k,w1,w2,w3,linear_form,sign\n" << nsa::to_string(d.outcome) << ",";
        if (d.outcome == nsa::ConeOutcome::InCone) {
            std::cout << (d.zero_vector ? std::string("ZeroVector") : std::to_string(*d.witness_k)) << ","
                      << d.witness_vector[0].get_str() << "," << d.witness_vector[1].get_str() << ","
                      << d.witness_vector[2].get_str();
        } else {
            std::cout << ",,,";
        }
        std::cout << ",\"" << d.form.to_string() << "\"," << d.form_sign << "\n";
        break;
    case Format::Human:
        std::cout << "decision     " << nsa::to_string(d.outcome) << "\n"
                  << "linear form  " << d.form.to_string() << " ~ " << nsa::to_decimal(d.form, 20) << "\n";
        if (d.outcome == nsa::ConeOutcome::InCone) {
            std::cout << "witness k    " << (d.zero_vector ? std::string("ZeroVector") : std::to_string(*d.witness_k))
                      << "\n"
                      << "witness vec  (" << d.witness_vector[0].get_str() << ", " << d.witness_vector[1].get_str()
                      << ", " << d.witness_vector[2].get_str() << ")\n";
        }
        if (d.outcome == nsa::ConeOutcome::Undecided) {
            std::cout << "no witness within cap " << d.cap << "\n";
        }
        break;
    }
    return d.outcome == nsa::ConeOutcome::Undecided ? kExitUndecided : 0;
}

int run_verify(const RunConfig& cfg) {
    const nsa::VerifyReport report = nsa::run_verification(cfg.seed, cfg.samples);
    switch (cfg.format) {
    case Format::Json:
        print_json(report.to_json());
        break;
    case Format::Csv:
        std::cout << "suite,passed,failed\n";
        for (const auto& s : report.suites) {
            std::cout << s.name << "," << s.passed << "," << s.failed << "\n";
        }
        break;
    case Format::Human:
        std::cout << "seed " << report.seed << ", samples " << report.samples << "\n";
        for (const auto& s : report.suites) {
            std::cout << std::left << std::setw(24) << s.name << std::right << std::setw(8) << s.passed
                      << " passed" << std::setw(8) << s.failed << " failed\n";
            if (!s.first_failure.empty()) {
                std::cout << "    first failure: " << s.first_failure << "\n";
            }
        }
        break;
    }
    if (!report.ok()) {
        std::cerr << "verification failed; reproduce with --seed " << report.seed << " --samples "
                  << report.samples << "\n";
        return kExitInvariant;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negative slope algorithm: expansions, convergents and the rank-3 dimension group"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    const std::map<std::string, Format> formats{{"human", Format::Human}, {"json", Format::Json}, {"csv", Format::Csv}};
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format: human, json or csv")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto* expand = app.add_subcommand("expand", "Expand a point into its digit sequence");
    expand->add_option("--point", cfg.point, "Point \"x,y\" in the scalar grammar")->required();
    expand->add_option("--max-steps", cfg.max_steps, "Maximum number of digits")->check(CLI::PositiveNumber);
    expand->add_flag("--detect-period", cfg.detect_period, "Report exact recurrence for quadratic points");
    expand->add_flag("--points", cfg.with_points, "Include the exact orbit points");
    add_format(expand);

    auto* period = app.add_subcommand("period", "Detect an eventually periodic orbit of a quadratic point");
    period->add_option("--point", cfg.point, "Point \"x,y\" in the scalar grammar")->required();
    period->add_option("--max-steps", cfg.max_steps, "Maximum number of digits")->check(CLI::PositiveNumber);
    period->add_flag("--points", cfg.with_points, "Include the exact orbit points");
    add_format(period);

    auto* reconstruct = app.add_subcommand("reconstruct", "Approximate the point of a digit prefix");
    reconstruct->add_option("--digits-file", cfg.digits_file, "One digit per line: eps n m")->required();
    add_format(reconstruct);

    auto* cylinder = app.add_subcommand("cylinder", "Vertices of the cylinder of a digit prefix");
    cylinder->add_option("--digits-file", cfg.digits_file, "One digit per line: eps n m")->required();
    add_format(cylinder);

    auto* cone = app.add_subcommand("cone", "Decide positive-cone membership of an integer vector");
    cone->add_option("--alpha", cfg.alpha, "First coordinate of the base point")->required();
    cone->add_option("--beta", cfg.beta, "Second coordinate of the base point")->required();
    cone->add_option("--v", cfg.vector, "Integer vector \"a,b,c\"")->required();
    cone->add_option("--cap", cfg.cap, "Largest stage searched for a witness")->check(CLI::PositiveNumber);
    add_format(cone);

    auto* verify = app.add_subcommand("verify", "Run the invariant suites on seeded random samples");
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--samples", cfg.samples, "Samples per suite")->check(CLI::PositiveNumber);
    add_format(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (expand->parsed()) {
            return run_expand(cfg, cfg.detect_period);
        }
        if (period->parsed()) {
            return run_expand(cfg, true);
        }
        if (reconstruct->parsed()) {
            return run_reconstruct(cfg);
        }
        if (cylinder->parsed()) {
            return run_cylinder(cfg);
        }
        if (cone->parsed()) {
            return run_cone(cfg);
        }
        if (verify->parsed()) {
            return run_verify(cfg);
        }
    } catch (const std::exception& e) {
        const int code = nsa::exit_code_for(std::current_exception());
        const char* kind = code == kExitParse ? "parse error" : code == nsa::kExitDomain ? "domain error" : "internal error";
        std::cerr << kind << ": " << e.what() << "\n";
        return code;
    }
    return 0;
}
