// Command-line front end: JSON in, JSON (or DOT) out.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "spdgeo/errors.hpp"
#include "spdgeo/json_io.hpp"

namespace {

using spdgeo::Json;

Json load_json(const std::string& arg) {
    std::string text;
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw spdgeo::ParseError("cannot open input: " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw spdgeo::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

int error_exit(const spdgeo::Error& e, bool pretty) {
    static const std::set<std::string> computation{
        "NotStabilized", "WindowExhausted", "NotPositive",
        "CoincidentPoints", "NotInPencil", "SemiaxisMismatch"};
    std::cerr << e.code() << ": " << e.what() << "\n";
    emit(Json{{"error", e.code()}, {"detail", e.what()}}, pretty);
    return computation.count(e.code()) ? 3 : 2;
}

spdgeo::FaceKind face_kind(const std::string& s) {
    if (s == "pass") return spdgeo::FaceKind::Pass;
    if (s == "karp") return spdgeo::FaceKind::Karp;
    if (s == "ass") return spdgeo::FaceKind::Ass;
    throw spdgeo::ParseError("kind must be pass, karp, or ass");
}

spdgeo::BoundaryKind boundary_kind(const std::string& s) {
    if (s == "ass") return spdgeo::BoundaryKind::Ass;
    if (s == "karp") return spdgeo::BoundaryKind::Karp;
    if (s == "martin") return spdgeo::BoundaryKind::Martin;
    throw spdgeo::ParseError("kind must be ass, karp, or martin");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary geometry of the spaces of positive definite matrices"};
    app.require_subcommand(1);

    double tol = 1e-8;
    std::uint64_t seed = 1;
    bool pretty = false;
    app.add_option("--tol", tol, "numeric tolerance")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string xArg, yArg, gammaArg, aArg, bArg, samplesArg, kindArg, seqArg, curveArg,
        indexArg, reparamArg, algorithmArg = "inductive";
    int nArg = 0;
    bool dot = false, segmental = false, perfect = false, factorOnly = false;

    CLI::App* dist = app.add_subcommand("dist", "complex and Riemannian distance");
    dist->add_option("--x", xArg, "first point (file or inline JSON)")->required();
    dist->add_option("--y", yArg, "second point")->required();

    CLI::App* geo = app.add_subcommand("geodesic", "directed geodesic through two points");
    geo->add_option("--x", xArg)->required();
    geo->add_option("--y", yArg)->required();

    CLI::App* sat = app.add_subcommand("satake-limit", "limit in the Semple-Satake space");
    sat->add_option("--geodesic", gammaArg, "geodesic JSON (closed-form limit)");
    sat->add_option("--samples", samplesArg, "array of SPD matrices");
    sat->add_option("--algorithm", algorithmArg, "inductive | packets")->capture_default_str();

    CLI::App* pen = app.add_subcommand("pencil", "pencil data and pencil equality");
    pen->add_option("--gamma", gammaArg, "geodesic for data extraction");
    pen->add_option("--a", aArg, "first geodesic for comparison");
    pen->add_option("--b", bArg, "second geodesic for comparison");
    pen->add_option("--kind", kindArg, "finite | solvable | null")->required();

    CLI::App* strata = app.add_subcommand("strata", "stratum data for one index or a full enumeration");
    strata->add_option("--n", nArg)->required();
    strata->add_option("--kind", kindArg, "pass | karp")->required();
    strata->add_option("--index", indexArg, "tree or leveled index JSON");
    strata->add_flag("--segmental", segmental);
    strata->add_flag("--perfect", perfect);

    CLI::App* faces = app.add_subcommand("faces", "Weyl-chamber face lattice");
    faces->add_option("--n", nArg)->required();
    faces->add_option("--kind", kindArg, "pass | karp | ass")->required();
    faces->add_flag("--dot", dot, "emit DOT instead of JSON");

    CLI::App* xi = app.add_subcommand("xi-limit", "limit of a polynomial growth vector");
    xi->add_option("--kind", kindArg, "pass | karp")->required();
    xi->add_option("--seq", seqArg, "comma-separated polynomials in n")->required();

    CLI::App* bp = app.add_subcommand("boundary-point", "hybrid boundary point of a geodesic");
    bp->add_option("--geodesic", gammaArg)->required();
    bp->add_option("--kind", kindArg, "ass | karp | martin")->required();

    CLI::App* urch = app.add_subcommand("urchin", "sea-urchin limit of a meromorphic curve");
    urch->add_option("--curve", curveArg)->required();
    urch->add_flag("--factor", factorOnly, "emit the congruence factorization");
    urch->add_option("--reparam", reparamArg, "power series u as {low, coeffs}; substitutes z <- w u(w)");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (dist->parsed()) {
            spdgeo::SPDMatrix x = spdgeo::spd_from_json(load_json(xArg));
            spdgeo::SPDMatrix y = spdgeo::spd_from_json(load_json(yArg));
            spdgeo::ComplexDistance d = spdgeo::complex_distance(x, y);
            Json psis = Json::array();
            for (double p : d.psis) psis.push_back(spdgeo::round12(p));
            emit(Json{{"psis", psis}, {"rho", spdgeo::round12(spdgeo::riemannian_distance(x, y))}},
                 pretty);
        } else if (geo->parsed()) {
            spdgeo::SPDMatrix x = spdgeo::spd_from_json(load_json(xArg));
            spdgeo::SPDMatrix y = spdgeo::spd_from_json(load_json(yArg));
            emit(spdgeo::geodesic_to_json(spdgeo::geodesic_through(x, y)), pretty);
        } else if (sat->parsed()) {
            spdgeo::SatakePoint p;
            if (!gammaArg.empty()) {
                p = spdgeo::geodesic_satake_limit(spdgeo::geodesic_from_json(load_json(gammaArg)));
            } else if (!samplesArg.empty()) {
                Json js = load_json(samplesArg);
                const Json& arr = js.is_array() ? js : js.at("samples");
                std::vector<spdgeo::SPDMatrix> samples;
                for (const Json& s : arr) samples.push_back(spdgeo::spd_from_json(s));
                p = algorithmArg == "packets"
                        ? spdgeo::sequence_limit_packets(samples, tol)
                        : spdgeo::sequence_limit_inductive(samples, tol);
            } else {
                throw spdgeo::ParseError("satake-limit needs --geodesic or --samples");
            }
            emit(spdgeo::satake_to_json(p), pretty);
        } else if (pen->parsed()) {
            if (!aArg.empty() || !bArg.empty()) {
                spdgeo::Geodesic a = spdgeo::geodesic_from_json(load_json(aArg));
                spdgeo::Geodesic b = spdgeo::geodesic_from_json(load_json(bArg));
                bool eq = kindArg == "finite"   ? spdgeo::same_finite_pencil(a, b, tol)
                          : kindArg == "solvable" ? spdgeo::same_solvable_pencil(a, b, tol)
                          : kindArg == "null"     ? spdgeo::same_null_pencil(a, b, tol)
                                                  : throw spdgeo::ParseError("unknown pencil kind");
                emit(Json{{"equal", eq}}, pretty);
            } else {
                spdgeo::Geodesic g = spdgeo::geodesic_from_json(load_json(gammaArg));
                if (kindArg == "finite")
                    emit(spdgeo::finite_pencil_to_json(spdgeo::finite_pencil_data(g)), pretty);
                else if (kindArg == "solvable")
                    emit(spdgeo::solvable_pencil_to_json(spdgeo::solvable_pencil_data(g)), pretty);
                else if (kindArg == "null")
                    emit(spdgeo::null_pencil_to_json(spdgeo::null_pencil_data(g)), pretty);
                else
                    throw spdgeo::ParseError("unknown pencil kind");
            }
        } else if (strata->parsed()) {
            if (!indexArg.empty()) {
                Json idx = load_json(indexArg);
                if (kindArg == "pass")
                    emit(spdgeo::stratum_to_json(
                             spdgeo::stratum_pass(spdgeo::tree_from_json(idx, nArg), nArg)),
                         pretty);
                else
                    emit(spdgeo::stratum_to_json(
                             spdgeo::stratum_karp(spdgeo::leveled_from_json(idx, nArg), nArg)),
                         pretty);
            } else {
                Json out = Json::array();
                if (kindArg == "pass") {
                    for (const spdgeo::TreePartition& t :
                         spdgeo::enumerate_tree_partitions(nArg, segmental, perfect))
                        out.push_back(spdgeo::stratum_to_json(spdgeo::stratum_pass(t, nArg)));
                } else {
                    for (const spdgeo::LeveledTreePartition& l :
                         spdgeo::enumerate_leveled(nArg, segmental))
                        out.push_back(spdgeo::stratum_to_json(spdgeo::stratum_karp(l, nArg)));
                }
                emit(out, pretty);
            }
        } else if (faces->parsed()) {
            spdgeo::FaceLattice l = spdgeo::weyl_face_lattice(nArg, face_kind(kindArg));
            if (dot)
                std::cout << spdgeo::to_dot(l);
            else
                emit(spdgeo::face_lattice_to_json(l), pretty);
        } else if (xi->parsed()) {
            spdgeo::GrowthVector v = spdgeo::parse_growth_list(seqArg);
            if (kindArg == "pass")
                emit(spdgeo::pass_limit_to_json(spdgeo::pass_limit(v)), pretty);
            else if (kindArg == "karp")
                emit(spdgeo::karp_limit_to_json(spdgeo::karp_limit(v)), pretty);
            else
                throw spdgeo::ParseError("xi-limit kind must be pass or karp");
        } else if (bp->parsed()) {
            spdgeo::Geodesic g = spdgeo::geodesic_from_json(load_json(gammaArg));
            emit(spdgeo::boundary_point_to_json(
                     spdgeo::geodesic_boundary_point(g, boundary_kind(kindArg))),
                 pretty);
        } else if (urch->parsed()) {
            spdgeo::MeromorphicCurve c = spdgeo::curve_from_json(load_json(curveArg));
            if (!reparamArg.empty()) {
                Json uj = load_json(reparamArg);
                std::vector<spdgeo::Rational> coeffs;
                for (const Json& x : uj.at("coeffs"))
                    coeffs.push_back(x.is_string()
                                         ? spdgeo::rational_from_string(x.get<std::string>())
                                         : spdgeo::Rational(x.get<long>()));
                spdgeo::LaurentSeries u =
                    spdgeo::LaurentSeries::exact(uj.value("low", 0L), std::move(coeffs));
                c = spdgeo::reparametrize(c, u);
            }
            if (factorOnly)
                emit(spdgeo::factorization_to_json(spdgeo::factor_curve(c, seed == 1 ? 0 : seed)),
                     pretty);
            else
                emit(spdgeo::null_pencil_to_json(spdgeo::urchin_limit(c)), pretty);
        }
        return 0;
    } catch (const spdgeo::Error& e) {
        return error_exit(e, pretty);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        emit(Json{{"error", "Internal"}, {"detail", e.what()}}, pretty);
        return 3;
    }
}
