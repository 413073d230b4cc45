#include "spdgeo/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "spdgeo/errors.hpp"

namespace spdgeo {

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

Json rows_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json rational_vec_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const Rational& r : v) a.push_back(rational_to_string(r));
    return a;
}

std::string model_string(Model m) { return m == Model::E ? "E" : "PE"; }

Model model_from(const Json& j) {
    const std::string s = j.get<std::string>();
    if (s == "E") return Model::E;
    if (s == "PE") return Model::PE;
    throw ParseError("model must be \"E\" or \"PE\"");
}

} // namespace

Json matrix_to_json(const Matrix& m) { return rows_json(m); }

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix rows must be a nonempty array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) throw ParseError("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

Json spd_to_json(const SPDMatrix& x) {
    return Json{{"n", x.n()}, {"model", model_string(x.model())}, {"rows", rows_json(x.entries())}};
}

SPDMatrix spd_from_json(const Json& j) {
    Matrix m = matrix_from_json(j.at("rows"));
    if (j.contains("n") && j.at("n").get<int>() != m.rows())
        throw ParseError("declared n disagrees with the row count");
    return SPDMatrix::make(std::move(m), model_from(j.at("model")));
}

Json geodesic_to_json(const Geodesic& g) {
    Json blocks = Json::array(), values = Json::array();
    for (int b : g.velocity.blockSizes) blocks.push_back(b);
    for (double v : g.velocity.values) values.push_back(round12(v));
    return Json{{"frame", rows_json(g.frame)},
                {"blocks", blocks},
                {"values", values},
                {"model", model_string(g.velocity.model)}};
}

Geodesic geodesic_from_json(const Json& j) {
    Geodesic g;
    g.frame = matrix_from_json(j.at("frame"));
    g.velocity.model = j.contains("model") ? model_from(j.at("model")) : Model::E;
    for (const Json& b : j.at("blocks")) g.velocity.blockSizes.push_back(b.get<int>());
    for (const Json& v : j.at("values")) g.velocity.values.push_back(v.get<double>());
    if (g.velocity.blockSizes.size() != g.velocity.values.size())
        throw ParseError("blocks and values must have equal length");
    if (g.velocity.n() != g.frame.rows())
        throw ParseError("velocity length disagrees with the frame size");
    for (size_t k = 0; k + 1 < g.velocity.values.size(); ++k)
        if (!(g.velocity.values[k] > g.velocity.values[k + 1]))
            throw ParseError("velocity values must be strictly decreasing");
    return g;
}

Json satake_to_json(const SatakePoint& p) {
    Json codims = Json::array();
    for (int c : p.flag.codims()) codims.push_back(c);
    Json forms = Json::array();
    for (const SubquotientForm& f : p.forms)
        forms.push_back(Json{{"dim", f.dim},
                             {"matrix", rows_json(f.matrix)},
                             {"scale", f.scaleMode == ScaleMode::UpToScale ? "upToScale" : "literal"}});
    return Json{{"n", p.n()},
                {"codims", codims},
                {"basis", rows_json(p.flag.basis())},
                {"forms", forms}};
}

SatakePoint satake_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    std::vector<int> codims;
    for (const Json& c : j.at("codims")) codims.push_back(c.get<int>());
    SatakePoint p;
    p.flag = Flag(n, codims, matrix_from_json(j.at("basis")));
    for (const Json& f : j.at("forms")) {
        Matrix m = matrix_from_json(f.at("matrix"));
        const std::string mode = f.at("scale").get<std::string>();
        if (mode == "upToScale")
            p.forms.push_back(SubquotientForm::up_to_scale(std::move(m)));
        else
            p.forms.push_back(SubquotientForm::literal(std::move(m)));
    }
    return p;
}

namespace {

Json velocity_json(const Velocity& v) {
    Json blocks = Json::array(), values = Json::array();
    for (int b : v.blockSizes) blocks.push_back(b);
    for (double x : v.values) values.push_back(round12(x));
    return Json{{"blocks", blocks}, {"values", values}, {"model", model_string(v.model)}};
}

Json flag_json(const Flag& f) {
    Json codims = Json::array();
    for (int c : f.codims()) codims.push_back(c);
    return Json{{"n", f.n()}, {"codims", codims}, {"basis", rows_json(f.basis())}};
}

} // namespace

Json finite_pencil_to_json(const FinitePencilData& d) {
    return Json{{"velocity", velocity_json(d.velocity)}, {"flag", flag_json(d.limitFlag)}};
}

Json solvable_pencil_to_json(const SolvablePencilData& d) {
    return Json{{"velocity", velocity_json(d.velocity)}, {"satake", satake_to_json(d.satake)}};
}

Json null_pencil_to_json(const NullPencilData& d) {
    Json forms = Json::array();
    for (const SubquotientForm& f : d.forms)
        forms.push_back(Json{{"dim", f.dim}, {"matrix", rows_json(f.matrix)}});
    return Json{{"velocity", velocity_json(d.velocity)},
                {"flag", flag_json(d.flag)},
                {"formsMode", "literal"},
                {"forms", forms}};
}

Json partition_to_json(const Partition& p) {
    Json blocks = Json::array();
    for (const Block& b : p.blocks) blocks.push_back(b);
    return blocks;
}

Partition partition_from_json(const Json& j, int n) {
    Partition p;
    p.n = n;
    for (const Json& b : j) p.blocks.push_back(b.get<Block>());
    p.canonicalize();
    return p;
}

Json tree_to_json(const TreePartition& t) {
    Json sets = Json::array();
    for (const Block& s : t.sets()) sets.push_back(s);
    return sets;
}

TreePartition tree_from_json(const Json& j, int n) {
    std::vector<Block> sets;
    for (const Json& s : j) sets.push_back(s.get<Block>());
    return TreePartition(n, std::move(sets));
}

Json leveled_to_json(const LeveledTreePartition& l) {
    Json levels = Json::array();
    for (const Partition& p : l.levels()) levels.push_back(partition_to_json(p));
    return levels;
}

LeveledTreePartition leveled_from_json(const Json& j, int n) {
    std::vector<Partition> levels;
    for (const Json& p : j) levels.push_back(partition_from_json(p, n));
    return LeveledTreePartition(std::move(levels));
}

Json stratum_to_json(const Stratum& s) {
    Json j{{"dim", s.dim}, {"components", s.components}};
    if (s.tree) j["index"] = tree_to_json(*s.tree);
    if (s.leveled) j["index"] = leveled_to_json(*s.leveled);
    j["label"] = s.label();
    return j;
}

Json face_lattice_to_json(const FaceLattice& l) {
    Json nodes = Json::array();
    for (const Stratum& s : l.nodes) nodes.push_back(stratum_to_json(s));
    Json covers = Json::array();
    for (const auto& [hi, lo] : l.covers) covers.push_back(Json::array({hi, lo}));
    return Json{{"n", l.n},
                {"kind", l.kind == FaceKind::Karp ? "karp" : (l.kind == FaceKind::Ass ? "ass" : "pass")},
                {"nodes", nodes},
                {"covers", covers},
                {"top", l.top}};
}

Json pass_limit_to_json(const PassLimit& p) {
    Json data = Json::array();
    for (const PassNodeData& d : p.data)
        data.push_back(Json{{"set", d.set},
                            {d.isRay ? "ray" : "point", rational_vec_json(d.values)}});
    return Json{{"tree", tree_to_json(p.tree)}, {"data", data}};
}

Json karp_limit_to_json(const KarpLimit& k) {
    Json data = Json::array();
    for (size_t j = 0; j < k.data.size(); ++j)
        data.push_back(Json{{"level", j},
                            {k.data[j].isRay ? "ray" : "point", rational_vec_json(k.data[j].values)}});
    return Json{{"levels", leveled_to_json(k.leveled)}, {"data", data}};
}

Json boundary_point_to_json(const BoundaryPoint& p) {
    Json j;
    j["kind"] = p.kind == BoundaryKind::Ass ? "ass" : (p.kind == BoundaryKind::Karp ? "karp" : "martin");
    j["interior"] = p.interior;
    if (p.assIndex) j["index"] = tree_to_json(*p.assIndex);
    if (p.karpIndex) j["index"] = leveled_to_json(*p.karpIndex);
    if (!p.martinCodims.empty() || (p.kind == BoundaryKind::Martin && !p.interior))
        j["index"] = p.martinCodims;
    Json rays = Json::array();
    for (const auto& r : p.chamber.rays) {
        Json rr = Json::array();
        for (double x : r) rr.push_back(round12(x));
        rays.push_back(std::move(rr));
    }
    Json blockValues = Json::array();
    for (const auto& b : p.chamber.blockValues) {
        Json bb = Json::array();
        for (double x : b) bb.push_back(round12(x));
        blockValues.push_back(std::move(bb));
    }
    j["chamber"] = Json{{"rays", rays}, {"blockValues", blockValues}};
    j["satake"] = satake_to_json(p.satake);
    return j;
}

namespace {

Json series_json(const LaurentSeries& s) {
    Json coeffs = Json::array();
    for (long o = s.start(); o < s.stored_end(); ++o)
        coeffs.push_back(rational_to_string(s.coeff(o)));
    return Json{{"low", s.window_zero() ? 0 : s.start()}, {"coeffs", coeffs}};
}

LaurentSeries series_from(const Json& j) {
    const long low = j.at("low").get<long>();
    std::vector<Rational> coeffs;
    for (const Json& c : j.at("coeffs")) {
        if (c.is_string())
            coeffs.push_back(rational_from_string(c.get<std::string>()));
        else
            coeffs.push_back(Rational(c.get<long>()));
    }
    return LaurentSeries::exact(low, std::move(coeffs));
}

} // namespace

Json curve_to_json(const MeromorphicCurve& c) {
    Json entries = Json::array();
    for (int i = 0; i < c.n; ++i) {
        Json row = Json::array();
        for (int j = i; j < c.n; ++j) row.push_back(series_json(c.entries[i][j]));
        entries.push_back(std::move(row));
    }
    return Json{{"n", c.n}, {"T", c.truncation}, {"entries", entries}};
}

MeromorphicCurve curve_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const long t = j.contains("T") ? j.at("T").get<long>() : 16;
    const Json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != n) throw ParseError("entry row count must equal n");
    SeriesMatrix m(n, std::vector<LaurentSeries>(n, LaurentSeries::zero()));
    bool square = true;
    for (const Json& row : entries)
        if (static_cast<int>(row.size()) != n) square = false;
    if (square && n > 1) {
        // full square layout
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) m[i][c] = series_from(entries[i][c]);
    } else {
        // upper triangle rows: row i holds entries (i,i), (i,i+1), ...
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(entries[i].size()) != n - i)
                throw ParseError("upper-triangle row has the wrong length");
            for (int c = i; c < n; ++c) {
                m[i][c] = series_from(entries[i][c - i]);
                m[c][i] = m[i][c];
            }
        }
    }
    return MeromorphicCurve::make(std::move(m), t);
}

Json factorization_to_json(const CurveFactorization& f) {
    Json g = Json::array();
    for (const auto& row : f.g) {
        Json r = Json::array();
        for (const LaurentSeries& s : row) r.push_back(series_json(s));
        g.push_back(std::move(r));
    }
    Json exps = Json::array(), scales = Json::array();
    for (long k : f.exponents) exps.push_back(k);
    for (const Rational& c : f.scales) scales.push_back(rational_to_string(c));
    return Json{{"g", g}, {"exponents", exps}, {"scales", scales}, {"window", f.window}};
}

} // namespace spdgeo
