#pragma once

#include "flows.hpp"
#include "homological.hpp"
#include "lie_algebra.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace algco {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Loading and field access with path-aware diagnostics.
// ---------------------------------------------------------------------------

inline Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path.string());
    try {
        return Json::parse(in); // keeps byte-offset diagnostics from the parser
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

inline const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::size_t require_count(const Json& j, const std::string& key, const std::string& where) {
    const Json& v = require_field(j, key, where);
    if (!v.is_number_unsigned())
        throw SchemaError(where + ": field '" + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

inline Rational rational_from_json(const Json& v, const std::string& where) {
    try {
        if (v.is_string()) return rational_from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
    } catch (const std::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
    throw SchemaError(where + ": expected a rational as \"p/q\" string or integer");
}

inline double double_from_json(const Json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(rational_from_json(v, where));
    throw SchemaError(where + ": expected a number");
}

/// Resolves the spec of a referenced sub-document: a string is a path
/// relative to the referencing file, an object is taken inline.
inline Json resolve_ref(const Json& v, const std::filesystem::path& base_dir,
                        const std::string& where, std::filesystem::path* ref_dir = nullptr) {
    if (v.is_object()) {
        if (ref_dir) *ref_dir = base_dir;
        return v;
    }
    if (v.is_string()) {
        const std::filesystem::path p = base_dir / v.get<std::string>();
        if (ref_dir) *ref_dir = p.parent_path();
        return load_json_file(p);
    }
    throw SchemaError(where + ": expected a file path or an inline object");
}

// ---------------------------------------------------------------------------
// Domain schemas.
// ---------------------------------------------------------------------------

/// { "name": str, "dim": n, "brackets": [ {"i", "j", "coeffs": ["p/q" x n]} ] }
/// with i < j only; the antisymmetric completion is implicit.
inline LieAlgebra algebra_from_json(const Json& j) {
    const std::string name =
        j.contains("name") ? require_field(j, "name", "algebra").get<std::string>() : "algebra";
    const std::size_t n = require_count(j, "dim", "algebra '" + name + "'");
    LieAlgebra g(name, n);
    const Json& brackets = require_field(j, "brackets", "algebra '" + name + "'");
    if (!brackets.is_array()) throw SchemaError("algebra '" + name + "': brackets must be an array");
    for (std::size_t b = 0; b < brackets.size(); ++b) {
        const std::string where = "algebra '" + name + "' brackets[" + std::to_string(b) + "]";
        const Json& e = brackets.at(b);
        const std::size_t i = require_count(e, "i", where), jj = require_count(e, "j", where);
        if (!(i < jj && jj < n)) throw SchemaError(where + ": need 0 <= i < j < dim");
        const Json& coeffs = require_field(e, "coeffs", where);
        if (!coeffs.is_array() || coeffs.size() != n)
            throw SchemaError(where + ": coeffs must list exactly dim entries");
        QVector c(n);
        for (std::size_t k = 0; k < n; ++k)
            c[k] = rational_from_json(coeffs.at(k), where + ".coeffs[" + std::to_string(k) + "]");
        g.set_bracket(i, jj, c);
    }
    return g;
}

inline Json algebra_to_json(const LieAlgebra& g) {
    Json j;
    j["name"] = g.name();
    j["dim"] = g.dim();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t jj = i + 1; jj < g.dim(); ++jj) {
            Json coeffs = Json::array();
            bool nonzero = false;
            for (std::size_t k = 0; k < g.dim(); ++k) {
                coeffs.push_back(rational_to_string(g.c(i, jj, k)));
                nonzero = nonzero || g.c(i, jj, k) != 0;
            }
            if (!nonzero) continue;
            Json e;
            e["i"] = i;
            e["j"] = jj;
            e["coeffs"] = std::move(coeffs);
            brackets.push_back(std::move(e));
        }
    j["brackets"] = std::move(brackets);
    return j;
}

/// { "algebra": ref-or-inline, "fiber_dim": m,
///   "rho": [ [m*m row-major "p/q" strings], ... one per generator ] }
inline Representation rep_from_json(const Json& j, const std::filesystem::path& base_dir) {
    LieAlgebra g = algebra_from_json(
        resolve_ref(require_field(j, "algebra", "representation"), base_dir, "representation.algebra"));
    const std::size_t m = require_count(j, "fiber_dim", "representation");
    const Json& rho = require_field(j, "rho", "representation");
    if (!rho.is_array() || rho.size() != g.dim())
        throw SchemaError("representation: rho must list one matrix per algebra generator");
    Representation r{std::move(g), m, {}};
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const std::string where = "representation.rho[" + std::to_string(i) + "]";
        const Json& flat = rho.at(i);
        if (!flat.is_array() || flat.size() != m * m)
            throw SchemaError(where + ": expected " + std::to_string(m * m) +
                              " row-major entries for fiber_dim " + std::to_string(m));
        QMatrix mat(m, m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                mat(a, b) = rational_from_json(flat.at(a * m + b),
                                               where + "[" + std::to_string(a * m + b) + "]");
        r.rho.push_back(std::move(mat));
    }
    return r;
}

inline Json rep_to_json(const Representation& r) {
    Json j;
    j["algebra"] = algebra_to_json(r.algebra);
    j["fiber_dim"] = r.fiber_dim;
    Json rho = Json::array();
    for (const auto& m : r.rho) {
        Json flat = Json::array();
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b)
                flat.push_back(rational_to_string(m(a, b)));
        rho.push_back(std::move(flat));
    }
    j["rho"] = std::move(rho);
    return j;
}

/// Representation field of a larger document: absent -> trivial rank-1.
inline Representation rep_or_trivial(const Json& j, const std::string& key, const LieAlgebra& g,
                                     const std::filesystem::path& base_dir) {
    if (!j.contains(key)) return trivial_rep(g, 1);
    std::filesystem::path dir;
    const Json rj = resolve_ref(j.at(key), base_dir, key, &dir);
    Representation r = rep_from_json(rj, dir);
    if (r.algebra.dim() != g.dim())
        throw SchemaError(key + ": representation algebra dimension disagrees with '" + g.name() +
                          "'");
    return r;
}

/// { "vertices": n, "maximal_simplices": [[v...], ...] }
inline SimplicialComplex simplicial_from_json(const Json& j) {
    const std::size_t n = require_count(j, "vertices", "simplicial complex");
    const Json& maximal = require_field(j, "maximal_simplices", "simplicial complex");
    if (!maximal.is_array()) throw SchemaError("simplicial complex: maximal_simplices must be an array");
    std::vector<std::vector<unsigned>> sims;
    for (std::size_t s = 0; s < maximal.size(); ++s) {
        const Json& row = maximal.at(s);
        const std::string where = "maximal_simplices[" + std::to_string(s) + "]";
        if (!row.is_array() || row.empty()) throw SchemaError(where + ": expected a vertex tuple");
        std::vector<unsigned> v;
        for (const Json& x : row) {
            if (!x.is_number_unsigned()) throw SchemaError(where + ": vertices are integers");
            v.push_back(x.get<unsigned>());
        }
        sims.push_back(std::move(v));
    }
    try {
        return SimplicialComplex::from_maximal(n, sims);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("simplicial complex: ") + e.what());
    }
}

/// Matrix given as an array of rows; entries numeric or "p/q" strings.
inline DMatrix dmatrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j.at(0).is_array())
        throw SchemaError(where + ": expected an array of rows");
    const std::size_t rows = j.size(), cols = j.at(0).size();
    DMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols) throw SchemaError(where + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = double_from_json(row.at(c), where + "[" + std::to_string(r) + "][" +
                                                      std::to_string(c) + "]");
    }
    return m;
}

/// { "kind": "poly"|"samples", "data": [[...], ...] }
inline Curve curve_from_json(const Json& j) {
    const std::string kind = require_field(j, "kind", "curve").get<std::string>();
    Curve c;
    if (kind == "poly")
        c.kind = Curve::Kind::Polynomial;
    else if (kind == "samples")
        c.kind = Curve::Kind::Samples;
    else
        throw SchemaError("curve: kind must be \"poly\" or \"samples\"");
    const Json& data = require_field(j, "data", "curve");
    if (!data.is_array() || data.empty()) throw SchemaError("curve: data must be a nonempty array");
    std::size_t dim = 0;
    for (const Json& row : data) {
        if (!row.is_array()) throw SchemaError("curve: data rows must be arrays");
        std::vector<double> v;
        for (const Json& x : row) v.push_back(double_from_json(x, "curve.data"));
        if (dim == 0) dim = v.size();
        if (v.size() != dim) throw SchemaError("curve: data rows must share one dimension");
        c.data.push_back(std::move(v));
    }
    return c;
}

/// { "source": algebra-ref, "target": algebra-ref, "psi0": matrix,
///   "curve": {...}, "steps": int, "tol": float, "rep": ref (optional) }
struct HomotopyProblem {
    LieAlgebra source, target;
    DMatrix psi0{0, 0};
    Curve curve;
    int steps = 1000;
    double tol = 1e-6;
    std::optional<Representation> rep; // fiber transport target, for the gauge check
};

inline HomotopyProblem homotopy_from_json(const Json& j, const std::filesystem::path& base_dir) {
    HomotopyProblem p{
        algebra_from_json(resolve_ref(require_field(j, "source", "homotopy"), base_dir, "source")),
        algebra_from_json(resolve_ref(require_field(j, "target", "homotopy"), base_dir, "target")),
        dmatrix_from_json(require_field(j, "psi0", "homotopy"), "psi0"),
        curve_from_json(require_field(j, "curve", "homotopy")),
        1000,
        1e-6,
        std::nullopt};
    if (p.psi0.rows() != p.target.dim() || p.psi0.cols() != p.source.dim())
        throw SchemaError("homotopy: psi0 must be target.dim x source.dim");
    if (p.curve.dim() != p.target.dim())
        throw SchemaError("homotopy: curve dimension must match the target algebra");
    if (j.contains("steps")) p.steps = static_cast<int>(require_count(j, "steps", "homotopy"));
    if (p.steps <= 0) throw SchemaError("homotopy: steps must be positive");
    if (j.contains("tol")) p.tol = double_from_json(j.at("tol"), "homotopy.tol");
    if (j.contains("rep")) {
        std::filesystem::path dir;
        const Json rj = resolve_ref(j.at("rep"), base_dir, "homotopy.rep", &dir);
        p.rep = rep_from_json(rj, dir);
        if (p.rep->algebra.dim() != p.target.dim())
            throw SchemaError("homotopy: rep must represent the target algebra");
    }
    return p;
}

/// Cover model: the glued space, its two-piece decomposition (for the
/// Mayer-Vietoris route) and/or the cover nerve (for the Cech route), plus
/// coefficient data.  { "space": simplicial-ref, "u"/"v": maximal simplices,
/// "nerve": simplicial-ref, "algebra": ref, "rep": ref }
struct CoverModel {
    std::optional<SimplicialComplex> space, nerve;
    std::optional<std::vector<std::vector<unsigned>>> u_max, v_max;
    std::optional<LieAlgebra> algebra;
    std::optional<Representation> rep;
};

inline CoverModel cover_from_json(const Json& j, const std::filesystem::path& base_dir) {
    CoverModel m;
    if (j.contains("space"))
        m.space = simplicial_from_json(resolve_ref(j.at("space"), base_dir, "cover.space"));
    if (j.contains("nerve"))
        m.nerve = simplicial_from_json(resolve_ref(j.at("nerve"), base_dir, "cover.nerve"));
    auto pieces = [&](const char* key) -> std::optional<std::vector<std::vector<unsigned>>> {
        if (!j.contains(key)) return std::nullopt;
        const Json& arr = j.at(key);
        if (!arr.is_array()) throw SchemaError(std::string("cover.") + key + ": expected an array");
        std::vector<std::vector<unsigned>> out;
        for (const Json& row : arr) {
            std::vector<unsigned> v;
            for (const Json& x : row) v.push_back(x.get<unsigned>());
            out.push_back(std::move(v));
        }
        return out;
    };
    m.u_max = pieces("u");
    m.v_max = pieces("v");
    if (j.contains("algebra")) {
        m.algebra = algebra_from_json(resolve_ref(j.at("algebra"), base_dir, "cover.algebra"));
        m.rep = rep_or_trivial(j, "rep", *m.algebra, base_dir);
    } else if (j.contains("rep")) {
        std::filesystem::path dir;
        const Json rj = resolve_ref(j.at("rep"), base_dir, "cover.rep", &dir);
        m.rep = rep_from_json(rj, dir);
        m.algebra = m.rep->algebra;
    }
    return m;
}

/// Flow-identity fixture: { "algebra": ref, "a": vector, "lambda": x,
/// "rep": ref (optional), "e": vector (optional), "h": x (optional) }
struct FlowProblem {
    LieAlgebra algebra;
    std::vector<double> a;
    double lambda = 1.0;
    std::optional<Representation> rep;
    std::vector<double> e;
    double h = 1e-3;
    double tol = 1e-6;
};

inline FlowProblem flow_from_json(const Json& j, const std::filesystem::path& base_dir) {
    FlowProblem p{algebra_from_json(
                      resolve_ref(require_field(j, "algebra", "flow"), base_dir, "flow.algebra")),
                  {}, 1.0, std::nullopt, {}, 1e-3, 1e-6};
    const Json& a = require_field(j, "a", "flow");
    if (!a.is_array() || a.size() != p.algebra.dim())
        throw SchemaError("flow: 'a' must be a vector of algebra dimension");
    for (const Json& x : a) p.a.push_back(double_from_json(x, "flow.a"));
    if (j.contains("lambda")) p.lambda = double_from_json(j.at("lambda"), "flow.lambda");
    if (j.contains("rep")) {
        std::filesystem::path dir;
        const Json rj = resolve_ref(j.at("rep"), base_dir, "flow.rep", &dir);
        p.rep = rep_from_json(rj, dir);
        if (p.rep->algebra.dim() != p.algebra.dim())
            throw SchemaError("flow: rep must represent the same algebra");
    }
    if (j.contains("e")) {
        for (const Json& x : j.at("e")) p.e.push_back(double_from_json(x, "flow.e"));
        if (p.e.size() != p.algebra.dim())
            throw SchemaError("flow: 'e' must be a vector of algebra dimension");
    } else {
        p.e.assign(p.algebra.dim(), 0.0);
        if (!p.e.empty()) p.e[0] = 1.0;
    }
    if (j.contains("h")) p.h = double_from_json(j.at("h"), "flow.h");
    if (j.contains("tol")) p.tol = double_from_json(j.at("tol"), "flow.tol");
    if (p.h <= 0 || p.tol <= 0) throw SchemaError("flow: h and tol must be positive");
    return p;
}

/// Cylinder fixture: { "algebra": ref, "rep": ref (optional), "forms": N,
/// "max_poly_degree": d, "seed": s }
struct CylinderProblem {
    Representation rep;
    std::size_t forms = 50;
    unsigned max_poly_degree = 5;
    std::uint64_t seed = 1;
};

inline CylinderProblem cylinder_from_json(const Json& j, const std::filesystem::path& base_dir) {
    const LieAlgebra g = algebra_from_json(
        resolve_ref(require_field(j, "algebra", "cylinder"), base_dir, "cylinder.algebra"));
    CylinderProblem p{rep_or_trivial(j, "rep", g, base_dir), 50, 5, 1};
    if (j.contains("forms")) p.forms = require_count(j, "forms", "cylinder");
    if (j.contains("max_poly_degree"))
        p.max_poly_degree = static_cast<unsigned>(require_count(j, "max_poly_degree", "cylinder"));
    if (j.contains("seed")) p.seed = require_count(j, "seed", "cylinder");
    if (p.forms == 0) throw SchemaError("cylinder: forms must be positive");
    return p;
}

} // namespace algco
