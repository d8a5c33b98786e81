#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncw/algebra.hpp"
#include "ncw/connection.hpp"
#include "ncw/elliptic.hpp"
#include "ncw/heisenberg.hpp"
#include "ncw/nctorus.hpp"
#include "ncw/scalar_parse.hpp"

namespace ncw::io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline const json& field(const json& j, const char* name, const std::string& ctx) {
    auto it = j.find(name);
    if (it == j.end()) throw input_error(ctx + ": missing field '" + name + "'");
    return *it;
}

// Scalars in files may be written as strings in the scalar syntax or as
// integer JSON numbers.
inline GaussianRational parse_gaussian(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return GaussianRational(j.get<long long>());
    if (j.is_string()) {
        SymbolicScalar s = parse_scalar(j.get<std::string>());
        if (!s.is_polynomial() || !s.num().is_constant())
            throw input_error(ctx + ": expected a constant scalar");
        return s.num().constant_value();
    }
    throw input_error(ctx + ": expected a scalar (string or integer)");
}

inline SymbolicScalar parse_symbolic(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return SymbolicScalar(j.get<long long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    throw input_error(ctx + ": expected a scalar expression (string or integer)");
}

// ---------------------------------------------------------------------------
// Algebra files: {"basis": [names], "unit": [coeffs] | null,
//                 "mult": [[i, j, k, value], ...]}
// ---------------------------------------------------------------------------

inline AlgebraPresentation load_algebra(const json& j, const std::string& ctx = "algebra") {
    const json& basis = field(j, "basis", ctx);
    if (!basis.is_array()) throw input_error(ctx + ": 'basis' must be an array");
    std::vector<std::string> names = basis.get<std::vector<std::string>>();
    size_t dim = names.size();

    std::vector<std::unordered_map<int64_t, GaussianRational>> acc(dim * dim);
    const json& mult = field(j, "mult", ctx);
    if (!mult.is_array()) throw input_error(ctx + ": 'mult' must be an array");
    size_t row = 0;
    for (const json& e : mult) {
        std::string ectx = ctx + ".mult[" + std::to_string(row++) + "]";
        if (!e.is_array() || e.size() != 4)
            throw input_error(ectx + ": expected [i, j, k, value]");
        auto i = e[0].get<int64_t>(), jj = e[1].get<int64_t>(), k = e[2].get<int64_t>();
        if (i < 0 || jj < 0 || k < 0 || i >= static_cast<int64_t>(dim) ||
            jj >= static_cast<int64_t>(dim) || k >= static_cast<int64_t>(dim))
            throw input_error(ectx + ": index out of range");
        GaussianRational v = parse_gaussian(e[3], ectx);
        if (!v.is_zero()) sv_accumulate(acc[i * dim + jj], v, GRVec{{k, GaussianRational(1)}});
    }
    std::vector<GRVec> tables(dim * dim);
    for (size_t p = 0; p < dim * dim; ++p) tables[p] = sv_from_accumulator(acc[p]);

    std::optional<std::vector<GaussianRational>> unit;
    if (j.contains("unit") && !j["unit"].is_null()) {
        const json& u = j["unit"];
        if (!u.is_array() || u.size() != dim)
            throw input_error(ctx + ": 'unit' must list one coefficient per basis element");
        std::vector<GaussianRational> uv;
        for (size_t i = 0; i < dim; ++i)
            uv.push_back(parse_gaussian(u[i], ctx + ".unit[" + std::to_string(i) + "]"));
        unit = std::move(uv);
    }
    return AlgebraPresentation(std::move(names), std::move(tables), std::move(unit));
}

inline AlgebraPresentation load_algebra_file(const std::string& path) {
    return load_algebra(load_json_file(path), path);
}

// Named presets accepted wherever an algebra file is expected.
inline std::optional<AlgebraPresentation> algebra_preset(const std::string& name) {
    if (name == "q") return presets::field_q();
    if (name == "dual") return presets::dual_numbers();
    if (name == "qxq") return presets::q_times_q();
    if (name == "m2") return presets::matrix_q(2);
    if (name == "m3") return presets::matrix_q(3);
    if (name == "a2path") return presets::path_a2();
    if (name == "zero") return presets::zero_algebra();
    return std::nullopt;
}

inline AlgebraPresentation load_algebra_arg(const std::string& arg) {
    if (arg.rfind("preset:", 0) == 0) {
        if (auto a = algebra_preset(arg.substr(7))) return *a;
        throw input_error("unknown algebra preset: " + arg.substr(7));
    }
    return load_algebra_file(arg);
}

// ---------------------------------------------------------------------------
// Dg category files:
// {"objects": [names],
//  "homs": [{"from": x, "to": y, "basis": [{"name": n, "deg": d}, ...]}],
//  "differential": [{"from": x, "to": y, "entries": [[f, k, value], ...]}],
//  "composition": [{"x":, "y":, "z":, "entries": [[g, f, k, value], ...]}],
//  "identities": [[[k, value], ...] per object]}
// ---------------------------------------------------------------------------

inline DgCategoryPresentation load_dg_category(const json& j, const std::string& ctx = "dgcat") {
    const json& objs = field(j, "objects", ctx);
    size_t no = objs.size();
    std::vector<DgCategoryPresentation::Hom> homs(no * no);
    for (const json& h : field(j, "homs", ctx)) {
        auto x = h.at("from").get<size_t>(), y = h.at("to").get<size_t>();
        if (x >= no || y >= no) throw input_error(ctx + ".homs: object index out of range");
        DgCategoryPresentation::Hom& hom = homs[x * no + y];
        for (const json& b : h.at("basis")) {
            hom.names.push_back(b.at("name").get<std::string>());
            hom.degrees.push_back(b.at("deg").get<int32_t>());
        }
    }
    std::vector<std::vector<GRVec>> diff(no * no), comp(no * no * no);
    for (size_t x = 0; x < no; ++x)
        for (size_t y = 0; y < no; ++y) diff[x * no + y].assign(homs[x * no + y].dim(), {});
    if (j.contains("differential"))
        for (const json& d : j["differential"]) {
            auto x = d.at("from").get<size_t>(), y = d.at("to").get<size_t>();
            if (x >= no || y >= no)
                throw input_error(ctx + ".differential: object index out of range");
            auto& tab = diff[x * no + y];
            std::vector<std::unordered_map<int64_t, GaussianRational>> acc(tab.size());
            for (const json& e : d.at("entries")) {
                auto f = e[0].get<size_t>();
                auto k = e[1].get<int64_t>();
                if (f >= tab.size()) throw input_error(ctx + ".differential: basis index range");
                sv_accumulate(acc[f], parse_gaussian(e[2], ctx + ".differential"),
                              GRVec{{k, GaussianRational(1)}});
            }
            for (size_t f = 0; f < tab.size(); ++f) tab[f] = sv_from_accumulator(acc[f]);
        }
    for (size_t x = 0; x < no; ++x)
        for (size_t y = 0; y < no; ++y)
            for (size_t z = 0; z < no; ++z)
                comp[(x * no + y) * no + z].assign(
                    homs[x * no + y].dim() * homs[y * no + z].dim(), {});
    for (const json& cmp : field(j, "composition", ctx)) {
        auto x = cmp.at("x").get<size_t>(), y = cmp.at("y").get<size_t>(), z = cmp.at("z").get<size_t>();
        if (x >= no || y >= no || z >= no)
            throw input_error(ctx + ".composition: object index out of range");
        size_t df = homs[x * no + y].dim();
        auto& tab = comp[(x * no + y) * no + z];
        std::vector<std::unordered_map<int64_t, GaussianRational>> acc(tab.size());
        for (const json& e : cmp.at("entries")) {
            auto g = e[0].get<size_t>(), f = e[1].get<size_t>();
            auto k = e[2].get<int64_t>();
            if (f >= df || g >= homs[y * no + z].dim())
                throw input_error(ctx + ".composition: basis index range");
            sv_accumulate(acc[g * df + f], parse_gaussian(e[3], ctx + ".composition"),
                          GRVec{{k, GaussianRational(1)}});
        }
        for (size_t p = 0; p < tab.size(); ++p) tab[p] = sv_from_accumulator(acc[p]);
    }
    std::vector<GRVec> ids;
    if (j.contains("identities") && !j["identities"].is_null()) {
        for (const json& idj : j["identities"]) {
            std::unordered_map<int64_t, GaussianRational> acc;
            for (const json& e : idj)
                sv_accumulate(acc, parse_gaussian(e[1], ctx + ".identities"),
                              GRVec{{e[0].get<int64_t>(), GaussianRational(1)}});
            ids.push_back(sv_from_accumulator(acc));
        }
    }
    return DgCategoryPresentation(no, std::move(homs), std::move(diff), std::move(comp),
                                  std::move(ids));
}

inline DgCategoryPresentation load_dg_category_file(const std::string& path) {
    return load_dg_category(load_json_file(path), path);
}

// ---------------------------------------------------------------------------
// Torus elements and matrices.
// Element records: [{"m":, "n":, "coeff": scalar-syntax}, ...] or an inline
// expression string.
// ---------------------------------------------------------------------------

inline NCElement load_nc_element(const json& j, const std::string& ctx = "element") {
    if (j.is_string()) return parse_nc(j.get<std::string>());
    if (!j.is_array()) throw input_error(ctx + ": expected expression string or record list");
    NCElement e;
    for (const json& t : j) {
        e.add_term(t.at("m").get<int64_t>(), t.at("n").get<int64_t>(),
                   parse_symbolic(field(t, "coeff", ctx), ctx));
    }
    return e;
}

inline ordered_json nc_element_records(const NCElement& e) {
    ordered_json arr = ordered_json::array();
    for (const auto& [k, c] : e.coeffs()) {
        ordered_json t;
        t["m"] = k.first;
        t["n"] = k.second;
        t["coeff"] = to_string(c);
        arr.push_back(std::move(t));
    }
    return arr;
}

// {"rows": r, "cols": c, "entries": [expr, ...]} row-major.
inline NCMatrix load_nc_matrix(const json& j, const std::string& ctx = "matrix") {
    auto rows = field(j, "rows", ctx).get<size_t>();
    auto cols = field(j, "cols", ctx).get<size_t>();
    const json& entries = field(j, "entries", ctx);
    if (!entries.is_array() || entries.size() != rows * cols)
        throw input_error(ctx + ": 'entries' must hold rows*cols expressions");
    NCMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t c = 0; c < cols; ++c)
            m.at(i, c) = load_nc_element(entries[i * cols + c],
                                         ctx + ".entries[" + std::to_string(i * cols + c) + "]");
    return m;
}

inline NCMatrix load_nc_matrix_file(const std::string& path) {
    return load_nc_matrix(load_json_file(path), path);
}

inline ordered_json nc_matrix_to_json(const NCMatrix& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json entries = ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t c = 0; c < m.cols(); ++c) entries.push_back(to_string(m.at(i, c)));
    j["entries"] = std::move(entries);
    return j;
}

// ---------------------------------------------------------------------------
// Sections: {"charge": {"n":, "m":},
//            "classes": [{"alpha":, "terms": [{"poly": [coeffs],
//                                              "q2":, "q1":, "q0":}]}]}
// ---------------------------------------------------------------------------

inline std::pair<HeisenbergCharge, GaussJet> load_section(const json& j,
                                                          const std::string& ctx = "section") {
    const json& cj = field(j, "charge", ctx);
    HeisenbergCharge ch(field(cj, "n", ctx).get<int64_t>(), field(cj, "m", ctx).get<int64_t>());
    GaussJet f(ch);
    for (const json& cls : field(j, "classes", ctx)) {
        int64_t alpha = field(cls, "alpha", ctx).get<int64_t>();
        if (alpha < 0 || alpha >= ch.num_classes())
            throw input_error(ctx + ": residue class out of range");
        for (const json& t : field(cls, "terms", ctx)) {
            std::vector<SymbolicScalar> coeffs;
            for (const json& c : field(t, "poly", ctx)) coeffs.push_back(parse_symbolic(c, ctx));
            f.add_term(alpha, GaussTerm(PolyX(std::move(coeffs)),
                                        parse_symbolic(field(t, "q2", ctx), ctx),
                                        parse_symbolic(field(t, "q1", ctx), ctx),
                                        parse_symbolic(field(t, "q0", ctx), ctx)));
        }
    }
    return {ch, std::move(f)};
}

inline std::pair<HeisenbergCharge, GaussJet> load_section_file(const std::string& path) {
    return load_section(load_json_file(path), path);
}

inline ordered_json section_to_json(const HeisenbergCharge& ch, const GaussJet& f) {
    ordered_json j;
    j["charge"] = {{"n", ch.n}, {"m", ch.m}};
    ordered_json classes = ordered_json::array();
    for (int64_t alpha = 0; alpha < f.num_classes(); ++alpha) {
        if (f.terms(alpha).empty()) continue;
        ordered_json cls;
        cls["alpha"] = alpha;
        ordered_json terms = ordered_json::array();
        for (const auto& t : f.terms(alpha)) {
            ordered_json tj;
            ordered_json poly = ordered_json::array();
            for (const auto& c : t.p.coeffs()) poly.push_back(to_string(c));
            tj["poly"] = std::move(poly);
            tj["q2"] = to_string(t.q2);
            tj["q1"] = to_string(t.q1);
            tj["q0"] = to_string(t.q0);
            terms.push_back(std::move(tj));
        }
        cls["terms"] = std::move(terms);
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    return j;
}

// ---------------------------------------------------------------------------
// Formal objects: {"summands": [{"k":, "r":, "d":, "label":, "mult":}]}
// ---------------------------------------------------------------------------

inline FormalObject load_formal_object(const json& j, const std::string& ctx = "object") {
    FormalObject x;
    for (const json& s : field(j, "summands", ctx)) {
        std::string label = s.contains("label") ? s.at("label").get<std::string>() : "";
        int64_t mult = s.contains("mult") ? s.at("mult").get<int64_t>() : 1;
        x.add(field(s, "k", ctx).get<int64_t>(),
              StablePiece(Charge(field(s, "r", ctx).get<int64_t>(),
                                 field(s, "d", ctx).get<int64_t>()),
                          std::move(label)),
              mult);
    }
    return x;
}

inline FormalObject load_formal_object_file(const std::string& path) {
    return load_formal_object(load_json_file(path), path);
}

inline ordered_json formal_object_to_json(const FormalObject& x) {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& s : x.summands()) {
        ordered_json sj;
        sj["k"] = s.k;
        sj["r"] = s.piece.charge.r;
        sj["d"] = s.piece.charge.d;
        sj["label"] = s.piece.label;
        sj["mult"] = s.mult;
        arr.push_back(std::move(sj));
    }
    j["summands"] = std::move(arr);
    return j;
}

}  // namespace ncw::io
