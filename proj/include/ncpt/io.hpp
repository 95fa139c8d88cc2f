#pragma once

/**
 * @file io.hpp
 * @brief JSON encodings of every public value type.
 *
 * Conventions: rationals are {"num":int,"den":int} (plain integers accepted
 * on input); matrices are row-major nested arrays; the bundle orientation is
 * s_i = g_ij(s_j) for a cocycle entry {"i":..,"j":..,"auto":..}. Numeric
 * report fields carry a provenance tag, either "exact" or "float:<tol>".
 */

#include <nlohmann/json.hpp>

#include "covering.hpp"
#include "gallery.hpp"
#include "verdicts.hpp"

namespace ncpt {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// exact scalars

inline json to_json(const Rat& r) { return {{"num", r.num()}, {"den", r.den()}}; }
inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return Rat(j.at("num").get<long long>(), j.at("den").get<long long>());
}

inline json to_json(const PhaseQ& p) { return to_json(p.value()); }
inline PhaseQ phase_from_json(const json& j) { return PhaseQ(rat_from_json(j)); }

inline json to_json(const GaussRational& g) {
    return {{"re", to_json(g.re)}, {"im", to_json(g.im)}};
}
inline GaussRational gauss_from_json(const json& j) {
    if (j.is_number_integer()) return GaussRational(Rat(j.get<long long>()));
    return {rat_from_json(j.at("re")), rat_from_json(j.at("im"))};
}

inline json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}
inline IntMatrix intmatrix_from_json(const json& j) {
    std::vector<std::vector<long long>> rows;
    for (auto& r : j) rows.push_back(r.get<std::vector<long long>>());
    return IntMatrix(rows);
}

// ---------------------------------------------------------------------------
// quantum torus

inline json to_json(const ThetaMatrix& t) {
    json rows = json::array();
    for (auto& row : t.entries()) {
        json r = json::array();
        for (auto& e : row) r.push_back(to_json(e));
        rows.push_back(r);
    }
    return rows;
}
inline ThetaMatrix theta_from_json(const json& j) {
    std::vector<std::vector<Rat>> rows;
    for (auto& r : j) {
        std::vector<Rat> row;
        for (auto& e : r) row.push_back(rat_from_json(e));
        rows.push_back(row);
    }
    return ThetaMatrix(rows);
}

inline json to_json(const NcTorusElement& a) {
    json coeffs = json::array();
    for (auto& [k, v] : a.coeffs())
        coeffs.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
    return {{"n", a.n()}, {"theta", to_json(a.theta())}, {"coeffs", coeffs}};
}
inline NcTorusElement nct_from_json(const json& j) {
    ThetaMatrix theta = theta_from_json(j.at("theta"));
    if (j.contains("n") && j.at("n").get<int>() != theta.n())
        throw std::invalid_argument("element: n does not match theta");
    std::map<MultiIndex, CScalar> coeffs;
    for (auto& c : j.at("coeffs")) {
        MultiIndex k = c.at("k").get<MultiIndex>();
        coeffs[k] += CScalar(c.value("re", 0.0), c.value("im", 0.0));
    }
    return NcTorusElement(theta, std::move(coeffs));
}

inline json to_json(const TorusPoint& t) {
    json out = json::array();
    for (auto& p : t) out.push_back(to_json(p));
    return out;
}
inline TorusPoint torus_point_from_json(const json& j) {
    TorusPoint t;
    for (auto& p : j) t.push_back(phase_from_json(p));
    return t;
}

inline json to_json(const Monomial& m) {
    return {{"phase", to_json(m.phase)}, {"k", m.k}};
}

inline NcTorusElement nct_from_json(const json& j); // below

/// Section family of torus elements, as {"patches":[element,...]}.
inline SectionFamily section_from_json(const json& j) {
    std::vector<NcTorusElement> patches;
    for (auto& e : j.at("patches")) patches.push_back(nct_from_json(e));
    return {std::move(patches)};
}

// ---------------------------------------------------------------------------
// findim

inline json to_json(const StructureAlgebra& A) {
    json c = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json ci = json::array();
        for (int jj = 0; jj < A.dim(); ++jj) {
            json cij = json::array();
            for (int k = 0; k < A.dim(); ++k) cij.push_back(to_json(A.constants()[i][jj][k]));
            ci.push_back(cij);
        }
        c.push_back(ci);
    }
    json unit = json::array();
    for (auto& u : A.unit()) unit.push_back(to_json(u));
    json out = {{"dim", A.dim()}, {"constants", c}, {"unit", unit}, {"weights", nullptr}};
    if (A.weights()) {
        json w = json::array();
        for (auto& k : *A.weights()) w.push_back(k);
        out["weights"] = w;
    }
    return out;
}
inline StructureAlgebra algebra_from_json(const json& j) {
    int d = j.at("dim").get<int>();
    std::vector<std::vector<GVec>> c(d, std::vector<GVec>(d, GVec(d)));
    for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj)
            for (int k = 0; k < d; ++k) c[i][jj][k] = gauss_from_json(j.at("constants")[i][jj][k]);
    GVec unit(d);
    for (int i = 0; i < d; ++i) unit[i] = gauss_from_json(j.at("unit")[i]);
    std::optional<std::vector<MultiIndex>> weights;
    if (j.contains("weights") && !j.at("weights").is_null()) {
        std::vector<MultiIndex> w;
        for (auto& k : j.at("weights")) w.push_back(k.get<MultiIndex>());
        weights = std::move(w);
    }
    return StructureAlgebra(std::move(c), std::move(unit), {}, std::move(weights));
}

inline json to_json(const GVec& v) {
    json out = json::array();
    for (auto& x : v) out.push_back(to_json(x));
    return out;
}
inline GVec gvec_from_json(const json& j) {
    GVec v;
    for (auto& x : j) v.push_back(gauss_from_json(x));
    return v;
}

inline json to_json(const Character& chi) {
    json vals = json::array();
    for (auto& v : chi.values) vals.push_back({{"re", v.real()}, {"im", v.imag()}});
    return {{"values", vals}, {"provenance", "float:1e-6"}};
}

// ---------------------------------------------------------------------------
// simplicial

inline json to_json(const SimplicialBase& K) {
    json s = json::array();
    for (auto& sx : K.simplices())
        if (sx.size() > 1) s.push_back(sx);
    return {{"vertices", K.vertex_count()}, {"simplices", s}};
}
inline SimplicialBase complex_from_json(const json& j) {
    std::vector<Simplex> s;
    for (auto& sx : j.at("simplices")) s.push_back(sx.get<Simplex>());
    return SimplicialBase(j.at("vertices").get<int>(), s);
}

inline json to_json(const WeightFunction& f) {
    json vals = json::array();
    for (auto& v : f.values) vals.push_back(to_json(v));
    return {{"values", vals}};
}
inline WeightFunction weight_from_json(const json& j) {
    WeightFunction f;
    for (auto& v : j.at("values")) f.values.push_back(rat_from_json(v));
    return f;
}

inline json to_json(const GroupPresentation& G) {
    return {{"generators", G.generators}, {"relators", G.relators}};
}
inline GroupPresentation presentation_from_json(const json& j) {
    GroupPresentation G;
    G.generators = j.at("generators").get<int>();
    for (auto& w : j.at("relators")) G.relators.push_back(w.get<std::vector<int>>());
    return G;
}

// ---------------------------------------------------------------------------
// bundles and systems

inline json to_json(const FiberAutomorphism& g) {
    if (auto* p = std::get_if<PhaseLatticeAuto>(&g)) {
        json lam = json::array();
        for (auto& l : p->lambda) lam.push_back(to_json(l));
        return {{"kind", "phase_lattice"}, {"m", to_json(p->m)}, {"lambda", lam}};
    }
    const GMatrix& m = std::get<LinearAuto>(g).matrix;
    json rows = json::array();
    for (auto& row : m) {
        json r = json::array();
        for (auto& e : row) r.push_back(to_json(e));
        rows.push_back(r);
    }
    return {{"kind", "linear"}, {"matrix", rows}};
}
inline FiberAutomorphism auto_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "phase_lattice") {
        PhaseLatticeAuto p{intmatrix_from_json(j.at("m")), {}};
        for (auto& l : j.at("lambda")) p.lambda.push_back(phase_from_json(l));
        return p;
    }
    if (kind != "linear") throw std::invalid_argument("auto: unknown kind " + kind);
    GMatrix m;
    for (auto& row : j.at("matrix")) {
        GVec r;
        for (auto& e : row) r.push_back(gauss_from_json(e));
        m.push_back(std::move(r));
    }
    return LinearAuto{std::move(m)};
}

inline json to_json(const FlatAlgebraBundle& B) {
    json fiber;
    if (auto* t = B.nctorus_fiber())
        fiber = {{"kind", "nctorus"},
                 {"theta", to_json(t->theta)},
                 {"weights", to_json(t->action_weights)}};
    else
        fiber = {{"kind", "findim"}, {"algebra", to_json(B.findim_fiber()->algebra)}};
    json cocycle = json::array();
    for (auto& [pair, g] : B.cocycle)
        if (pair.first < pair.second)
            cocycle.push_back({{"i", pair.first}, {"j", pair.second}, {"auto", to_json(g)}});
    return {{"kind", "flat-bundle"},
            {"base", to_json(B.base)},
            {"fiber", fiber},
            {"cocycle", cocycle},
            {"orientation", "s_i = g_ij(s_j)"}};
}
inline FlatAlgebraBundle bundle_from_json(const json& j) {
    SimplicialBase base = complex_from_json(j.at("base"));
    const json& jf = j.at("fiber");
    std::map<std::pair<int, int>, FiberAutomorphism> tr;
    for (auto& e : j.at("cocycle"))
        tr[{e.at("i").get<int>(), e.at("j").get<int>()}] = auto_from_json(e.at("auto"));
    if (jf.at("kind") == "nctorus") {
        ThetaMatrix theta = theta_from_json(jf.at("theta"));
        NcTorusFiber fiber = jf.contains("weights") && !jf.at("weights").is_null()
                                 ? NcTorusFiber(theta, intmatrix_from_json(jf.at("weights")))
                                 : NcTorusFiber(theta);
        return FlatAlgebraBundle(std::move(base), fiber, tr);
    }
    return FlatAlgebraBundle(std::move(base), FinDimFiber{algebra_from_json(jf.at("algebra"))}, tr);
}

inline json to_json(const ChernPrincipalBundle& P) {
    json tris = json::array();
    for (auto& [s, v] : P.value) tris.push_back({{"simplex", s}, {"value", v}});
    return {{"n", P.n}, {"base", to_json(P.base)}, {"triangles", tris}};
}
inline ChernPrincipalBundle chern_from_json(const json& j) {
    std::map<Simplex, std::vector<long long>> vals;
    for (auto& t : j.at("triangles"))
        vals[t.at("simplex").get<Simplex>()] = t.at("value").get<std::vector<long long>>();
    return ChernPrincipalBundle(complex_from_json(j.at("base")), j.at("n").get<int>(),
                                std::move(vals));
}

inline json to_json(const NcpSystem& sys) {
    if (auto* b = std::get_if<BareTorusSystem>(&sys))
        return {{"kind", "bare"}, {"theta", to_json(b->theta)}};
    if (auto* f = std::get_if<FlatAlgebraBundle>(&sys)) return to_json(*f);
    const ChernSystem& c = std::get<ChernSystem>(sys);
    return {{"kind", "chern"}, {"chern", to_json(c.chern)}, {"theta", to_json(c.theta)}};
}
inline NcpSystem system_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "bare") return BareTorusSystem{theta_from_json(j.at("theta"))};
    if (kind == "flat-bundle") return bundle_from_json(j);
    if (kind == "chern")
        return ChernSystem{chern_from_json(j.at("chern")), theta_from_json(j.at("theta"))};
    throw std::invalid_argument("system: unknown kind " + kind);
}

// ---------------------------------------------------------------------------
// coverings and verdicts

inline json to_json(const CoveringSpace& cov) {
    json proj = json::array();
    for (auto& [v, s] : cov.projection) proj.push_back({{"vertex", v}, {"sheet", s}});
    json mono = json::array();
    for (size_t i = 0; i < cov.monodromy.size(); ++i)
        mono.push_back({{"loop", cov.cycles.loops[i]}, {"perm", cov.monodromy[i]}});
    return {{"sheets", cov.sheets},
            {"total", to_json(cov.total)},
            {"projection", proj},
            {"monodromy", mono},
            {"components", cov.components},
            {"provenance", "exact"}};
}

inline const char* tag_name(VerdictTag t) {
    switch (t) {
        case VerdictTag::Trivial: return "trivial";
        case VerdictTag::NotTrivial: return "not-trivial";
        default: return "unknown";
    }
}
inline const char* tag_name(NcpTag t) {
    switch (t) {
        case NcpTag::Ncp: return "ncp";
        case NcpTag::NotNcp: return "not-ncp";
        default: return "unknown";
    }
}

inline json to_json(const Obstruction& ob) {
    if (auto* m = std::get_if<MonomialObstruction>(&ob)) {
        json out = {{"degree", m->degree}, {"provenance", "exact"}};
        switch (m->layer) {
            case MonomialObstruction::Layer::WeightEmpty:
                out["layer"] = "weight-empty";
                break;
            case MonomialObstruction::Layer::LatticeShift:
                out["layer"] = "lattice-shift";
                out["loop"] = m->loop;
                out["exponent"] = m->exponent;
                out["shift"] = m->shift;
                break;
            case MonomialObstruction::Layer::PhaseHolonomy:
                out["layer"] = "phase-holonomy";
                out["loop"] = m->loop;
                out["exponent"] = m->exponent;
                out["holonomy"] = to_json(m->holonomy);
                break;
        }
        return out;
    }
    if (auto* c = std::get_if<ChernObstruction>(&ob))
        return {{"layer", "chern-class"}, {"h2", c->h2_class}, {"provenance", "exact"}};
    const auto& w = std::get<WeightSpaceObstruction>(ob);
    return {{"layer", "singular-weight-space"},
            {"degree", w.degree},
            {"fixed_dim", w.fixed_dim},
            {"grid_bound", w.grid_bound},
            {"provenance", "exact"}};
}

inline json to_json(const TrivialNcpVerdict& v) {
    json out = {{"verdict", tag_name(v.tag)}, {"model", v.model}};
    if (!v.note.empty()) out["note"] = v.note;
    if (v.tag == VerdictTag::Trivial) {
        json ws = json::array();
        for (auto& w : v.witnesses) {
            json patches = json::array();
            for (auto& m : w.patches) patches.push_back(to_json(m));
            ws.push_back({{"degree", w.degree}, {"patches", patches}, {"provenance", "exact"}});
        }
        out["witnesses"] = ws;
        if (!v.candidate_witnesses.empty()) {
            json cs = json::array();
            for (auto& c : v.candidate_witnesses) {
                json patches = json::array();
                for (auto& e : c.family.nct()) patches.push_back(to_json(e));
                cs.push_back({{"degree", c.degree},
                              {"patches", patches},
                              {"residual", c.worst_residual},
                              {"provenance", "float:1e-6"}});
            }
            out["candidate_witnesses"] = cs;
        }
    }
    if (v.obstruction) out["certificate"] = to_json(*v.obstruction);
    return out;
}

inline json to_json(const NcpVerdict& v) {
    json patches = json::array();
    for (auto& p : v.patches) {
        json pj = {{"vertex", p.vertex}, {"verdict", tag_name(p.tag)}};
        if (p.obstruction) pj["certificate"] = to_json(*p.obstruction);
        patches.push_back(pj);
    }
    json out = {{"verdict", tag_name(v.tag)},
                {"model", v.model},
                {"patches", patches},
                {"cover", "star indicators, one per base vertex"}};
    if (v.failing_patch >= 0) out["failing_patch"] = v.failing_patch;
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

inline json to_json(const ReconstructionReport& r) {
    json cycles = json::array();
    for (size_t i = 0; i < r.cycle_lattice.size(); ++i) {
        json lam = json::array();
        for (auto& p : r.cycle_torus[i]) lam.push_back(to_json(p));
        cycles.push_back({{"lattice", to_json(r.cycle_lattice[i])}, {"torus", lam}});
    }
    json out = {{"ok", r.ok},
                {"cycle_holonomies", cycles},
                {"freeness_certified", r.freeness_certified},
                {"provenance", "exact"}};
    if (!r.note.empty()) out["note"] = r.note;
    if (r.pi1) out["pi1_presentation"] = to_json(*r.pi1);
    if (r.pi1_abelianized)
        out["pi1_abelianization"] = {{"rank", r.pi1_abelianized->rank},
                                     {"torsion", r.pi1_abelianized->torsion}};
    return out;
}

/// Covering total space in DOT, for quick visual inspection.
inline std::string covering_to_dot(const CoveringSpace& cov) {
    std::ostringstream os;
    os << "graph spectrum {\n";
    for (size_t i = 0; i < cov.projection.size(); ++i)
        os << "  n" << i << " [label=\"(" << cov.projection[i].first << ","
           << cov.projection[i].second << ")\"];\n";
    for (auto& e : cov.total.simplices_of_dim(1)) os << "  n" << e[0] << " -- n" << e[1] << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace ncpt
