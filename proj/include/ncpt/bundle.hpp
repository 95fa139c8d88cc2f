#pragma once

/**
 * @file bundle.hpp
 * @brief Flat algebra bundles over a simplicial base: constant transition
 *        cocycles, compatible section families, torus actions, associated
 *        and pullback constructions.
 *
 * Transitions are constant per star overlap. For a quantum-torus fiber a
 * transition is a lattice map M in GL(n,Z) with M^T theta M = theta mod Z
 * together with generator phases: U_r maps to lambda_r U^{M e_r}, extended
 * multiplicatively through normal ordering, so every transition phase is an
 * exact rational and cocycle identities are decidable. For a
 * finite-dimensional fiber a transition is an exact algebra automorphism
 * matrix over Q(i).
 *
 * Orientation convention, fixed once: a compatible family satisfies
 * s_i = g_ij(s_j) on every overlap (i, j).
 */

#include <cassert>
#include <map>
#include <optional>
#include <variant>

#include "findim.hpp"
#include "nctorus.hpp"
#include "simplicial.hpp"

namespace ncpt {

// ---------------------------------------------------------------------------
// Fiber automorphisms

/// U^k -> exp(2 pi i phase_on(k)) U^{M k}; the torus-equivariant subgroup for
/// the full action is M = Id, where the map is act(lambda, .).
struct PhaseLatticeAuto {
    IntMatrix m;                  // n x n, det +-1
    std::vector<PhaseQ> lambda;   // generator phases: U_r -> lambda_r U^{M e_r}

    static PhaseLatticeAuto identity(int n) {
        return {IntMatrix::identity(n), std::vector<PhaseQ>(n)};
    }
    static PhaseLatticeAuto rotation(const TorusPoint& t) {
        return {IntMatrix::identity(int(t.size())), t};
    }

    bool operator==(const PhaseLatticeAuto& o) const { return m == o.m && lambda == o.lambda; }
};

/// Exact automorphism of a finite-dimensional fiber.
struct LinearAuto {
    GMatrix matrix;

    bool operator==(const LinearAuto& o) const { return matrix == o.matrix; }
};

using FiberAutomorphism = std::variant<PhaseLatticeAuto, LinearAuto>;

/// Reordering phase of the image monomial: the normal-ordered product of the
/// generator images, computed in the exact monomial group.
inline Monomial phase_lattice_image(const ThetaMatrix& theta, const PhaseLatticeAuto& f,
                                    const MultiIndex& k) {
    int n = theta.n();
    Monomial acc{PhaseQ(), MultiIndex(n, 0)};
    for (int r = 0; r < n; ++r) {
        if (k[r] == 0) continue;
        MultiIndex img(n);
        for (int i = 0; i < n; ++i) img[i] = f.m.at(i, r);
        Monomial gen{f.lambda[r], img};
        acc = mono_mul(theta, acc, mono_pow(theta, gen, k[r]));
    }
    return acc;
}

inline NcTorusElement apply_auto(const ThetaMatrix& theta, const PhaseLatticeAuto& f,
                                 const NcTorusElement& a) {
    std::map<MultiIndex, CScalar> out;
    for (auto& [k, v] : a.coeffs()) {
        Monomial img = phase_lattice_image(theta, f, k);
        out[img.k] += v * phase_to_scalar(img.phase);
    }
    return NcTorusElement(theta, std::move(out));
}

inline PhaseLatticeAuto compose(const ThetaMatrix& theta, const PhaseLatticeAuto& f,
                                const PhaseLatticeAuto& g) {
    int n = theta.n();
    PhaseLatticeAuto out{f.m * g.m, std::vector<PhaseQ>(n)};
    for (int r = 0; r < n; ++r) {
        MultiIndex ger(n);
        for (int i = 0; i < n; ++i) ger[i] = g.m.at(i, r);
        out.lambda[r] = g.lambda[r] + phase_lattice_image(theta, f, ger).phase;
    }
    return out;
}

/// Integer inverse of a det +-1 matrix, by the adjugate.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    int n = m.rows();
    long long d = det(m);
    if (d != 1 && d != -1) throw std::invalid_argument("unimodular_inverse: det not +-1");
    IntMatrix adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int a = 0, ai = 0; a < n; ++a) {
                if (a == j) continue;
                for (int b = 0, bj = 0; b < n; ++b) {
                    if (b == i) continue;
                    minor.at(ai, bj++) = m.at(a, b);
                }
                ++ai;
            }
            long long c = det(minor);
            adj.at(i, j) = (((i + j) % 2 == 0) ? c : -c) * d;
        }
    return adj;
}

inline PhaseLatticeAuto inverse_auto(const ThetaMatrix& theta, const PhaseLatticeAuto& f) {
    int n = theta.n();
    IntMatrix minv = unimodular_inverse(f.m);
    // solve for generator phases: (f^{-1} o f)(U_r) = U_r. Writing the pure
    // reordering phase of f^{-1} on k as zeta(k), the condition reads
    //   sum_s (M e_r)_s lambda'_s = -f.lambda_r - zeta(M e_r)  in Q/Z,
    // a linear system with the unimodular matrix M^T.
    PhaseLatticeAuto pure{minv, std::vector<PhaseQ>(n)};
    std::vector<PhaseQ> rhs(n);
    for (int r = 0; r < n; ++r) {
        MultiIndex mer(n);
        for (int i = 0; i < n; ++i) mer[i] = f.m.at(i, r);
        rhs[r] = -f.lambda[r] - phase_lattice_image(theta, pure, mer).phase;
    }
    IntMatrix mt_inv = unimodular_inverse(f.m.transposed());
    PhaseLatticeAuto out{minv, std::vector<PhaseQ>(n)};
    for (int s = 0; s < n; ++s) {
        PhaseQ acc;
        for (int r = 0; r < n; ++r) acc = acc + rhs[r] * mt_inv.at(s, r);
        out.lambda[s] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fibers

struct NcTorusFiber {
    ThetaMatrix theta;
    IntMatrix action_weights; // W: n_act x n, degree of U^k under the action is W k

    explicit NcTorusFiber(ThetaMatrix th)
        : theta(std::move(th)), action_weights(IntMatrix::identity(theta.n())) {}
    NcTorusFiber(ThetaMatrix th, IntMatrix w) : theta(std::move(th)), action_weights(std::move(w)) {
        if (action_weights.cols() != theta.n())
            throw std::invalid_argument("NcTorusFiber: weight matrix shape");
    }

    int torus_rank() const { return action_weights.rows(); }
    MultiIndex degree(const MultiIndex& k) const { return action_weights.apply(k); }
};

struct FinDimFiber {
    StructureAlgebra algebra;
};

using FiberDesc = std::variant<NcTorusFiber, FinDimFiber>;

// ---------------------------------------------------------------------------
// The bundle

class FlatAlgebraBundle {
public:
    SimplicialBase base;
    StarCover cover;
    FiberDesc fiber;
    std::map<std::pair<int, int>, FiberAutomorphism> cocycle; // both orientations stored
    bool torus_equivariant = false;

    FlatAlgebraBundle(SimplicialBase b, FiberDesc f,
                      const std::map<std::pair<int, int>, FiberAutomorphism>& transitions)
        : base(std::move(b)), cover(star_cover(base)), fiber(std::move(f)) {
        build_cocycle(transitions);
        verify_cocycle();
        torus_equivariant = compute_equivariance();
    }

    const NcTorusFiber* nctorus_fiber() const { return std::get_if<NcTorusFiber>(&fiber); }
    const FinDimFiber* findim_fiber() const { return std::get_if<FinDimFiber>(&fiber); }

    const FiberAutomorphism& transition(int i, int j) const {
        auto it = cocycle.find({i, j});
        if (it == cocycle.end()) throw std::invalid_argument("transition: stars do not overlap");
        return it->second;
    }

    FiberAutomorphism compose_autos(const FiberAutomorphism& f, const FiberAutomorphism& g) const {
        if (auto* pf = std::get_if<PhaseLatticeAuto>(&f))
            return compose(nctorus_fiber()->theta, *pf, std::get<PhaseLatticeAuto>(g));
        return LinearAuto{gmat_mul(std::get<LinearAuto>(f).matrix, std::get<LinearAuto>(g).matrix)};
    }
    FiberAutomorphism invert_auto(const FiberAutomorphism& f) const {
        if (auto* pf = std::get_if<PhaseLatticeAuto>(&f))
            return inverse_auto(nctorus_fiber()->theta, *pf);
        auto inv = inverse(std::get<LinearAuto>(f).matrix);
        if (!inv) throw std::invalid_argument("invert_auto: singular transition");
        return LinearAuto{*inv};
    }
    FiberAutomorphism identity_auto() const {
        if (auto* t = nctorus_fiber()) return PhaseLatticeAuto::identity(t->theta.n());
        return LinearAuto{gmat_identity(findim_fiber()->algebra.dim())};
    }
    static bool autos_equal(const FiberAutomorphism& a, const FiberAutomorphism& b) {
        if (a.index() != b.index()) return false;
        if (auto* pa = std::get_if<PhaseLatticeAuto>(&a))
            return *pa == std::get<PhaseLatticeAuto>(b);
        return std::get<LinearAuto>(a) == std::get<LinearAuto>(b);
    }

    /// Transport of the fiber automorphism along a nerve loop v0 v1 ... v0:
    /// the product g_{v0 v1} g_{v1 v2} ... (holonomy written at v0).
    FiberAutomorphism holonomy(const Loop& loop) const {
        FiberAutomorphism acc = identity_auto();
        for (size_t i = 0; i + 1 < loop.size(); ++i)
            acc = compose_autos(acc, transition(loop[i], loop[i + 1]));
        return acc;
    }

    int torus_rank() const {
        if (auto* t = nctorus_fiber()) return t->torus_rank();
        const FinDimFiber& f = *findim_fiber();
        if (!f.algebra.weights()) return 0;
        return f.algebra.weights()->empty() ? 0 : int(f.algebra.weights()->front().size());
    }

private:
    void build_cocycle(const std::map<std::pair<int, int>, FiberAutomorphism>& transitions) {
        for (auto& [i, j] : cover.pairs) {
            auto fwd = transitions.find({i, j});
            auto bwd = transitions.find({j, i});
            FiberAutomorphism g =
                fwd != transitions.end()
                    ? fwd->second
                    : (bwd != transitions.end() ? invert_auto(bwd->second) : identity_auto());
            validate_auto(g);
            cocycle[{i, j}] = g;
            cocycle[{j, i}] = invert_auto(g);
        }
        for (auto& [pair, g] : transitions)
            if (!cocycle.count(pair))
                throw std::invalid_argument("FlatAlgebraBundle: transition on a non-overlap");
    }

    void validate_auto(const FiberAutomorphism& g) const {
        if (auto* p = std::get_if<PhaseLatticeAuto>(&g)) {
            const NcTorusFiber* t = nctorus_fiber();
            if (!t) throw std::invalid_argument("FlatAlgebraBundle: lattice auto on findim fiber");
            int n = t->theta.n();
            if (p->m.rows() != n || p->m.cols() != n || int(p->lambda.size()) != n)
                throw std::invalid_argument("FlatAlgebraBundle: transition shape");
            long long d = det(p->m);
            if (d != 1 && d != -1)
                throw std::invalid_argument("FlatAlgebraBundle: lattice map not in GL(n,Z)");
            // M^T theta M = theta mod Z, so the map respects the relations
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    Rat acc;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            acc += Rat(p->m.at(a, r)) * t->theta.at(a, b) * Rat(p->m.at(b, s));
                    if (!(PhaseQ(acc) == PhaseQ(t->theta.at(r, s))))
                        throw std::invalid_argument(
                            "FlatAlgebraBundle: lattice map does not preserve theta");
                }
        } else {
            const FinDimFiber* f = findim_fiber();
            if (!f) throw std::invalid_argument("FlatAlgebraBundle: linear auto on nctorus fiber");
            if (!is_algebra_automorphism(f->algebra, std::get<LinearAuto>(g).matrix))
                throw std::invalid_argument("FlatAlgebraBundle: transition not an automorphism");
        }
    }

    void verify_cocycle() const {
        for (auto& [i, j] : cover.pairs) {
            if (!autos_equal(compose_autos(transition(i, j), transition(j, i)), identity_auto()))
                throw std::logic_error("FlatAlgebraBundle: g_ij g_ji != 1");
        }
        for (auto& [a, b, c] : cover.triples) {
            // g_ab o g_bc = g_ac on the triple overlap, exactly
            if (!autos_equal(compose_autos(transition(a, b), transition(b, c)), transition(a, c)))
                throw std::logic_error("FlatAlgebraBundle: cocycle identity fails on a triple");
        }
    }

    bool compute_equivariance() const {
        if (auto* t = nctorus_fiber()) {
            const IntMatrix& W = t->action_weights;
            for (auto& [pair, g] : cocycle) {
                const auto& p = std::get<PhaseLatticeAuto>(g);
                if (W * p.m != W) return false; // degree of U^{Mk} must equal degree of U^k
            }
            return true;
        }
        const FinDimFiber& f = *findim_fiber();
        if (!f.algebra.weights()) return false;
        const auto& w = *f.algebra.weights();
        for (auto& [pair, g] : cocycle) {
            const GMatrix& m = std::get<LinearAuto>(g).matrix;
            for (size_t j = 0; j < m.size(); ++j)
                for (size_t i = 0; i < m.size(); ++i)
                    if (!m[i][j].is_zero() && w[i] != w[j]) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Section families

using CVec = std::vector<CScalar>;

struct SectionFamily {
    std::variant<std::vector<NcTorusElement>, std::vector<CVec>> values; // one per vertex

    std::vector<NcTorusElement>& nct() { return std::get<std::vector<NcTorusElement>>(values); }
    const std::vector<NcTorusElement>& nct() const {
        return std::get<std::vector<NcTorusElement>>(values);
    }
    std::vector<CVec>& fin() { return std::get<std::vector<CVec>>(values); }
    const std::vector<CVec>& fin() const { return std::get<std::vector<CVec>>(values); }
};

inline CVec cvec_from(const GVec& v) {
    CVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_complex();
    return out;
}

inline CVec apply_linear(const GMatrix& m, const CVec& v) {
    CVec out(m.size(), CScalar(0, 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!m[i][j].is_zero()) out[i] += m[i][j].to_complex() * v[j];
    return out;
}

inline SectionFamily unit_section(const FlatAlgebraBundle& B) {
    int V = B.base.vertex_count();
    if (auto* t = B.nctorus_fiber())
        return {std::vector<NcTorusElement>(V, NcTorusElement::one(t->theta))};
    return {std::vector<CVec>(V, cvec_from(B.findim_fiber()->algebra.unit()))};
}

/// Apply a transition to one fiber value.
inline NcTorusElement transport(const FlatAlgebraBundle& B, int i, int j, const NcTorusElement& a) {
    return apply_auto(B.nctorus_fiber()->theta, std::get<PhaseLatticeAuto>(B.transition(i, j)), a);
}
inline CVec transport(const FlatAlgebraBundle& B, int i, int j, const CVec& v) {
    return apply_linear(std::get<LinearAuto>(B.transition(i, j)).matrix, v);
}

/// Compatibility re-verification: s_i = g_ij(s_j) on every overlap.
inline bool is_compatible(const FlatAlgebraBundle& B, const SectionFamily& s) {
    for (auto& [i, j] : B.cover.pairs) {
        if (auto* nv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
            if (!(*nv)[i].approx_equal(transport(B, i, j, (*nv)[j]))) return false;
        } else {
            const auto& fv = s.fin();
            CVec moved = transport(B, i, j, fv[j]);
            for (size_t k = 0; k < moved.size(); ++k)
                if (!approx_eq(moved[k], fv[i][k])) return false;
        }
    }
    return true;
}

inline SectionFamily section_add(const FlatAlgebraBundle& B, const SectionFamily& s,
                                 const SectionFamily& t) {
    SectionFamily out;
    if (auto* sv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
        std::vector<NcTorusElement> r;
        for (size_t v = 0; v < sv->size(); ++v) r.push_back(add((*sv)[v], t.nct()[v]));
        out.values = std::move(r);
    } else {
        std::vector<CVec> r = s.fin();
        for (size_t v = 0; v < r.size(); ++v)
            for (size_t k = 0; k < r[v].size(); ++k) r[v][k] += t.fin()[v][k];
        out.values = std::move(r);
    }
    assert(is_compatible(B, out)); // transitions are linear
    return out;
}

/// Patchwise product; transitions are algebra maps, so compatibility is
/// preserved (re-verified in debug builds).
inline SectionFamily section_mul(const FlatAlgebraBundle& B, const SectionFamily& s,
                                 const SectionFamily& t) {
    SectionFamily out;
    if (auto* sv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
        std::vector<NcTorusElement> r;
        for (size_t v = 0; v < sv->size(); ++v) r.push_back(multiply((*sv)[v], t.nct()[v]));
        out.values = std::move(r);
    } else {
        const StructureAlgebra& A = B.findim_fiber()->algebra;
        std::vector<CVec> r(s.fin().size(), CVec(A.dim(), CScalar(0, 0)));
        for (size_t v = 0; v < r.size(); ++v)
            for (int i = 0; i < A.dim(); ++i)
                for (int j = 0; j < A.dim(); ++j) {
                    CScalar f = s.fin()[v][i] * t.fin()[v][j];
                    if (f == CScalar(0, 0)) continue;
                    for (int k = 0; k < A.dim(); ++k)
                        r[v][k] += f * A.constants()[i][j][k].to_complex();
                }
        out.values = std::move(r);
    }
    assert(is_compatible(B, out));
    return out;
}

inline SectionFamily section_scale(const SectionFamily& s, CScalar c) {
    if (auto* sv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
        std::vector<NcTorusElement> out;
        for (auto& x : *sv) out.push_back(scale(x, c));
        return {std::move(out)};
    }
    std::vector<CVec> out = s.fin();
    for (auto& v : out)
        for (auto& x : v) x *= c;
    return {std::move(out)};
}

/// Patchwise torus action; requires an equivariant cocycle.
inline SectionFamily torus_action_on_sections(const FlatAlgebraBundle& B, const TorusPoint& t,
                                              const SectionFamily& s) {
    if (!B.torus_equivariant)
        throw std::invalid_argument("torus_action_on_sections: cocycle not equivariant");
    if (int(t.size()) != B.torus_rank())
        throw std::invalid_argument("torus_action_on_sections: wrong torus rank");
    if (auto* tf = B.nctorus_fiber()) {
        std::vector<NcTorusElement> out;
        for (auto& x : s.nct()) {
            std::map<MultiIndex, CScalar> c;
            for (auto& [k, v] : x.coeffs())
                c[k] = v * phase_to_scalar(act_phase(t, tf->degree(k)));
            out.push_back(NcTorusElement(tf->theta, std::move(c)));
        }
        return {std::move(out)};
    }
    const auto& w = *B.findim_fiber()->algebra.weights();
    std::vector<CVec> out = s.fin();
    for (auto& v : out)
        for (size_t i = 0; i < v.size(); ++i) v[i] *= phase_to_scalar(act_phase(t, w[i]));
    return {std::move(out)};
}

/// Patchwise isotypic projection onto action degree k.
inline SectionFamily isotypic_sections(const FlatAlgebraBundle& B, const SectionFamily& s,
                                       const MultiIndex& deg) {
    if (!B.torus_equivariant)
        throw std::invalid_argument("isotypic_sections: cocycle not equivariant");
    if (auto* tf = B.nctorus_fiber()) {
        std::vector<NcTorusElement> out;
        for (auto& x : s.nct()) {
            std::map<MultiIndex, CScalar> c;
            for (auto& [k, v] : x.coeffs())
                if (tf->degree(k) == deg) c[k] = v;
            out.push_back(NcTorusElement(tf->theta, std::move(c)));
        }
        return {std::move(out)};
    }
    const auto& w = *B.findim_fiber()->algebra.weights();
    std::vector<CVec> out = s.fin();
    for (auto& v : out)
        for (size_t i = 0; i < v.size(); ++i)
            if (w[i] != deg) v[i] = CScalar(0, 0);
    return {std::move(out)};
}

// ---------------------------------------------------------------------------
// Constructions

/// Bundle associated to an abelian principal cocycle: transitions act by the
/// principal values through the fiber torus action.
inline FlatAlgebraBundle associated_bundle(const SimplicialBase& base,
                                           const std::map<std::pair<int, int>, TorusPoint>& principal,
                                           const NcTorusFiber& fiber) {
    // abelian cocycle identity on triples, checked exactly before building
    StarCover cover = star_cover(base);
    auto value = [&](int i, int j) -> TorusPoint {
        auto it = principal.find({i, j});
        if (it != principal.end()) return it->second;
        auto rev = principal.find({j, i});
        if (rev != principal.end()) return torus_neg(rev->second);
        return TorusPoint(fiber.torus_rank());
    };
    for (auto& [a, b, c] : cover.triples) {
        TorusPoint lhs = torus_add(value(a, b), value(b, c));
        if (lhs != value(a, c))
            throw std::invalid_argument("associated_bundle: principal cocycle identity fails");
    }
    std::map<std::pair<int, int>, FiberAutomorphism> transitions;
    for (auto& [i, j] : cover.pairs) {
        TorusPoint t = value(i, j);
        // lift the action-torus value to generator phases via the weights
        std::vector<PhaseQ> lam(fiber.theta.n());
        for (int r = 0; r < fiber.theta.n(); ++r) {
            MultiIndex er = mi_unit(fiber.theta.n(), r);
            lam[r] = act_phase(t, fiber.degree(er));
        }
        transitions[{i, j}] = PhaseLatticeAuto{IntMatrix::identity(fiber.theta.n()), lam};
    }
    return FlatAlgebraBundle(base, fiber, transitions);
}

/// Pull a bundle back along a simplicial covering map L -> K given on vertices.
inline FlatAlgebraBundle pullback_bundle(const FlatAlgebraBundle& B, const SimplicialBase& L,
                                         const std::vector<int>& vertex_map) {
    if (int(vertex_map.size()) != L.vertex_count())
        throw std::invalid_argument("pullback_bundle: vertex map size");
    for (auto& s : L.simplices()) {
        Simplex img;
        for (int v : s) img.push_back(vertex_map[v]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end() || !B.base.contains(img))
            throw std::invalid_argument("pullback_bundle: map is not simplicial");
    }
    std::map<std::pair<int, int>, FiberAutomorphism> transitions;
    for (auto& s : L.simplices())
        if (s.size() == 2)
            transitions[{s[0], s[1]}] = B.transition(vertex_map[s[0]], vertex_map[s[1]]);
    return FlatAlgebraBundle(L, B.fiber, transitions);
}

/// Conjugate the cocycle by a 0-cochain of fiber automorphisms; sections
/// transform by s_i -> psi_i(s_i).
inline FlatAlgebraBundle gauge_transform(const FlatAlgebraBundle& B,
                                         const std::vector<FiberAutomorphism>& psi) {
    if (int(psi.size()) != B.base.vertex_count())
        throw std::invalid_argument("gauge_transform: cochain size");
    std::map<std::pair<int, int>, FiberAutomorphism> transitions;
    for (auto& [i, j] : B.cover.pairs)
        transitions[{i, j}] =
            B.compose_autos(B.compose_autos(psi[i], B.transition(i, j)), B.invert_auto(psi[j]));
    return FlatAlgebraBundle(B.base, B.fiber, transitions);
}

inline SectionFamily gauge_transform_section(const FlatAlgebraBundle& B,
                                             const std::vector<FiberAutomorphism>& psi,
                                             const SectionFamily& s) {
    if (auto* sv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
        std::vector<NcTorusElement> out;
        for (size_t v = 0; v < sv->size(); ++v)
            out.push_back(apply_auto(B.nctorus_fiber()->theta,
                                     std::get<PhaseLatticeAuto>(psi[v]), (*sv)[v]));
        return {std::move(out)};
    }
    std::vector<CVec> out;
    for (size_t v = 0; v < s.fin().size(); ++v)
        out.push_back(apply_linear(std::get<LinearAuto>(psi[v]).matrix, s.fin()[v]));
    return {std::move(out)};
}

} // namespace ncpt
