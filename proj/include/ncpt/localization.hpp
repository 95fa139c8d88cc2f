#pragma once

/**
 * @file localization.hpp
 * @brief Localization semantics: character supports D(a) for commutative
 *        finite-dimensional algebras, and restriction of bundle dynamical
 *        systems to the support of a weight function.
 *
 * The abstract quotient by the ideal generated by 1 - t*a is never formed;
 * its two computable shadows are implemented instead: the spectrum of the
 * localized algebra is D(a) = {chi : chi(a) != 0}, and localizing a section
 * algebra at a base weight function restricts the system to the support
 * subcomplex. Localizing at an invertible element changes nothing; localizing
 * at zero or at a nilpotent yields the zero system.
 */

#include "covering.hpp"

namespace ncpt {

/// D(a): the characters that survive localization at a.
inline std::vector<int> localization_spectrum(const StructureAlgebra& A, const GVec& a,
                                              const std::vector<Character>& chis) {
    if (!A.is_commutative())
        throw std::invalid_argument("localization_spectrum: algebra not commutative");
    std::vector<int> out;
    for (size_t i = 0; i < chis.size(); ++i)
        if (std::abs(chis[i].eval(a)) > tolerance()) out.push_back(int(i));
    return out;
}

struct LocalizedSystem {
    bool zero = false;                   // empty support: the zero algebra
    std::optional<FlatAlgebraBundle> bundle;
    std::map<int, int> relabel;          // base vertices: old -> new
};

/// Restrict base, cocycle and action to the support subcomplex of f.
inline LocalizedSystem localize_bundle_system(const FlatAlgebraBundle& B, const WeightFunction& f) {
    if (int(f.values.size()) != B.base.vertex_count())
        throw std::invalid_argument("localize_bundle_system: weight size mismatch");
    auto [sub, relabel] = support_subcomplex(B.base, f);
    LocalizedSystem out;
    out.relabel = relabel;
    if (sub.vertex_count() == 0) {
        out.zero = true;
        return out;
    }
    std::map<std::pair<int, int>, FiberAutomorphism> transitions;
    for (auto& s : sub.simplices()) {
        if (s.size() != 2) continue;
        int old_i = -1, old_j = -1;
        for (auto& [ov, nv] : relabel) {
            if (nv == s[0]) old_i = ov;
            if (nv == s[1]) old_j = ov;
        }
        transitions[{s[0], s[1]}] = B.transition(old_i, old_j);
    }
    out.bundle.emplace(sub, B.fiber, transitions);
    return out;
}

/// Restriction of a section family along a localization.
inline SectionFamily restrict_section(const SectionFamily& s, const LocalizedSystem& loc) {
    if (auto* nv = std::get_if<std::vector<NcTorusElement>>(&s.values)) {
        std::vector<NcTorusElement> out;
        out.reserve(loc.relabel.size());
        for (auto& [old_v, new_v] : loc.relabel) out.push_back((*nv)[old_v]);
        return {std::move(out)};
    }
    std::vector<CVec> out;
    for (auto& [old_v, new_v] : loc.relabel) out.push_back(s.fin()[old_v]);
    return {std::move(out)};
}

struct QuotientBundle {
    SemisimpleQuotient quotient;
    FlatAlgebraBundle bundle;
};

/// Semisimple-quotient bundle: same base, fiber A_ss, descended transitions.
inline QuotientBundle semisimple_quotient_bundle(const FlatAlgebraBundle& B) {
    const FinDimFiber* fiber = B.findim_fiber();
    if (!fiber) throw std::invalid_argument("semisimple_quotient_bundle: findim fiber required");
    SemisimpleQuotient q = semisimple_quotient(fiber->algebra);
    std::map<std::pair<int, int>, FiberAutomorphism> transitions;
    for (auto& [i, j] : B.cover.pairs) {
        auto desc = descend_automorphism(fiber->algebra,
                                         std::get<LinearAuto>(B.transition(i, j)).matrix);
        transitions[{i, j}] = LinearAuto{desc.on_quotient};
    }
    FlatAlgebraBundle qb(B.base, FinDimFiber{q.algebra}, transitions);
    return {std::move(q), std::move(qb)};
}

/// Push a section through the quotient bundle patchwise.
inline SectionFamily quotient_section(const FlatAlgebraBundle& B, const SemisimpleQuotient& q,
                                      const SectionFamily& s) {
    std::vector<CVec> out;
    for (auto& v : s.fin()) {
        CVec img(q.algebra.dim(), CScalar(0, 0));
        for (int k = 0; k < q.algebra.dim(); ++k)
            for (size_t j = 0; j < v.size(); ++j)
                img[k] += q.projection[k][j].to_complex() * v[j];
        out.push_back(std::move(img));
    }
    return {std::move(out)};
}

} // namespace ncpt
