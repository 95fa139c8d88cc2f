#pragma once

/**
 * @file gallery.hpp
 * @brief Prebuilt systems: the bare quantum torus, quantum-torus bundles over
 *        the triangulated 2-torus (flat or with a Chern class), pullbacks
 *        along a double cover of the circle, equivariant associated bundles,
 *        and the Heisenberg bundle.
 */

#include "verdicts.hpp"

namespace ncpt {

/// Bare A^n_theta; n = 2 unless a full matrix is supplied.
inline NcpSystem gallery_nctorus(const Rat& theta12, int n = 2) {
    if (n != 2) throw std::invalid_argument("gallery nctorus: use the 2-torus form");
    return BareTorusSystem{ThetaMatrix::two_torus(theta12)};
}

/// Quantum-torus bundle over the triangulated T^2: trivial cocycle when
/// chern_class = 0, otherwise the Chern-model bundle of that class.
inline NcpSystem gallery_qt_bundle(const Rat& theta12, long long chern_class = 0) {
    SimplicialBase T = torus_complex(4);
    if (chern_class == 0)
        return FlatAlgebraBundle(T, NcTorusFiber(ThetaMatrix::two_torus(theta12)), {});
    auto tris = T.simplices_of_dim(2);
    std::map<Simplex, std::vector<long long>> vals;
    vals[tris.front()] = {chern_class, 0};
    return ChernSystem{ChernPrincipalBundle(T, 2, std::move(vals)),
                       ThetaMatrix::two_torus(theta12)};
}

/// Flat circle bundle with torus holonomy, associated to a principal cocycle.
inline NcpSystem gallery_equivariant(const Rat& theta12, const TorusPoint& holonomy,
                                     int circle_vertices = 6) {
    std::map<std::pair<int, int>, TorusPoint> pr;
    pr[{0, circle_vertices - 1}] = holonomy;
    return associated_bundle(circle_complex(circle_vertices), pr,
                             NcTorusFiber(ThetaMatrix::two_torus(theta12)));
}

/// Pullback of the holonomy bundle along the degree-2 cover of the circle.
inline NcpSystem gallery_pullback(const Rat& theta12, const TorusPoint& holonomy) {
    NcpSystem inner = gallery_equivariant(theta12, holonomy, 6);
    const FlatAlgebraBundle& B = std::get<FlatAlgebraBundle>(inner);
    std::vector<int> covermap(12);
    for (int v = 0; v < 12; ++v) covermap[v] = v % 6;
    return pullback_bundle(B, circle_complex(12), covermap);
}

/// The Heisenberg bundle: commutative 2-torus fiber over the circle, seam
/// z^(m1,m2) -> z^(m1+m2,m2), circle action of weight m2.
inline NcpSystem gallery_heisenberg(int circle_vertices = 6) {
    NcTorusFiber fiber(ThetaMatrix(2), IntMatrix({{0, 1}}));
    std::map<std::pair<int, int>, FiberAutomorphism> tr;
    tr[{0, circle_vertices - 1}] =
        PhaseLatticeAuto{IntMatrix({{1, 1}, {0, 1}}), {PhaseQ(), PhaseQ()}};
    return FlatAlgebraBundle(circle_complex(circle_vertices), fiber, tr);
}

inline NcpSystem example_gallery(const std::string& name, const Rat& theta12 = Rat(1, 3),
                                 long long chern_class = 1) {
    if (name == "nctorus") return gallery_nctorus(theta12);
    if (name == "qt-bundle") return gallery_qt_bundle(theta12, 0);
    if (name == "qt-chern") return gallery_qt_bundle(theta12, chern_class);
    if (name == "equivariant")
        return gallery_equivariant(theta12, TorusPoint{PhaseQ(1, 3), PhaseQ()});
    if (name == "pullback") return gallery_pullback(theta12, TorusPoint{PhaseQ(1, 3), PhaseQ()});
    if (name == "heisenberg") return gallery_heisenberg();
    throw std::invalid_argument("example_gallery: unknown name " + name);
}

} // namespace ncpt
