#pragma once

/**
 * @file chern.hpp
 * @brief Degree-2 integer cocycles classifying principal torus bundles.
 *
 * The classifying datum is a Z^n-valued 2-cochain on oriented triangles.
 * Triviality is a coboundary question over Z, settled componentwise by the
 * Smith normal form of the simplicial coboundary edge -> triangle.
 */

#include <map>

#include "intmatrix.hpp"
#include "simplicial.hpp"

namespace ncpt {

struct ChernPrincipalBundle {
    SimplicialBase base;
    int n = 1;                                      // torus rank
    std::map<Simplex, std::vector<long long>> value; // per oriented triangle [a<b<c]

    ChernPrincipalBundle(SimplicialBase b, int rank,
                         std::map<Simplex, std::vector<long long>> vals)
        : base(std::move(b)), n(rank), value(std::move(vals)) {
        for (auto& [s, v] : value) {
            if (s.size() != 3 || !base.contains(s))
                throw std::invalid_argument("ChernPrincipalBundle: value on a non-triangle");
            if (int(v.size()) != n)
                throw std::invalid_argument("ChernPrincipalBundle: value rank mismatch");
        }
        verify_closed();
    }

    std::vector<long long> at(const Simplex& tri) const {
        auto it = value.find(tri);
        return it == value.end() ? std::vector<long long>(n, 0) : it->second;
    }

private:
    void verify_closed() const {
        // coboundary on each tetrahedron vanishes (vacuous on 2-complexes)
        for (auto& s : base.simplices()) {
            if (s.size() != 4) continue;
            std::vector<long long> acc(n, 0);
            for (size_t omit = 0; omit < 4; ++omit) {
                Simplex f;
                for (size_t t = 0; t < 4; ++t)
                    if (t != omit) f.push_back(s[t]);
                auto v = at(f);
                for (int k = 0; k < n; ++k) acc[k] += (omit % 2 == 0) ? v[k] : -v[k];
            }
            for (long long x : acc)
                if (x != 0) throw std::invalid_argument("ChernPrincipalBundle: cochain not closed");
        }
    }
};

struct ChernVerdict {
    bool trivial = false;
    // trivializing 1-cochain per edge [a<b], when trivial
    std::map<Simplex, std::vector<long long>> potential;
    // representative of the class when nontrivial: free-part coordinates of H^2
    std::vector<long long> class_free;
};

/// Coboundary matrix delta^1: edges -> triangles.
inline IntMatrix coboundary_1(const SimplicialBase& K) {
    auto tris = K.simplices_of_dim(2);
    auto edges = K.simplices_of_dim(1);
    std::map<Simplex, int> eidx;
    for (size_t i = 0; i < edges.size(); ++i) eidx[edges[i]] = int(i);
    IntMatrix d(int(tris.size()), int(edges.size()));
    for (size_t t = 0; t < tris.size(); ++t) {
        const Simplex& s = tris[t];
        // (delta x)[abc] = x[bc] - x[ac] + x[ab]
        d.at(int(t), eidx.at({s[1], s[2]})) += 1;
        d.at(int(t), eidx.at({s[0], s[2]})) -= 1;
        d.at(int(t), eidx.at({s[0], s[1]})) += 1;
    }
    return d;
}

/// Coboundary test over Z^n; returns either a verified trivializing 1-cochain
/// or the nonzero class coordinates in the free part of H^2.
inline ChernVerdict chern_is_trivial(const ChernPrincipalBundle& P) {
    const SimplicialBase& K = P.base;
    auto tris = K.simplices_of_dim(2);
    auto edges = K.simplices_of_dim(1);
    IntMatrix d = coboundary_1(K);
    SmithResult snf = smith_normal_form(d);

    ChernVerdict out;
    out.trivial = true;
    std::vector<std::vector<long long>> potential(edges.size(), std::vector<long long>(P.n, 0));
    for (int comp = 0; comp < P.n; ++comp) {
        std::vector<long long> b(tris.size());
        for (size_t t = 0; t < tris.size(); ++t) b[t] = P.at(tris[t])[comp];
        auto sol = solve_integer(d, b);
        if (sol) {
            for (size_t e = 0; e < edges.size(); ++e) potential[e][comp] = sol->particular[e];
            continue;
        }
        out.trivial = false;
        // obstruction: the unsolvable coordinates of U b against zero rows of the SNF
        std::vector<long long> ub = snf.left.apply(b);
        for (int i = 0; i < int(tris.size()); ++i) {
            long long di = i < int(snf.diag.size()) ? snf.diag[i] : 0;
            if (di == 0 && ub[i] != 0) out.class_free.push_back(ub[i]);
        }
    }
    if (out.trivial) {
        for (size_t e = 0; e < edges.size(); ++e) out.potential[edges[e]] = potential[e];
        // round-trip: the recovered 1-cochain really cobounds the input
        for (size_t t = 0; t < tris.size(); ++t) {
            const Simplex& s = tris[t];
            for (int comp = 0; comp < P.n; ++comp) {
                long long v = out.potential[{s[1], s[2]}][comp] -
                              out.potential[{s[0], s[2]}][comp] +
                              out.potential[{s[0], s[1]}][comp];
                if (v != P.at(s)[comp])
                    throw std::logic_error("chern_is_trivial: potential verification failed");
            }
        }
    } else {
        // canonical sign: first nonzero free coordinate positive
        for (long long x : out.class_free) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : out.class_free) y = -y;
            break;
        }
    }
    return out;
}

/// Restriction of the cochain to a full subcomplex (relabeled vertices).
inline ChernPrincipalBundle restrict_chern(const ChernPrincipalBundle& P,
                                           const SimplicialBase& sub,
                                           const std::map<int, int>& relabel) {
    std::map<int, int> inverse_label;
    for (auto& [old_v, new_v] : relabel) inverse_label[new_v] = old_v;
    std::map<Simplex, std::vector<long long>> vals;
    for (auto& s : sub.simplices()) {
        if (s.size() != 3) continue;
        Simplex orig{inverse_label.at(s[0]), inverse_label.at(s[1]), inverse_label.at(s[2])};
        std::sort(orig.begin(), orig.end());
        auto v = P.at(orig);
        if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; })) vals[s] = v;
    }
    return ChernPrincipalBundle(sub, P.n, std::move(vals));
}

} // namespace ncpt
