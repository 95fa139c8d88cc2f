#pragma once

/**
 * @file simplicial.hpp
 * @brief Finite simplicial complexes: star covers, vertex weight functions,
 *        integral homology through the Smith normal form, nerve cycle bases,
 *        and abelianization of finitely presented groups.
 *
 * Open sets are modeled by full subcomplexes: the support {f != 0} of a
 * vertex weight function stands in for the open set a defining function cuts
 * out. Vertex stars give the canonical cover; pair and triple overlaps of
 * stars are the edges and triangles of the complex.
 */

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "intmatrix.hpp"
#include "rational.hpp"

namespace ncpt {

using Simplex = std::vector<int>; // sorted vertex tuple

class SimplicialBase {
    int vertices_ = 0;
    std::set<Simplex> simplices_; // closed under faces, vertices included

public:
    SimplicialBase() = default;
    SimplicialBase(int vertices, const std::vector<Simplex>& simplices) : vertices_(vertices) {
        for (int v = 0; v < vertices; ++v) simplices_.insert({v});
        for (Simplex s : simplices) {
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::invalid_argument("SimplicialBase: repeated vertex in simplex");
            for (int v : s)
                if (v < 0 || v >= vertices) throw std::invalid_argument("SimplicialBase: vertex out of range");
            insert_with_faces(s);
        }
    }

    int vertex_count() const { return vertices_; }
    const std::set<Simplex>& simplices() const { return simplices_; }
    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }

    int dimension() const {
        int d = -1;
        for (auto& s : simplices_) d = std::max(d, int(s.size()) - 1);
        return d;
    }

    std::vector<Simplex> simplices_of_dim(int k) const {
        std::vector<Simplex> out;
        for (auto& s : simplices_)
            if (int(s.size()) == k + 1) out.push_back(s);
        return out;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (auto& s : simplices_)
            if (s.size() == 2) out.push_back({s[0], s[1]});
        return out;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
        return chi;
    }

    /// Full subcomplex on a vertex subset, with vertices renumbered 0..m-1.
    /// Returns the relabeling old -> new alongside.
    std::pair<SimplicialBase, std::map<int, int>> full_subcomplex(const std::set<int>& keep) const {
        std::map<int, int> relabel;
        for (int v : keep)
            if (v >= 0 && v < vertices_) relabel[v] = int(relabel.size());
        std::vector<Simplex> kept;
        for (auto& s : simplices_) {
            bool in = true;
            for (int v : s) in = in && relabel.count(v);
            if (!in) continue;
            Simplex t;
            for (int v : s) t.push_back(relabel.at(v));
            std::sort(t.begin(), t.end());
            kept.push_back(t);
        }
        return {SimplicialBase(int(relabel.size()), kept), relabel};
    }

private:
    void insert_with_faces(const Simplex& s) {
        // all nonempty subsets of s
        int n = int(s.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            Simplex f;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) f.push_back(s[i]);
            simplices_.insert(f);
        }
    }
};

// ---------------------------------------------------------------------------
// Stock complexes

/// Triangulated circle with n >= 3 vertices.
inline SimplicialBase circle_complex(int n) {
    std::vector<Simplex> s;
    for (int i = 0; i < n; ++i) s.push_back({i, (i + 1) % n});
    return SimplicialBase(n, s);
}

/// Product triangulation of the 2-torus on an n x n vertex grid (n >= 4
/// avoids wrap-around chords, so vertex stars induce disks).
inline SimplicialBase torus_complex(int n = 4) {
    auto id = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    std::vector<Simplex> s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            s.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            s.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return SimplicialBase(n * n, s);
}

inline SimplicialBase triangle_complex() { return SimplicialBase(3, {{0, 1, 2}}); }

// ---------------------------------------------------------------------------
// Star cover

struct StarCover {
    std::vector<std::set<Simplex>> stars;          // open star of each vertex
    std::vector<std::pair<int, int>> pairs;        // overlapping star pairs = edges
    std::vector<std::array<int, 3>> triples;       // triple overlaps = triangles
    bool stars_are_cones = true;                   // each closed star is a cone over its center
};

inline StarCover star_cover(const SimplicialBase& K) {
    if (K.vertex_count() == 0) throw std::invalid_argument("star_cover: empty complex");
    StarCover c;
    c.stars.resize(K.vertex_count());
    for (auto& s : K.simplices())
        for (int v : s) c.stars[v].insert(s);
    for (auto& s : K.simplices()) {
        if (s.size() == 2) c.pairs.push_back({s[0], s[1]});
        if (s.size() == 3) c.triples.push_back({s[0], s[1], s[2]});
    }
    return c;
}

/// Vertices of the closed star of v (v and its neighbors).
inline std::set<int> star_vertices(const SimplicialBase& K, int v) {
    std::set<int> out{v};
    for (auto& s : K.simplices())
        if (s.size() == 2 && (s[0] == v || s[1] == v)) out.insert(s[0] == v ? s[1] : s[0]);
    return out;
}

// ---------------------------------------------------------------------------
// Weight functions (combinatorial defining functions)

struct WeightFunction {
    std::vector<Rat> values; // one per vertex

    static WeightFunction constant(int vertices, const Rat& r) {
        return {std::vector<Rat>(size_t(vertices), r)};
    }
    static WeightFunction indicator(int vertices, const std::set<int>& support) {
        WeightFunction f{std::vector<Rat>(size_t(vertices), Rat(0))};
        for (int v : support) f.values[v] = Rat(1);
        return f;
    }

    std::set<int> support() const {
        std::set<int> s;
        for (size_t v = 0; v < values.size(); ++v)
            if (!values[v].is_zero()) s.insert(int(v));
        return s;
    }
};

inline WeightFunction weight_product(const WeightFunction& f, const WeightFunction& g) {
    WeightFunction h{std::vector<Rat>(f.values.size())};
    for (size_t v = 0; v < f.values.size(); ++v) h.values[v] = f.values[v] * g.values[v];
    return h;
}

/// Full subcomplex on {f != 0}; the localization of the base at f.
inline std::pair<SimplicialBase, std::map<int, int>> support_subcomplex(const SimplicialBase& K,
                                                                        const WeightFunction& f) {
    return K.full_subcomplex(f.support());
}

// ---------------------------------------------------------------------------
// Homology over Z

/// Boundary matrix from k-simplices (columns) to (k-1)-simplices (rows).
inline IntMatrix boundary_matrix(const SimplicialBase& K, int k) {
    auto rows = K.simplices_of_dim(k - 1);
    auto cols = K.simplices_of_dim(k);
    std::map<Simplex, int> row_index;
    for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = int(i);
    IntMatrix d(int(rows.size()), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        const Simplex& s = cols[j];
        for (size_t omit = 0; omit < s.size(); ++omit) {
            Simplex f;
            for (size_t t = 0; t < s.size(); ++t)
                if (t != omit) f.push_back(s[t]);
            d.at(row_index.at(f), int(j)) = (omit % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

struct Homology {
    int betti = 0;
    std::vector<long long> torsion;
};

inline int smith_rank(const SmithResult& s) {
    int r = 0;
    for (long long d : s.diag)
        if (d != 0) ++r;
    return r;
}

inline Homology homology(const SimplicialBase& K, int degree) {
    if (degree < 0) throw std::invalid_argument("homology: negative degree");
    int nk = int(K.simplices_of_dim(degree).size());
    Homology h;
    if (nk == 0) return h;
    int rank_k = 0;
    if (degree > 0) rank_k = smith_rank(smith_normal_form(boundary_matrix(K, degree)));
    SmithResult below = smith_normal_form(boundary_matrix(K, degree + 1));
    int rank_k1 = smith_rank(below);
    h.betti = nk - rank_k - rank_k1;
    for (long long d : below.diag)
        if (d > 1) h.torsion.push_back(d);
    if (degree == 0) {
        // cross-check: H_0 rank equals the number of connected components
        std::vector<int> parent(K.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (auto& [a, b] : K.edges()) parent[find(a)] = find(b);
        std::set<int> roots;
        for (int v = 0; v < K.vertex_count(); ++v) roots.insert(find(v));
        if (int(roots.size()) != h.betti)
            throw std::logic_error("homology: H_0 disagrees with union-find components");
    }
    return h;
}

// ---------------------------------------------------------------------------
// Nerve cycle basis

/// A loop in the nerve 1-skeleton, as a closed vertex sequence v0 ... vk = v0.
using Loop = std::vector<int>;

struct CycleBasis {
    std::vector<Loop> loops;
    std::vector<int> tree_parent; // -1 at roots; spanning forest, BFS from lowest index
};

inline CycleBasis cycle_basis(const SimplicialBase& K) {
    int V = K.vertex_count();
    std::vector<std::vector<int>> adj(V);
    for (auto& [a, b] : K.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& n : adj) std::sort(n.begin(), n.end());

    CycleBasis out;
    out.tree_parent.assign(V, -2); // -2 unvisited
    std::vector<int> depth(V, 0);
    std::set<std::pair<int, int>> tree_edges;
    for (int root = 0; root < V; ++root) {
        if (out.tree_parent[root] != -2) continue;
        out.tree_parent[root] = -1;
        std::vector<int> queue{root};
        for (size_t q = 0; q < queue.size(); ++q) {
            int u = queue[q];
            for (int w : adj[u]) {
                if (out.tree_parent[w] != -2) continue;
                out.tree_parent[w] = u;
                depth[w] = depth[u] + 1;
                tree_edges.insert({std::min(u, w), std::max(u, w)});
                queue.push_back(w);
            }
        }
    }
    auto path_to_root = [&](int v) {
        std::vector<int> p{v};
        while (out.tree_parent[v] >= 0) p.push_back(v = out.tree_parent[v]);
        return p;
    };
    for (auto& [a, b] : K.edges()) {
        if (tree_edges.count({std::min(a, b), std::max(a, b)})) continue;
        // fundamental cycle: tree path a -> b, then edge b -> a
        std::vector<int> pa = path_to_root(a), pb = path_to_root(b);
        std::set<int> in_pa(pa.begin(), pa.end());
        int meet = -1;
        for (int v : pb)
            if (in_pa.count(v)) { meet = v; break; }
        Loop loop;
        for (int v : pa) {
            loop.push_back(v);
            if (v == meet) break;
        }
        std::vector<int> tail;
        for (int v : pb) {
            if (v == meet) break;
            tail.push_back(v);
        }
        std::reverse(tail.begin(), tail.end());
        for (int v : tail) loop.push_back(v);
        loop.push_back(a);
        std::reverse(loop.begin(), loop.end()); // starts and ends at a
        out.loops.push_back(std::move(loop));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finitely presented groups

/// Relators are words in letters +-1..+-g (sign for inverse generators).
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;
};

struct AbelianInvariants {
    int rank = 0;
    std::vector<long long> torsion;
};

/// Smith normal form of the relator exponent-sum matrix.
inline AbelianInvariants abelianization(const GroupPresentation& G) {
    for (auto& w : G.relators)
        for (int letter : w)
            if (letter == 0 || std::abs(letter) > G.generators)
                throw std::invalid_argument("abelianization: letter out of range");
    IntMatrix m(int(G.relators.size()), G.generators);
    for (size_t r = 0; r < G.relators.size(); ++r)
        for (int letter : G.relators[r]) m.at(int(r), std::abs(letter) - 1) += letter > 0 ? 1 : -1;
    AbelianInvariants out;
    if (G.relators.empty()) {
        out.rank = G.generators;
        return out;
    }
    SmithResult s = smith_normal_form(m);
    out.rank = G.generators - smith_rank(s);
    for (long long d : s.diag)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

} // namespace ncpt
