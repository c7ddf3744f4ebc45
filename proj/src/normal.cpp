#include "neuwirth/normal.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace nw {

namespace {

// Union-find that also tracks the parity of each element relative to its root.
struct ParitySets {
    std::vector<int> parent, parity;
    explicit ParitySets(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [root, p] = find(parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        return {root, parity[x]};
    }
    int root(int x) { return find(x).first; }
    // Returns false if the relation contradicts an earlier one.
    bool unite(int a, int b, int rel = 0) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ rel;
        return true;
    }
};

using Bits = boost::dynamic_bitset<>;

// Row-echelon basis over Z/2, keyed by leading bit.
class Z2Span {
public:
    explicit Z2Span(std::size_t n) : n_(n) {}
    Bits reduce(Bits v) const {
        for (const auto& [pivot, row] : rows_)
            if (v.test(pivot)) v ^= row;
        return v;
    }
    bool insert(const Bits& v) {
        Bits r = reduce(v);
        if (r.none()) return false;
        std::size_t pivot = r.find_first();
        for (auto& [p, row] : rows_)
            if (row.test(pivot)) row ^= r;
        rows_.emplace(pivot, r);
        return true;
    }
    bool contains(const Bits& v) const { return reduce(v).none(); }
    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t n_;
    std::map<std::size_t, Bits> rows_;
};

int perm_sign(const Perm& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
    return inv % 2 == 0 ? 1 : -1;
}

Perm inverse(const Perm& p) {
    Perm q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

bool is_perm(const Perm& p) {
    std::array<bool, 4> seen{};
    for (int x : p) {
        if (x < 0 || x > 3 || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

Bits face_boundary(const Triangulation& t, int f) {
    Bits b(t.edge_count());
    for (int e : t.face_edges(f)) b.flip(e);
    return b;
}

Bits edge_boundary(const Triangulation& t, int e) {
    Bits b(t.vertex_count());
    for (int v : t.edge_ends(e)) b.flip(v);
    return b;
}

Z2Span boundaries(const Triangulation& t) {
    Z2Span span(t.edge_count());
    for (int f = 0; f < t.face_count(); ++f) span.insert(face_boundary(t, f));
    return span;
}

// Fundamental cycles of the graph on the given edges.
std::vector<Bits> cycle_basis(const Triangulation& t, const std::vector<int>& edges) {
    ParitySets ds(t.vertex_count());
    std::vector<int> tree;
    std::vector<int> rest;
    for (int e : edges) {
        auto [a, b] = t.edge_ends(e);
        if (ds.root(a) != ds.root(b)) {
            ds.unite(a, b);
            tree.push_back(e);
        } else {
            rest.push_back(e);
        }
    }
    std::vector<Bits> out;
    for (int e : rest) {
        Bits c(t.edge_count());
        c.set(e);
        auto [a, b] = t.edge_ends(e);
        // Path in the forest via breadth-first search.
        std::vector<std::vector<std::pair<int, int>>> adj(t.vertex_count());
        for (int f : tree) {
            auto [u, v] = t.edge_ends(f);
            adj[u].push_back({v, f});
            adj[v].push_back({u, f});
        }
        std::vector<int> via(t.vertex_count(), -2);
        via[a] = -1;
        std::queue<int> q;
        q.push(a);
        std::vector<int> from(t.vertex_count(), -1);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (auto [y, f] : adj[x])
                if (via[y] == -2) {
                    via[y] = f;
                    from[y] = x;
                    q.push(y);
                }
        }
        for (int x = b; x != a; x = from[x]) c.flip(via[x]);
        out.push_back(c);
    }
    return out;
}

// Unique tree path between the ends of e, closed up by e.
class TreePaths {
public:
    TreePaths(const Triangulation& t, const std::vector<int>& tree) : t_(t), adj_(t.vertex_count()) {
        for (int e : tree) {
            auto [u, v] = t.edge_ends(e);
            adj_[u].push_back({v, e});
            adj_[v].push_back({u, e});
        }
        depth_.assign(t.vertex_count(), -1);
        up_.assign(t.vertex_count(), -1);
        upedge_.assign(t.vertex_count(), -1);
        for (int r = 0; r < t.vertex_count(); ++r) {
            if (depth_[r] >= 0) continue;
            depth_[r] = 0;
            std::queue<int> q;
            q.push(r);
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (auto [y, e] : adj_[x])
                    if (depth_[y] < 0) {
                        depth_[y] = depth_[x] + 1;
                        up_[y] = x;
                        upedge_[y] = e;
                        q.push(y);
                    }
            }
        }
    }
    Bits cycle(int e) const {
        Bits c(t_.edge_count());
        c.flip(e);
        auto [a, b] = t_.edge_ends(e);
        while (a != b) {
            if (depth_[a] < depth_[b]) std::swap(a, b);
            c.flip(upedge_[a]);
            a = up_[a];
        }
        return c;
    }

private:
    const Triangulation& t_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<int> depth_, up_, upedge_;
};

std::vector<int> x_edges_on_boundary(const Triangulation& t, const Subcomplex& x) {
    std::vector<int> out;
    for (int e : x.edges)
        if (t.boundary_edge(e)) out.push_back(e);
    return out;
}

}  // namespace

int local_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVertices[e][0] == a && kEdgeVertices[e][1] == b) return e;
    throw std::invalid_argument("not a tetrahedron edge");
}

Triangulation::Triangulation(std::vector<std::array<Gluing, 4>> gluings) : glue_(std::move(gluings)) {
    const int n = size();
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (g.boundary()) continue;
            if (g.tet >= n || g.face < 0 || g.face > 3 || !is_perm(g.perm) || g.perm[f] != g.face)
                throw std::invalid_argument("bad gluing at tet " + std::to_string(t) + " face " + std::to_string(f));
            if (g.tet == t && g.face == f) throw std::invalid_argument("face glued to itself");
            const Gluing& back = glue_[g.tet][g.face];
            if (back.tet != t || back.face != f || back.perm != inverse(g.perm))
                throw std::invalid_argument("gluing is not an involution at tet " + std::to_string(t) + " face " +
                                            std::to_string(f));
        }

    ParitySets vs(4 * n), es(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (g.boundary()) continue;
            for (int v = 0; v < 4; ++v)
                if (v != f) vs.unite(4 * t + v, 4 * g.tet + g.perm[v]);
            for (int e = 0; e < 6; ++e) {
                auto [a, b] = kEdgeVertices[e];
                if (a == f || b == f) continue;
                es.unite(6 * t + e, 6 * g.tet + local_edge(g.perm[a], g.perm[b]));
            }
        }
    std::map<int, int> vid, eid;
    vertex_.resize(n);
    edge_.resize(n);
    face_.resize(n);
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) {
            auto [it, fresh] = vid.emplace(vs.root(4 * t + v), static_cast<int>(vid.size()));
            vertex_[t][v] = it->second;
        }
    }
    nv_ = static_cast<int>(vid.size());
    for (int t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e) {
            auto [it, fresh] = eid.emplace(es.root(6 * t + e), static_cast<int>(eid.size()));
            edge_[t][e] = it->second;
            if (fresh) edge_ends_.push_back({vertex_[t][kEdgeVertices[e][0]], vertex_[t][kEdgeVertices[e][1]]});
        }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (!g.boundary() && (g.tet < t || (g.tet == t && g.face < f))) {
                face_[t][f] = face_[g.tet][g.face];
                continue;
            }
            face_[t][f] = static_cast<int>(face_edges_.size());
            std::array<int, 3> es3{}, vs3{};
            int k = 0;
            for (int e = 0; e < 6; ++e)
                if (kEdgeVertices[e][0] != f && kEdgeVertices[e][1] != f) es3[k++] = edge_[t][e];
            k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) vs3[k++] = vertex_[t][v];
            face_edges_.push_back(es3);
            face_vertices_.push_back(vs3);
            face_boundary_.push_back(g.boundary());
        }
    edge_boundary_.assign(edge_count(), false);
    vertex_boundary_.assign(nv_, false);
    std::vector<int> boundary_incidence(edge_count(), 0);
    for (int f = 0; f < face_count(); ++f) {
        if (!face_boundary_[f]) continue;
        for (int e : face_edges_[f]) {
            edge_boundary_[e] = true;
            ++boundary_incidence[e];
        }
        for (int v : face_vertices_[f]) vertex_boundary_[v] = true;
    }
    for (int e = 0; e < edge_count(); ++e)
        if (edge_boundary_[e] && boundary_incidence[e] != 2)
            throw std::invalid_argument("boundary faces do not form a closed surface at edge " + std::to_string(e));
}

Triangulation Triangulation::from_simplices(const std::vector<std::array<int, 4>>& tets) {
    const int n = static_cast<int>(tets.size());
    std::vector<std::array<Gluing, 4>> g(n);
    std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> faces;
    for (int t = 0; t < n; ++t) {
        std::set<int> distinct(tets[t].begin(), tets[t].end());
        if (distinct.size() != 4) throw std::invalid_argument("tetrahedron with repeated vertex labels");
        for (int f = 0; f < 4; ++f) {
            std::array<int, 3> key{};
            int k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) key[k++] = tets[t][v];
            std::sort(key.begin(), key.end());
            faces[key].push_back({t, f});
        }
    }
    for (const auto& [key, sides] : faces) {
        if (sides.size() > 2) throw std::invalid_argument("face shared by more than two tetrahedra");
        if (sides.size() < 2) continue;
        auto [t, f] = sides[0];
        auto [u, h] = sides[1];
        Perm p{};
        for (int v = 0; v < 4; ++v) {
            if (v == f) {
                p[v] = h;
                continue;
            }
            p[v] = static_cast<int>(std::find(tets[u].begin(), tets[u].end(), tets[t][v]) - tets[u].begin());
        }
        g[t][f] = Gluing{u, h, p};
        g[u][h] = Gluing{t, f, inverse(p)};
    }
    return Triangulation(std::move(g));
}

bool Triangulation::connected() const {
    if (size() == 0) return false;
    ParitySets ds(size());
    for (int t = 0; t < size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!glue_[t][f].boundary()) ds.unite(t, glue_[t][f].tet);
    for (int t = 1; t < size(); ++t)
        if (ds.root(t) != ds.root(0)) return false;
    return true;
}

bool Triangulation::orientable() const {
    // Tetrahedra t, t' glued by p are coherently oriented iff p is odd when both keep their labelling.
    ParitySets ds(size());
    for (int t = 0; t < size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (g.boundary()) continue;
            if (!ds.unite(t, g.tet, perm_sign(g.perm) > 0 ? 1 : 0)) return false;
        }
    return true;
}

TriangulationFile parse_triangulation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);
        if (!words.empty()) lines.push_back(std::move(words));
    }
    auto number = [](const std::string& w) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size()) throw std::invalid_argument("expected a number, got '" + w + "'");
        return v;
    };
    if (lines.empty() || lines[0].size() != 1) throw std::invalid_argument("missing tetrahedron count");
    const int n = number(lines[0][0]);
    if (n <= 0) throw std::invalid_argument("tetrahedron count must be positive");
    if (static_cast<int>(lines.size()) < 1 + 4 * n) throw std::invalid_argument("truncated gluing table");
    std::vector<std::array<Gluing, 4>> g(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& w = lines[1 + 4 * t + f];
            std::string where = "tet " + std::to_string(t) + " face " + std::to_string(f);
            if (w.size() < 2 || w[0] != "face" || number(w[1]) != f) throw std::invalid_argument("expected " + where);
            if (w.size() == 3 && w[2] == "boundary") continue;
            if (w.size() != 9 || w[2] != "->" || w[3] != "tet" || w[5] != "face" || w[7] != "perm" || w[8].size() != 4)
                throw std::invalid_argument("malformed gluing line for " + where);
            Perm p{};
            for (int i = 0; i < 4; ++i) p[i] = w[8][i] - '0';
            int u = number(w[4]);
            if (u < 0 || u >= n) throw std::invalid_argument("gluing to a missing tetrahedron at " + where);
            g[t][f] = Gluing{u, number(w[6]), p};
        }
    TriangulationFile out{Triangulation(std::move(g)), std::nullopt};
    std::size_t i = 1 + 4 * n;
    if (i == lines.size()) return out;
    if (lines[i] != std::vector<std::string>{"subcomplex"}) throw std::invalid_argument("unexpected trailing line");
    const Triangulation& tri = out.triangulation;
    Subcomplex x;
    auto tet_of = [&](const std::string& w) {
        int t = number(w);
        if (t < 0 || t >= n) throw std::invalid_argument("subcomplex names a missing tetrahedron");
        return t;
    };
    auto vertex_of = [&](const std::string& w) {
        int v = number(w);
        if (v < 0 || v > 3) throw std::invalid_argument("local vertex out of range");
        return v;
    };
    for (++i; i < lines.size(); ++i) {
        const auto& w = lines[i];
        if (w[0] == "vertex" && w.size() == 3) x.vertices.insert(tri.vertex_class(tet_of(w[1]), vertex_of(w[2])));
        else if (w[0] == "edge" && w.size() == 4) {
            int a = vertex_of(w[2]), b = vertex_of(w[3]);
            if (a == b) throw std::invalid_argument("degenerate edge in subcomplex");
            x.edges.insert(tri.edge_class(tet_of(w[1]), local_edge(a, b)));
        } else if (w[0] == "face" && w.size() == 3) x.faces.insert(tri.face_class(tet_of(w[1]), vertex_of(w[2])));
        else if (w[0] == "tet" && w.size() == 2) x.tets.insert(tet_of(w[1]));
        else throw std::invalid_argument("malformed subcomplex line");
    }
    check_subcomplex(tri, x);
    out.subcomplex = x;
    return out;
}

std::string serialize_triangulation(const Triangulation& t, const Subcomplex* x) {
    std::ostringstream out;
    out << t.size() << "\n";
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(i, f);
            out << "face " << f;
            if (g.boundary()) out << " boundary\n";
            else {
                out << " -> tet " << g.tet << " face " << g.face << " perm ";
                for (int v : g.perm) out << v;
                out << "\n";
            }
        }
    if (!x) return out.str();
    out << "subcomplex\n";
    // First representative of each class.
    std::map<int, std::string> vs, es, fs;
    for (int i = 0; i < t.size(); ++i) {
        for (int v = 0; v < 4; ++v)
            vs.emplace(t.vertex_class(i, v), std::to_string(i) + " " + std::to_string(v));
        for (int e = 0; e < 6; ++e)
            es.emplace(t.edge_class(i, e), std::to_string(i) + " " + std::to_string(kEdgeVertices[e][0]) + " " +
                                               std::to_string(kEdgeVertices[e][1]));
        for (int f = 0; f < 4; ++f) fs.emplace(t.face_class(i, f), std::to_string(i) + " " + std::to_string(f));
    }
    for (int v : x->vertices) out << "vertex " << vs.at(v) << "\n";
    for (int e : x->edges) out << "edge " << es.at(e) << "\n";
    for (int f : x->faces) out << "face " << fs.at(f) << "\n";
    for (int i : x->tets) out << "tet " << i << "\n";
    return out.str();
}

void check_subcomplex(const Triangulation& t, const Subcomplex& x) {
    auto in_range = [](const std::set<int>& s, int n) { return s.empty() || (*s.begin() >= 0 && *s.rbegin() < n); };
    if (!in_range(x.vertices, t.vertex_count()) || !in_range(x.edges, t.edge_count()) ||
        !in_range(x.faces, t.face_count()) || !in_range(x.tets, t.size()))
        throw std::invalid_argument("subcomplex cell out of range");
    for (int e : x.edges)
        for (int v : t.edge_ends(e))
            if (!x.vertices.count(v)) throw std::invalid_argument("subcomplex edge without its vertices");
    for (int f : x.faces)
        for (int e : t.face_edges(f))
            if (!x.edges.count(e)) throw std::invalid_argument("subcomplex face without its edges");
    for (int i : x.tets)
        for (int f = 0; f < 4; ++f)
            if (!x.faces.count(t.face_class(i, f))) throw std::invalid_argument("subcomplex tetrahedron without its faces");
}

Subcomplex full_subcomplex(const Triangulation& t, const std::vector<std::array<int, 4>>& labels,
                           const std::function<bool(int)>& keep) {
    Subcomplex x;
    for (int i = 0; i < t.size(); ++i) {
        std::array<bool, 4> k{};
        for (int v = 0; v < 4; ++v) k[v] = keep(labels[i][v]);
        for (int v = 0; v < 4; ++v)
            if (k[v]) x.vertices.insert(t.vertex_class(i, v));
        for (int e = 0; e < 6; ++e)
            if (k[kEdgeVertices[e][0]] && k[kEdgeVertices[e][1]]) x.edges.insert(t.edge_class(i, e));
        for (int f = 0; f < 4; ++f) {
            bool all = true;
            for (int v = 0; v < 4; ++v)
                if (v != f) all = all && k[v];
            if (all) x.faces.insert(t.face_class(i, f));
        }
        if (k[0] && k[1] && k[2] && k[3]) x.tets.insert(i);
    }
    return x;
}

namespace {

// Staircase split of the prism over base triangle a < b < c between two levels.
void add_prism(std::vector<std::array<int, 4>>& out, std::array<int, 3> base, int lo, int hi) {
    std::sort(base.begin(), base.end());
    auto [a, b, c] = base;
    out.push_back({a + lo, b + lo, c + lo, c + hi});
    out.push_back({a + lo, b + lo, b + hi, c + hi});
    out.push_back({a + lo, a + hi, b + hi, c + hi});
}

}  // namespace

SyntheticTriangulation solid_torus(int sides, int layers) {
    if (sides < 3 || layers < 3) throw std::invalid_argument("solid torus needs sides >= 3 and layers >= 3");
    const int per = sides + 1;
    std::vector<std::array<int, 4>> tets;
    for (int l = 0; l < layers; ++l)
        for (int i = 0; i < sides; ++i)
            add_prism(tets, {0, 1 + i, 1 + (i + 1) % sides}, l * per, ((l + 1) % layers) * per);
    return {Triangulation::from_simplices(tets), tets};
}

SyntheticTriangulation thickened_torus() {
    auto id = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
    std::vector<std::array<int, 4>> tets;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            add_prism(tets, {id(i, j), id(i + 1, j), id(i + 1, j + 1)}, 0, 9);
            add_prism(tets, {id(i, j), id(i, j + 1), id(i + 1, j + 1)}, 0, 9);
        }
    return {Triangulation::from_simplices(tets), tets};
}

std::vector<std::vector<int>> boundary_trace(const Triangulation& t, const Subcomplex& x) {
    check_subcomplex(t, x);
    for (int f : x.faces)
        if (t.boundary_face(f)) throw std::invalid_argument("X contains a boundary face");
    std::vector<int> edges = x_edges_on_boundary(t, x);
    std::map<int, std::vector<int>> at;
    for (int e : edges) {
        at[t.edge_ends(e)[0]].push_back(e);
        at[t.edge_ends(e)[1]].push_back(e);
    }
    for (int v : x.vertices)
        if (t.boundary_vertex(v) && at[v].size() != 2)
            throw std::invalid_argument("X meets the boundary in something other than disjoint simple closed curves");
    std::vector<std::vector<int>> loops;
    std::set<int> used;
    for (int start : edges) {
        if (used.count(start)) continue;
        std::vector<int> loop{start};
        used.insert(start);
        int v = t.edge_ends(start)[1], e = start;
        while (true) {
            const auto& pair = at[v];
            int next = pair[0] == e ? pair[1] : pair[0];
            if (next == start) break;
            if (used.count(next)) throw std::invalid_argument("X boundary trace is not a union of cycles");
            used.insert(next);
            loop.push_back(next);
            v = t.edge_ends(next)[0] == v ? t.edge_ends(next)[1] : t.edge_ends(next)[0];
            e = next;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

int h1_rank(const Triangulation& t) {
    Z2Span d1(t.vertex_count());
    for (int e = 0; e < t.edge_count(); ++e) d1.insert(edge_boundary(t, e));
    int cycles = t.edge_count() - static_cast<int>(d1.rank());
    return cycles - static_cast<int>(boundaries(t).rank());
}

bool z2_image_is_zero(const Triangulation& t, const Subcomplex& x) {
    check_subcomplex(t, x);
    Z2Span b = boundaries(t);
    std::vector<int> edges(x.edges.begin(), x.edges.end());
    for (const Bits& c : cycle_basis(t, edges))
        if (!b.contains(c)) return false;
    return true;
}

std::vector<int> build_tree(const Triangulation& t, const Subcomplex& x) {
    if (!t.connected()) throw std::invalid_argument("triangulation is disconnected");
    auto loops = boundary_trace(t, x);
    if (loops.empty()) throw std::invalid_argument("X does not meet the boundary");
    ParitySets ds(t.vertex_count());
    std::set<int> tree;
    auto add = [&](int e) {
        auto [a, b] = t.edge_ends(e);
        if (ds.root(a) == ds.root(b)) return false;
        ds.unite(a, b);
        tree.insert(e);
        return true;
    };
    // All but the highest-numbered edge of every loop of C.
    for (const auto& loop : loops) {
        int skip = *std::max_element(loop.begin(), loop.end());
        for (int e : loop)
            if (e != skip) add(e);
    }
    // Maximal tree of X.
    for (int e : x.edges) add(e);
    // Grow into the boundary from the loops, never joining two boundary trees inside the boundary.
    std::vector<bool> reached(t.vertex_count(), false);
    for (const auto& loop : loops)
        for (int e : loop)
            for (int v : t.edge_ends(e)) reached[v] = true;
    std::vector<int> boundary_edges;
    for (int e = 0; e < t.edge_count(); ++e)
        if (t.boundary_edge(e) && !x.edges.count(e)) boundary_edges.push_back(e);
    for (bool grew = true; grew;) {
        grew = false;
        for (int e : boundary_edges) {
            auto [a, b] = t.edge_ends(e);
            if (reached[a] == reached[b]) continue;
            if (add(e)) {
                reached[a] = reached[b] = true;
                grew = true;
            }
        }
        if (!grew)
            // A boundary component without loops of C starts its own tree.
            for (int e : boundary_edges) {
                auto [a, b] = t.edge_ends(e);
                if (!reached[a] && !reached[b]) {
                    reached[a] = true;
                    grew = true;
                    break;
                }
            }
    }
    // Maximal tree of X and the boundary, then of everything.
    for (int e : boundary_edges) add(e);
    for (int e = 0; e < t.edge_count(); ++e) add(e);
    return {tree.begin(), tree.end()};
}

EdgeLabeling label_edges(const Triangulation& t, const Subcomplex& x, const std::vector<int>& tree) {
    const int rank = h1_rank(t);
    if (rank > 1)
        throw std::invalid_argument("H1(T; Z/2) has rank " + std::to_string(rank) + ", the construction needs rank 1");
    if (!z2_image_is_zero(t, x)) throw std::invalid_argument("H1(X; Z/2) -> H1(T; Z/2) is not zero");
    if (static_cast<int>(tree.size()) != t.vertex_count() - 1)
        throw std::invalid_argument("tree does not span the vertices");
    Z2Span b = boundaries(t);
    if (rank == 1) {
        std::vector<int> edges;
        for (int e = 0; e < t.edge_count(); ++e)
            if (t.boundary_edge(e)) edges.push_back(e);
        bool onto = false;
        for (const Bits& c : cycle_basis(t, edges)) onto = onto || !b.contains(c);
        if (!onto) throw std::invalid_argument("H1(boundary; Z/2) -> H1(T; Z/2) is not onto");
    }
    EdgeLabeling out;
    out.tree = tree;
    out.label.assign(t.edge_count(), 0);
    std::set<int> in_tree(tree.begin(), tree.end());
    TreePaths paths(t, tree);
    for (int e = 0; e < t.edge_count(); ++e)
        if (!in_tree.count(e)) out.label[e] = b.contains(paths.cycle(e)) ? 0 : 1;
    for (int e : x.edges)
        if (out.label[e] != 0) throw std::logic_error("edge of X labelled 1");
    for (int f = 0; f < t.face_count(); ++f) {
        int sum = 0;
        for (int e : t.face_edges(f)) sum += out.label[e];
        if (sum % 2 != 0) throw std::logic_error("face parity violated");
    }
    return out;
}

std::string to_string(const Piece& p) {
    switch (p.kind) {
        case Piece::Empty: return "empty";
        case Piece::Triangle: return "triangle " + std::to_string(p.vertex);
        case Piece::Quad: {
            auto [a, b] = kEdgeVertices[p.split];
            auto [c, d] = kEdgeVertices[5 - p.split];
            return "quad " + std::to_string(a) + std::to_string(b) + "|" + std::to_string(c) + std::to_string(d);
        }
    }
    return "?";
}

std::optional<Piece> classify_tetrahedron(const std::array<int, 6>& labels) {
    int ones = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) return std::nullopt;
        ones += l;
    }
    if (ones == 0) return Piece{};
    if (ones == 3)
        for (int v = 0; v < 4; ++v) {
            bool all = true;
            for (int e = 0; e < 6; ++e)
                if ((kEdgeVertices[e][0] == v || kEdgeVertices[e][1] == v) != (labels[e] == 1)) all = false;
            if (all) return Piece{Piece::Triangle, v, -1};
        }
    if (ones == 4)
        for (int e = 0; e < 3; ++e)
            if (labels[e] == 0 && labels[5 - e] == 0) return Piece{Piece::Quad, -1, e};
    return std::nullopt;
}

namespace {

// Corners of a piece in cyclic order, as local edges.
std::vector<int> polygon(const Piece& p) {
    if (p.kind == Piece::Triangle) {
        std::vector<int> out;
        for (int w = 0; w < 4; ++w)
            if (w != p.vertex) out.push_back(local_edge(p.vertex, w));
        return out;
    }
    if (p.kind == Piece::Quad) {
        auto [a, b] = kEdgeVertices[p.split];
        auto [c, d] = kEdgeVertices[5 - p.split];
        return {local_edge(a, c), local_edge(a, d), local_edge(b, d), local_edge(b, c)};
    }
    return {};
}

// Corners of the piece lying in face f.
std::vector<int> arc(const Piece& p, int f) {
    std::vector<int> out;
    for (int e : polygon(p))
        if (kEdgeVertices[e][0] != f && kEdgeVertices[e][1] != f) out.push_back(e);
    return out;
}

int direction(const std::vector<int>& poly, int x, int y) {
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i)
        if (poly[i] == x) return poly[(i + 1) % n] == y ? 1 : -1;
    throw std::logic_error("corner not on polygon");
}

int mapped_edge(const Perm& p, int e) { return local_edge(p[kEdgeVertices[e][0]], p[kEdgeVertices[e][1]]); }

}  // namespace

NormalSurface assemble_surface(const Triangulation& t, const EdgeLabeling& labeling) {
    NormalSurface s;
    s.label = labeling.label;
    s.tree = labeling.tree;
    for (int i = 0; i < t.size(); ++i) {
        std::array<int, 6> l{};
        for (int e = 0; e < 6; ++e) l[e] = labeling.label.at(t.edge_class(i, e));
        auto p = classify_tetrahedron(l);
        if (!p) throw std::logic_error("tetrahedron " + std::to_string(i) + " matches no normal pattern");
        s.pieces.push_back(*p);
    }
    ParitySets ds(t.size());
    std::vector<bool> clash(t.size(), false);
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(i, f);
            if (g.boundary() || s.pieces[i].kind == Piece::Empty) continue;
            auto mine = arc(s.pieces[i], f);
            if (mine.empty()) continue;
            auto theirs = arc(s.pieces[g.tet], g.face);
            if (theirs.size() != 2) throw std::logic_error("normal arcs do not match across a face");
            int x = mine[0], y = mine[1];
            int dx = direction(polygon(s.pieces[i]), x, y);
            int dy = direction(polygon(s.pieces[g.tet]), mapped_edge(g.perm, x), mapped_edge(g.perm, y));
            if (!ds.unite(i, g.tet, dx == dy ? 1 : 0)) clash[i] = true;
        }
    std::map<int, int> comp;
    s.component.assign(t.size(), -1);
    for (int i = 0; i < t.size(); ++i) {
        if (s.pieces[i].kind == Piece::Empty) continue;
        auto [it, fresh] = comp.emplace(ds.root(i), static_cast<int>(comp.size()));
        s.component[i] = it->second;
    }
    s.components = static_cast<int>(comp.size());
    s.orientable.assign(s.components, true);
    for (int i = 0; i < t.size(); ++i)
        if (clash[i]) s.orientable[s.component[i]] = false;

    // Boundary curves: arcs in boundary faces joined at boundary edges.
    std::map<int, std::vector<int>> arcs_at;
    ParitySets curve(t.edge_count());
    std::map<int, int> component_of_edge;
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            if (!t.gluing(i, f).boundary()) continue;
            auto a = arc(s.pieces[i], f);
            if (a.empty()) continue;
            int x = t.edge_class(i, a[0]), y = t.edge_class(i, a[1]);
            curve.unite(x, y);
            component_of_edge[x] = component_of_edge[y] = s.component[i];
        }
    std::map<int, int> curve_id;
    for (const auto& [e, c] : component_of_edge) {
        auto [it, fresh] = curve_id.emplace(curve.root(e), static_cast<int>(curve_id.size()));
        if (fresh) {
            s.boundary_curves.emplace_back();
            s.curve_component.push_back(c);
        }
        s.boundary_curves[it->second].push_back(e);
    }
    return s;
}

LemmaReport verify_lemma_guarantees(const Triangulation& t, const Subcomplex& x, const NormalSurface& s) {
    LemmaReport r;
    auto violation = [&](std::string m) { r.violations.push_back(std::move(m)); };
    auto loops = boundary_trace(t, x);
    r.x_loops = static_cast<int>(loops.size());
    r.boundary_curves = static_cast<int>(s.boundary_curves.size());
    r.components = s.components;

    // Intersection with each edge equals its label, and pieces match across faces.
    for (int i = 0; i < t.size(); ++i) {
        auto corners = polygon(s.pieces[i]);
        for (int e = 0; e < 6; ++e) {
            bool met = std::find(corners.begin(), corners.end(), e) != corners.end();
            if (met != (s.label[t.edge_class(i, e)] == 1))
                violation("tet " + std::to_string(i) + " edge " + std::to_string(e) + ": intersection differs from label");
        }
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(i, f);
            if (g.boundary()) continue;
            auto mine = arc(s.pieces[i], f), theirs = arc(s.pieces[g.tet], g.face);
            std::set<int> mapped;
            for (int e : mine) mapped.insert(mapped_edge(g.perm, e));
            if (mapped != std::set<int>(theirs.begin(), theirs.end()))
                violation("normal arcs differ across tet " + std::to_string(i) + " face " + std::to_string(f));
        }
    }
    // Disjoint from X.
    for (int e : x.edges)
        if (s.label[e] != 0) violation("surface meets edge " + std::to_string(e) + " of X");
    for (int i = 0; i < t.size(); ++i) {
        if (x.tets.count(i) && s.pieces[i].kind != Piece::Empty) violation("surface meets tetrahedron " + std::to_string(i) + " of X");
        for (int f = 0; f < 4; ++f)
            if (x.faces.count(t.face_class(i, f)) && !arc(s.pieces[i], f).empty())
                violation("surface meets face " + std::to_string(t.face_class(i, f)) + " of X");
    }
    // Each component crosses a 1-labelled edge once; tree edges are 0, so the edge closes up disjointly from F.
    std::set<int> tree(s.tree.begin(), s.tree.end());
    for (int e : tree)
        if (s.label[e] != 0) violation("tree edge " + std::to_string(e) + " labelled 1");
    std::vector<bool> certified(s.components, false);
    for (int i = 0; i < t.size(); ++i)
        for (int e = 0; e < 6 && s.component[i] >= 0; ++e) {
            int c = t.edge_class(i, e);
            if (s.label[c] == 1 && !tree.count(c)) certified[s.component[i]] = true;
        }
    for (int c = 0; c < s.components; ++c)
        if (!certified[c]) violation("component " + std::to_string(c) + " has no non-separation certificate");

    std::vector<bool> has_boundary(s.components, false);
    for (int c : s.curve_component)
        if (c >= 0) has_boundary[c] = true;
    for (int c = 0; c < s.components; ++c) {
        if (!has_boundary[c]) ++r.closed_components;
        if (!s.orientable[c]) ++r.nonorientable_components;
    }
    if (r.closed_components > 0) r.flags.push_back(std::to_string(r.closed_components) + " closed component(s)");
    if (s.components > 0 && r.nonorientable_components < s.components)
        r.flags.push_back(std::to_string(s.components - r.nonorientable_components) + " orientable component(s)");
    if (s.components > 1) r.flags.push_back("surface has " + std::to_string(s.components) + " components");

    // X separates when the tetrahedra off X fall apart across faces off X.
    ParitySets side(t.size());
    std::set<int> off;
    for (int i = 0; i < t.size(); ++i) {
        if (x.tets.count(i)) continue;
        off.insert(side.root(i));
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(i, f);
            if (!g.boundary() && !x.faces.count(t.face_class(i, f)) && !x.tets.count(g.tet)) side.unite(i, g.tet);
        }
    }
    std::set<int> regions;
    for (int i = 0; i < t.size(); ++i)
        if (!x.tets.count(i)) regions.insert(side.root(i));
    r.x_separating = regions.size() > 1;
    if (r.x_separating ? 2 * r.boundary_curves > r.x_loops : r.boundary_curves > r.x_loops)
        violation("boundary curve bound fails: " + std::to_string(r.boundary_curves) + " curves against " +
                  std::to_string(r.x_loops) + " loops of C" + (r.x_separating ? " (X separating)" : ""));

    // Regions of the boundary minus C, and the curves of C' in each.
    ParitySets area(t.face_count());
    std::map<int, std::vector<int>> faces_at;
    for (int f = 0; f < t.face_count(); ++f)
        if (t.boundary_face(f))
            for (int e : t.face_edges(f)) faces_at[e].push_back(f);
    for (const auto& [e, fs] : faces_at)
        if (!x.edges.count(e))
            for (int f : fs) area.unite(f, fs[0]);
    std::map<int, std::array<int, 3>> cells;  // region -> (vertices, edges, faces)
    for (int f = 0; f < t.face_count(); ++f)
        if (t.boundary_face(f)) cells[area.root(f)][2]++;
    for (const auto& [e, fs] : faces_at)
        if (!x.edges.count(e)) cells[area.root(fs[0])][1]++;
    std::set<int> counted;
    for (int f = 0; f < t.face_count(); ++f) {
        if (!t.boundary_face(f)) continue;
        for (int v : t.face_vertices(f))
            if (!x.vertices.count(v) && counted.insert(v).second) cells[area.root(f)][0]++;
    }
    std::map<int, int> curves_in;
    for (const auto& curve : s.boundary_curves) curves_in[area.root(faces_at.at(curve[0])[0])]++;
    for (const auto& [root, c] : cells) {
        if (c[0] - c[1] + c[2] != 0) continue;
        int k = curves_in.count(root) ? curves_in[root] : 0;
        r.curves_per_annulus.push_back(k);
        if (k >= 2) violation(std::to_string(k) + " parallel curves of the surface boundary in one annulus");
    }
    return r;
}

NormalRun run_normal_pipeline(const Triangulation& t, const Subcomplex& x) {
    NormalRun run;
    run.h1_rank = h1_rank(t);
    run.image_zero = z2_image_is_zero(t, x);
    auto tree = build_tree(t, x);
    run.labeling = label_edges(t, x, tree);
    run.surface = assemble_surface(t, run.labeling);
    run.report = verify_lemma_guarantees(t, x, run.surface);
    return run;
}

nlohmann::json to_json(const NormalRun& run) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : run.surface.pieces) pieces.push_back(to_string(p));
    nlohmann::json orient = nlohmann::json::array();
    for (bool o : run.surface.orientable) orient.push_back(o);
    const LemmaReport& r = run.report;
    return {{"h1_rank", run.h1_rank},
            {"image_zero", run.image_zero},
            {"tree", run.labeling.tree},
            {"labels", run.labeling.label},
            {"pieces", pieces},
            {"components", run.surface.components},
            {"orientable", orient},
            {"boundary_curves", r.boundary_curves},
            {"x_loops", r.x_loops},
            {"x_separating", r.x_separating},
            {"closed_components", r.closed_components},
            {"curves_per_annulus", r.curves_per_annulus},
            {"violations", r.violations},
            {"flags", r.flags},
            {"ok", r.ok()}};
}

}  // namespace nw
