#include "neuwirth/states.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace nw {

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

void require_total(const Diagram& d, const State& s) {
    if (static_cast<int>(s.size()) != d.crossing_count())
        throw std::invalid_argument("state size " + std::to_string(s.size()) + " does not match " +
                                    std::to_string(d.crossing_count()) + " crossings");
    for (int v : s)
        if (v != 1 && v != -1) throw std::invalid_argument("state entries must be +1 or -1");
}

// Biconnected components of a multigraph given by edge endpoints. Self-loops are their own blocks.
std::vector<std::vector<int>> biconnected_blocks(int n, const std::vector<StateGraph::Edge>& edges,
                                                 std::vector<int>& cut_vertices) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (edges[i].u == edges[i].v) {
            blocks.push_back({i});
            continue;
        }
        adj[edges[i].u].push_back({edges[i].v, i});
        adj[edges[i].v].push_back({edges[i].u, i});
    }
    std::vector<int> disc(n, -1), low(n, 0), block_count(n, 0);
    std::vector<int> stack;
    int timer = 0;
    struct Frame {
        int v, parent_edge;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> frames{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < adj[f.v].size()) {
                auto [w, e] = adj[f.v][f.next++];
                if (e == f.parent_edge) continue;
                if (disc[w] < 0) {
                    stack.push_back(e);
                    disc[w] = low[w] = timer++;
                    frames.push_back({w, e, 0});
                } else if (disc[w] < disc[f.v]) {
                    stack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            int v = f.v, pe = f.parent_edge;
            frames.pop_back();
            if (frames.empty()) break;
            int u = frames.back().v;
            low[u] = std::min(low[u], low[v]);
            if (low[v] >= disc[u]) {
                std::vector<int> comp;
                while (true) {
                    int e = stack.back();
                    stack.pop_back();
                    comp.push_back(e);
                    if (e == pe) break;
                }
                blocks.push_back(std::move(comp));
                ++block_count[u];
                ++block_count[v];
            }
        }
    }
    // A vertex is a cut vertex iff it lies in two or more blocks.
    std::vector<std::vector<int>> verts_blocks(n);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int e : blocks[b]) {
            verts_blocks[edges[e].u].push_back(b);
            verts_blocks[edges[e].v].push_back(b);
        }
    for (int v = 0; v < n; ++v) {
        auto& vb = verts_blocks[v];
        std::sort(vb.begin(), vb.end());
        vb.erase(std::unique(vb.begin(), vb.end()), vb.end());
        if (vb.size() >= 2) cut_vertices.push_back(v);
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return blocks;
}

// Signs of crossings after reversing the components whose bit is set in `flip`.
std::vector<int> signs_under(const Diagram& d, unsigned flip) {
    std::vector<int> out(d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c) {
        int a = d.component_of_crossing_strand(c, false);
        int b = d.component_of_crossing_strand(c, true);
        bool f = ((flip >> a) & 1) != ((flip >> b) & 1);
        out[c] = f ? -d.sign(c) : d.sign(c);
    }
    return out;
}

}  // namespace

State all_state(const Diagram& d, int s) { return State(d.crossing_count(), s > 0 ? 1 : -1); }

State seifert_state(const Diagram& d) {
    State s(d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c) s[c] = d.sign(c);
    return s;
}

std::string state_to_string(const State& s) {
    std::string out;
    for (int v : s) out += v > 0 ? '+' : '-';
    return out;
}

State parse_state(std::string_view text, int crossings) {
    State s;
    for (char ch : text) {
        if (ch == '+') s.push_back(1);
        else if (ch == '-') s.push_back(-1);
        else throw std::invalid_argument(std::string("state characters must be '+' or '-', got '") + ch + "'");
    }
    if (static_cast<int>(s.size()) != crossings)
        throw std::invalid_argument("state length " + std::to_string(s.size()) + " does not match " +
                                    std::to_string(crossings) + " crossings");
    return s;
}

StateLoops smooth(const Diagram& d, const State& s) {
    require_total(d, s);
    StateLoops out;
    if (d.empty()) {
        out.count = 1;
        return out;
    }
    DisjointSets ds(d.edge_count());
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& t = d.tuple(c);
        for (int k = 0; k < 4; ++k) ds.unite(t[k], t[smoothing_partner(s[c], k)]);
    }
    std::vector<int> order(d.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d.label(a) < d.label(b); });
    std::vector<int> id(d.edge_count(), -1);
    out.loop_of_edge.assign(d.edge_count(), -1);
    for (int e : order) {
        int r = ds.find(e);
        if (id[r] < 0) id[r] = out.count++;
        out.loop_of_edge[e] = id[r];
    }
    for (int c = 0; c < d.crossing_count(); ++c)
        out.incidence.push_back({out.loop_of_edge[d.tuple(c)[0]], out.loop_of_edge[d.tuple(c)[2]]});
    return out;
}

StateGraph state_graph(const Diagram& d, const State& s) {
    StateLoops loops = smooth(d, s);
    StateGraph g;
    g.vertices = loops.count;
    for (int c = 0; c < d.crossing_count(); ++c)
        g.edges.push_back({loops.incidence[c][0], loops.incidence[c][1], s[c]});
    g.blocks = biconnected_blocks(g.vertices, g.edges, g.cut_vertices);
    return g;
}

StateCheck check_state(const Diagram& d, const State& s) {
    StateGraph g = state_graph(d, s);
    StateCheck r;
    r.adequate = std::none_of(g.edges.begin(), g.edges.end(), [](const auto& e) { return e.u == e.v; });
    r.homogeneous = std::all_of(g.blocks.begin(), g.blocks.end(), [&](const auto& b) {
        return std::all_of(b.begin(), b.end(), [&](int c) { return s[c] == s[b.front()]; });
    });
    const int k = d.component_count();
    if (k > 20) throw std::invalid_argument("too many components");
    // Global reversal does not change signs, so fix the last component.
    unsigned limit = k > 0 ? 1u << (k - 1) : 1u;
    for (unsigned flip = 0; flip < limit && !r.is_seifert; ++flip)
        r.is_seifert = signs_under(d, flip) == s;
    return r;
}

bool is_orientable(const Diagram& d, const State& s) {
    require_total(d, s);
    if (d.empty()) return true;
    const int n = d.crossing_count();
    // Walk each loop once in a base direction and record at which slots it arrives via an edge.
    std::vector<char> arrive(4 * n, 0), seen(4 * n, 0);
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) {
            if (seen[4 * c + k]) continue;
            Slot cur{c, k};
            while (!seen[4 * cur.crossing + cur.slot]) {
                Slot nxt = d.other_end(cur);
                seen[4 * cur.crossing + cur.slot] = 1;
                seen[4 * nxt.crossing + nxt.slot] = 1;
                arrive[4 * nxt.crossing + nxt.slot] = 1;
                cur = Slot{nxt.crossing, smoothing_partner(s[nxt.crossing], nxt.slot)};
            }
        }
    StateLoops loops = smooth(d, s);
    std::vector<std::vector<std::pair<int, int>>> adj(loops.count);
    for (int c = 0; c < n; ++c) {
        int u = loops.incidence[c][0], v = loops.incidence[c][1];
        int parity = arrive[4 * c + 0] == arrive[4 * c + 2] ? 1 : 0;
        if (u == v) {
            if (parity) return false;
            continue;
        }
        adj[u].push_back({v, parity});
        adj[v].push_back({u, parity});
    }
    std::vector<int> side(loops.count, -1);
    for (int r = 0; r < loops.count; ++r) {
        if (side[r] >= 0) continue;
        side[r] = 0;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, p] : adj[u]) {
                int want = side[u] ^ p;
                if (side[v] < 0) {
                    side[v] = want;
                    q.push(v);
                } else if (side[v] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

int boundary_slope(const Diagram& d, const State& s) {
    require_total(d, s);
    if (d.component_count() != 1) throw std::invalid_argument("boundary slope is defined for knots only");
    int slope = 0;
    for (int c = 0; c < d.crossing_count(); ++c)
        if (s[c] != d.sign(c)) slope += 2 * d.sign(c);
    return slope;
}

SurfaceSummary surface_summary(const Diagram& d, const State& s) {
    SurfaceSummary r;
    StateLoops loops = smooth(d, s);
    r.euler_characteristic = loops.count - d.crossing_count();
    r.orientable = is_orientable(d, s);
    // A state surface spans the diagram's link, so its boundary curves are the link components.
    r.boundary_components = d.component_count();
    if (d.component_count() == 1) r.boundary_slope = boundary_slope(d, s);
    int rest = 2 - r.euler_characteristic - r.boundary_components;
    r.genus = r.orientable ? rest / 2 : rest;
    return r;
}

std::vector<Leaf> murasugi_leaves(const Diagram& d, const State& s) {
    StateGraph g = state_graph(d, s);
    std::vector<Leaf> out;
    if (d.empty()) return out;
    if (g.blocks.size() == 1) {
        out.push_back(Leaf{d, s, g.blocks.front()});
        return out;
    }
    for (const auto& block : g.blocks) {
        std::vector<int> local(d.crossing_count(), -1);
        for (int i = 0; i < static_cast<int>(block.size()); ++i) local[block[i]] = i;
        std::vector<std::pair<Slot, Slot>> arcs;
        std::vector<char> done(4 * block.size(), 0);
        for (int i = 0; i < static_cast<int>(block.size()); ++i)
            for (int k = 0; k < 4; ++k) {
                if (done[4 * i + k]) continue;
                Slot cur = d.other_end(Slot{block[i], k});
                while (local[cur.crossing] < 0) {
                    Slot across{cur.crossing, smoothing_partner(s[cur.crossing], cur.slot)};
                    cur = d.other_end(across);
                }
                Slot a{i, k}, b{local[cur.crossing], cur.slot};
                done[4 * a.crossing + a.slot] = 1;
                done[4 * b.crossing + b.slot] = 1;
                arcs.push_back({a, b});
            }
        Leaf leaf{Diagram::from_gluing(static_cast<int>(block.size()), arcs), {}, block};
        // from_gluing may rotate tuples by two, which preserves both smoothings.
        for (int c : block) leaf.state.push_back(s[c]);
        out.push_back(std::move(leaf));
    }
    return out;
}

void enumerate_states(const Diagram& d, const std::function<bool(const State&)>& filter,
                      const std::function<bool(const State&)>& visit, int cap) {
    const int n = d.crossing_count();
    if (n > cap) throw std::invalid_argument("state enumeration cap " + std::to_string(cap) + " exceeded by " +
                                             std::to_string(n) + " crossings");
    State s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
        if (filter && !filter(s)) continue;
        if (!visit(s)) return;
    }
}

std::vector<State> enumerate_states(const Diagram& d, const std::function<bool(const State&)>& filter,
                                    int cap) {
    std::vector<State> out;
    enumerate_states(d, filter, [&](const State& s) { out.push_back(s); return true; }, cap);
    return out;
}

std::array<State, 2> checkerboard_states(const Diagram& d) {
    const int n = d.crossing_count();
    if (n == 0) return {State{}, State{}};
    auto faces = d.faces();
    std::vector<int> face_of(4 * n, -1);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (auto s : faces[f].corners) face_of[4 * s.crossing + s.slot] = f;
    // Corners (c,k) and (c,k+1) lie on opposite sides of the edge at slot k+1.
    std::vector<std::vector<int>> adj(faces.size());
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) {
            int a = face_of[4 * c + k], b = face_of[4 * c + (k + 1) % 4];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    std::vector<int> color(faces.size(), -1);
    color[0] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int g : adj[f]) {
            if (color[g] < 0) {
                color[g] = 1 - color[f];
                q.push(g);
            } else if (color[g] == color[f]) {
                throw std::logic_error("face graph is not bipartite");
            }
        }
    }
    // The A-smoothing opens a channel between wedges 1 and 3; shading those wedges keeps them apart.
    State shaded(n);
    for (int c = 0; c < n; ++c) shaded[c] = color[face_of[4 * c + 1]] == 1 ? 1 : -1;
    State other = shaded;
    for (int& v : other) v = -v;
    return {shaded, other};
}

namespace {

// Crossing order that keeps few edges half-processed.
std::vector<int> sweep_order(const Diagram& d) {
    const int n = d.crossing_count();
    std::vector<int> order, seen(d.edge_count(), 0);
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int best = -1, score = -1;
        for (int c = 0; c < n; ++c) {
            if (done[c]) continue;
            int k = 0;
            for (int e : d.tuple(c)) k += seen[e] == 1;
            if (k > score) best = c, score = k;
        }
        done[best] = true;
        order.push_back(best);
        for (int e : d.tuple(best)) ++seen[e];
    }
    return order;
}

}  // namespace

Polynomial normalized_bracket(const Diagram& d, int cap) {
    const int n = d.crossing_count();
    if (n > cap) throw std::invalid_argument("bracket cap " + std::to_string(cap) + " exceeded");
    if (n == 0) return Polynomial{{0, 1}};
    const Polynomial loop{{2, -1}, {-2, -1}};
    auto times = [](const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (auto [x, p] : a)
            for (auto [y, q] : b) out[x + y] += p * q;
        return out;
    };
    // Open path ends, as partner[end] = other end, keyed by the matching.
    using Matching = std::map<int, int>;
    std::map<Matching, Polynomial> layer{{Matching{}, Polynomial{{0, 1}}}};
    std::vector<int> seen(d.edge_count(), 0);
    const std::vector<int> order = sweep_order(d);
    for (std::size_t step = 0; step < order.size(); ++step) {
        const auto& t = d.tuple(order[step]);
        const bool last = step + 1 == order.size();
        std::map<Matching, Polynomial> next;
        for (int sign : {1, -1}) {
            for (const auto& [match, poly] : layer) {
                Matching m = match;
                std::vector<int> count = seen;
                int loops = 0;
                for (int k : {0, 2}) {
                    int x = t[k], y = t[smoothing_partner(sign, k)];
                    if (x == y) {
                        count[x] += 2;
                        ++loops;
                        continue;
                    }
                    bool xo = count[x]++ == 1, yo = count[y]++ == 1;
                    if (xo && yo) {
                        int a = m.at(x), b = m.at(y);
                        m.erase(x);
                        m.erase(y);
                        if (a == y) {
                            ++loops;
                        } else {
                            m[a] = b;
                            m[b] = a;
                        }
                    } else if (xo || yo) {
                        if (yo) std::swap(x, y);
                        int a = m.at(x);
                        m.erase(x);
                        m[a] = y;
                        m[y] = a;
                    } else {
                        m[x] = y;
                        m[y] = x;
                    }
                }
                if (last) --loops;
                Polynomial term;
                for (auto [x, c] : poly) term[x + sign] += c;
                for (int i = 0; i < loops; ++i) term = times(term, loop);
                Polynomial& dst = next[m];
                for (auto [x, c] : term) dst[x] += c;
            }
        }
        for (int e : t) ++seen[e];
        layer = std::move(next);
    }
    const Polynomial& sum = layer.at(Matching{});
    const int w = d.writhe();
    Polynomial out;
    for (auto [x, c] : sum)
        if (c != 0) out[x - 3 * w] += (w % 2 == 0 ? c : -c);
    return out;
}

Polynomial mirror_polynomial(const Polynomial& p) {
    Polynomial out;
    for (auto [x, c] : p) out[-x] = c;
    return out;
}

std::string to_string(const Polynomial& p) {
    std::string out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!out.empty()) out += it->second < 0 ? " - " : " + ";
        else if (it->second < 0) out += "-";
        long long c = it->second < 0 ? -it->second : it->second;
        if (c != 1 || it->first == 0) out += std::to_string(c);
        if (it->first != 0) out += "A^" + std::to_string(it->first);
    }
    return out.empty() ? "0" : out;
}

}  // namespace nw
