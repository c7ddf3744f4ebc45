#include "neuwirth/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace nw {

namespace {

constexpr int next_slot(int k, int step = 1) { return (k + step) % 4; }

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram Diagram::unknot() {
    Diagram d;
    d.components_ = 1;
    return d;
}

Diagram Diagram::from_tuples(std::vector<std::array<int, 4>> tuples, std::vector<int> labels) {
    Diagram d;
    d.x_ = std::move(tuples);
    d.labels_ = std::move(labels);
    const int n = static_cast<int>(d.x_.size());
    if (n == 0) throw std::invalid_argument("diagram without crossings");
    if (static_cast<int>(d.labels_.size()) != 2 * n)
        throw std::invalid_argument("edge count must be twice the crossing count");
    std::vector<int> seen(2 * n, 0);
    for (const auto& t : d.x_)
        for (int e : t) {
            if (e < 0 || e >= 2 * n) throw std::invalid_argument("edge index out of range");
            ++seen[e];
        }
    for (int e = 0; e < 2 * n; ++e)
        if (seen[e] != 2)
            throw std::invalid_argument("label " + std::to_string(d.labels_[e]) + " appears " +
                                        std::to_string(seen[e]) + " times");

    std::vector<std::array<Slot, 2>> occ(2 * n);
    std::vector<int> fill(2 * n, 0);
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) occ[d.x_[c][k]][fill[d.x_[c][k]]++] = Slot{c, k};

    d.tail_.assign(2 * n, Slot{});
    d.head_.assign(2 * n, Slot{});
    d.comp_of_edge_.assign(2 * n, -1);
    auto other = [&](int e, Slot s) { return occ[e][0] == s ? occ[e][1] : occ[e][0]; };

    // Walk one component forward starting with edge e leaving slot `from`.
    auto walk = [&](int e, Slot from, int comp) {
        while (d.comp_of_edge_[e] < 0) {
            Slot to = other(e, from);
            if (to.slot == 2 || from.slot == 0)
                throw std::invalid_argument("PD tuples violate the incoming-under convention");
            d.comp_of_edge_[e] = comp;
            d.tail_[e] = from;
            d.head_[e] = to;
            from = Slot{to.crossing, next_slot(to.slot, 2)};
            e = d.x_[from.crossing][from.slot];
        }
        if (d.tail_[e] != from) throw std::invalid_argument("inconsistent strand orientation");
    };

    int comp = 0;
    for (int c = 0; c < n; ++c) {
        int e = d.x_[c][2];
        if (d.comp_of_edge_[e] >= 0) continue;
        walk(e, Slot{c, 2}, comp++);
    }
    // Components passing only over crossings: direction is not fixed by the tuples.
    for (int c = 0; c < n; ++c)
        for (int k : {1, 3}) {
            int e = d.x_[c][k];
            if (d.comp_of_edge_[e] >= 0) continue;
            walk(e, Slot{c, k}, comp++);
        }
    d.components_ = comp;
    d.finish();
    return d;
}

void Diagram::finish() {
    const int n = crossing_count();
    DisjointSets ds(n);
    for (int e = 0; e < edge_count(); ++e) ds.unite(tail_[e].crossing, head_[e].crossing);
    for (int c = 1; c < n; ++c)
        if (ds.find(c) != ds.find(0)) throw std::invalid_argument("disconnected diagram");
}

Diagram Diagram::from_gluing(int crossings, const std::vector<std::pair<Slot, Slot>>& arcs) {
    const int n = crossings;
    if (n == 0) throw std::invalid_argument("diagram without crossings");
    std::vector<Slot> partner(4 * n, Slot{});
    auto id = [](Slot s) { return 4 * s.crossing + s.slot; };
    for (auto [a, b] : arcs) {
        if (a.crossing < 0 || a.crossing >= n || b.crossing < 0 || b.crossing >= n)
            throw std::invalid_argument("gluing references a missing crossing");
        if (partner[id(a)].crossing >= 0 || partner[id(b)].crossing >= 0 || a == b)
            throw std::invalid_argument("slot glued twice");
        partner[id(a)] = b;
        partner[id(b)] = a;
    }
    for (int i = 0; i < 4 * n; ++i)
        if (partner[i].crossing < 0) throw std::invalid_argument("unglued slot");

    std::vector<int> edge_out(4 * n, -1);  // edge leaving from slot (tail)
    std::vector<int> edge_in(4 * n, -1);   // edge arriving at slot (head)
    int label = 0;
    // Prefer starting components at an under slot, lowest crossing first.
    std::vector<Slot> starts;
    for (int c = 0; c < n; ++c) starts.push_back({c, 0});
    for (int c = 0; c < n; ++c) starts.push_back({c, 1});
    for (Slot start : starts) {
        if (edge_in[id(start)] >= 0 || edge_out[id(start)] >= 0) continue;
        // enter at start, leave at start+2
        Slot in = start;
        do {
            Slot out{in.crossing, next_slot(in.slot, 2)};
            Slot nxt = partner[id(out)];
            edge_out[id(out)] = label;
            edge_in[id(nxt)] = label;
            ++label;
            in = nxt;
        } while (in != start);
    }
    std::vector<std::array<int, 4>> tuples(n);
    for (int c = 0; c < n; ++c) {
        int r = edge_in[id(Slot{c, 0})] >= 0 ? 0 : 2;
        for (int k = 0; k < 4; ++k) {
            int src = id(Slot{c, next_slot(k, r)});
            tuples[c][k] = edge_in[src] >= 0 ? edge_in[src] : edge_out[src];
        }
    }
    std::vector<int> labels(2 * n);
    std::iota(labels.begin(), labels.end(), 1);
    return from_tuples(std::move(tuples), std::move(labels));
}

Slot Diagram::other_end(Slot s) const {
    int e = edge_at(s);
    return tail_[e] == s ? head_[e] : tail_[e];
}

int Diagram::sign(int c) const { return is_incoming(Slot{c, 3}) ? 1 : -1; }

int Diagram::writhe() const {
    int w = 0;
    for (int c = 0; c < crossing_count(); ++c) w += sign(c);
    return w;
}

int Diagram::component_of_crossing_strand(int c, bool over) const {
    return comp_of_edge_[x_[c][over ? 1 : 0]];
}

std::vector<Face> Diagram::faces() const {
    std::vector<Face> out;
    const int n = crossing_count();
    std::vector<char> seen(4 * n, 0);
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) {
            if (seen[4 * c + k]) continue;
            Face f;
            Slot cur{c, k};
            while (!seen[4 * cur.crossing + cur.slot]) {
                seen[4 * cur.crossing + cur.slot] = 1;
                f.corners.push_back(cur);
                cur = other_end(Slot{cur.crossing, next_slot(cur.slot)});
            }
            out.push_back(std::move(f));
        }
    return out;
}

Diagram parse_pd(std::string_view text) {
    std::vector<std::vector<long long>> groups;
    std::vector<long long> cur;
    bool in_group = false;
    for (std::size_t i = 0; i < text.size();) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (!in_group) throw std::invalid_argument("label outside of a crossing tuple");
            cur.push_back(std::stoll(std::string(text.substr(i, j - i))));
            i = j;
            continue;
        }
        if (ch == '(' || ch == '[') {
            in_group = true;
            cur.clear();
        } else if (ch == ')' || ch == ']') {
            if (!cur.empty()) {
                if (cur.size() != 4)
                    throw std::invalid_argument("malformed tuple with " + std::to_string(cur.size()) +
                                                " entries");
                groups.push_back(cur);
            }
            cur.clear();
        } else if (ch == '-') {
            throw std::invalid_argument("negative strand label");
        } else if (!(std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == 'X' ||
                     ch == 'P' || ch == 'D' || ch == ';')) {
            throw std::invalid_argument(std::string("unexpected character '") + ch + "'");
        }
        ++i;
    }
    if (!cur.empty()) throw std::invalid_argument("unterminated tuple");
    if (groups.empty()) throw std::invalid_argument("no crossings in PD code");

    std::map<long long, int> index;
    for (const auto& g : groups)
        for (long long v : g) index.emplace(v, 0);
    std::vector<int> labels;
    for (auto& [v, i] : index) {
        i = static_cast<int>(labels.size());
        labels.push_back(static_cast<int>(v));
    }
    if (labels.size() != 2 * groups.size()) {
        std::map<long long, int> count;
        for (const auto& g : groups)
            for (long long v : g) ++count[v];
        for (auto [v, k] : count)
            if (k != 2)
                throw std::invalid_argument("label " + std::to_string(v) + " appears " +
                                            std::to_string(k) + " times");
        throw std::invalid_argument("label count mismatch");
    }
    std::vector<std::array<int, 4>> tuples;
    for (const auto& g : groups)
        tuples.push_back({index[g[0]], index[g[1]], index[g[2]], index[g[3]]});
    return Diagram::from_tuples(std::move(tuples), std::move(labels));
}

Diagram parse_gauss(std::string_view text) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw std::invalid_argument("Gauss code needs a ';' followed by crossing signs");
    std::vector<int> seq;
    {
        std::string body(text.substr(0, semi));
        for (char& ch : body)
            if (ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') ch = ' ';
        std::istringstream in(body);
        int v;
        while (in >> v) {
            if (v == 0) throw std::invalid_argument("crossing number 0 in Gauss code");
            seq.push_back(v);
        }
        if (!in.eof()) throw std::invalid_argument("malformed Gauss code");
    }
    std::vector<int> signs;
    for (char ch : text.substr(semi + 1)) {
        if (ch == '+') signs.push_back(1);
        else if (ch == '-') signs.push_back(-1);
        else if (!(std::isspace(static_cast<unsigned char>(ch)) || ch == ','))
            throw std::invalid_argument("crossing signs must be '+' or '-'");
    }
    const int n = static_cast<int>(signs.size());
    if (n == 0 || static_cast<int>(seq.size()) != 2 * n)
        throw std::invalid_argument("Gauss code length must be twice the number of signs");
    std::vector<int> over_pos(n, -1), under_pos(n, -1);
    for (int i = 0; i < 2 * n; ++i) {
        int c = std::abs(seq[i]) - 1;
        if (c >= n) throw std::invalid_argument("crossing number out of range");
        int& slot = seq[i] > 0 ? over_pos[c] : under_pos[c];
        if (slot >= 0) throw std::invalid_argument("crossing visited twice on the same level");
        slot = i;
    }
    // Edge i+1 arrives at visit i; edge i+2 leaves it (cyclically).
    std::vector<std::array<int, 4>> tuples(n);
    for (int c = 0; c < n; ++c) {
        if (over_pos[c] < 0 || under_pos[c] < 0)
            throw std::invalid_argument("crossing missing an over or under visit");
        int u_in = under_pos[c], u_out = (under_pos[c] + 1) % (2 * n);
        int o_in = over_pos[c], o_out = (over_pos[c] + 1) % (2 * n);
        tuples[c] = signs[c] > 0 ? std::array<int, 4>{u_in, o_out, u_out, o_in}
                                 : std::array<int, 4>{u_in, o_in, u_out, o_out};
    }
    std::vector<int> labels(2 * n);
    std::iota(labels.begin(), labels.end(), 1);
    Diagram d = Diagram::from_tuples(std::move(tuples), std::move(labels));
    if (!euler_check(d)) throw std::invalid_argument("Gauss code is not planar");
    return d;
}

std::string serialize_pd(const Diagram& d) {
    std::string out;
    for (int c = 0; c < d.crossing_count(); ++c) {
        if (c) out += ' ';
        const auto& t = d.tuple(c);
        out += "X(" + std::to_string(d.label(t[0])) + "," + std::to_string(d.label(t[1])) + "," +
               std::to_string(d.label(t[2])) + "," + std::to_string(d.label(t[3])) + ")";
    }
    return out;
}

bool euler_check(const Diagram& d) {
    if (d.empty()) return true;
    int v = d.crossing_count(), e = d.edge_count();
    int f = static_cast<int>(d.faces().size());
    return e == 2 * v && v - e + f == 2;
}

bool is_reduced(const Diagram& d) {
    for (const auto& f : d.faces()) {
        std::vector<int> cs;
        for (auto s : f.corners) cs.push_back(s.crossing);
        std::sort(cs.begin(), cs.end());
        if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) return false;
    }
    return true;
}

bool is_prime(const Diagram& d) {
    const int n = d.crossing_count();
    if (n == 0) throw std::invalid_argument("is_prime on a crossingless diagram");
    const int m = d.edge_count();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            DisjointSets ds(n);
            for (int e = 0; e < m; ++e)
                if (e != a && e != b) ds.unite(d.tail(e).crossing, d.head(e).crossing);
            for (int c = 1; c < n; ++c)
                if (ds.find(c) != ds.find(0)) return false;
        }
    return true;
}

bool is_alternating(const Diagram& d) {
    for (int e = 0; e < d.edge_count(); ++e) {
        bool tail_under = d.tail(e).slot % 2 == 0;
        bool head_under = d.head(e).slot % 2 == 0;
        if (tail_under == head_under) return false;
    }
    return true;
}

Diagram mirror(const Diagram& d) {
    if (d.empty()) return d;
    std::vector<std::array<int, 4>> tuples;
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& t = d.tuple(c);
        int start = d.is_incoming(Slot{c, 3}) ? 3 : 1;
        tuples.push_back({t[start], t[(start + 1) % 4], t[(start + 2) % 4], t[(start + 3) % 4]});
    }
    Diagram m = Diagram::from_tuples(std::move(tuples), d.labels());
    m.name = d.name;
    return m;
}

Diagram reverse_component(const Diagram& d, int component) {
    if (component < 0 || component >= d.component_count())
        throw std::invalid_argument("no such component");
    std::vector<std::array<int, 4>> tuples;
    for (int c = 0; c < d.crossing_count(); ++c) {
        auto t = d.tuple(c);
        if (d.component_of_edge(t[0]) == component) std::swap(t[0], t[2]), std::swap(t[1], t[3]);
        tuples.push_back(t);
    }
    Diagram r = Diagram::from_tuples(std::move(tuples), d.labels());
    r.name = d.name;
    return r;
}

namespace {

struct TriangleStrand {
    int mid;      // triangle side
    int first;    // crossing the strand meets first
    int second;   // crossing it meets next
    bool over_first, over_second;
};

std::optional<std::array<TriangleStrand, 3>> r3_strands(const Diagram& d, const Face& f) {
    if (f.size() != 3) return std::nullopt;
    std::array<int, 3> cs{f.corners[0].crossing, f.corners[1].crossing, f.corners[2].crossing};
    if (cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2]) return std::nullopt;
    std::array<TriangleStrand, 3> st;
    int oo = 0, uu = 0, mixed = 0;
    for (int i = 0; i < 3; ++i) {
        Slot s{f.corners[i].crossing, (f.corners[i].slot + 1) % 4};
        int e = d.edge_at(s);
        Slot t = d.tail(e), h = d.head(e);
        st[i] = TriangleStrand{e, t.crossing, h.crossing, t.slot % 2 == 1, h.slot % 2 == 1};
        if (st[i].over_first && st[i].over_second) ++oo;
        else if (!st[i].over_first && !st[i].over_second) ++uu;
        else ++mixed;
    }
    if (oo != 1 || uu != 1 || mixed != 1) return std::nullopt;
    return st;
}

}  // namespace

std::vector<int> reidemeister3_faces(const Diagram& d) {
    std::vector<int> out;
    auto fs = d.faces();
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        if (r3_strands(d, fs[i])) out.push_back(i);
    return out;
}

Diagram reidemeister3(const Diagram& d, int face_index) {
    auto fs = d.faces();
    if (face_index < 0 || face_index >= static_cast<int>(fs.size()))
        throw std::invalid_argument("face index out of range");
    auto st = r3_strands(d, fs[face_index]);
    if (!st) throw std::invalid_argument("Reidemeister III does not apply to this face");

    std::vector<std::array<int, 4>> tuples;
    for (int c = 0; c < d.crossing_count(); ++c) tuples.push_back(d.tuple(c));
    auto in_edge = [&](int e) {  // edge entering the strand's first crossing
        Slot t = d.tail(e);
        return d.tuple(t.crossing)[(t.slot + 2) % 4];
    };
    auto out_edge = [&](int e) {  // edge leaving the strand's second crossing
        Slot h = d.head(e);
        return d.tuple(h.crossing)[(h.slot + 2) % 4];
    };
    for (const auto& corner : fs[face_index].corners) {
        int k = corner.crossing;
        int under = -1, over = -1;
        std::pair<int, int> u_io, o_io;
        for (const auto& s : *st) {
            if (s.first != k && s.second != k) continue;
            bool is_over = s.first == k ? s.over_first : s.over_second;
            // The move swaps the order in which each strand meets its two crossings.
            std::pair<int, int> io = s.first == k ? std::pair{s.mid, out_edge(s.mid)}
                                                  : std::pair{in_edge(s.mid), s.mid};
            if (is_over) over = s.mid, o_io = io;
            else under = s.mid, u_io = io;
        }
        if (under < 0 || over < 0) throw std::logic_error("malformed triangle");
        tuples[k] = d.sign(k) > 0 ? std::array<int, 4>{u_io.first, o_io.second, u_io.second, o_io.first}
                                  : std::array<int, 4>{u_io.first, o_io.first, u_io.second, o_io.second};
    }
    Diagram r = Diagram::from_tuples(std::move(tuples), d.labels());
    r.name = d.name;
    return r;
}

bool isomorphic(const Diagram& a, const Diagram& b) {
    if (a.crossing_count() != b.crossing_count()) return false;
    if (a.empty()) return a.component_count() == b.component_count();
    const int n = a.crossing_count();
    for (int start = 0; start < n; ++start)
        for (int rot : {0, 2}) {
            std::vector<int> map(n, -1), rmap(n, -1), rotation(n, 0);
            std::queue<int> q;
            map[0] = start;
            rmap[start] = 0;
            rotation[0] = rot;
            q.push(0);
            bool ok = true;
            while (ok && !q.empty()) {
                int c = q.front();
                q.pop();
                for (int k = 0; k < 4 && ok; ++k) {
                    Slot na = a.other_end(Slot{c, k});
                    Slot nb = b.other_end(Slot{map[c], (k + rotation[c]) % 4});
                    int r = ((nb.slot - na.slot) % 4 + 4) % 4;
                    if (r % 2) {
                        ok = false;
                        break;
                    }
                    if (map[na.crossing] < 0) {
                        if (rmap[nb.crossing] >= 0) {
                            ok = false;
                            break;
                        }
                        map[na.crossing] = nb.crossing;
                        rmap[nb.crossing] = na.crossing;
                        rotation[na.crossing] = r;
                        q.push(na.crossing);
                    } else if (map[na.crossing] != nb.crossing || rotation[na.crossing] != r) {
                        ok = false;
                    }
                }
            }
            if (ok) return true;
        }
    return false;
}

}  // namespace nw
