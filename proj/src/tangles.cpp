#include "neuwirth/tangles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nw {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

// Body of "X( ... )" for a one-letter prefix X.
std::string_view call_body(std::string_view text, char head) {
    text = trim(text);
    if (text.size() < 3 || std::toupper(static_cast<unsigned char>(text[0])) != head || text[1] != '(' ||
        text.back() != ')')
        throw std::invalid_argument(std::string("expected ") + head + "(...), got '" + std::string(text) + "'");
    return text.substr(2, text.size() - 3);
}

Fraction frac_part(const Fraction& q) { return q - Fraction(floor_of(q)); }

Fraction ceil_inverse(const Fraction& r) { return Fraction(ceil_of(Fraction(1) / r)); }

// Tangle diagrams assembled from crossings and joints. Negative node ids are crossing slots,
// nonnegative ids are joints with exactly two neighbours.
class TangleBuilder {
public:
    struct Tangle {
        std::array<int, 4> ends;  // NW, NE, SW, SE
    };
    enum Layer { Horizontal, Vertical };

    Tangle zero() {
        int nw = joint(), ne = joint(), sw = joint(), se = joint();
        link(nw, ne);
        link(sw, se);
        return {{nw, ne, sw, se}};
    }
    Tangle infinity() {
        int nw = joint(), ne = joint(), sw = joint(), se = joint();
        link(nw, sw);
        link(ne, se);
        return {{nw, ne, sw, se}};
    }
    // Picture +1: over-strand SW-NE; slots NW, SW, SE, NE. Picture -1: over-strand NW-SE;
    // slots NE, NW, SW, SE. In both cases the A-smoothing of picture +1 is ")(".
    Tangle crossing(int picture, Layer layer) {
        int c = static_cast<int>(pictures_.size());
        pictures_.push_back(picture);
        layers_.push_back(layer);
        auto s = [&](int k) { return slot_node(c, k); };
        if (picture > 0) return {{s(0), s(3), s(1), s(2)}};
        return {{s(1), s(0), s(2), s(3)}};
    }
    Tangle sum(const Tangle& a, const Tangle& b) {
        link(a.ends[1], b.ends[0]);
        link(a.ends[3], b.ends[2]);
        return {{a.ends[0], b.ends[1], a.ends[2], b.ends[3]}};
    }
    Tangle vprod(const Tangle& a, const Tangle& b) {  // a above b
        link(a.ends[2], b.ends[0]);
        link(a.ends[3], b.ends[1]);
        return {{a.ends[0], a.ends[1], b.ends[2], b.ends[3]}};
    }
    Tangle horizontal(Tangle t, const BigInt& k) {
        int pic = k > 0 ? 1 : -1;
        for (BigInt i = 0; i < abs(k); ++i) t = sum(t, crossing(pic, Horizontal));
        return t;
    }
    Tangle vertical(Tangle t, const BigInt& k) {
        int pic = k > 0 ? 1 : -1;
        for (BigInt i = 0; i < abs(k); ++i) t = vprod(t, crossing(pic, Vertical));
        return t;
    }
    // Standard rational tangle with terms (a_1, ..., a_n): a_n is the outermost horizontal twist.
    Tangle rational(const ContinuedFraction& cf) { return rational_rec(cf, cf.terms.size(), false); }
    Tangle rational(const Fraction& q) {
        if (q == 0) return zero();
        return rational(standard_cf(q));
    }
    void numerator_closure(const Tangle& t) {
        link(t.ends[0], t.ends[1]);
        link(t.ends[2], t.ends[3]);
    }

    int crossings() const { return static_cast<int>(pictures_.size()); }
    int picture(int c) const { return pictures_[c]; }
    Layer layer(int c) const { return layers_[c]; }

    // The "=" smoothing (horizontal arcs) at crossing c as a state value.
    int flat_state(int c) const { return pictures_[c] > 0 ? -1 : 1; }

    int slot_node(int c, int k) const { return -(4 * c + k) - 1; }

    Diagram finish() const {
        const int n = crossings();
        if (n == 0) throw std::invalid_argument("tangle closure has no crossings");
        std::map<int, std::vector<int>> adj;
        for (auto [a, b] : links_) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<std::pair<Slot, Slot>> arcs;
        std::vector<char> done(4 * n, 0);
        for (int c = 0; c < n; ++c)
            for (int k = 0; k < 4; ++k) {
                if (done[4 * c + k]) continue;
                int prev = slot_node(c, k);
                auto it = adj.find(prev);
                if (it == adj.end() || it->second.size() != 1) throw std::logic_error("dangling tangle slot");
                int cur = it->second[0];
                while (cur >= 0) {  // joint
                    const auto& nb = adj.at(cur);
                    int nxt = nb[0] == prev ? nb[1] : nb[0];
                    prev = cur;
                    cur = nxt;
                }
                int id = -cur - 1;
                Slot a{c, k}, b{id / 4, id % 4};
                done[4 * c + k] = 1;
                done[id] = 1;
                arcs.push_back({a, b});
            }
        return Diagram::from_gluing(n, arcs);
    }

    void join(int a, int b) { links_.push_back({a, b}); }

private:
    int joint() { return next_joint_++; }
    void link(int a, int b) { join(a, b); }

    Tangle rational_rec(const ContinuedFraction& cf, std::size_t k, bool vertical_layer) {
        const BigInt& a = cf.terms[k - 1];
        if (k == 1) return vertical_layer ? vertical(infinity(), a) : horizontal(zero(), a);
        Tangle inner = rational_rec(cf, k - 1, !vertical_layer);
        return vertical_layer ? vertical(inner, a) : horizontal(inner, a);
    }

    std::vector<int> pictures_;
    std::vector<Layer> layers_;
    std::vector<std::pair<int, int>> links_;
    int next_joint_ = 0;
};

BuiltDiagram finish_built(const TangleBuilder& b, State surface, std::vector<int> group) {
    BuiltDiagram out{b.finish(), std::move(surface), {}, std::move(group)};
    out.checkerboard = checkerboard_states(out.diagram);
    return out;
}

}  // namespace

int MontesinosPresentation::negatives() const {
    return static_cast<int>(std::count_if(slopes.begin(), slopes.end(), [](const Fraction& r) { return r < 0; }));
}

int MontesinosPresentation::positives() const {
    return static_cast<int>(std::count_if(slopes.begin(), slopes.end(), [](const Fraction& r) { return r > 0; }));
}

Fraction MontesinosPresentation::total() const {
    Fraction t(framing);
    for (const auto& r : slopes) t += r;
    return t;
}

std::string to_string(const MontesinosPresentation& m) {
    std::string s = "M(";
    if (m.framing != 0) s += m.framing.str() + ";";
    for (std::size_t i = 0; i < m.slopes.size(); ++i) {
        if (i) s += ",";
        s += to_string(m.slopes[i]);
    }
    return s + ")";
}

std::string to_string(const PretzelPresentation& p) {
    std::string s = "P(";
    for (std::size_t i = 0; i < p.twists.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.twists[i]);
    }
    return s + ")";
}

MontesinosPresentation parse_montesinos(std::string_view text) {
    std::string_view body = call_body(text, 'M');
    MontesinosPresentation m;
    auto semi = body.find(';');
    if (semi != std::string_view::npos) {
        Fraction e = parse_fraction(body.substr(0, semi));
        if (!is_integer(e)) throw std::invalid_argument("Montesinos framing must be an integer");
        m.framing = numerator(e);
        body = body.substr(semi + 1);
    }
    for (auto part : split(body, ',')) {
        Fraction r = parse_fraction(part);
        if (r == 0) throw std::invalid_argument("Montesinos slope 0 is not allowed");
        m.slopes.push_back(r);
    }
    if (m.slopes.empty()) throw std::invalid_argument("Montesinos presentation needs a slope");
    return m;
}

PretzelPresentation parse_pretzel(std::string_view text) {
    std::string_view body = call_body(text, 'P');
    PretzelPresentation p;
    for (auto part : split(body, ',')) {
        Fraction q = parse_fraction(part);
        if (!is_integer(q) || q == 0) throw std::invalid_argument("pretzel twists must be nonzero integers");
        BigInt v = numerator(q);
        if (abs(v) > 100000) throw std::invalid_argument("pretzel twist too large");
        p.twists.push_back(static_cast<int>(v));
    }
    return p;
}

MontesinosPresentation to_montesinos(const PretzelPresentation& p) {
    MontesinosPresentation m;
    for (int t : p.twists) m.slopes.push_back(make_fraction(1, t));
    return m;
}

MontesinosPresentation mirror(const MontesinosPresentation& m) {
    MontesinosPresentation r;
    for (const auto& s : m.slopes) r.slopes.push_back(-s);
    r.framing = -m.framing;
    return r;
}

std::pair<Fraction, Fraction> deform(const Fraction& minus_r1, const Fraction& r2) {
    Fraction r1 = -minus_r1;
    if (!(r1 > 0 && r1 < 1 && r2 > 0 && r2 < 1))
        throw std::invalid_argument("deform needs slopes (-r1, r2) with 0 < r1, r2 < 1");
    return {1 - r1, r2 - 1};
}

NormalizedMontesinos normalize_montesinos(const MontesinosPresentation& m) {
    NormalizedMontesinos out;
    std::vector<Fraction> fr;
    BigInt e = m.framing;
    for (const auto& r : m.slopes) {
        BigInt fl = floor_of(r);
        out.input_framing += fl;
        e += fl;
        Fraction f = r - Fraction(fl);
        if (f != 0) fr.push_back(f);
    }
    const int n = static_cast<int>(fr.size());
    out.two_bridge = n < 3;
    // Which tangles take the negative slope when R- = s: keep the input's choice where it is
    // already in |r| < 1 form, then the largest fractional parts.
    std::vector<int> order;
    for (int i = 0; i < n; ++i) order.push_back(i);
    std::vector<char> prefer(n, 0);
    {
        int k = 0;
        for (const auto& r : m.slopes) {
            if (r - Fraction(floor_of(r)) == 0) continue;
            prefer[k++] = r < 0 && r > -1;
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (prefer[a] != prefer[b]) return prefer[a] > prefer[b];
        return fr[a] > fr[b];
    });
    MontesinosPresentation p;
    BigInt s = -e;
    std::vector<Fraction> slopes = fr;
    BigInt framing = 0;
    if (n == 0) {
        framing = e;
    } else if (s <= 0) {
        framing = e;
    } else if (s >= n) {
        for (auto& r : slopes) r -= 1;
        framing = e + n;
    } else {
        for (BigInt i = 0; i < s; ++i) slopes[order[static_cast<int>(i)]] -= 1;
        framing = 0;
    }
    p.slopes = slopes;
    p.framing = framing;
    if (p.negatives() > p.positives() || (p.negatives() == p.positives() && p.framing < 0)) {
        p = mirror(p);
        out.mirrored = true;
    }
    // Negatives first, preserving the cyclic order as far as a rotation allows.
    if (!p.slopes.empty()) {
        auto first_neg = std::find_if(p.slopes.begin(), p.slopes.end(), [](const Fraction& r) { return r < 0; });
        if (first_neg != p.slopes.end()) {
            // Rotate so that a maximal run of negatives starts at the front.
            std::size_t best = 0;
            int best_run = -1;
            for (std::size_t i = 0; i < p.slopes.size(); ++i) {
                if (p.slopes[i] >= 0) continue;
                std::size_t prev = (i + p.slopes.size() - 1) % p.slopes.size();
                if (p.slopes[prev] < 0 && p.slopes.size() > 1 && i != prev) continue;
                int run = 0;
                while (run < static_cast<int>(p.slopes.size()) && p.slopes[(i + run) % p.slopes.size()] < 0) ++run;
                if (run > best_run) best_run = run, best = i;
            }
            std::rotate(p.slopes.begin(), p.slopes.begin() + static_cast<long>(best), p.slopes.end());
        }
    }
    out.presentation = std::move(p);
    return out;
}

std::vector<MontesinosPresentation> transfer_choices(const MontesinosPresentation& normalized) {
    const int n = static_cast<int>(normalized.slopes.size());
    const int s = normalized.negatives();
    std::vector<Fraction> fr;
    for (const auto& r : normalized.slopes) fr.push_back(frac_part(r));
    std::vector<MontesinosPresentation> out;
    if (normalized.framing != 0 || s == 0 || s == n) return {normalized};
    std::vector<int> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + s, 1);
    std::sort(pick.begin(), pick.end());
    do {
        MontesinosPresentation p;
        for (int i = 0; i < n; ++i) p.slopes.push_back(pick[i] ? fr[i] - 1 : fr[i]);
        // rotate so a negative leads
        auto it = std::find_if(p.slopes.begin(), p.slopes.end(), [](const Fraction& r) { return r < 0; });
        std::rotate(p.slopes.begin(), it, p.slopes.end());
        out.push_back(std::move(p));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
}

PretzelPresentation deplumb_to_pretzel(const MontesinosPresentation& m) {
    if (m.framing != 0) throw std::invalid_argument("deplumb needs a presentation without framing");
    if (m.negatives() != 1 || m.slopes.empty() || m.slopes.front() >= 0)
        throw std::invalid_argument("deplumb needs exactly one negative slope, listed first");
    PretzelPresentation p;
    for (std::size_t i = 0; i < m.slopes.size(); ++i) {
        const Fraction& r = m.slopes[i];
        if (abs(r) >= 1) throw std::invalid_argument("deplumb needs |r_i| < 1");
        BigInt c = numerator(ceil_inverse(abs(r)));
        p.twists.push_back(static_cast<int>(i == 0 ? -c : c));
    }
    return p;
}

Fraction two_bridge_fraction(const Fraction& x, const Fraction& y) {
    if (y == 0) return x;
    ContinuedFraction cf = standard_cf(y);
    Fraction f = x;
    bool vertical_layer = false;
    for (std::size_t k = cf.terms.size(); k >= 1; --k) {
        const BigInt& a = cf.terms[k - 1];
        if (!vertical_layer) {
            f += Fraction(a);
        } else {
            if (f == 0) throw std::domain_error("degenerate two-bridge slide");
            Fraction inv = Fraction(1) / f + Fraction(a);
            if (inv == 0) throw std::domain_error("two-bridge closure is a split link");
            f = Fraction(1) / inv;
        }
        if (k == 1) break;
        vertical_layer = !vertical_layer;
    }
    // The innermost tangle is [0] after a horizontal layer and [inf] after a vertical one.
    if (vertical_layer) {
        if (f == 0) throw std::domain_error("two-bridge closure is a split link");
        return Fraction(-1) / f;
    }
    return f;
}

BuiltDiagram build_diagram(const MontesinosPresentation& m) {
    TangleBuilder b;
    std::optional<TangleBuilder::Tangle> acc;
    std::vector<int> group;
    for (std::size_t i = 0; i < m.slopes.size(); ++i) {
        auto t = b.rational(m.slopes[i]);
        acc = acc ? b.sum(*acc, t) : t;
        group.resize(b.crossings(), static_cast<int>(i));
    }
    if (m.framing != 0) acc = b.horizontal(acc ? *acc : b.zero(), m.framing);
    group.resize(b.crossings(), static_cast<int>(m.slopes.size()));
    if (!acc) throw std::invalid_argument("empty Montesinos presentation");
    b.numerator_closure(*acc);
    // Every crossing is drawn in the same frame, so the flat smoothing is a checkerboard state.
    State surface;
    for (int c = 0; c < b.crossings(); ++c) surface.push_back(b.flat_state(c));
    BuiltDiagram out = finish_built(b, surface, std::move(group));
    return out;
}

BuiltDiagram build_diagram(const PretzelPresentation& p) {
    if (p.twists.empty()) throw std::invalid_argument("empty pretzel presentation");
    TangleBuilder b;
    std::optional<TangleBuilder::Tangle> acc;
    std::vector<int> group;
    for (std::size_t i = 0; i < p.twists.size(); ++i) {
        auto col = b.vertical(b.infinity(), BigInt(p.twists[i]));
        acc = acc ? b.sum(*acc, col) : col;
        group.resize(b.crossings(), static_cast<int>(i));
    }
    b.numerator_closure(*acc);
    State surface;
    for (int c = 0; c < b.crossings(); ++c) surface.push_back(b.flat_state(c));
    return finish_built(b, surface, std::move(group));
}

Diagram rational_closure(const Fraction& q) {
    TangleBuilder b;
    auto t = b.rational(q);
    b.numerator_closure(t);
    return b.finish();
}

int WeightedPlanarGraph::face_count() const {
    // Darts (edge, end); the face successor of the dart arriving at vertex v along e is the
    // dart leaving v along the edge after e in the rotation at v.
    const int m = static_cast<int>(edges.size());
    std::vector<std::vector<std::pair<int, int>>> darts_at(vertices);  // (edge, end) in rotation order
    std::vector<int> used(2 * m, 0);
    for (int v = 0; v < vertices; ++v)
        for (int e : rotation[v]) {
            int end = (edges[e].u == v && !used[2 * e]) ? 0 : 1;
            used[2 * e + end] = 1;
            darts_at[v].push_back({e, end});
        }
    std::map<std::pair<int, int>, std::pair<int, int>> pos;  // dart -> (vertex, index)
    for (int v = 0; v < vertices; ++v)
        for (int i = 0; i < static_cast<int>(darts_at[v].size()); ++i) pos[darts_at[v][i]] = {v, i};
    std::vector<char> seen(2 * m, 0);
    int faces = 0;
    for (int d = 0; d < 2 * m; ++d) {
        if (seen[d]) continue;
        ++faces;
        int cur = d;
        while (!seen[cur]) {
            seen[cur] = 1;
            int e = cur / 2, end = cur % 2;
            auto [v, i] = pos.at({e, 1 - end});
            const auto& ring = darts_at[v];
            auto nxt = ring[(i + 1) % ring.size()];
            cur = 2 * nxt.first + nxt.second;
        }
    }
    return faces;
}

bool WeightedPlanarGraph::is_plane() const {
    if (static_cast<int>(rotation.size()) != vertices) return false;
    std::vector<int> count(edges.size(), 0);
    for (int v = 0; v < vertices; ++v)
        for (int e : rotation[v]) {
            if (e < 0 || e >= static_cast<int>(edges.size())) return false;
            if (edges[e].u != v && edges[e].v != v) return false;
            ++count[e];
        }
    for (int c : count)
        if (c != 2) return false;
    // connected
    std::vector<int> comp(vertices);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
    for (const auto& e : edges) comp[find(e.u)] = find(e.v);
    for (int v = 1; v < vertices; ++v)
        if (find(v) != find(0)) return false;
    return vertices - static_cast<int>(edges.size()) + face_count() == 2;
}

bool WeightedPlanarGraph::is_two_connected() const {
    if (vertices < 2) return false;
    for (const auto& e : edges)
        if (e.u == e.v) return false;
    for (int cut = -1; cut < vertices; ++cut) {
        std::vector<int> comp(vertices);
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
        for (const auto& e : edges)
            if (e.u != cut && e.v != cut) comp[find(e.u)] = find(e.v);
        int root = -1;
        for (int v = 0; v < vertices; ++v) {
            if (v == cut) continue;
            if (root < 0) root = find(v);
            else if (find(v) != root) return false;
        }
    }
    return true;
}

WeightedPlanarGraph parse_graph(std::string_view text) {
    WeightedPlanarGraph g;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_vertices = false;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("graph line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "vertices") {
            if (!(ls >> g.vertices) || g.vertices < 1) fail("bad vertex count");
            g.rotation.assign(g.vertices, {});
            have_vertices = true;
        } else if (key == "edge") {
            WeightedPlanarGraph::Edge e;
            if (!(ls >> e.u >> e.v >> e.weight)) fail("expected 'edge u v w'");
            if (!have_vertices || e.u < 0 || e.v < 0 || e.u >= g.vertices || e.v >= g.vertices)
                fail("edge endpoint out of range");
            if (e.weight == 0) fail("edge weight must be nonzero");
            g.edges.push_back(e);
        } else if (key == "rotation") {
            int v;
            std::string colon;
            if (!(ls >> v) || !have_vertices || v < 0 || v >= g.vertices) fail("bad rotation vertex");
            int e;
            while (ls >> e) g.rotation[v].push_back(e);
            if (!ls.eof()) fail("bad rotation entry");
        } else {
            fail("unknown keyword '" + key + "'");
        }
    }
    if (!have_vertices) throw std::invalid_argument("graph has no 'vertices' line");
    if (!g.is_plane()) throw std::invalid_argument("rotation system is not a connected plane embedding");
    return g;
}

std::string serialize_graph(const WeightedPlanarGraph& g) {
    std::string out = "vertices " + std::to_string(g.vertices) + "\n";
    for (const auto& e : g.edges)
        out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.weight) + "\n";
    for (int v = 0; v < g.vertices; ++v) {
        out += "rotation " + std::to_string(v);
        for (int e : g.rotation[v]) out += " " + std::to_string(e);
        out += "\n";
    }
    return out;
}

WeightedPlanarGraph theta_graph(const std::vector<int>& weights) {
    WeightedPlanarGraph g;
    g.vertices = 2;
    g.rotation.assign(2, {});
    const int k = static_cast<int>(weights.size());
    for (int i = 0; i < k; ++i) g.edges.push_back({0, 1, weights[i]});
    for (int i = 0; i < k; ++i) g.rotation[0].push_back(i);
    for (int i = k - 1; i >= 0; --i) g.rotation[1].push_back(i);
    return g;
}

BuiltDiagram build_diagram(const WeightedPlanarGraph& g) {
    if (!g.is_plane()) throw std::invalid_argument("graph is not a plane embedding");
    if (!g.is_two_connected()) throw std::invalid_argument("graph is not 2-connected");
    TangleBuilder b;
    // Each edge is a column of |w| crossings running from u (bottom) to v (top).
    struct Column {
        int bottom_left, bottom_right, top_left, top_right;
    };
    std::vector<Column> cols;
    std::vector<int> group;
    for (const auto& e : g.edges) {
        std::optional<TangleBuilder::Tangle> col;
        for (int i = 0; i < std::abs(e.weight); ++i) {
            auto x = b.crossing(e.weight > 0 ? 1 : -1, TangleBuilder::Vertical);
            col = col ? b.vprod(x, *col) : x;  // new crossing sits above
        }
        group.resize(b.crossings(), static_cast<int>(cols.size()));
        // ends: NW, NE are the top; SW, SE the bottom
        cols.push_back({col->ends[2], col->ends[3], col->ends[0], col->ends[1]});
    }
    // Around each vertex in counterclockwise order, the right side of one edge meets the
    // left side of the next. Seen from u the column's left is SW; seen from v it is NE.
    struct Side {
        int left, right;
    };
    std::vector<char> used_end(2 * g.edges.size(), 0);
    std::vector<std::vector<Side>> around(g.vertices);
    for (int v = 0; v < g.vertices; ++v)
        for (int e : g.rotation[v]) {
            int end = (g.edges[e].u == v && !used_end[2 * e]) ? 0 : 1;
            used_end[2 * e + end] = 1;
            const auto& c = cols[e];
            around[v].push_back(end == 0 ? Side{c.bottom_left, c.bottom_right} : Side{c.top_right, c.top_left});
        }
    for (int v = 0; v < g.vertices; ++v) {
        const auto& ring = around[v];
        for (std::size_t i = 0; i < ring.size(); ++i) b.join(ring[i].left, ring[(i + 1) % ring.size()].right);
    }
    State surface;
    for (int c = 0; c < b.crossings(); ++c) surface.push_back(b.flat_state(c));
    return finish_built(b, surface, std::move(group));
}

Diagram torus_diagram(int p, int q) {
    if (p < 2 || q == 0) throw std::invalid_argument("torus diagram needs p >= 2 and q != 0");
    // Strands run upward. At s_i the strand from the lower left crosses to the upper right.
    std::vector<int> at(p);
    std::iota(at.begin(), at.end(), 1);
    const std::vector<int> bottom = at;
    int next = p + 1;
    std::vector<std::array<int, 4>> tuples;
    const int letters = (p - 1) * std::abs(q);
    for (int k = 0; k < letters; ++k) {
        int i = k % (p - 1);
        int sw = at[i], se = at[i + 1];
        int nw = next++, ne = next++;
        if (q > 0) tuples.push_back({se, ne, nw, sw});  // over strand SW-NE
        else tuples.push_back({sw, se, ne, nw});        // over strand SE-NW
        at[i] = nw;
        at[i + 1] = ne;
    }
    std::map<int, int> close;
    for (int i = 0; i < p; ++i) close[at[i]] = bottom[i];
    for (auto& t : tuples)
        for (int& x : t)
            if (auto it = close.find(x); it != close.end()) x = it->second;
    std::vector<int> used;
    for (const auto& t : tuples) used.insert(used.end(), t.begin(), t.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<int, int> rank;
    for (std::size_t i = 0; i < used.size(); ++i) rank[used[i]] = static_cast<int>(i);
    for (auto& t : tuples)
        for (int& x : t) x = rank[x];
    return Diagram::from_tuples(tuples, used);
}

}  // namespace nw

namespace nw {

std::optional<WeightedPlanarGraph> checkerboard_graph(const Diagram& d, const State& s) {
    const int n = d.crossing_count();
    if (static_cast<int>(s.size()) != n || n == 0) return std::nullopt;
    auto shaded = [&](Slot corner) {
        return smoothing_partner(s[corner.crossing], corner.slot) == (corner.slot + 1) % 4;
    };
    WeightedPlanarGraph g;
    std::vector<std::array<int, 2>> ends(n, {-1, -1});
    for (const Face& f : d.faces()) {
        bool first = shaded(f.corners[0]);
        for (const Slot& c : f.corners)
            if (shaded(c) != first) return std::nullopt;
        if (!first) continue;
        const int v = g.vertices++;
        g.rotation.emplace_back();
        for (auto it = f.corners.rbegin(); it != f.corners.rend(); ++it) {
            auto& e = ends[it->crossing];
            e[e[0] < 0 ? 0 : 1] = v;
            g.rotation[v].push_back(it->crossing);
        }
    }
    for (int c = 0; c < n; ++c) g.edges.push_back({ends[c][0], ends[c][1], -s[c]});

    // Merge the two bands at a disk of degree two into one.
    for (bool merged = true; merged;) {
        merged = false;
        for (int v = 0; v < g.vertices && !merged; ++v) {
            if (g.rotation[v].size() != 2) continue;
            int e1 = g.rotation[v][0], e2 = g.rotation[v][1];
            if (e1 == e2) continue;
            auto other = [&](int e) { return g.edges[e].u == v ? g.edges[e].v : g.edges[e].u; };
            int a = other(e1), b = other(e2);
            if (a == v || b == v || a == b) continue;
            g.edges[e1] = {a, b, g.edges[e1].weight + g.edges[e2].weight};
            std::replace(g.rotation[b].begin(), g.rotation[b].end(), e2, e1);
            g.rotation[v].clear();
            g.edges[e2] = {-1, -1, 0};
            merged = true;
        }
    }
    // Renumber what is left.
    std::vector<int> vmap(g.vertices, -1), emap(g.edges.size(), -1);
    WeightedPlanarGraph out;
    for (int v = 0; v < g.vertices; ++v)
        if (!g.rotation[v].empty()) vmap[v] = out.vertices++;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].u >= 0) {
            emap[e] = static_cast<int>(out.edges.size());
            out.edges.push_back({vmap[g.edges[e].u], vmap[g.edges[e].v], g.edges[e].weight});
        }
    for (int v = 0; v < g.vertices; ++v) {
        if (vmap[v] < 0) continue;
        out.rotation.emplace_back();
        for (int e : g.rotation[v]) out.rotation.back().push_back(emap[e]);
    }
    return out;
}

}  // namespace nw
