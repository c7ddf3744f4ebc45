#pragma once

// Independent reference computations used only by the tests.

#include "neuwirth/diagram.hpp"
#include "neuwirth/states.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Laurent = std::map<int, long long>;

inline void add_to(Laurent& acc, const Laurent& p, long long scale = 1) {
    for (auto [k, v] : p) {
        acc[k] += scale * v;
        if (acc[k] == 0) acc.erase(k);
    }
}

inline Laurent multiply(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (auto [i, x] : a)
        for (auto [j, y] : b) {
            out[i + j] += x * y;
            if (out[i + j] == 0) out.erase(i + j);
        }
    return out;
}

inline int count_loops(const std::vector<std::array<int, 4>>& pd, int edges, std::uint64_t mask) {
    std::vector<int> p(edges);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (std::size_t c = 0; c < pd.size(); ++c) {
        const auto& t = pd[c];
        if (!((mask >> c) & 1)) {
            p[find(t[0])] = find(t[1]);
            p[find(t[2])] = find(t[3]);
        } else {
            p[find(t[0])] = find(t[3]);
            p[find(t[1])] = find(t[2]);
        }
    }
    int n = 0;
    for (int e = 0; e < edges; ++e) n += find(e) == e;
    return n;
}

// Kauffman bracket by the state sum: sum over states of A^(#A - #B) d^(loops - 1), d = -A^2 - A^-2.
inline Laurent bracket(const nw::Diagram& d) {
    const int n = d.crossing_count();
    std::vector<std::array<int, 4>> pd;
    for (int c = 0; c < n; ++c) pd.push_back(d.tuple(c));
    Laurent loop{{2, -1}, {-2, -1}};
    std::vector<Laurent> powers{{{0, 1}}};
    for (int k = 1; k <= n + 1; ++k) powers.push_back(multiply(powers.back(), loop));
    Laurent out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int b = __builtin_popcountll(mask), a = n - b;
        int loops = count_loops(pd, d.edge_count(), mask);
        Laurent term = multiply(powers[loops - 1], Laurent{{a - b, 1}});
        add_to(out, term);
    }
    return out;
}

// Writhe-normalised bracket, an invariant of oriented links.
inline Laurent normalized_bracket(const nw::Diagram& d) {
    int w = d.writhe();
    Laurent f{{-3 * w, (w % 2 == 0) ? 1 : -1}};
    return multiply(f, bracket(d));
}

inline Laurent mirror_poly(const Laurent& p) {
    Laurent out;
    for (auto [k, v] : p) out[-k] = v;
    return out;
}

// |<D>| at A = exp(i pi / 4): only single-loop states survive since d vanishes there.
inline long long determinant(const nw::Diagram& d) {
    const int n = d.crossing_count();
    std::vector<std::array<int, 4>> pd;
    for (int c = 0; c < n; ++c) pd.push_back(d.tuple(c));
    std::complex<double> sum = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (count_loops(pd, d.edge_count(), mask) != 1) continue;
        int b = __builtin_popcountll(mask), a = n - b;
        sum += std::polar(1.0, M_PI / 4 * (a - b));
    }
    return std::llround(std::abs(sum));
}

// Orientability by a geometric model: put the base face at infinity, let each state loop bound
// the disk on its far side, stack nested disks. A half-twisted band is compatible with equal
// disk normals when its loops are nested and with opposite normals when they are disjoint.
inline bool orientable_by_nesting(const nw::Diagram& d, const nw::State& s, int base_face = 0) {
    using nw::Slot;
    const int n = d.crossing_count();
    auto faces = d.faces();
    std::vector<int> face_of(4 * n);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (auto c : faces[f].corners) face_of[4 * c.crossing + c.slot] = f;
    // Regions of S^2 minus the loops: faces merged through the smoothing channels.
    std::vector<int> p(faces.size());
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (int c = 0; c < n; ++c) {
        int w = s[c] > 0 ? 1 : 0;  // channel joins wedges w and w+2
        p[find(face_of[4 * c + w])] = find(face_of[4 * c + w + 2]);
    }
    nw::StateLoops loops = nw::smooth(d, s);
    const int m = loops.count;
    std::vector<std::pair<int, int>> sides(m, {-1, -1});
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) {
            int e = d.tuple(c)[(k + 1) % 4];
            int a = find(face_of[4 * c + k]), b = find(face_of[4 * c + (k + 1) % 4]);
            sides[loops.loop_of_edge[e]] = {a, b};
        }
    // Region tree rooted at the base region; each loop is a tree edge.
    std::map<int, std::vector<std::pair<int, int>>> tree;
    for (int i = 0; i < m; ++i) {
        tree[sides[i].first].push_back({sides[i].second, i});
        tree[sides[i].second].push_back({sides[i].first, i});
    }
    std::vector<int> parent_loop_of_region(faces.size(), -1), loop_parent(m, -1);
    std::vector<int> stack{find(base_face)};
    std::vector<char> seen(faces.size(), 0);
    seen[find(base_face)] = 1;
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        for (auto [q, i] : tree[r]) {
            if (seen[q]) continue;
            seen[q] = 1;
            parent_loop_of_region[q] = i;
            loop_parent[i] = parent_loop_of_region[r];
            stack.push_back(q);
        }
    }
    auto nested = [&](int i, int j) {
        for (int a = loop_parent[i]; a >= 0; a = loop_parent[a])
            if (a == j) return true;
        for (int a = loop_parent[j]; a >= 0; a = loop_parent[a])
            if (a == i) return true;
        return false;
    };
    for (std::uint64_t normals = 0; normals < (std::uint64_t{1} << m); ++normals) {
        bool ok = true;
        for (int c = 0; c < n && ok; ++c) {
            int u = loops.incidence[c][0], v = loops.incidence[c][1];
            if (u == v) {
                ok = false;
                break;
            }
            bool equal = ((normals >> u) & 1) == ((normals >> v) & 1);
            ok = nested(u, v) ? equal : !equal;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace oracle
