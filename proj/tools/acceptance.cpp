#include "neuwirth/census.hpp"
#include "neuwirth/decide.hpp"
#include "neuwirth/normal.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

using namespace nw;

namespace {

std::string data_dir = NEUWIRTH_DATA_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string join(const std::set<std::string>& s) {
    std::string out = "{";
    for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + x;
    return out + "}";
}

std::set<std::string> failures(const CensusReport& r) { return {r.failures.begin(), r.failures.end()}; }

Outcome fractions() {
    ContinuedFraction cf{{3, 2, 4}};
    bool example = fraction_of(cf) == Fraction(31, 7);
    long checked = 0, bad = 0;
    for (int q = 1; q <= 1000; ++q)
        for (int p = -1000; p <= 1000; ++p) {
            if (p == 0 || std::gcd(p, q) != 1) continue;
            ContinuedFraction c = standard_cf(Fraction(p, q));
            Fraction back = fraction_of(c);
            bad += !c.is_standard() || numerator(back) != p || denominator(back) != q;
            ++checked;
        }
    return {example && bad == 0, "fraction_of((3,2,4)) = " + to_string(fraction_of(cf)) + ", round trip " +
                                     std::to_string(checked - bad) + "/" + std::to_string(checked)};
}

bool sign_uniform_blocks(const StateGraph& g, const State& s, std::size_t count) {
    if (g.blocks.size() != count) return false;
    for (const auto& b : g.blocks)
        for (int c : b)
            if (s[c] != s[b.front()]) return false;
    return true;
}

Outcome figure_eight() {
    Diagram d = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]");
    State named = parse_state("--++", 4);
    auto c = check_state(d, named);
    bool named_ok = c.adequate && c.homogeneous && !c.is_seifert && sign_uniform_blocks(state_graph(d, named), named, 2);
    // Any numbering of the crossings: search every state.
    int matches = 0, two_block = 0;
    for (int mask = 0; mask < 16; ++mask) {
        State s(4);
        for (int i = 0; i < 4; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
        auto k = check_state(d, s);
        if (!k.adequate || !k.homogeneous || !sign_uniform_blocks(state_graph(d, s), s, 2)) continue;
        ++two_block;
        matches += !k.is_seifert;
    }
    std::ostringstream out;
    out << "state --++: adequate " << c.adequate << " homogeneous " << c.homogeneous << " non-Seifert "
        << !c.is_seifert << "; adequate homogeneous two-block states " << two_block << ", non-Seifert among them "
        << matches;
    return {named_ok || matches > 0, out.str()};
}

bool listed_exception(int p1, int p2, int p3) {
    int lo = std::min(p2, p3), hi = std::max(p2, p3);
    if (p1 != 2) return false;
    if (lo == 3 && hi <= 5) return true;
    return lo == 2 && hi % 2 == 1;
}

Outcome pretzels() {
    int agree = 0, total = 0;
    for (int p1 = 2; p1 <= 9; ++p1)
        for (int p2 = 2; p2 <= 9; ++p2)
            for (int p3 = 2; p3 <= 9; ++p3) {
                ++total;
                agree += pretzel_essential(PretzelPresentation{{-p1, p2, p3}}).essential() ==
                         !listed_exception(p1, p2, p3);
            }
    bool p433 = pretzel_essential(PretzelPresentation{{-4, 3, 3}}).essential();
    return {agree == total && p433,
            std::to_string(agree) + "/" + std::to_string(total) + " verdicts match, P(-4,3,3) essential " +
                (p433 ? "yes" : "no")};
}

bool same_up_to_mirror(const Diagram& a, const Diagram& b) {
    auto pa = normalized_bracket(a), pb = normalized_bracket(b);
    return pa == pb || pa == mirror_polynomial(pb);
}

Outcome montesinos() {
    std::vector<Fraction> fr;
    for (int q = 2; q <= 9; ++q)
        for (int p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) {
                fr.push_back(Fraction(p, q));
                fr.push_back(Fraction(-p, q));
            }
    std::sort(fr.begin(), fr.end());
    const int n = static_cast<int>(fr.size());
    int knots = 0, reroutes = 0, certified = 0;
    std::string first_failure;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c)
                for (int order = 0; order < (b == c ? 1 : 2); ++order) {
                    MontesinosPresentation m{{fr[a], order ? fr[c] : fr[b], order ? fr[b] : fr[c]}, 0};
                    Diagram d = build_diagram(m).diagram;
                    if (d.component_count() != 1) continue;
                    ++knots;
                    auto o = montesinos_certify(m);
                    bool ok = false;
                    if (o.certificate) {
                        Validation v = validate_certificate(*o.certificate);
                        if (v.valid && o.certificate->route == Route::TorusKnotAnnulus) {
                            ++reroutes;
                            continue;
                        }
                        ok = v.valid && v.surface && !v.surface->orientable && v.surface->boundary_slope &&
                             *v.surface->boundary_slope % 2 == 0 && same_up_to_mirror(d, *o.certificate->diagram);
                    }
                    certified += ok;
                    if (!ok && first_failure.empty()) first_failure = to_string(m);
                }
    std::string detail = std::to_string(certified) + "/" + std::to_string(knots - reroutes) +
                         " non-torus knots certified (" + std::to_string(reroutes) + " torus reroutes)";
    if (!first_failure.empty()) detail += ", first failure " + first_failure;
    return {certified == knots - reroutes, detail};
}

std::vector<CensusRoute> all_routes() {
    auto r = default_census_routes();
    r.push_back(CensusRoute::Exhaustive);
    return r;
}

Outcome census_small() {
    auto table = load_table(data_dir + "/rolfsen.txt");
    CensusOptions sigma;
    sigma.routes = {CensusRoute::Sigma};
    auto s = failures(run_census(table, sigma));
    CensusOptions all;
    all.routes = all_routes();
    auto report = run_census(table, all);
    auto f = failures(report);
    const std::set<std::string> expected{"8_19", "10_124", "10_128", "10_134", "10_139", "10_142"};
    std::map<std::string, std::string> expected_route{{"8_19", "torus"},        {"10_124", "torus"},
                                                      {"10_128", "montesinos"}, {"10_139", "montesinos"},
                                                      {"10_142", "pretzel"}};
    bool routes_ok = true;
    for (const auto& r : report.results)
        if (auto it = expected_route.find(r.name); it != expected_route.end())
            routes_ok = routes_ok && r.route && to_string(*r.route) == it->second;
    return {s == expected && f.empty() && routes_ok,
            "sigma-only failures " + join(s) + ", all-route failures " + join(f) + ", named fixes " +
                (routes_ok ? "as stated" : "differ")};
}

Outcome census_eleven() {
    auto table = load_table(data_dir + "/k11.txt");
    CensusOptions all;
    all.routes = all_routes();
    auto f = failures(run_census(table, all));
    const std::set<std::string> open{"K11n118", "K11n126"};
    bool subset = std::includes(open.begin(), open.end(), f.begin(), f.end());
    bool both = f.count("K11n118") && f.count("K11n126");
    return {subset && both, "all-route failures " + join(f) + " (subset " + (subset ? "yes" : "no") +
                                ", contains both " + (both ? "yes" : "no") + ")"};
}

int curves_by_walking(const Triangulation& t, const std::vector<int>& label) {
    std::map<int, std::vector<int>> adj;
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            if (!t.gluing(i, f).boundary()) continue;
            std::vector<int> hit;
            for (int e = 0; e < 6; ++e) {
                auto [a, b] = kEdgeVertices[e];
                if (a != f && b != f && label[t.edge_class(i, e)]) hit.push_back(t.edge_class(i, e));
            }
            if (hit.size() == 2) {
                adj[hit[0]].push_back(hit[1]);
                adj[hit[1]].push_back(hit[0]);
            }
        }
    std::set<int> seen;
    int curves = 0;
    for (const auto& [start, next] : adj) {
        if (!seen.insert(start).second) continue;
        ++curves;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (seen.insert(w).second) q.push(w);
        }
    }
    return curves;
}

std::set<int> corners(const Piece& p) {
    std::set<int> out;
    for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVertices[e];
        if (p.kind == Piece::Triangle && (a == p.vertex || b == p.vertex)) out.insert(e);
        if (p.kind == Piece::Quad && e != p.split && e != 5 - p.split) out.insert(e);
    }
    return out;
}

bool run_holds(const Triangulation& t, const Subcomplex& x) {
    NormalRun run = run_normal_pipeline(t, x);
    const auto& label = run.labeling.label;
    for (int f = 0; f < t.face_count(); ++f) {
        int sum = 0;
        for (int e : t.face_edges(f)) sum += label[e];
        if (sum % 2) return false;
    }
    for (int e : x.edges)
        if (label[e]) return false;
    for (int i = 0; i < t.size(); ++i) {
        std::set<int> ones;
        for (int e = 0; e < 6; ++e)
            if (label[t.edge_class(i, e)]) ones.insert(e);
        if (corners(run.surface.pieces[i]) != ones) return false;
        if (x.tets.count(i) && run.surface.pieces[i].kind != Piece::Empty) return false;
    }
    int curves = curves_by_walking(t, label);
    int loops = static_cast<int>(boundary_trace(t, x).size());
    bool bound = run.report.x_separating ? 2 * curves <= loops : curves <= loops;
    return bound && curves == run.report.boundary_curves && run.report.ok();
}

Outcome normal_surfaces() {
    int valid = 0, matched = 0;
    for (int mask = 0; mask < 64; ++mask) {
        std::array<int, 6> l{};
        for (int e = 0; e < 6; ++e) l[e] = (mask >> e) & 1;
        bool parity = true;
        for (int f = 0; f < 4; ++f) {
            int sum = 0;
            for (int e = 0; e < 6; ++e)
                if (kEdgeVertices[e][0] != f && kEdgeVertices[e][1] != f) sum += l[e];
            parity = parity && sum % 2 == 0;
        }
        auto p = classify_tetrahedron(l);
        if (p.has_value() != parity) return {false, "classification disagrees with face parity"};
        if (!p) continue;
        ++valid;
        int ones = std::accumulate(l.begin(), l.end(), 0);
        bool pattern = ones == 0 ? p->kind == Piece::Empty
                       : ones == 3 ? p->kind == Piece::Triangle
                       : ones == 4 ? p->kind == Piece::Quad && !l[p->split] && !l[5 - p->split]
                                   : false;
        matched += pattern;
    }
    int runs = 0, held = 0;
    for (const char* file : {"lst123.tri", "solid_torus_disk.tri", "solid_torus_two_disks.tri"}) {
        std::ifstream in(data_dir + "/triangulations/" + file);
        std::stringstream ss;
        ss << in.rdbuf();
        auto tf = parse_triangulation(ss.str());
        ++runs;
        held += run_holds(tf.triangulation, *tf.subcomplex);
    }
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int sides = 3 + static_cast<int>(rng() % 4), layers = 4 + static_cast<int>(rng() % 5);
        const int per = sides + 1;
        auto st = solid_torus(sides, layers);
        std::vector<bool> disk(layers, false);
        for (int l = 0; l < layers; ++l)
            if (rng() % 3 == 0 && (l == 0 || !disk[l - 1]) && !(l == layers - 1 && disk[0])) disk[l] = true;
        if (std::count(disk.begin(), disk.end(), true) == 0) disk[0] = true;
        Subcomplex x = full_subcomplex(st.triangulation, st.labels, [&](int v) { return disk[v / per]; });
        ++runs;
        held += run_holds(st.triangulation, x);
    }
    return {valid == 8 && matched == 8 && held == runs,
            std::to_string(matched) + "/" + std::to_string(valid) + " tetrahedron labelings match a pattern, " +
                std::to_string(held) + "/" + std::to_string(runs) + " triangulations satisfy the guarantees"};
}

// Slope by crossing count: each crossing smoothed against its Seifert smoothing adds 2 sign(c).
int slope_by_crossings(const Diagram& d, const State& s) {
    int slope = 0;
    for (int c = 0; c < d.crossing_count(); ++c) {
        int seifert = d.sign(c) > 0 ? 1 : -1;
        if (s[c] != seifert) slope += 2 * d.sign(c);
    }
    return slope;
}

Outcome slopes() {
    int tables = 0, zero = 0, agree = 0, compared = 0;
    for (const char* f : {"/rolfsen.txt", "/k11.txt"})
        for (const auto& e : load_table(data_dir + f)) {
            ++tables;
            zero += boundary_slope(e.diagram, seifert_state(e.diagram)) == 0;
            for (const State& s : checkerboard_states(e.diagram)) {
                ++compared;
                agree += boundary_slope(e.diagram, s) == slope_by_crossings(e.diagram, s);
            }
        }
    Diagram right = mirror(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"));
    State mobius = all_state(right, -1);
    int trefoil = boundary_slope(right, mobius);
    bool mobius_ok = !is_orientable(right, mobius) && trefoil == 6 && slope_by_crossings(right, mobius) == 6;
    Diagram f8 = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]");
    auto cb = checkerboard_states(f8);
    std::set<int> f8s{boundary_slope(f8, cb[0]), boundary_slope(f8, cb[1])};
    std::set<int> f8o{slope_by_crossings(f8, cb[0]), slope_by_crossings(f8, cb[1])};
    bool f8_ok = f8s == std::set<int>{-4, 4} && f8o == f8s;
    std::ostringstream out;
    out << "Seifert slope 0 on " << zero << "/" << tables << " table diagrams, trefoil Mobius band " << trefoil
        << ", figure-8 checkerboards {" << *f8s.begin() << ", " << *f8s.rbegin() << "}, crossing-count oracle agrees on "
        << agree << "/" << compared << " checkerboard surfaces";
    return {zero == tables && mobius_ok && f8_ok && agree == compared, out.str()};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) data_dir = argv[1];
    struct Criterion {
        std::string name;
        std::function<Outcome()> run;
        double limit;  // seconds
    };
    const std::vector<Criterion> criteria{
        {"continued fractions", fractions, 1},
        {"figure-8 example state", figure_eight, 1},
        {"pretzel decision", pretzels, 1},
        {"Montesinos certifier", montesinos, 60},
        {"census up to 10 crossings", census_small, 10},
        {"census at 11 crossings", census_eleven, 60},
        {"normal surface pipeline", normal_surfaces, 5},
        {"boundary slopes", slopes, 1},
    };
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream time;
        time.precision(3);
        time << std::fixed << s << " s";
        if (s > criteria[i].limit) {
            o.pass = false;
            time << ", over the " << criteria[i].limit << " s limit";
        }
        passed += o.pass;
        std::cout << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].name << ": " << o.detail << " ["
                  << time.str() << "]" << std::endl;
    }
    std::cout << passed << "/" << criteria.size() << " criteria pass" << std::endl;
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
