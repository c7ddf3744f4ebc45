#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "neuwirth/tangles.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace nw;

namespace {

// det N(e + sum p_i/q_i) = |prod q_i * (e + sum p_i/q_i)|
long long montesinos_det(const MontesinosPresentation& m) {
    Fraction t = m.total();
    BigInt prod = 1;
    for (const auto& r : m.slopes) prod *= denominator(r);
    Fraction v = t * Fraction(prod);
    return static_cast<long long>(abs(numerator(v)));
}

MontesinosPresentation random_presentation(std::mt19937& rng, int n, int maxden) {
    std::uniform_int_distribution<int> den(2, maxden);
    MontesinosPresentation m;
    while (static_cast<int>(m.slopes.size()) < n) {
        int q = den(rng);
        std::uniform_int_distribution<int> num(-2 * q, 2 * q);
        int p = num(rng);
        if (p == 0 || p % q == 0) continue;
        m.slopes.push_back(Fraction(p, q));
    }
    return m;
}

}  // namespace

TEST_CASE("rational closures have determinant |p|") {
    for (int q = 1; q <= 9; ++q)
        for (int p = -12; p <= 12; ++p) {
            if (p == 0 || std::gcd(p, q) != 1) continue;
            Diagram d = rational_closure(Fraction(p, q));
            CHECK(oracle::determinant(d) == std::abs(p));
            CHECK(is_alternating(d));
        }
}

TEST_CASE("Montesinos diagrams match the determinant formula, signs included") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + trial % 4;
        MontesinosPresentation m = random_presentation(rng, n, n <= 2 ? 7 : 4);
        if (trial % 5 == 0) m.framing = trial % 3 - 1;
        BuiltDiagram b = build_diagram(m);
        if (b.diagram.crossing_count() > 16) continue;
        INFO(to_string(m));
        CHECK(euler_check(b.diagram));
        CHECK(oracle::determinant(b.diagram) == montesinos_det(m));
    }
    // one mixed-sign pair that separates the conventions
    CHECK(oracle::determinant(build_diagram(parse_montesinos("M(1/2,1/3)")).diagram) == 5);
    CHECK(oracle::determinant(build_diagram(parse_montesinos("M(-1/2,1/3)")).diagram) == 1);
}

TEST_CASE("positive slopes give alternating diagrams") {
    for (const char* s : {"M(3/7,1/2,1/3)", "M(2/5,3/4,1/3,5/7)", "M(31/7,2/3)"}) {
        Diagram d = build_diagram(parse_montesinos(s)).diagram;
        CHECK(is_alternating(d));
        CHECK(is_alternating(mirror(d)));
    }
}

TEST_CASE("pretzel diagrams") {
    BuiltDiagram b = build_diagram(parse_pretzel("P(-2,3,5)"));
    CHECK(b.diagram.crossing_count() == 10);
    CHECK(b.diagram.component_count() == 1);
    CHECK(oracle::determinant(b.diagram) == 1);
    // Pretzel surface: two disks and three twisted bands.
    CHECK(surface_summary(b.diagram, b.surface).euler_characteristic == -1);
    State other = b.surface;
    for (int& v : other) v = -v;
    CHECK(surface_summary(b.diagram, other).euler_characteristic == -7);
    CHECK(((b.checkerboard[0] == b.surface) || (b.checkerboard[1] == b.surface)));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> tw(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        PretzelPresentation p;
        int n = 1 + trial % 4, total = 0;
        while (static_cast<int>(p.twists.size()) < n) {
            int t = tw(rng);
            if (t == 0) continue;
            p.twists.push_back(t);
            total += std::abs(t);
        }
        BuiltDiagram d = build_diagram(p);
        CHECK(d.diagram.crossing_count() == total);
        if (total <= 14) CHECK(oracle::determinant(d.diagram) == montesinos_det(to_montesinos(p)));
    }
}

TEST_CASE("theta graph gives the pretzel diagram") {
    for (std::vector<int> w : {std::vector<int>{-2, 3, 5}, {3, 3, 3}, {-1, 2, 4}, {2, -3, 2, 5}}) {
        BuiltDiagram g = build_diagram(theta_graph(w));
        BuiltDiagram p = build_diagram(PretzelPresentation{w});
        CHECK(isomorphic(g.diagram, p.diagram));
        CHECK(surface_summary(g.diagram, g.surface).euler_characteristic ==
              surface_summary(p.diagram, p.surface).euler_characteristic);
    }
}

TEST_CASE("weighted edges and torus links") {
    // A single edge is one twisted band between two disks: an unknot.
    WeightedPlanarGraph g;
    g.vertices = 2;
    g.edges = {{0, 1, 5}};
    g.rotation = {{0}, {0}};
    CHECK(g.is_plane());
    BuiltDiagram one = build_diagram(g);
    CHECK(one.diagram.crossing_count() == 5);
    CHECK(oracle::determinant(one.diagram) == 1);
    // n parallel edges of weight 1 give the (2,n) torus link.
    for (int n = 2; n <= 7; ++n) {
        BuiltDiagram b = build_diagram(theta_graph(std::vector<int>(n, 1)));
        CHECK(b.diagram.crossing_count() == n);
        CHECK(b.diagram.component_count() == (n % 2 ? 1 : 2));
        CHECK(oracle::determinant(b.diagram) == n);
        CHECK(is_alternating(b.diagram));
    }
    // Two parallel edges of weights 3 and 2 close up to the (2,5) torus knot.
    BuiltDiagram b = build_diagram(theta_graph({3, 2}));
    CHECK(b.diagram.crossing_count() == 5);
    CHECK(oracle::determinant(b.diagram) == 5);
    // A path is not 2-connected.
    WeightedPlanarGraph path;
    path.vertices = 3;
    path.edges = {{0, 1, 3}, {1, 2, 3}};
    path.rotation = {{0}, {0, 1}, {1}};
    CHECK(path.is_plane());
    CHECK_FALSE(path.is_two_connected());
    CHECK_THROWS_AS(build_diagram(path), std::invalid_argument);
}

TEST_CASE("graph text format") {
    const char* text =
        "# theta\n"
        "vertices 2\n"
        "edge 0 1 -2\n"
        "edge 0 1 3\n"
        "edge 0 1 3\n"
        "rotation 0 0 1 2\n"
        "rotation 1 2 1 0\n";
    WeightedPlanarGraph g = parse_graph(text);
    CHECK(g.vertices == 2);
    CHECK(g.face_count() == 3);
    CHECK(g.is_two_connected());
    CHECK(serialize_graph(parse_graph(serialize_graph(g))) == serialize_graph(g));
    CHECK_THROWS_AS(parse_graph("vertices 2\nedge 0 1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("vertices 2\nedge 0 1 2\nrotation 0 0\n"), std::invalid_argument);
    const char* k4_plane =
        "vertices 4\n"
        "edge 0 1 3\nedge 0 2 3\nedge 0 3 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n"
        "rotation 0 0 1 2\nrotation 1 0 4 3\nrotation 2 1 3 5\nrotation 3 2 5 4\n";
    CHECK(parse_graph(k4_plane).face_count() == 4);
    // Listing every vertex in increasing edge order gives a rotation system of genus one.
    const char* k4_torus =
        "vertices 4\n"
        "edge 0 1 3\nedge 0 2 3\nedge 0 3 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n"
        "rotation 0 0 1 2\nrotation 1 0 3 4\nrotation 2 1 3 5\nrotation 3 2 4 5\n";
    CHECK_THROWS_AS(parse_graph(k4_torus), std::invalid_argument);
}

TEST_CASE("presentation parsing") {
    MontesinosPresentation m = parse_montesinos("M(3/7,-1/2,1/3)");
    CHECK(m.slopes.size() == 3);
    CHECK(m.negatives() == 1);
    CHECK(to_string(m) == "M(3/7,-1/2,1/3)");
    CHECK(to_string(parse_montesinos("M(2; 1/3, 1/5)")) == "M(2;1/3,1/5)");
    CHECK(to_string(parse_pretzel("P(-2, 3, 7)")) == "P(-2,3,7)");
    CHECK_THROWS_AS(parse_montesinos("M(0,1/2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_montesinos("M()"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pretzel("P(1/2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pretzel("Q(1,2)"), std::invalid_argument);
}

TEST_CASE("deform") {
    CHECK(deform(Fraction(-1, 2), Fraction(1, 3)) == std::pair{Fraction(1, 2), Fraction(-2, 3)});
    CHECK(deform(Fraction(-3, 7), Fraction(2, 5)) == std::pair{Fraction(4, 7), Fraction(-3, 5)});
    CHECK_THROWS_AS(deform(Fraction(1, 2), Fraction(1, 3)), std::invalid_argument);
    // Sub-slope identities: the slopes of the two twist regions are -r1/(1-r1) and r2/(1-r2).
    for (int q = 2; q <= 9; ++q)
        for (int p = 1; p < q; ++p) {
            Fraction r(p, q);
            auto [a, b] = deform(-r, r);
            CHECK(-r / (1 - r) == -r / a);
            CHECK(r / (1 - r) == -r / b);
        }
    // The deformed presentation is the same link.
    MontesinosPresentation before = parse_montesinos("M(-1/2,2/5,1/3)");
    auto [x, y] = deform(before.slopes[0], before.slopes[1]);
    MontesinosPresentation after{{x, y, before.slopes[2]}, 0};
    CHECK(after.total() == before.total());
    CHECK(oracle::normalized_bracket(build_diagram(before).diagram) ==
          oracle::normalized_bracket(build_diagram(after).diagram));
}

TEST_CASE("normalize_montesinos") {
    auto n = normalize_montesinos(parse_montesinos("M(10/3,-1/2,1/3)"));
    CHECK(n.input_framing == 2);
    for (const auto& r : n.presentation.slopes) CHECK(abs(r) < 1);
    auto n128 = normalize_montesinos(parse_montesinos("M(3/7,-1/2,1/3)"));
    CHECK(to_string(n128.presentation) == "M(-1/2,1/3,3/7)");
    CHECK_FALSE(n128.mirrored);
    CHECK(n128.presentation.negatives() == 1);
    auto nm = normalize_montesinos(parse_montesinos("M(-1/2,-1/3,1/3,1/5)"));
    CHECK(nm.presentation.negatives() <= nm.presentation.positives());
    CHECK(normalize_montesinos(parse_montesinos("M(1/3,2)")).two_bridge);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        MontesinosPresentation m = random_presentation(rng, 3 + trial % 2, 9);
        auto r = normalize_montesinos(m);
        const auto& p = r.presentation;
        INFO(to_string(m) << " -> " << to_string(p));
        CHECK(p.negatives() <= p.positives());
        if (p.negatives() > 0) CHECK(p.slopes.front() < 0);
        if (p.framing == 0)
            for (const auto& s : p.slopes) CHECK(abs(s) < 1);
        // The double branched cover invariant e + sum r_i is kept up to the mirror.
        CHECK(p.total() == (r.mirrored ? -m.total() : m.total()));
        std::multiset<BigInt> da, db;
        for (const auto& s : m.slopes) da.insert(denominator(s));
        for (const auto& s : p.slopes) db.insert(denominator(s));
        CHECK(da == db);
        for (const auto& c : transfer_choices(p)) CHECK(c.total() == p.total());
    }
}

TEST_CASE("transfer choices") {
    auto n = normalize_montesinos(parse_montesinos("M(3/7,-1/2,1/3)")).presentation;
    auto choices = transfer_choices(n);
    CHECK(choices.size() == 3);
    for (const auto& c : choices) {
        CHECK(c.negatives() == 1);
        CHECK(c.slopes.front() < 0);
        CHECK(oracle::normalized_bracket(build_diagram(c).diagram) ==
              oracle::normalized_bracket(build_diagram(n).diagram));
    }
}

TEST_CASE("deplumb_to_pretzel") {
    CHECK(deplumb_to_pretzel(parse_montesinos("M(-1/2,1/3,1/5)")) == PretzelPresentation{{-2, 3, 5}});
    CHECK(deplumb_to_pretzel(parse_montesinos("M(-1/2,2/5,1/3)")) == PretzelPresentation{{-2, 3, 3}});
    CHECK(deplumb_to_pretzel(parse_montesinos("M(-2/5,2/7,1/3)")) == PretzelPresentation{{-3, 4, 3}});
    CHECK_THROWS_AS(deplumb_to_pretzel(parse_montesinos("M(1/2,1/3,1/5)")), std::invalid_argument);
    for (int q = 2; q <= 30; ++q)
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            auto pz = deplumb_to_pretzel(MontesinosPresentation{{Fraction(-p, q), Fraction(p, q)}, 0});
            CHECK(pz.twists[0] <= -2);
            CHECK(pz.twists[1] >= 2);
        }
}

TEST_CASE("two-bridge sliding keeps the link") {
    for (const char* s : {"M(1/3,2/5)", "M(-2/3,3/7)", "M(3/4,-1/5)", "M(5/7,2/9)", "M(-3/5,-2/7)"}) {
        MontesinosPresentation m = parse_montesinos(s);
        Fraction z = two_bridge_fraction(m.slopes[0], m.slopes[1]);
        Diagram sum = build_diagram(m).diagram;
        if (sum.crossing_count() > 14) continue;
        Diagram closure = rational_closure(z);
        INFO(s << " -> " << to_string(z));
        CHECK(oracle::normalized_bracket(sum) == oracle::normalized_bracket(closure));
    }
}

TEST_CASE("checkerboard_graph inverts build_diagram") {
    for (std::vector<int> w : {std::vector<int>{3, 3, 3}, {-2, 3, 5}, {-4, 3, 3}, {2, -3, 5, 7}}) {
        WeightedPlanarGraph g = theta_graph(w);
        BuiltDiagram b = build_diagram(g);
        auto h = checkerboard_graph(b.diagram, b.surface);
        REQUIRE(h);
        CHECK(h->is_plane());
        CHECK(h->vertices == 2);
        std::multiset<int> got, want(w.begin(), w.end());
        for (const auto& e : h->edges) got.insert(e.weight);
        CHECK(got == want);
        CHECK(normalized_bracket(build_diagram(*h).diagram) == normalized_bracket(b.diagram));
    }
    Diagram trefoil = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]");
    for (const State& s : checkerboard_states(trefoil)) {
        auto h = checkerboard_graph(trefoil, s);
        REQUIRE(h);
        CHECK(normalized_bracket(build_diagram(*h).diagram) == normalized_bracket(trefoil));
    }
}
