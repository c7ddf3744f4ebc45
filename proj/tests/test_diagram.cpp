#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "neuwirth/diagram.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace nw;

namespace {

const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const char* kFigureEight = "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]";
const char* kTrefoilSum = "X(7,4,2,5) X(3,6,4,1) X(5,2,6,3) X(1,10,8,11) X(9,12,10,7) X(11,8,12,9)";
// Trefoil with a Reidemeister I kink inserted on edge 6.
const char* kTrefoilKink = "X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,7,7,8)";

std::vector<std::size_t> face_sizes(const Diagram& d) {
    std::vector<std::size_t> out;
    for (const auto& f : d.faces()) out.push_back(f.size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("kink parses with faces of size 1, 1 and 2") {
    Diagram d = parse_pd("X(1,1,2,2)");
    CHECK(d.crossing_count() == 1);
    CHECK(face_sizes(d) == std::vector<std::size_t>{1, 1, 2});
    CHECK(euler_check(d));
    CHECK_FALSE(is_reduced(d));
}

TEST_CASE("a tuple with four distinct labels cannot be a one-crossing diagram") {
    CHECK_THROWS_AS(parse_pd("X(1,4,2,3)"), std::invalid_argument);
}

TEST_CASE("trefoil") {
    Diagram d = parse_pd(kTrefoil);
    CHECK(d.crossing_count() == 3);
    CHECK(d.edge_count() == 6);
    CHECK(d.component_count() == 1);
    CHECK(euler_check(d));
    CHECK(face_sizes(d) == std::vector<std::size_t>{2, 2, 2, 3, 3});
    CHECK(is_reduced(d));
    CHECK(is_prime(d));
    CHECK(is_alternating(d));
    CHECK(d.writhe() == -3);
    CHECK(mirror(d).writhe() == 3);
}

TEST_CASE("figure eight") {
    Diagram d = parse_pd(kFigureEight);
    CHECK(d.crossing_count() == 4);
    CHECK(euler_check(d));
    CHECK(is_reduced(d));
    CHECK(is_prime(d));
    CHECK(d.writhe() == 0);
    CHECK(oracle::determinant(d) == 5);
}

TEST_CASE("connected sum of trefoils is not prime") {
    Diagram d = parse_pd(kTrefoilSum);
    CHECK(euler_check(d));
    CHECK(is_reduced(d));
    CHECK_FALSE(is_prime(d));
    CHECK(oracle::determinant(d) == 9);
}

TEST_CASE("trefoil with a kink is not reduced") {
    Diagram d = parse_pd(kTrefoilKink);
    CHECK(euler_check(d));
    CHECK_FALSE(is_reduced(d));
    CHECK(oracle::normalized_bracket(d) == oracle::normalized_bracket(parse_pd(kTrefoil)));
}

TEST_CASE("parser errors") {
    CHECK_THROWS_AS(parse_pd("X(1,2,3)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,6)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pd(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_pd("X(1,1,2,2) X(3,3,4,4)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pd("X(1,a,2,2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pd("X(1,-1,2,2)"), std::invalid_argument);
}

TEST_CASE("accepted PD spellings agree") {
    Diagram a = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    Diagram b = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
    Diagram c = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]");
    CHECK(serialize_pd(a) == serialize_pd(b));
    CHECK(serialize_pd(a) == serialize_pd(c));
}

TEST_CASE("serialize then parse is the identity") {
    for (const char* pd : {kTrefoil, kFigureEight, kTrefoilSum, kTrefoilKink, "X(1,1,2,2)"}) {
        Diagram d = parse_pd(pd);
        Diagram e = parse_pd(serialize_pd(d));
        CHECK(serialize_pd(e) == serialize_pd(d));
        for (int c = 0; c < d.crossing_count(); ++c) CHECK(d.sign(c) == e.sign(c));
    }
}

TEST_CASE("primality does not depend on the labels") {
    std::mt19937 rng(7);
    for (const char* pd : {kTrefoil, kFigureEight, kTrefoilSum}) {
        Diagram d = parse_pd(pd);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> labels(d.edge_count());
            std::iota(labels.begin(), labels.end(), 1);
            std::shuffle(labels.begin(), labels.end(), rng);
            std::string text;
            for (int c = 0; c < d.crossing_count(); ++c) {
                const auto& t = d.tuple(c);
                text += "X(" + std::to_string(labels[t[0]]) + "," + std::to_string(labels[t[1]]) + "," +
                        std::to_string(labels[t[2]]) + "," + std::to_string(labels[t[3]]) + ") ";
            }
            Diagram r = parse_pd(text);
            CHECK(is_prime(r) == is_prime(d));
            CHECK(isomorphic(r, d));
        }
    }
}

TEST_CASE("Gauss code reader") {
    // Left trefoil: every crossing negative.
    Diagram d = parse_gauss("1 -2 3 -1 2 -3; - - -");
    CHECK(d.crossing_count() == 3);
    CHECK(d.writhe() == -3);
    CHECK(oracle::normalized_bracket(d) == oracle::normalized_bracket(parse_pd(kTrefoil)));
    Diagram f = parse_gauss("-1, 2, -3, 1, -4, 3, -2, 4; + - - +");
    CHECK(oracle::determinant(f) == 5);
    CHECK_THROWS_AS(parse_gauss("-1, 2, -3, 1, -4, 3, -2, 4; + + - -"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("1 -2 3 -1 2 -3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("1 -2 3 -1 2; - - -"), std::invalid_argument);
}

TEST_CASE("mirror and reversal") {
    Diagram d = parse_pd(kFigureEight);
    Diagram m = mirror(d);
    for (int c = 0; c < d.crossing_count(); ++c) CHECK(m.sign(c) == -d.sign(c));
    CHECK(oracle::normalized_bracket(m) == oracle::mirror_poly(oracle::normalized_bracket(d)));
    Diagram r = reverse_component(d, 0);
    for (int c = 0; c < d.crossing_count(); ++c) CHECK(r.sign(c) == d.sign(c));
    CHECK(isomorphic(r, d));
}

TEST_CASE("from_gluing reproduces a diagram up to isomorphism") {
    Diagram d = parse_pd(kFigureEight);
    std::vector<std::pair<Slot, Slot>> arcs;
    for (int e = 0; e < d.edge_count(); ++e) arcs.push_back({d.tail(e), d.head(e)});
    Diagram g = Diagram::from_gluing(d.crossing_count(), arcs);
    CHECK(isomorphic(g, d));
    CHECK(g.writhe() == d.writhe());
}

TEST_CASE("Reidemeister III preserves the normalised bracket") {
    // 8_19 in its table diagram has triangular faces.
    Diagram d = parse_pd("[[2,14,3,13],[5,11,6,10],[7,15,8,14],[9,5,10,4],[11,7,12,6],[12,2,13,1],[15,9,16,8],[16,4,1,3]]");
    auto moves = reidemeister3_faces(d);
    auto base = oracle::normalized_bracket(d);
    int tried = 0;
    for (int f : moves) {
        Diagram r = reidemeister3(d, f);
        CHECK(euler_check(r));
        CHECK(r.crossing_count() == d.crossing_count());
        CHECK(oracle::normalized_bracket(r) == base);
        ++tried;
    }
    auto fs = d.faces();
    for (int f = 0; f < static_cast<int>(fs.size()); ++f)
        if (std::find(moves.begin(), moves.end(), f) == moves.end())
            CHECK_THROWS_AS(reidemeister3(d, f), std::invalid_argument);
    MESSAGE("R-III faces tried: " << tried);
}

TEST_CASE("two-component links") {
    // Hopf link.
    Diagram h = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    CHECK(h.component_count() == 2);
    CHECK(euler_check(h));
    CHECK(oracle::determinant(h) == 2);
}
