#pragma once

#include "neuwirth/diagram.hpp"
#include "neuwirth/fraction.hpp"
#include "neuwirth/states.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nw {

// K = N(framing + T(r_1) + ... + T(r_n)); framing is an integer tangle.
struct MontesinosPresentation {
    std::vector<Fraction> slopes;
    BigInt framing = 0;

    int negatives() const;
    int positives() const;
    // framing + sum of slopes, unchanged by integer transfer and reordering
    Fraction total() const;
    bool operator==(const MontesinosPresentation&) const = default;
};

struct PretzelPresentation {
    std::vector<int> twists;
    bool operator==(const PretzelPresentation&) const = default;
};

struct WeightedPlanarGraph {
    struct Edge {
        int u = 0, v = 0, weight = 0;
    };
    int vertices = 0;
    std::vector<Edge> edges;
    // Counterclockwise order of edge ids around each vertex; a loop edge appears twice.
    std::vector<std::vector<int>> rotation;

    int face_count() const;
    bool is_plane() const;  // Euler's formula holds for the rotation system
    bool is_two_connected() const;
};

std::string to_string(const MontesinosPresentation& m);
std::string to_string(const PretzelPresentation& p);
MontesinosPresentation parse_montesinos(std::string_view text);  // "M(3/7,-1/2,1/3)" or "M(e; ...)"
PretzelPresentation parse_pretzel(std::string_view text);        // "P(-2,3,7)"
WeightedPlanarGraph parse_graph(std::string_view text);
std::string serialize_graph(const WeightedPlanarGraph& g);

MontesinosPresentation to_montesinos(const PretzelPresentation& p);
MontesinosPresentation mirror(const MontesinosPresentation& m);

std::pair<Fraction, Fraction> deform(const Fraction& minus_r1, const Fraction& r2);

struct NormalizedMontesinos {
    MontesinosPresentation presentation;  // |r_i| < 1, negatives first, R- <= R+
    bool mirrored = false;
    BigInt input_framing = 0;  // sum of integer parts removed from the input slopes
    bool two_bridge = false;   // fewer than three non-integral tangles
};

NormalizedMontesinos normalize_montesinos(const MontesinosPresentation& m);

// All presentations with R- = s reachable by integer transfer from the fractional parts
// (each choice of which s tangles carry the negative slope).
std::vector<MontesinosPresentation> transfer_choices(const MontesinosPresentation& normalized);

PretzelPresentation deplumb_to_pretzel(const MontesinosPresentation& m);

// Fraction z with N(T(x) + T(y)) isotopic to N(T(z)).
Fraction two_bridge_fraction(const Fraction& x, const Fraction& y);

struct BuiltDiagram {
    Diagram diagram;
    // The designated state surface: the pretzel surface or F_G for graphs, the checkerboard
    // surface through the tangle columns for Montesinos presentations.
    State surface;
    std::array<State, 2> checkerboard;
    // Tangle, column or edge index of each crossing; framing crossings come last.
    std::vector<int> group;
};

BuiltDiagram build_diagram(const MontesinosPresentation& m);
BuiltDiagram build_diagram(const PretzelPresentation& p);
BuiltDiagram build_diagram(const WeightedPlanarGraph& g);
Diagram rational_closure(const Fraction& q);  // N(T(q))

WeightedPlanarGraph theta_graph(const std::vector<int>& weights);

// The graph G with F_G the state surface of a checkerboard state: shaded regions become
// vertices, crossings become bands, and bands in series through a bigon are merged.
// nullopt unless s is a checkerboard state of d.
std::optional<WeightedPlanarGraph> checkerboard_graph(const Diagram& d, const State& s);

// Closure of the braid (s_1 ... s_{p-1})^q; T(p,q) with p >= 2, q != 0.
Diagram torus_diagram(int p, int q);

}  // namespace nw
