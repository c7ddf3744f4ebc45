#pragma once

#include "neuwirth/diagram.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nw {

// One entry per crossing: +1 (A-smoothing) or -1 (B-smoothing).
// +1 joins slots (0,1),(2,3); -1 joins (0,3),(1,2).
using State = std::vector<int>;

State all_state(const Diagram& d, int s);
State seifert_state(const Diagram& d);
std::string state_to_string(const State& s);
State parse_state(std::string_view text, int crossings);

// Slot paired with `slot` by the smoothing s.
constexpr int smoothing_partner(int s, int slot) {
    if (s > 0) return slot ^ 1;
    return 3 - slot;
}

struct StateLoops {
    int count = 0;
    std::vector<int> loop_of_edge;
    // Loops touched by the smoothing at each crossing (via slot 0 and slot 2).
    std::vector<std::array<int, 2>> incidence;
};

StateLoops smooth(const Diagram& d, const State& s);

struct StateGraph {
    int vertices = 0;
    struct Edge {
        int u, v, sign;
    };
    std::vector<Edge> edges;                // indexed by crossing
    std::vector<std::vector<int>> blocks;   // crossing ids, ordered by smallest member
    std::vector<int> cut_vertices;
};

StateGraph state_graph(const Diagram& d, const State& s);

struct StateCheck {
    bool adequate = false;
    bool homogeneous = false;
    bool is_seifert = false;
};

StateCheck check_state(const Diagram& d, const State& s);

struct SurfaceSummary {
    int euler_characteristic = 0;
    bool orientable = false;
    int boundary_components = 0;
    std::optional<int> boundary_slope;  // knots only
    int genus = 0;                      // orientable genus or number of crosscaps
};

SurfaceSummary surface_summary(const Diagram& d, const State& s);
bool is_orientable(const Diagram& d, const State& s);
// Throws for links.
int boundary_slope(const Diagram& d, const State& s);

struct Leaf {
    Diagram diagram;
    State state;
    std::vector<int> crossings;  // ids in the parent diagram
};

std::vector<Leaf> murasugi_leaves(const Diagram& d, const State& s);

constexpr int kDefaultStateCap = 16;

// All states accepted by `filter`, bit i of the mask set meaning crossing i is -1.
void enumerate_states(const Diagram& d, const std::function<bool(const State&)>& filter,
                      const std::function<bool(const State&)>& visit, int cap = kDefaultStateCap);
std::vector<State> enumerate_states(const Diagram& d, const std::function<bool(const State&)>& filter,
                                    int cap = kDefaultStateCap);

// The two checkerboard states; their surfaces are the shaded and unshaded checkerboard surfaces.
std::array<State, 2> checkerboard_states(const Diagram& d);

// Laurent polynomial in A, exponent -> coefficient.
using Polynomial = std::map<int, long long>;

// (-A^3)^(-w) <D>, an invariant of the oriented link; the mirror image negates exponents.
Polynomial normalized_bracket(const Diagram& d, int cap = 80);
Polynomial mirror_polynomial(const Polynomial& p);
std::string to_string(const Polynomial& p);

}  // namespace nw
