#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nw {

// A half-edge position: slot k (0..3, counterclockwise) of crossing c.
struct Slot {
    int crossing = -1;
    int slot = -1;
    bool operator==(const Slot&) const = default;
    auto operator<=>(const Slot&) const = default;
};

// Slots 0 and 2 carry the under-strand, 1 and 3 the over-strand.
// Slot 0 is always the incoming under-strand (PD convention).
struct Crossing {
    int id = 0;
    std::array<int, 4> edges{};  // edge index at each slot
};

// A corner is the wedge between slot k and slot k+1 of a crossing.
struct Face {
    std::vector<Slot> corners;
    std::size_t size() const { return corners.size(); }
};

class Diagram {
public:
    Diagram() = default;

    // The crossingless one-component diagram.
    static Diagram unknot();

    // Build from crossing tuples of edge indices in 0..2n-1 (slot 0 incoming under).
    // labels[e] is the external label printed for edge e.
    static Diagram from_tuples(std::vector<std::array<int, 4>> tuples, std::vector<int> labels);

    // Build from an unoriented gluing: arcs join slots pairwise. Orientation is chosen per
    // component, tuples are rotated so slot 0 is incoming under, and edges are labelled
    // 1..2n consecutively along components.
    static Diagram from_gluing(int crossings, const std::vector<std::pair<Slot, Slot>>& arcs);

    int crossing_count() const { return static_cast<int>(x_.size()); }
    int edge_count() const { return static_cast<int>(tail_.size()); }
    int component_count() const { return components_; }
    bool empty() const { return x_.empty(); }

    const std::array<int, 4>& tuple(int c) const { return x_[c]; }
    int edge_at(Slot s) const { return x_[s.crossing][s.slot]; }
    int label(int e) const { return labels_[e]; }
    const std::vector<int>& labels() const { return labels_; }

    // Orientation: each edge runs from its tail slot to its head slot.
    Slot tail(int e) const { return tail_[e]; }
    Slot head(int e) const { return head_[e]; }
    Slot other_end(Slot s) const;
    bool is_incoming(Slot s) const { return head_[edge_at(s)] == s; }

    int sign(int c) const;
    int writhe() const;
    int component_of_edge(int e) const { return comp_of_edge_[e]; }
    int component_of_crossing_strand(int c, bool over) const;

    std::vector<Face> faces() const;

    std::optional<std::string> name;

private:
    void finish();

    std::vector<std::array<int, 4>> x_;
    std::vector<int> labels_;
    std::vector<Slot> tail_, head_;
    std::vector<int> comp_of_edge_;
    int components_ = 0;
};

Diagram parse_pd(std::string_view text);
// Knot Gauss code: signed crossing visits (positive = over, negative = under), then ';'
// and one '+' or '-' per crossing, e.g. "1 -2 3 -1 2 -3; + + +".
Diagram parse_gauss(std::string_view text);
std::string serialize_pd(const Diagram& d);

bool is_reduced(const Diagram& d);
bool is_prime(const Diagram& d);
bool is_alternating(const Diagram& d);
bool euler_check(const Diagram& d);

Diagram mirror(const Diagram& d);
Diagram reverse_component(const Diagram& d, int component);

// Triangular faces where a Reidemeister III move applies, and the move itself.
std::vector<int> reidemeister3_faces(const Diagram& d);
Diagram reidemeister3(const Diagram& d, int face_index);

// Orientation-preserving combinatorial isomorphism of the underlying crossing maps
// (orientations of strands are ignored).
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace nw
