#pragma once

#include <json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nw {

// perm[i] is the image of vertex i.
using Perm = std::array<int, 4>;

struct Gluing {
    int tet = -1, face = -1;
    Perm perm{0, 1, 2, 3};
    bool boundary() const { return tet < 0; }
};

// Local edges of a tetrahedron: 01 02 03 12 13 23; edge e is opposite edge 5 - e.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int local_edge(int a, int b);

// A Delta-complex of tetrahedra; face k of a tetrahedron is the one opposite vertex k.
// Vertex, edge and face classes are numbered by their first (tet, local index) representative.
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(std::vector<std::array<Gluing, 4>> gluings);

    // Glue faces of tetrahedra with equal vertex sets; each set of labels must be distinct.
    static Triangulation from_simplices(const std::vector<std::array<int, 4>>& tets);

    int size() const { return static_cast<int>(glue_.size()); }
    const Gluing& gluing(int t, int f) const { return glue_[t][f]; }

    int vertex_count() const { return nv_; }
    int edge_count() const { return static_cast<int>(edge_ends_.size()); }
    int face_count() const { return static_cast<int>(face_edges_.size()); }

    int vertex_class(int t, int v) const { return vertex_[t][v]; }
    int edge_class(int t, int e) const { return edge_[t][e]; }
    int face_class(int t, int f) const { return face_[t][f]; }

    const std::array<int, 2>& edge_ends(int e) const { return edge_ends_[e]; }
    const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }
    const std::array<int, 3>& face_vertices(int f) const { return face_vertices_[f]; }
    std::array<int, 6> tet_edges(int t) const { return edge_[t]; }

    bool boundary_face(int f) const { return face_boundary_[f]; }
    bool boundary_edge(int e) const { return edge_boundary_[e]; }
    bool boundary_vertex(int v) const { return vertex_boundary_[v]; }

    bool connected() const;
    bool orientable() const;

private:
    std::vector<std::array<Gluing, 4>> glue_;
    int nv_ = 0;
    std::vector<std::array<int, 4>> vertex_, face_;
    std::vector<std::array<int, 6>> edge_;
    std::vector<std::array<int, 2>> edge_ends_;
    std::vector<std::array<int, 3>> face_edges_, face_vertices_;
    std::vector<bool> face_boundary_, edge_boundary_, vertex_boundary_;
};

// Cells by class index.
struct Subcomplex {
    std::set<int> vertices, edges, faces, tets;
};

// Text format: tetrahedron count, then four lines per tetrahedron
//   face k -> tet t face k' perm abcd
//   face k boundary
// optionally followed by "subcomplex" and lines "vertex t v", "edge t a b", "face t k", "tet t".
struct TriangulationFile {
    Triangulation triangulation;
    std::optional<Subcomplex> subcomplex;
};

TriangulationFile parse_triangulation(std::string_view text);
std::string serialize_triangulation(const Triangulation& t, const Subcomplex* x = nullptr);

// Throws std::invalid_argument unless x is closed under taking faces.
void check_subcomplex(const Triangulation& t, const Subcomplex& x);

// All cells whose tetrahedron-local vertices all satisfy keep(label); labels as in from_simplices.
Subcomplex full_subcomplex(const Triangulation& t, const std::vector<std::array<int, 4>>& labels,
                           const std::function<bool(int)>& keep);

// D^2 x S^1 from a fan-triangulated polygon with `sides` sides times `layers` prism layers.
// Vertex labels: layer * (sides + 1) + index, index 0 the polygon centre.
struct SyntheticTriangulation {
    Triangulation triangulation;
    std::vector<std::array<int, 4>> labels;
};
SyntheticTriangulation solid_torus(int sides, int layers);
// T^2 x I over the 3 x 3 grid torus.
SyntheticTriangulation thickened_torus();

// Loops of X meeting the boundary, each as edge classes in walking order.
// Throws unless X meets the boundary in disjoint simple closed edge cycles.
std::vector<std::vector<int>> boundary_trace(const Triangulation& t, const Subcomplex& x);

int h1_rank(const Triangulation& t);  // over Z/2
bool z2_image_is_zero(const Triangulation& t, const Subcomplex& x);

// Spanning tree of the 1-skeleton, as sorted edge classes.
std::vector<int> build_tree(const Triangulation& t, const Subcomplex& x);

struct EdgeLabeling {
    std::vector<int> label;  // per edge class, 0 or 1
    std::vector<int> tree;
};

EdgeLabeling label_edges(const Triangulation& t, const Subcomplex& x, const std::vector<int>& tree);

struct Piece {
    enum Kind { Empty, Triangle, Quad };
    Kind kind = Empty;
    int vertex = -1;  // triangle apex
    int split = -1;   // quad: local edge e < 3 with e and 5 - e labelled 0
    bool operator==(const Piece&) const = default;
};

std::string to_string(const Piece& p);
// nullopt when the six labels match none of the three patterns.
std::optional<Piece> classify_tetrahedron(const std::array<int, 6>& labels);

struct NormalSurface {
    std::vector<Piece> pieces;     // per tetrahedron
    std::vector<int> component;    // per tetrahedron, -1 when empty
    int components = 0;
    std::vector<bool> orientable;  // per component
    // Boundary curves, each as the boundary edge classes it crosses.
    std::vector<std::vector<int>> boundary_curves;
    std::vector<int> curve_component;
    std::vector<int> label;
    std::vector<int> tree;
};

// Throws std::logic_error if a tetrahedron matches none of the patterns.
NormalSurface assemble_surface(const Triangulation& t, const EdgeLabeling& labeling);

struct LemmaReport {
    int x_loops = 0;
    int boundary_curves = 0;
    bool x_separating = false;
    int components = 0;
    int closed_components = 0;
    int nonorientable_components = 0;
    std::vector<int> curves_per_annulus;  // curves of C' in each annulus of the boundary minus C
    std::vector<std::string> violations;
    std::vector<std::string> flags;  // reported, not required
    bool ok() const { return violations.empty(); }
};

LemmaReport verify_lemma_guarantees(const Triangulation& t, const Subcomplex& x, const NormalSurface& s);

struct NormalRun {
    int h1_rank = 0;
    bool image_zero = false;
    EdgeLabeling labeling;
    NormalSurface surface;
    LemmaReport report;
};

// The whole construction; throws std::invalid_argument when a precondition fails.
NormalRun run_normal_pipeline(const Triangulation& t, const Subcomplex& x);

nlohmann::json to_json(const NormalRun& run);

}  // namespace nw
