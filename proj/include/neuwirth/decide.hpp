#pragma once

#include "neuwirth/diagram.hpp"
#include "neuwirth/states.hpp"
#include "neuwirth/tangles.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nw {

enum class Conjecture { Neuwirth, StrongNeuwirth, EvenSlope, StrongEvenSlope };
enum class Route {
    AlternatingCheckerboard,
    AdequateHomogeneousState,
    PretzelSurface,
    GraphCheckerboard,
    MurasugiMinor,
    TorusKnotAnnulus,
};

std::string to_string(Conjecture c);
std::string to_string(Route r);
Route parse_route(std::string_view name);

struct EssentialVerdict {
    enum Kind { Essential, NotEssential, Inconclusive };
    Kind kind = Inconclusive;
    std::string reason;
    bool essential() const { return kind == Essential; }
};

std::string to_string(EssentialVerdict::Kind k);

// Pretzel surface of P(-p_1, p_2, ..., p_n), p_i >= 2, n >= 3, in any cyclic position.
EssentialVerdict pretzel_essential(const PretzelPresentation& p);
EssentialVerdict graph_checkerboard_essential(const WeightedPlanarGraph& g);

// Murasugi summands of a state surface, one per block of the state graph.
struct LeafReport {
    enum Kind { Trivial, Alternating, Pretzel, GenusOneSeifert, Unrecognized };
    Kind kind = Unrecognized;
    std::vector<int> crossings;
    std::optional<PretzelPresentation> pretzel;  // after deplumbing rational columns
    std::string note;
    bool accepted() const { return kind != Unrecognized; }
};

std::string to_string(LeafReport::Kind k);
std::vector<LeafReport> classify_leaves(const Diagram& d, const State& s);

struct TorusWitness {
    int p = 0, q = 0;
};

struct Certificate {
    std::string subject;
    Conjecture conjecture = Conjecture::StrongNeuwirth;
    Route route = Route::AdequateHomogeneousState;
    std::string branch;              // which case produced it
    std::vector<std::string> notes;  // flags raised while building it
    std::optional<Diagram> diagram;
    std::optional<State> state;
    std::optional<PretzelPresentation> pretzel;
    std::optional<WeightedPlanarGraph> graph;
    std::optional<TorusWitness> torus;
};

struct Validation {
    bool valid = false;
    std::vector<std::string> trail;
    std::optional<SurfaceSummary> surface;
    std::vector<LeafReport> leaves;
};

// Recomputes everything from the witness; the route only selects which checks apply.
Validation validate_certificate(const Certificate& c);

struct MontesinosOutcome {
    std::optional<Certificate> certificate;
    std::vector<std::string> trail;
};

// Throws std::invalid_argument for links and the unknot.
MontesinosOutcome montesinos_certify(const MontesinosPresentation& m);

// Surface of the pretzel theorem, certified directly.
std::optional<Certificate> pretzel_certificate(const PretzelPresentation& p);
std::optional<Certificate> graph_certificate(const WeightedPlanarGraph& g);

// Certificate document; version 1.
inline constexpr int kCertificateSchema = 1;
nlohmann::json to_json(const Certificate& c, const Validation& v);
nlohmann::json to_json(const SurfaceSummary& s);
nlohmann::json to_json(const EssentialVerdict& v);

}  // namespace nw
