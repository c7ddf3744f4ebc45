#pragma once

#include "neuwirth/decide.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nw {

// One line per knot: `name | PD | key=value; key=value`.
// Keys: montesinos, pretzel, torus (T(p,q)), variant (another PD of the same knot),
// r3 (comma-separated face indices of successive Reidemeister III moves on the table PD).
struct KnotTableEntry {
    std::string name;
    Diagram diagram;
    std::optional<MontesinosPresentation> montesinos;
    std::optional<PretzelPresentation> pretzel;
    std::optional<TorusWitness> torus;
    std::vector<Diagram> variants;
    std::vector<std::vector<int>> r3;
    int line = 0;
};

std::vector<KnotTableEntry> parse_table(std::string_view text, std::vector<std::string>* warnings = nullptr);
// Warns (does not fail) when a table named rolfsen/k11 has an unexpected entry count.
std::vector<KnotTableEntry> load_table(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Census routes in the order they are tried.
enum class CensusRoute { Sigma, Torus, Montesinos, Pretzel, Checkerboard, Exhaustive };
std::string to_string(CensusRoute r);
CensusRoute parse_census_route(std::string_view name);
std::vector<CensusRoute> default_census_routes();  // everything but Exhaustive

struct CensusOptions {
    std::vector<CensusRoute> routes = default_census_routes();
    int state_cap = kDefaultStateCap;
};

// The table diagram, its variants, then its Reidemeister III versions, with labels.
std::vector<std::pair<std::string, Diagram>> candidate_diagrams(const KnotTableEntry& e);

struct CensusResult {
    std::string name;
    int crossings = 0;
    std::optional<Certificate> certificate;
    std::optional<CensusRoute> route;
    std::string diagram_label;
    std::optional<SurfaceSummary> surface;
    std::vector<std::string> trail;
    std::vector<std::string> flags;
    bool certified() const { return certificate.has_value(); }
};

CensusResult certify_knot(const KnotTableEntry& e, const CensusOptions& options = {});

struct CensusReport {
    std::vector<CensusResult> results;
    std::vector<std::string> failures;
    std::map<std::string, int> by_route;
    std::vector<std::string> warnings;
};

CensusReport run_census(const std::vector<KnotTableEntry>& entries, const CensusOptions& options = {});

nlohmann::json to_json(const CensusResult& r);
nlohmann::json to_json(const CensusReport& r);
std::string to_text(const CensusReport& r);

}  // namespace nw
