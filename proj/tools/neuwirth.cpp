#include "neuwirth/census.hpp"
#include "neuwirth/decide.hpp"
#include "neuwirth/normal.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nw;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// An argument naming an existing file is replaced by the file contents.
std::string inline_or_file(const std::string& arg) {
    if (arg.empty()) throw InputError("empty input");
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

Diagram read_diagram(const std::string& arg) {
    std::string text = inline_or_file(arg);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty diagram");
    if (text[first] == '[' || text.compare(first, 2, "PD") == 0) return parse_pd(text);
    return parse_gauss(text);
}

void render_text(std::ostream& out, const json& j, const std::string& indent = "") {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            render_text(out, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && (value.front().is_string() || value.front().is_object())) {
            out << indent << key << ":\n";
            for (const auto& v : value) out << indent << "  - " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        } else {
            out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

json certificate_json(const Certificate& c) { return to_json(c, validate_certificate(c)); }

json diagram_json(const Diagram& d) {
    return {{"pd", serialize_pd(d)},
            {"crossings", d.crossing_count()},
            {"components", d.component_count()},
            {"writhe", d.writhe()},
            {"reduced", is_reduced(d)},
            {"prime", is_prime(d)},
            {"alternating", is_alternating(d)},
            {"bracket", to_string(normalized_bracket(d))}};
}

json state_json(const Diagram& d, const State& s) {
    StateCheck check = check_state(d, s);
    StateGraph g = state_graph(d, s);
    json leaves = json::array();
    for (const auto& l : classify_leaves(d, s)) {
        json e{{"kind", to_string(l.kind)}, {"crossings", l.crossings}, {"note", l.note}};
        if (l.pretzel) e["pretzel"] = to_string(*l.pretzel);
        leaves.push_back(e);
    }
    return {{"state", state_to_string(s)},
            {"adequate", check.adequate},
            {"homogeneous", check.homogeneous},
            {"seifert", check.is_seifert},
            {"state_loops", g.vertices},
            {"blocks", g.blocks},
            {"surface", to_json(surface_summary(d, s))},
            {"leaves", leaves}};
}

std::vector<CensusRoute> parse_routes(const std::string& list) {
    std::vector<CensusRoute> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(parse_census_route(item));
    if (out.empty()) throw InputError("no routes given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State surfaces, Neuwirth certificates and normal surfaces"};
    app.require_subcommand(1);
    std::string format = "json", out_path, routes, table;
    int state_cap = kDefaultStateCap;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "Write the report to this file");
    app.add_option("--routes", routes, "Comma-separated census routes");
    app.add_option("--state-cap", state_cap, "Largest crossing count for exhaustive state search")
        ->check(CLI::Range(1, 30));

    std::string input, state_text;
    auto* parse = app.add_subcommand("parse", "Parse a PD or Gauss code");
    parse->add_option("input", input, "Diagram or file")->required();
    auto* state = app.add_subcommand("state", "Check a state and its surface");
    state->add_option("input", input, "Diagram or file")->required();
    state->add_option("state", state_text, "One + or - per crossing")->required();
    auto* certify = app.add_subcommand("certify", "Certify a pretzel, Montesinos or diagram input");
    certify->add_option("input", input, "P(...), M(...), diagram or file")->required();
    auto* montesinos = app.add_subcommand("montesinos", "Run the Montesinos case machine");
    montesinos->add_option("input", input, "M(r1,...,rn)")->required();
    auto* pretzel = app.add_subcommand("pretzel", "Decide a pretzel surface");
    pretzel->add_option("input", input, "P(p1,...,pn)")->required();
    auto* graph = app.add_subcommand("graph", "Decide the surface F_G of a weighted planar graph");
    graph->add_option("input", input, "Graph text or file")->required();
    auto* normal = app.add_subcommand("normal", "Build the labeled normal surface for a triangulation");
    normal->add_option("input", input, "Triangulation file")->required();
    auto* census = app.add_subcommand("census", "Certify every knot of a table");
    census->add_option("--table,table", table, "Table file")->required();
    for (auto* sub : {parse, state, certify, montesinos, pretzel, graph, normal, census}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    json report;
    std::string text;
    try {
        CensusOptions options;
        options.state_cap = state_cap;
        if (!routes.empty()) options.routes = parse_routes(routes);

        if (*parse) {
            report = diagram_json(read_diagram(input));
        } else if (*state) {
            Diagram d = read_diagram(input);
            report = state_json(d, parse_state(state_text, d.crossing_count()));
        } else if (*certify) {
            std::string arg = inline_or_file(input);
            if (arg.rfind("P(", 0) == 0) {
                PretzelPresentation p = parse_pretzel(arg);
                report = {{"input", to_string(p)}, {"verdict", to_json(pretzel_essential(p))}};
                if (auto c = pretzel_certificate(p)) report["certificate"] = certificate_json(*c);
            } else if (arg.rfind("M(", 0) == 0) {
                auto outcome = montesinos_certify(parse_montesinos(arg));
                report = {{"input", arg}, {"certified", outcome.certificate.has_value()}, {"trail", outcome.trail}};
                if (outcome.certificate) report["certificate"] = certificate_json(*outcome.certificate);
            } else {
                KnotTableEntry e;
                e.name = "input";
                e.diagram = read_diagram(arg);
                if (e.diagram.component_count() != 1) throw InputError("certify expects a knot diagram");
                report = to_json(certify_knot(e, options));
            }
        } else if (*montesinos) {
            auto outcome = montesinos_certify(parse_montesinos(inline_or_file(input)));
            report = {{"certified", outcome.certificate.has_value()}, {"trail", outcome.trail}};
            if (outcome.certificate) report["certificate"] = certificate_json(*outcome.certificate);
        } else if (*pretzel) {
            PretzelPresentation p = parse_pretzel(inline_or_file(input));
            report = {{"input", to_string(p)}, {"verdict", to_json(pretzel_essential(p))}};
            if (auto c = pretzel_certificate(p)) report["certificate"] = certificate_json(*c);
        } else if (*graph) {
            WeightedPlanarGraph g = parse_graph(inline_or_file(input));
            report = {{"verdict", to_json(graph_checkerboard_essential(g))}};
            if (auto c = graph_certificate(g)) report["certificate"] = certificate_json(*c);
        } else if (*normal) {
            TriangulationFile f = parse_triangulation(read_file(input));
            report = to_json(run_normal_pipeline(f.triangulation, f.subcomplex.value_or(Subcomplex{})));
        } else if (*census) {
            CensusReport r;
            auto entries = load_table(table, &r.warnings);
            auto warnings = std::move(r.warnings);
            r = run_census(entries, options);
            r.warnings = std::move(warnings);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
            report = to_json(r);
            if (format == "text") text = to_text(r);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }

    if (format == "text" && text.empty()) {
        std::ostringstream s;
        render_text(s, report);
        text = s.str();
    }
    std::string body = format == "json" ? report.dump(2) + "\n" : text;
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        out << body;
    }
    return 0;
}
