#include "neuwirth/census.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace nw {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

TorusWitness parse_torus(const std::string& text) {
    static const std::regex re(R"(T\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad torus annotation '" + text + "'");
    return {std::stoi(m[1]), std::stoi(m[2])};
}

bool same_knot(const Diagram& a, const Diagram& b) {
    auto pa = normalized_bracket(a), pb = normalized_bracket(b);
    return pa == pb || pa == mirror_polynomial(pb);
}

Certificate state_certificate(const std::string& subject, const Diagram& d, const State& s, Route route,
                              std::string branch) {
    Certificate c;
    c.subject = subject;
    c.conjecture = Conjecture::StrongNeuwirth;
    c.route = route;
    c.branch = std::move(branch);
    c.diagram = d;
    c.state = s;
    return c;
}

}  // namespace

std::vector<KnotTableEntry> parse_table(std::string_view text, std::vector<std::string>* warnings) {
    std::vector<KnotTableEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        auto where = [&](const std::string& msg) {
            return std::invalid_argument("line " + std::to_string(number) + ": " + msg);
        };
        auto fields = split(body, '|');
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) throw where("expected 'name | PD | annotations'");
        KnotTableEntry e;
        e.name = fields[0];
        e.line = number;
        try {
            e.diagram = parse_pd(fields[1]);
        } catch (const std::exception& ex) {
            throw where(ex.what());
        }
        if (e.diagram.component_count() != 1)
            throw where(e.name + " has " + std::to_string(e.diagram.component_count()) + " components");
        e.diagram.name = e.name;
        if (fields.size() == 3 && !fields[2].empty()) {
            for (const auto& item : split(fields[2], ';')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw where("annotation without '=': " + item);
                std::string key = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
                try {
                    if (key == "montesinos") e.montesinos = parse_montesinos(value);
                    else if (key == "pretzel") e.pretzel = parse_pretzel(value);
                    else if (key == "torus") e.torus = parse_torus(value);
                    else if (key == "variant") {
                        Diagram v = parse_pd(value);
                        if (v.component_count() != 1) throw std::invalid_argument("variant is not a knot");
                        e.variants.push_back(v);
                    } else if (key == "r3") {
                        std::vector<int> moves;
                        for (const auto& k : split(value, ',')) moves.push_back(std::stoi(k));
                        e.r3.push_back(moves);
                    } else {
                        throw std::invalid_argument("unknown annotation '" + key + "'");
                    }
                } catch (const std::invalid_argument& ex) {
                    throw where(ex.what());
                }
            }
        }
        out.push_back(std::move(e));
    }
    if (warnings) {
        std::set<std::string> names;
        for (const auto& e : out)
            if (!names.insert(e.name).second) warnings->push_back("duplicate entry " + e.name);
    }
    return out;
}

std::vector<KnotTableEntry> load_table(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto entries = parse_table(ss.str(), warnings);
    if (warnings) {
        auto expect = [&](const std::string& key, std::size_t n) {
            if (path.find(key) != std::string::npos && entries.size() != n)
                warnings->push_back(path + ": " + std::to_string(entries.size()) + " entries, expected " +
                                    std::to_string(n));
        };
        expect("rolfsen", 249);
        expect("k11", 552);
    }
    return entries;
}

std::string to_string(CensusRoute r) {
    switch (r) {
        case CensusRoute::Sigma: return "sigma";
        case CensusRoute::Torus: return "torus";
        case CensusRoute::Montesinos: return "montesinos";
        case CensusRoute::Pretzel: return "pretzel";
        case CensusRoute::Checkerboard: return "checkerboard";
        case CensusRoute::Exhaustive: return "exhaustive";
    }
    return "?";
}

CensusRoute parse_census_route(std::string_view name) {
    for (auto r : {CensusRoute::Sigma, CensusRoute::Torus, CensusRoute::Montesinos, CensusRoute::Pretzel,
                   CensusRoute::Checkerboard, CensusRoute::Exhaustive})
        if (to_string(r) == name) return r;
    throw std::invalid_argument("unknown census route '" + std::string(name) + "'");
}

std::vector<CensusRoute> default_census_routes() {
    return {CensusRoute::Sigma, CensusRoute::Torus, CensusRoute::Montesinos, CensusRoute::Pretzel,
            CensusRoute::Checkerboard};
}

std::vector<std::pair<std::string, Diagram>> candidate_diagrams(const KnotTableEntry& e) {
    std::vector<std::pair<std::string, Diagram>> out{{"table", e.diagram}};
    for (std::size_t i = 0; i < e.variants.size(); ++i) out.push_back({"variant " + std::to_string(i + 1), e.variants[i]});
    for (const auto& moves : e.r3) {
        Diagram d = e.diagram;
        std::string label = "R-III";
        for (int k : moves) {
            d = reidemeister3(d, k);
            label += " " + std::to_string(k);
        }
        out.push_back({label, d});
    }
    return out;
}

CensusResult certify_knot(const KnotTableEntry& e, const CensusOptions& options) {
    CensusResult r;
    r.name = e.name;
    r.crossings = e.diagram.crossing_count();
    auto candidates = candidate_diagrams(e);
    auto try_cert = [&](const Certificate& c, CensusRoute route, const std::string& label) {
        Validation v = validate_certificate(c);
        if (!v.valid) {
            std::string why;
            for (const auto& line : v.trail)
                if (line.rfind("FAIL", 0) == 0) {
                    why = line.substr(6);
                    break;
                }
            r.trail.push_back(to_string(route) + " (" + label + ", " + c.branch + "): " + why);
            return false;
        }
        r.certificate = c;
        r.route = route;
        r.diagram_label = label;
        r.surface = v.surface;
        return true;
    };
    auto bound_to_table = [&](const Diagram& witness, CensusRoute route, const std::string& what) {
        if (same_knot(e.diagram, witness)) return true;
        r.trail.push_back(to_string(route) + ": " + what + " does not match the table diagram");
        return false;
    };

    for (CensusRoute route : options.routes) {
        switch (route) {
            case CensusRoute::Sigma:
                for (const auto& [label, d] : candidates)
                    for (int s : {1, -1})
                        if (try_cert(state_certificate(e.name, d, all_state(d, s), Route::AdequateHomogeneousState,
                                                       s > 0 ? "sigma+" : "sigma-"),
                                     route, label))
                            goto done;
                break;
            case CensusRoute::Torus: {
                if (!e.torus) break;
                Certificate c;
                c.subject = e.name;
                c.conjecture = Conjecture::Neuwirth;
                c.route = Route::TorusKnotAnnulus;
                c.branch = "torus annotation T(" + std::to_string(e.torus->p) + "," + std::to_string(e.torus->q) + ")";
                c.torus = e.torus;
                c.diagram = e.diagram;
                if (try_cert(c, route, "table")) goto done;
                break;
            }
            case CensusRoute::Montesinos: {
                if (!e.montesinos) break;
                if (!bound_to_table(build_diagram(*e.montesinos).diagram, route, to_string(*e.montesinos))) break;
                try {
                    auto outcome = montesinos_certify(*e.montesinos);
                    if (!outcome.certificate) {
                        r.trail.push_back("montesinos: " + (outcome.trail.empty() ? "no certificate" : outcome.trail.back()));
                        break;
                    }
                    Certificate c = *outcome.certificate;
                    c.subject = e.name + " = " + to_string(*e.montesinos);
                    if (try_cert(c, route, to_string(*e.montesinos))) goto done;
                } catch (const std::invalid_argument& ex) {
                    r.trail.push_back(std::string("montesinos: ") + ex.what());
                }
                break;
            }
            case CensusRoute::Pretzel: {
                if (!e.pretzel) break;
                Certificate c;
                c.subject = e.name + " = " + to_string(*e.pretzel);
                c.route = Route::PretzelSurface;
                c.branch = "pretzel surface";
                c.pretzel = e.pretzel;
                c.diagram = e.diagram;
                if (try_cert(c, route, to_string(*e.pretzel))) goto done;
                break;
            }
            case CensusRoute::Checkerboard:
                for (const auto& [label, d] : candidates) {
                    auto boards = checkerboard_states(d);
                    for (int k = 0; k < 2; ++k) {
                        std::string branch = k == 0 ? "first checkerboard" : "second checkerboard";
                        if (is_alternating(d)) {
                            if (try_cert(state_certificate(e.name, d, boards[k], Route::AlternatingCheckerboard, branch),
                                         route, label))
                                goto done;
                            continue;
                        }
                        if (auto g = checkerboard_graph(d, boards[k]); g && g->is_two_connected()) {
                            Certificate c;
                            c.subject = e.name;
                            c.route = Route::GraphCheckerboard;
                            c.branch = branch + " as F_G";
                            c.graph = *g;
                            c.diagram = d;
                            if (try_cert(c, route, label)) goto done;
                        }
                        if (try_cert(state_certificate(e.name, d, boards[k], Route::MurasugiMinor, branch), route, label))
                            goto done;
                    }
                }
                break;
            case CensusRoute::Exhaustive:
                for (const auto& [label, d] : candidates) {
                    if (d.crossing_count() > options.state_cap) {
                        r.trail.push_back("exhaustive (" + label + "): " + std::to_string(d.crossing_count()) +
                                          " crossings exceed the state cap");
                        continue;
                    }
                    bool found = false;
                    enumerate_states(
                        d,
                        [&](const State& s) {
                            auto check = check_state(d, s);
                            return check.adequate && !check.is_seifert;
                        },
                        [&](const State& s) {
                            Certificate c = state_certificate(e.name, d, s, Route::MurasugiMinor, "exhaustive search");
                            Validation v = validate_certificate(c);
                            if (!v.valid) return true;
                            r.certificate = c;
                            r.route = route;
                            r.diagram_label = label;
                            r.surface = v.surface;
                            found = true;
                            return false;
                        },
                        options.state_cap);
                    if (found) goto done;
                    r.trail.push_back("exhaustive (" + label + "): no adequate state validates");
                }
                break;
        }
    }
done:
    if (!r.certified()) r.trail.push_back("no certificate found");
    if (e.name == "10_134")
        r.flags.push_back(r.certified() ? "not among the named fixes; certified by the " + to_string(*r.route) + " route"
                                        : "not among the named fixes; no route certifies it");
    if (r.certified() && (e.name == "K11n118" || e.name == "K11n126"))
        r.flags.push_back("expected open; certified by the " + to_string(*r.route) + " route");
    if (r.certified() && r.diagram_label != "table" && r.route != CensusRoute::Montesinos &&
        r.route != CensusRoute::Pretzel)
        r.flags.push_back("certified on " + r.diagram_label + ", not the table diagram");
    return r;
}

CensusReport run_census(const std::vector<KnotTableEntry>& entries, const CensusOptions& options) {
    CensusReport report;
    for (const auto& e : entries) {
        report.results.push_back(certify_knot(e, options));
        const auto& r = report.results.back();
        if (r.certified()) ++report.by_route[to_string(*r.route)];
        else report.failures.push_back(r.name);
    }
    return report;
}

nlohmann::json to_json(const CensusResult& r) {
    nlohmann::json j{{"name", r.name}, {"crossings", r.crossings}, {"certified", r.certified()}, {"flags", r.flags}};
    if (r.certified()) {
        j["route"] = to_string(*r.route);
        j["diagram"] = r.diagram_label;
        j["certificate"] = to_json(*r.certificate, validate_certificate(*r.certificate));
    } else {
        j["trail"] = r.trail;
    }
    return j;
}

nlohmann::json to_json(const CensusReport& r) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& x : r.results) results.push_back(to_json(x));
    return {{"schema", kCertificateSchema},
            {"knots", r.results.size()},
            {"certified", r.results.size() - r.failures.size()},
            {"failures", r.failures},
            {"by_route", r.by_route},
            {"warnings", r.warnings},
            {"results", results}};
}

std::string to_text(const CensusReport& r) {
    std::ostringstream out;
    for (const auto& x : r.results) {
        out << x.name << "\t";
        if (x.certified()) {
            out << to_string(*x.route) << "\t" << x.diagram_label << "\t" << x.certificate->branch;
            if (x.surface && x.surface->boundary_slope) out << "\tslope " << *x.surface->boundary_slope;
        } else {
            out << "FAILED\t" << (x.trail.size() > 1 ? x.trail[x.trail.size() - 2] : x.trail.back());
        }
        for (const auto& f : x.flags) out << "\t[" << f << "]";
        out << "\n";
    }
    out << "knots " << r.results.size() << ", certified " << r.results.size() - r.failures.size() << "\n";
    for (const auto& [route, n] : r.by_route) out << "  " << route << " " << n << "\n";
    out << "failures:";
    for (const auto& f : r.failures) out << " " << f;
    out << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

}  // namespace nw
