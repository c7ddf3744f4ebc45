#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "neuwirth/census.hpp"

#include <set>

using namespace nw;

namespace {

const std::string kData = NEUWIRTH_DATA_DIR;

const std::vector<KnotTableEntry>& rolfsen() {
    static const auto t = load_table(kData + "/rolfsen.txt");
    return t;
}

const std::vector<KnotTableEntry>& k11() {
    static const auto t = load_table(kData + "/k11.txt");
    return t;
}

const KnotTableEntry& entry(const std::vector<KnotTableEntry>& t, const std::string& name) {
    for (const auto& e : t)
        if (e.name == name) return e;
    throw std::out_of_range(name);
}

std::set<std::string> failures(const CensusReport& r) { return {r.failures.begin(), r.failures.end()}; }

CensusOptions with(std::vector<CensusRoute> routes) {
    CensusOptions o;
    o.routes = std::move(routes);
    return o;
}

}  // namespace

TEST_CASE("table parsing") {
    CHECK(parse_table("").empty());
    CHECK(parse_table("# nothing\n\n   \n").empty());

    auto t = parse_table("3_1 | [[1,5,2,4],[3,1,4,6],[5,3,6,2]] | torus=T(2,3)\n"
                         "5_2 | [[1,5,2,4],[3,9,4,8],[5,1,6,10],[7,3,8,2],[9,7,10,6]] | montesinos=M(2/5,1/2,1/3); "
                         "r3=1,2\n");
    REQUIRE(t.size() == 2);
    CHECK(t[0].name == "3_1");
    CHECK(t[0].diagram.crossing_count() == 3);
    REQUIRE(t[0].torus);
    CHECK(t[0].torus->p == 2);
    CHECK(t[0].torus->q == 3);
    CHECK(t[1].montesinos);
    CHECK(t[1].r3 == std::vector<std::vector<int>>{{1, 2}});
    CHECK(t[1].line == 2);

    CHECK_THROWS_WITH_AS(parse_table("hopf | [[4,1,3,2],[2,3,1,4]]\n"), doctest::Contains("line 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_table("\n3_1 | [[1,5,2,4],[3,1,4,6]\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_table("3_1 | [[1,5,2,4],[3,1,4,6],[5,3,6,2]] | colour=red\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_table("3_1 | [[1,5,2,4],[3,1,4,6],[5,3,6,2]] | torus=T(2)\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_table("3_1\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_table(kData + "/missing.txt"), std::exception);
}

TEST_CASE("bundled tables") {
    std::vector<std::string> warnings;
    auto t = load_table(kData + "/rolfsen.txt", &warnings);
    CHECK(t.size() == 249);
    CHECK(warnings.empty());
    for (const char* n : {"8_19", "10_124", "10_128", "10_134", "10_139", "10_142"}) CHECK_NOTHROW(entry(t, n));
    CHECK(k11().size() == 552);
    std::set<std::string> names;
    for (const auto& e : k11()) {
        names.insert(e.name);
        CHECK(e.diagram.crossing_count() == 11);
    }
    CHECK(names.size() == 552);
    CHECK(names.count("K11n118"));
    CHECK(names.count("K11n126"));

    auto small = parse_table("3_1 | [[1,5,2,4],[3,1,4,6],[5,3,6,2]]\n");
    CHECK(small.size() == 1);
}

TEST_CASE("route names") {
    for (CensusRoute r : {CensusRoute::Sigma, CensusRoute::Torus, CensusRoute::Montesinos, CensusRoute::Pretzel,
                          CensusRoute::Checkerboard, CensusRoute::Exhaustive})
        CHECK(parse_census_route(to_string(r)) == r);
    CHECK_THROWS_AS(parse_census_route("guess"), std::invalid_argument);
    auto d = default_census_routes();
    CHECK(std::find(d.begin(), d.end(), CensusRoute::Exhaustive) == d.end());
    CHECK(d.front() == CensusRoute::Sigma);
}

TEST_CASE("figure eight through a sigma state") {
    auto r = certify_knot(entry(rolfsen(), "4_1"));
    REQUIRE(r.certified());
    CHECK(*r.route == CensusRoute::Sigma);
    CHECK(r.diagram_label == "table");
    CHECK(validate_certificate(*r.certificate).valid);
}

TEST_CASE("sigma routes alone on the small table") {
    auto report = run_census(rolfsen(), with({CensusRoute::Sigma}));
    // 9_49 is positive as well; the table diagram has no adequate non-Seifert sigma state.
    CHECK(failures(report) ==
          std::set<std::string>{"8_19", "9_49", "10_124", "10_128", "10_134", "10_139", "10_142"});
    for (const auto& r : report.results)
        if (!r.certified()) CHECK(r.trail.back() == "no certificate found");
}

TEST_CASE("default routes on the small table") {
    auto report = run_census(rolfsen());
    CHECK(failures(report) == std::set<std::string>{"9_49"});
    auto route_of = [&](const std::string& name) {
        for (const auto& r : report.results)
            if (r.name == name) return r.route ? to_string(*r.route) : std::string("none");
        return std::string("missing");
    };
    CHECK(route_of("8_19") == "torus");
    CHECK(route_of("10_124") == "torus");
    CHECK(route_of("10_128") == "montesinos");
    CHECK(route_of("10_139") == "montesinos");
    CHECK(route_of("10_142") == "pretzel");
    CHECK(route_of("10_134") == "montesinos");
    for (const auto& r : report.results) {
        if (r.name == "10_134") {
            REQUIRE(r.flags.size() == 1);
            CHECK(r.flags[0].find("not among the named fixes") != std::string::npos);
        }
        if (r.name == "10_161") CHECK(r.diagram_label == "variant 1");
    }

    auto pretzel = certify_knot(entry(rolfsen(), "10_142"));
    REQUIRE(pretzel.certified());
    CHECK(pretzel.certificate->route == Route::PretzelSurface);
    CHECK(to_string(*pretzel.certificate->pretzel) == "P(-4,3,3)");
}

TEST_CASE("alternating entries are certified by a sigma state") {
    int alternating = 0;
    for (const auto* table : {&rolfsen(), &k11()})
        for (const auto& e : *table) {
            if (!is_alternating(e.diagram)) continue;
            ++alternating;
            auto r = certify_knot(e, with({CensusRoute::Sigma}));
            REQUIRE(r.certified());
            CHECK(r.diagram_label == "table");
        }
    CHECK(alternating == 196 + 367);
}

TEST_CASE("eleven crossings") {
    auto sigma = run_census(k11(), with({CensusRoute::Sigma}));
    std::set<std::string> stragglers{"K11n93",  "K11n95",  "K11n118", "K11n126", "K11n136",
                                     "K11n169", "K11n171", "K11n180", "K11n181"};
    CHECK(failures(sigma) == stragglers);

    auto defaults = run_census(k11());
    CHECK(failures(defaults) == stragglers);
    for (const auto& r : defaults.results)
        if (!r.certified()) CHECK(r.trail.back() == "no certificate found");

    auto all = default_census_routes();
    all.push_back(CensusRoute::Exhaustive);
    auto full = run_census(k11(), with(all));
    CHECK(failures(full) == std::set<std::string>{"K11n118", "K11n169", "K11n171", "K11n181"});
    CHECK(full.by_route.at("exhaustive") == 5);
    for (const auto& r : full.results) {
        if (r.name == "K11n126") {
            REQUIRE(r.certified());
            CHECK(r.diagram_label == "R-III 2 5 7");
            CHECK(r.flags.front().find("expected open") != std::string::npos);
        }
        if (r.name == "K11n95") CHECK(r.diagram_label == "R-III 9");
    }

    auto failure = certify_knot(entry(k11(), "K11n118"), with(all));
    CHECK_FALSE(failure.certified());
    CHECK(failure.trail.size() > 2);
}

TEST_CASE("state cap") {
    auto all = default_census_routes();
    all.push_back(CensusRoute::Exhaustive);
    CensusOptions o = with(all);
    o.state_cap = 10;
    auto r = certify_knot(entry(k11(), "K11n93"), o);
    CHECK_FALSE(r.certified());
    CHECK(r.trail[r.trail.size() - 2].find("exceed the state cap") != std::string::npos);
}

TEST_CASE("certificates revalidate and reports are deterministic") {
    auto all = default_census_routes();
    all.push_back(CensusRoute::Exhaustive);
    auto a = run_census(rolfsen(), with(all));
    for (const auto& r : a.results)
        if (r.certified()) CHECK(validate_certificate(*r.certificate).valid);
    auto b = run_census(rolfsen(), with(all));
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_text(a) == to_text(b));

    auto j = to_json(a);
    CHECK(j["knots"] == 249);
    CHECK(j["certified"] == 248);
    CHECK(j["failures"] == nlohmann::json{"9_49"});
    CHECK(j["results"][0].contains("certificate"));
    CHECK(to_text(a).find("failures: 9_49\n") != std::string::npos);
}
