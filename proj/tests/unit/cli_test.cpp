#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "common.hpp"
#include "adjsep/adjustment.hpp"
#include "adjsep/enumeration.hpp"
#include "adjsep/identification.hpp"
#include "adjsep/mag.hpp"

using namespace adjsep;
using json = nlohmann::json;
using testing::S;

namespace {

struct Result {
    int code;
    std::string out, err;
    std::size_t pulled = 0;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    Result r{0, "", "", 0};
    r.code = cli::run(args, in, out, err, &r.pulled);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(ADJSEP_TEST_DATA) + "/" + name; }

json sets_json(const MixedGraph& g, const std::vector<NodeSet>& sets) {
    json arr = json::array();
    for (const auto& s : sets) arr.push_back(g.sorted_names(s));
    return arr;
}

std::set<std::vector<std::string>> as_family(const json& j) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : j) out.insert(s.get<std::vector<std::string>>());
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("adjustment list") {
    auto r = run({"adj", "list", "--graph", data("two_exposures.cg"), "-x", "X1,X2", "-y", "Y"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(as_family(j) == std::set<std::vector<std::string>>{{"Z"}, {"V", "Z"}});
    auto lib = enumerate_adjustments(testing::load("two_exposures.cg").graph,
                                     make_query(testing::load("two_exposures.cg").graph, testing::load("two_exposures.cg").exposure,
                                                testing::load("two_exposures.cg").outcome),
                                     false)
                   .take();
    CHECK(j == sets_json(testing::load("two_exposures.cg").graph, lib));
}

TEST_CASE("amenability and missing sets") {
    auto r = run({"mag", "amenable", "--graph", data("mag_m1.cg"), "-x", "X", "-y", "Y"});
    CHECK(r.code == 0);
    CHECK(r.out == "false\n");
    auto f = run({"sep", "find", "--graph", data("xy_adjacent.cg"), "-x", "X", "-y", "Y"});
    CHECK(f.code == 1);
    CHECK(f.out == "null\n");
    auto e = run({"sep", "find", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "--format", "text"});
    CHECK(e.code == 0);
    CHECK(e.out == "{V1, Z1, Z2}\n");
}

TEST_CASE("errors name the culprit") {
    auto u = run({"sep", "test", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Nope", "-z", "Z1"});
    CHECK(u.code == 2);
    CHECK(u.err.find("Nope") != std::string::npos);
    auto m = run({"sep", "find", "--graph", "-", "-y", "B"}, "edge A -> B\n");
    CHECK(m.code == 2);
    CHECK(m.err.find("-x") != std::string::npos);
    auto fmt = run({"sep", "find", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "--format", "xml"});
    CHECK(fmt.code == 2);
    CHECK((fmt.err + fmt.out).find("--format") != std::string::npos);
    auto file = run({"sep", "find", "--graph", "/no/such/file.cg", "-x", "X", "-y", "Y"});
    CHECK(file.code == 2);
    CHECK(file.err.find("/no/such/file.cg") != std::string::npos);
    auto parse = run({"sep", "find", "--graph", "-", "-x", "A", "-y", "B"}, "edge A -> B\nedge B => C\n");
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 2") != std::string::npos);
    auto both = run({"sep", "find", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "--observed", "X,Y", "--latent",
                     "V1"});
    CHECK(both.code == 2);
    CHECK(both.err.find("--observed") != std::string::npos);
    auto nosub = run({"sep"});
    CHECK(nosub.code == 2);
    CHECK(run({"--help"}).code == 0);
    auto cyc = run({"adj", "find", "--graph", "-", "-x", "A", "-y", "B"}, "edge A -> B\nedge B -> C\nedge C -> A\n");
    CHECK(cyc.code == 2);
}

TEST_CASE("limit pulls lazily") {
    std::string big;
    for (int i = 0; i < 12; ++i) {
        big += "edge X -> A" + std::to_string(i) + "\n";
        big += "edge A" + std::to_string(i) + " -> B" + std::to_string(i) + "\n";
        big += "edge B" + std::to_string(i) + " -> Y\n";
    }
    auto r = run({"sep", "list-min", "--graph", "-", "-x", "X", "-y", "Y", "--limit", "3"}, big);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).size() == 3);
    CHECK(r.pulled <= 4);
    auto all = run({"sep", "list", "--graph", "-", "-x", "X", "-y", "Y", "--limit", "5", "--format", "csv"}, big);
    CHECK(all.code == 0);
    CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 5);
    CHECK(all.pulled <= 6);
}

TEST_CASE("CLI matches the library on every example graph") {
    const std::vector<std::string> files{"diabetes.cg", "two_exposures.cg", "backdoor_fails.cg", "six_nodes.cg", "confounded.cg", "front_door.cg",
                                         "confounded_proxy.cg", "plain_effect.cg", "parent_effect.cg", "partition_effect.cg", "latent_mediator.cg"};
    for (const auto& file : files) {
        CAPTURE(file);
        auto d = testing::load(file);
        const auto& g = d.graph;
        SepQuery q{d.exposure, d.outcome, g.empty_set(), g.all_nodes() - d.latent};
        auto found = find_adjustment(g, q);
        auto r = run({"adj", "find", "--graph", data(file)});
        CHECK(r.code == (found ? 0 : 1));
        CHECK(json::parse(r.out) == (found ? json(g.sorted_names(*found)) : json(nullptr)));
        auto mins = enumerate_adjustments(g, q, true).take();
        auto lm = run({"adj", "list-min", "--graph", data(file)});
        CHECK(json::parse(lm.out) == sets_json(g, mins));
        auto cost = find_adjustment(g, q, Objective::i_minimum);
        auto mc = run({"adj", "find-min-cost", "--graph", data(file)});
        CHECK(json::parse(mc.out) == (cost ? json(g.sorted_names(*cost)) : json(nullptr)));
        auto sp = find_min_sep(g, SepQuery{d.exposure, d.outcome, g.empty_set(), g.all_nodes() - d.latent});
        auto sr = run({"sep", "find-min", "--graph", data(file)});
        CHECK(json::parse(sr.out) == (sp ? json(g.sorted_names(*sp)) : json(nullptr)));
        auto cl = classify(g, d.exposure, d.outcome, g.all_nodes() - d.latent);
        auto cr = run({"ident", "classify", "--graph", data(file)});
        CHECK(cr.code == 0);
        CHECK(json::parse(cr.out)["label"] == label_name(cl.label));
        CHECK(json::parse(cr.out)["formula"] == render(g, cl.formula));
    }
    for (const char* file : {"mag_m1.cg", "mag_m2.cg", "mag_m3.cg", "mag_m4.cg", "mag_m5.cg"}) {
        CAPTURE(file);
        auto d = testing::load(file);
        MagAdjustment adj(d.graph, d.exposure, d.outcome);
        auto r = run({"mag", "adj", "list", "--graph", data(file)});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out) == sets_json(d.graph, adj.enumerate(d.graph.empty_set(), d.graph.all_nodes(), false).take()));
        auto a = run({"mag", "amenable", "--graph", data(file)});
        CHECK(json::parse(a.out) == adj.amenable());
    }
}

TEST_CASE("sep tasks with minimality and costs") {
    auto t = run({"sep", "test", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "-z", "Z1,Z2"});
    CHECK(t.out == "true\n");
    auto s = run({"sep", "test", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "-z", "Z1,Z2", "--minimality",
                  "strong"});
    CHECK(s.out == "false\n");
    auto l = run({"sep", "list-min", "--graph", data("six_nodes.cg"), "-x", "X", "-y", "Y", "-i", "V1"});
    CHECK(as_family(json::parse(l.out)) == std::set<std::vector<std::string>>{{"V1", "Z1"}, {"V1", "Z2"}});

    auto path = std::filesystem::temp_directory_path() / "adjsep_cli_costs.txt";
    {
        std::ofstream c(path);
        c << "# weights\nFI 5\nMR 1\nMD 1.5\n";
    }
    auto mc = run({"adj", "find-min-cost", "--graph", data("diabetes.cg"), "--cost", path.string()});
    CHECK(mc.code == 0);
    CHECK(json::parse(mc.out) == json(std::vector<std::string>{"MD", "MR"}));
    auto strong = run({"adj", "find-min-cost", "--graph", data("diabetes.cg"), "-i", "MD", "--minimality", "strong"});
    CHECK(strong.code == 1);
    auto bd = run({"adj", "backdoor", "--graph", data("backdoor_fails.cg")});
    CHECK(bd.code == 1);
    auto bdt = run({"adj", "backdoor", "--graph", data("diabetes.cg"), "-z", "FI"});
    CHECK(bdt.out == "true\n");
    std::filesystem::remove(path);
}

TEST_CASE("graph conversions") {
    auto r = run({"mag", "from-dag", "--graph", data("latent_mediator.cg")});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["nodes"] == json({"X", "Y", "W2", "Z"}));
    std::set<std::vector<std::string>> edges;
    for (const auto& e : j["edges"]) edges.insert(e.get<std::vector<std::string>>());
    CHECK(edges == std::set<std::vector<std::string>>{
                       {"X", "->", "W2"}, {"X", "->", "Z"}, {"W2", "->", "Y"}, {"W2", "<->", "Z"}});
    auto c = run({"mag", "canonical", "--graph", "-", "--format", "text"}, "edge X <-> Y\n");
    CHECK(c.code == 0);
    auto back = parse_graph(c.out);
    CHECK(back.latent.size() == 1);
    CHECK(dag_to_mag(back.graph, back.latent) == testing::graph("edge X <-> Y\n"));
}

TEST_CASE("basis and bench") {
    auto b = run({"basis", "parental", "--graph", "-"}, "edge A -> B\nedge B -> C\n");
    CHECK(b.code == 0);
    CHECK(json::parse(b.out) == json::parse(R"([{"i":"A","j":"C","z":["B"]}])"));
    auto bench = run({"bench", "dag", "--n", "10", "--k", "1,2", "--instances", "50", "--no-timing"});
    CHECK(bench.code == 0);
    auto lines = std::count(bench.out.begin(), bench.out.end(), '\n');
    CHECK(lines == 3);
    CHECK(bench.out.rfind("n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,t_mean_us,t_p99_us\n", 0) == 0);
    auto again = run({"bench", "dag", "--n", "10", "--k", "1,2", "--instances", "50", "--no-timing"});
    CHECK(again.out == bench.out);
    auto bad = run({"bench", "dag", "--n", "3", "--k", "2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("2k") != std::string::npos);
    auto js = run({"bench", "mag", "--n", "10", "--instances", "20", "--format", "json"});
    CHECK(js.code == 0);
    auto row = json::parse(js.out);
    CHECK(row.is_array());
    CHECK(row[0].contains("mag_ee"));
}

}
