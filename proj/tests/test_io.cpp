#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "noo/io.hpp"
#include "noo/saturation.hpp"
#include "support.hpp"

using namespace noo;
using namespace noo::testing;

TEST_CASE("the figure 1 fixture parses with the documented counts") {
    ParseResult res = parse_network_file(fixture_path("fig1.json"));
    REQUIRE(res.ok());
    const Network& net = *res.network;
    CHECK(net.ontologies.size() == 3);
    CHECK(net.alignments.size() == 3);
    CHECK(net.ontologies.at("o1").axioms.size() == 4);
    CHECK(net.ontologies.at("o2").axioms.size() == 6);
    CHECK(net.ontologies.at("o3").axioms.size() == 8);
    CHECK(net.alignments.at("A12").correspondences.size() == 1);
    CHECK(net.alignments.at("A23").correspondences.size() == 1);
    CHECK(net.alignments.at("A13").correspondences.size() == 2);
}

TEST_CASE("the empty document is the empty network") {
    ParseResult res = parse_network("{\"ontologies\":[],\"alignments\":[]}");
    REQUIRE(res.ok());
    CHECK(res.network->ontologies.empty());
    CHECK(serialize_network(*res.network) ==
          "{\n  \"ontologies\": [],\n  \"alignments\": []\n}\n");
}

TEST_CASE("unknown relations are schema violations with a path") {
    std::string doc = R"({"ontologies":[
        {"id":"a","classes":["x"],"individuals":[],"axioms":[]},
        {"id":"b","classes":["y"],"individuals":[],"axioms":[]}],
      "alignments":[{"id":"A","source":"a","target":"b",
        "correspondences":[{"from":"x","to":"y","relation":"subsumes"}]}]})";
    ParseResult res = parse_network(doc);
    CHECK_FALSE(res.ok());
    REQUIRE(!res.diagnostics.empty());
    CHECK(res.diagnostics.front().location == "/alignments/0/correspondences/0/relation");
}

TEST_CASE("syntax errors carry an offset") {
    ParseResult res = parse_network("{\"ontologies\":");
    CHECK_FALSE(res.ok());
    REQUIRE(!res.diagnostics.empty());
    CHECK(res.diagnostics.front().location.starts_with("offset"));
}

TEST_CASE("documents violating core invariants are rejected with an error") {
    // dangling endpoint
    ParseResult res = parse_network(
        R"({"ontologies":[{"id":"a","classes":["x"]}],
            "alignments":[{"id":"A","source":"a","target":"missing","correspondences":[]}]})");
    CHECK_FALSE(res.ok());
    CHECK(!res.diagnostics.empty());

    // kind mismatch: b1 is a class, "in" needs an individual
    res = parse_network(
        R"({"ontologies":[{"id":"o1","classes":["b1"]},{"id":"o3","classes":["e3"]}],
            "alignments":[{"id":"A","source":"o1","target":"o3",
              "correspondences":[{"from":"b1","to":"e3","relation":"in"}]}]})");
    CHECK_FALSE(res.ok());
    CHECK(!res.diagnostics.empty());

    // confidence out of range
    res = parse_network(
        R"({"ontologies":[{"id":"a","classes":["x"]},{"id":"b","classes":["y"]}],
            "alignments":[{"id":"A","source":"a","target":"b",
              "correspondences":[{"from":"x","to":"y","relation":"=","confidence":1.5}]}]})");
    CHECK_FALSE(res.ok());

    // duplicate correspondence triple
    res = parse_network(
        R"({"ontologies":[{"id":"a","classes":["x"]},{"id":"b","classes":["y"]}],
            "alignments":[{"id":"A","source":"a","target":"b",
              "correspondences":[{"from":"x","to":"y","relation":"="},
                                 {"from":"x","to":"y","relation":"=","confidence":0.4}]}]})");
    CHECK_FALSE(res.ok());
}

TEST_CASE("round trip: parse(serialize(n)) == n") {
    std::mt19937 rng(21);
    for (int round = 0; round < 30; ++round) {
        RandomNetworkOptions opt;
        opt.weighted = round % 2 == 1;
        Network net = random_network(rng, opt);
        ParseResult back = parse_network(serialize_network(net));
        REQUIRE(back.ok());
        CHECK(*back.network == net);
    }
    for (const char* name : {"fig1.json", "fig1-prime.json", "fig2.json"}) {
        Network net = load_fixture(name);
        ParseResult back = parse_network(serialize_network(net));
        REQUIRE(back.ok());
        CHECK(*back.network == net);
    }
}

TEST_CASE("serialisation is deterministic regardless of construction order") {
    Ontology o1, o2;
    o1.id = "o1";
    o1.declare_class("b").declare_class("a");
    o1.sub_class_of("b", "a");
    o2.id = "o2";
    o2.declare_class("c");
    Alignment a;
    a.id = "A";
    a.source = "o1";
    a.target = "o2";
    a.add("a", "c", Relation::Leq);
    a.add("b", "c", Relation::Geq);
    Network first = make_network({o1, o2}, {a});
    Network second = make_network({o2, o1}, {a});  // insertion order differs
    CHECK(serialize_network(first) == serialize_network(second));
}

TEST_CASE("round trip survives the closure of fig1-prime") {
    Network closed = close_network(fig1_prime());
    ParseResult back = parse_network(serialize_network(closed));
    REQUIRE(back.ok());
    CHECK(*back.network == closed);
}

TEST_CASE("correspondence literals resolve against the network") {
    Network net = fig1();
    Correspondence mu = parse_correspondence("o1:b1 >= o3:e3", net);
    CHECK(mu.from == EntityRef{"o1", "b1", EntityKind::Class});
    CHECK(mu.to == EntityRef{"o3", "e3", EntityKind::Class});
    CHECK(mu.relation == Relation::Geq);
    CHECK(mu.confidence.is_top());

    // same-ontology membership literal, usable as an axiom-level query
    Correspondence inside = parse_correspondence("o3:i in o3:e3", net);
    CHECK(inside.from.kind == EntityKind::Individual);
    CHECK(inside.to.kind == EntityKind::Class);

    Correspondence weighted = parse_correspondence("o1:e1 >= o3:f3 [0.8]", net);
    CHECK(weighted.confidence == Confidence{0.8});
}

TEST_CASE("correspondence literal errors") {
    Network net = fig1();
    CHECK_THROWS_AS(parse_correspondence("o1:b1 in o3:e3", net), LiteralError);  // kind mismatch
    CHECK_THROWS_AS(parse_correspondence("o1:zz <= o3:e3", net), LiteralError);  // unknown entity
    CHECK_THROWS_AS(parse_correspondence("o9:b1 <= o3:e3", net), LiteralError);  // unknown ontology
    CHECK_THROWS_AS(parse_correspondence("o1:b1 o3:e3", net), LiteralError);     // malformed
    CHECK_THROWS_AS(parse_correspondence("o1:b1 ~ o3:e3", net), LiteralError);   // bad relation
    CHECK_THROWS_AS(parse_correspondence("o1:b1 <= o3:e3 [2]", net), LiteralError);
}
