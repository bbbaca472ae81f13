#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "noo/morphism.hpp"
#include "noo/oracle.hpp"
#include "noo/saturation.hpp"
#include "support.hpp"

using namespace noo;
using namespace noo::testing;

namespace {

Network shrink_a13(const Network& net) {
    Network out = net;
    Alignment& a13 = out.alignments.at("A13");
    CorrespondenceSet only;
    only.insert(Correspondence::make({"o1", "b1"}, {"o3", "e3"}, Relation::Geq));
    a13.correspondences = only;
    return out;
}

/// Independent decision procedure for subsumption between normalised
/// networks: brute force over all ontology maps, with the alignment map
/// forced to the unique alignment between the images.
bool subsumed_h_only(const Network& src, const Network& dst) {
    std::vector<std::string> src_onts, dst_onts;
    for (const auto& [id, o] : src.ontologies) src_onts.push_back(id);
    for (const auto& [id, o] : dst.ontologies) dst_onts.push_back(id);
    if (src_onts.empty()) return true;
    if (dst_onts.empty()) return false;
    std::vector<size_t> pick(src_onts.size(), 0);
    while (true) {
        NetworkMorphism m;
        for (size_t i = 0; i < src_onts.size(); ++i) m.h[src_onts[i]] = dst_onts[pick[i]];
        bool ok = true;
        for (const auto& [id, o] : src.ontologies)
            if (!detail::axioms_contained(o, dst.ontologies.at(m.h.at(id)))) ok = false;
        for (const auto& [id, a] : src.alignments) {
            if (!ok) break;
            const std::string& hs = m.h.at(a.source);
            const std::string& ht = m.h.at(a.target);
            auto between = dst.alignments_between(hs, ht);
            if (between.size() != 1 ||
                !detail::correspondences_contained(a, *between.front(), hs, ht, false))
                ok = false;
        }
        if (ok) return true;
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < dst_onts.size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) return false;
    }
}

}  // namespace

TEST_CASE("the identity is a syntactic morphism") {
    Network net = fig1();
    CHECK(check_syntactic_morphism(net, net, identity_morphism(net)));
}

TEST_CASE("shrinking an alignment keeps the inclusion morphism, not its converse") {
    Network full = fig1();
    Network small = shrink_a13(full);
    NetworkMorphism id = identity_morphism(full);
    CHECK(check_syntactic_morphism(small, full, id));
    CHECK_FALSE(check_syntactic_morphism(full, small, id));
}

TEST_CASE("non-total maps are reported as errors") {
    Network net = fig1();
    NetworkMorphism partial;
    partial.h["o1"] = "o1";
    CHECK_THROWS_AS(check_syntactic_morphism(net, net, partial), std::invalid_argument);
}

TEST_CASE("the empty network maps into anything") {
    Network empty = make_network({}, {});
    auto m = find_syntactic_morphism(empty, fig1());
    REQUIRE(m.has_value());
    CHECK(m->h.empty());
    CHECK(m->k.empty());
    CHECK(strictly_subsumed(empty, fig1()));
}

TEST_CASE("fig1 does not map into fig1-prime: i in e3 has no home") {
    CHECK_FALSE(find_syntactic_morphism(fig1(), fig1_prime()).has_value());
    CHECK_FALSE(is_subsumed(fig1(), fig1_prime()));
    CHECK(is_subsumed(fig1_prime(), fig1()));
}

TEST_CASE("a network maps into its closure") {
    Network net = fig1_prime();
    Network closed = close_network(net);
    auto m = find_syntactic_morphism(net, closed);
    REQUIRE(m.has_value());
    CHECK(check_syntactic_morphism(net, closed, *m));
}

TEST_CASE("subsumption relations behave as expected on fixtures") {
    for (const char* name : {"fig1.json", "fig1-prime.json", "fig2.json"}) {
        Network net = load_fixture(name);
        CHECK(is_subsumed(net, normalise(net)));
        CHECK(equivalent(net, net));
    }
}

TEST_CASE("found witnesses always pass the checker") {
    std::mt19937 rng(51);
    for (int round = 0; round < 30; ++round) {
        Network dst = random_network(rng);
        Network src = delete_some(dst, rng);
        auto m = find_syntactic_morphism(src, dst);
        REQUIRE(m.has_value());  // deletion keeps the identity available
        CHECK(check_syntactic_morphism(src, dst, *m));
    }
}

TEST_CASE("subsumption is reflexive and composes transitively") {
    std::mt19937 rng(52);
    for (int round = 0; round < 15; ++round) {
        Network c = random_network(rng);
        Network b = delete_some(c, rng);
        Network a = delete_some(b, rng);
        auto ab = find_syntactic_morphism(a, b);
        auto bc = find_syntactic_morphism(b, c);
        REQUIRE(ab.has_value());
        REQUIRE(bc.has_value());
        NetworkMorphism ac = compose(*ab, *bc);
        CHECK(check_syntactic_morphism(a, c, ac));
    }
}

TEST_CASE("on normalised networks the h-only formulation agrees") {
    std::mt19937 rng(53);
    int disagreements = 0;
    for (int round = 0; round < 40; ++round) {
        Network dst = normalise(random_network(rng));
        Network src = normalise(round % 2 ? delete_some(dst, rng) : random_network(rng));
        if (is_subsumed(src, dst) != subsumed_h_only(src, dst)) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("syntactic morphisms are also semantic on the fixtures") {
    Network net = fig1_prime();
    Network closed = close_network(net);
    auto m = find_syntactic_morphism(net, closed);
    REQUIRE(m.has_value());
    SemanticVerdict v = check_semantic_morphism(net, closed, *m);
    CHECK(v.holds);
    CHECK_FALSE(v.destination_inconsistent);
}

TEST_CASE("semantic morphisms accept derivable correspondences") {
    // source asks for b1 <= b3, which fig1-prime derives but does not state
    Network net = fig1_prime();
    Alignment a13 = net.alignments.at("A13");
    a13.add("b1", "b3", Relation::Leq);
    Network src = make_network({net.ontologies.at("o1"), net.ontologies.at("o3")}, {a13});
    NetworkMorphism m;
    m.h = {{"o1", "o1"}, {"o3", "o3"}};
    m.k = {{"A13", "A13"}};
    CHECK_FALSE(check_syntactic_morphism(src, net, m));
    CHECK(check_semantic_morphism(src, net, m).holds);
    CHECK(find_semantic_morphism(src, net).has_value());
}

TEST_CASE("semantic morphisms reject non-consequences") {
    Network net = fig1_prime();
    Ontology o1 = net.ontologies.at("o1");
    o1.sub_class_of("a1", "b1");
    Network src = make_network({o1}, {});
    NetworkMorphism m;
    m.h = {{"o1", "o1"}};
    CHECK_FALSE(check_semantic_morphism(src, net, m).holds);
    // the oracle confirms a1 <= b1 is not a consequence
    OracleVerdict v = oracle_entails(net, Axiom::sub_class_of({"o1", "a1"}, {"o1", "b1"}), 2);
    CHECK(v.kind == OracleVerdict::Kind::Countermodel);
}

TEST_CASE("semantic checks on an inconsistent destination hold trivially") {
    Network src = make_network({fig1().ontologies.at("o1")}, {});
    NetworkMorphism m;
    m.h = {{"o1", "o1"}};
    SemanticVerdict v = check_semantic_morphism(src, fig1(), m);
    CHECK(v.holds);
    CHECK(v.destination_inconsistent);
}

TEST_CASE("weight-aware checks reduce to syntactic ones at top confidence") {
    std::mt19937 rng(54);
    for (int round = 0; round < 20; ++round) {
        Network dst = random_network(rng);  // all confidences top
        Network src = delete_some(dst, rng);
        NetworkMorphism id = identity_morphism(src);
        CHECK(check_syntactic_morphism(src, dst, id) == check_weight_aware_morphism(src, dst, id));
    }
}

TEST_CASE("weight-aware morphisms require non-decreasing confidence") {
    Network low = fig1();
    Network high = fig1();
    auto set_conf = [](Network& net, double value) {
        Alignment& a13 = net.alignments.at("A13");
        CorrespondenceSet updated;
        for (auto mu : a13.correspondences) {
            mu.confidence = Confidence{value};
            updated.insert(mu);
        }
        a13.correspondences = updated;
    };
    set_conf(low, 0.5);
    set_conf(high, 0.9);
    NetworkMorphism id = identity_morphism(low);
    CHECK(check_weight_aware_morphism(low, high, id));
    CHECK_FALSE(check_weight_aware_morphism(high, low, id));
    CHECK(find_weight_aware_morphism(low, high).has_value());
}

TEST_CASE("downward consistency preservation across subsumption") {
    std::mt19937 rng(55);
    for (int round = 0; round < 30; ++round) {
        Network b = random_network(rng);
        Network a = delete_some(b, rng);
        if (is_subsumed(a, b) && is_consistent(b)) CHECK(is_consistent(a));
    }
    // and on the fixtures
    CHECK(is_subsumed(fig1_prime(), fig1()));
    // fig1 is inconsistent, fig1-prime consistent: nothing to check upward,
    // while the consistent fixture's sub-networks stay consistent
    std::mt19937 rng2(56);
    for (int round = 0; round < 10; ++round) {
        Network sub = delete_some(fig1_prime(), rng2);
        CHECK(is_consistent(sub));
    }
}
