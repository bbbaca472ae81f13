// Shared test utilities: fixture loading, programmatic copies of the
// shipped networks, random generators and query conversion.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "noo/core.hpp"
#include "noo/io.hpp"
#include "noo/saturation.hpp"

namespace noo::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(NOO_DATA_DIR) + "/" + name;
}

inline Network load_fixture(const std::string& name) {
    ParseResult res = parse_network_file(fixture_path(name));
    if (!res.ok()) throw std::runtime_error("fixture " + name + " failed to parse:\n" + res.report());
    return std::move(*res.network);
}

inline Network fig1() { return load_fixture("fig1.json"); }
inline Network fig1_prime() { return load_fixture("fig1-prime.json"); }
inline Network fig2() { return load_fixture("fig2.json"); }

/// Removes each axiom and correspondence independently with probability
/// `drop`; declarations are kept, so the result is a valid sub-network
/// subsumed by the input under the identity maps.
inline Network delete_some(const Network& net, std::mt19937& rng, double drop = 0.3) {
    std::bernoulli_distribution gone(drop);
    Network out = net;
    for (auto& [id, o] : out.ontologies) {
        std::set<Axiom> kept;
        for (const auto& ax : o.axioms)
            if (!gone(rng)) kept.insert(ax);
        o.axioms = std::move(kept);
    }
    for (auto& [id, a] : out.alignments) {
        CorrespondenceSet kept;
        for (const auto& mu : a.correspondences)
            if (!gone(rng)) kept.insert(mu);
        a.correspondences = std::move(kept);
    }
    return out;
}

struct RandomNetworkOptions {
    int ontologies = 3;
    int classes_per_ontology = 3;
    bool individuals = true;
    int axioms_per_ontology = 3;
    int alignments = 3;            // may exceed the number of pairs
    int correspondences_per_alignment = 2;
    bool weighted = false;
};

/// Small random networks for property tests. Alignments pick random
/// ordered pairs, so several alignments (in both directions) between the
/// same two ontologies are common; that is the point for normalisation
/// tests.
inline Network random_network(std::mt19937& rng, const RandomNetworkOptions& opt = {}) {
    std::vector<Ontology> ontologies;
    for (int i = 0; i < opt.ontologies; ++i) {
        Ontology o;
        o.id = "n" + std::to_string(i);
        for (int c = 0; c < opt.classes_per_ontology; ++c)
            o.declare_class("c" + std::to_string(c));
        if (opt.individuals) o.declare_individual("x");
        auto cls = [&](int c) { return "c" + std::to_string(c); };
        std::uniform_int_distribution<int> pick(0, opt.classes_per_ontology - 1);
        std::uniform_int_distribution<int> kind(0, 5);
        for (int a = 0; a < opt.axioms_per_ontology; ++a) {
            int x = pick(rng), y = pick(rng);
            switch (kind(rng)) {
                case 0:
                case 1:
                case 2:
                    if (x != y) o.sub_class_of(cls(x), cls(y));
                    break;
                case 3:
                    if (x != y) o.disjoint(cls(x), cls(y));
                    break;
                default:
                    if (opt.individuals) o.member_of("x", cls(x));
                    break;
            }
        }
        ontologies.push_back(std::move(o));
    }

    std::vector<Alignment> alignments;
    std::uniform_int_distribution<int> pick_ont(0, opt.ontologies - 1);
    std::uniform_int_distribution<int> pick_cls(0, opt.classes_per_ontology - 1);
    std::uniform_int_distribution<int> pick_rel(0, 5);
    std::uniform_int_distribution<int> pick_conf(0, 10);
    for (int a = 0; a < opt.alignments; ++a) {
        int s = pick_ont(rng), t = pick_ont(rng);
        if (s == t) continue;
        Alignment al;
        al.id = "A" + std::to_string(a);
        al.source = "n" + std::to_string(s);
        al.target = "n" + std::to_string(t);
        for (int c = 0; c < opt.correspondences_per_alignment; ++c) {
            Confidence conf = opt.weighted ? Confidence{pick_conf(rng) / 10.0} : Confidence::top();
            std::string from = "c" + std::to_string(pick_cls(rng));
            std::string to = "c" + std::to_string(pick_cls(rng));
            switch (pick_rel(rng)) {
                case 0: al.add(from, to, Relation::Leq, conf); break;
                case 1: al.add(from, to, Relation::Geq, conf); break;
                case 2: al.add(from, to, Relation::Equiv, conf); break;
                case 3: al.add(from, to, Relation::Disjoint, conf); break;
                case 4:
                    if (opt.individuals) al.add("x", to, Relation::In, conf);
                    break;
                default:
                    if (opt.individuals) al.add(from, "x", Relation::Ni, conf);
                    break;
            }
        }
        alignments.push_back(std::move(al));
    }
    return make_network(std::move(ontologies), std::move(alignments));
}

/// Reads a fact back as a query: an axiom when it stays inside one
/// ontology, a correspondence when it crosses two.
inline bool fact_is_local(const Fact& f) { return f.lhs.ontology == f.rhs.ontology; }

inline Axiom fact_as_axiom(const Fact& f) {
    switch (f.kind) {
        case FactKind::Sub: return Axiom::sub_class_of(f.lhs, f.rhs);
        case FactKind::Disj: return Axiom::disjoint(f.lhs, f.rhs);
        case FactKind::Inst: return Axiom::member_of(f.lhs, f.rhs);
    }
    return Axiom::sub_class_of(f.lhs, f.rhs);
}

inline Correspondence fact_as_correspondence(const Fact& f) {
    switch (f.kind) {
        case FactKind::Sub: return Correspondence::make(f.lhs, f.rhs, Relation::Leq);
        case FactKind::Disj: return Correspondence::make(f.lhs, f.rhs, Relation::Disjoint);
        case FactKind::Inst: return Correspondence::make(f.lhs, f.rhs, Relation::In);
    }
    return Correspondence::make(f.lhs, f.rhs, Relation::Leq);
}

}  // namespace noo::testing
