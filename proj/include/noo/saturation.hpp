// Forward-chaining closure engine over a global fact graph.
//
// Axioms and correspondences are encoded into SUB / DISJ / INST facts
// between entity references (facts freely cross ontology boundaries) and
// saturated under a fixed rule set:
//
//   R1  SUB(x,y), SUB(y,z)            =>  SUB(x,z)
//   R2  DISJ is symmetric             (by canonical unordered storage)
//   R3  SUB(x,y), DISJ(y,z)           =>  DISJ(x,z)
//   R4  INST(i,x), SUB(x,y)           =>  INST(i,y)
//   R5  INST(i,x), INST(i,y), DISJ(x,y)  =>  clash        (x = y allowed)
//
// The fact universe is finite (at most 2*C^2 + C*I facts for C classes and
// I individuals), so saturation always terminates. Every derived fact
// carries provenance: the rule that produced it and its premise facts.
#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "noo/core.hpp"

namespace noo {

enum class FactKind { Sub, Disj, Inst };

struct Fact {
    FactKind kind = FactKind::Sub;
    EntityRef lhs;
    EntityRef rhs;

    auto operator<=>(const Fact&) const = default;

    static Fact sub(EntityRef x, EntityRef y) {
        return {FactKind::Sub, std::move(x), std::move(y)};
    }
    // unordered, stored with the smaller (ontology, local) first
    static Fact disj(EntityRef x, EntityRef y) {
        if (y < x) std::swap(x, y);
        return {FactKind::Disj, std::move(x), std::move(y)};
    }
    static Fact inst(EntityRef i, EntityRef c) {
        return {FactKind::Inst, std::move(i), std::move(c)};
    }
};

inline std::string fact_text(const Fact& f) {
    switch (f.kind) {
        case FactKind::Sub: return f.lhs.qualified() + " <= " + f.rhs.qualified();
        case FactKind::Disj: return f.lhs.qualified() + " disjoint " + f.rhs.qualified();
        case FactKind::Inst: return f.lhs.qualified() + " in " + f.rhs.qualified();
    }
    return "?";
}

struct Derivation {
    std::string rule;           // "asserted", "R1", "R3" or "R4"
    std::string source;         // for asserted facts: where they came from
    std::vector<Fact> premises; // empty for asserted facts
};

/// The R5 clash: one individual caught in two disjoint classes.
struct Clash {
    EntityRef individual;
    Fact inst_a;
    Fact inst_b;
    Fact disj;
};

struct SaturationGraph {
    std::set<Fact> facts;
    std::map<Fact, Derivation> provenance;
    std::optional<Clash> clash;

    bool has(const Fact& f) const { return facts.count(f) != 0; }
};

class InconsistentNetworkError : public std::runtime_error {
public:
    explicit InconsistentNetworkError(std::string what)
        : std::runtime_error(std::move(what)) {}
};

/// Encodes every axiom and correspondence of the network as facts, per the
/// set-theoretic reading of the six relations: <= and >= become SUB in the
/// corresponding direction, = becomes both, disjoint becomes DISJ, and the
/// membership relations become INST.
inline std::set<Fact> encode(const Network& net) {
    std::set<Fact> out;
    auto add = [&](Fact f) { out.insert(std::move(f)); };
    for (const auto& [id, o] : net.ontologies) {
        for (const auto& ax : o.axioms) {
            switch (ax.kind) {
                case AxiomKind::SubClassOf: add(Fact::sub(ax.lhs, ax.rhs)); break;
                case AxiomKind::Disjoint: add(Fact::disj(ax.lhs, ax.rhs)); break;
                case AxiomKind::MemberOf: add(Fact::inst(ax.lhs, ax.rhs)); break;
            }
        }
    }
    for (const auto& [id, a] : net.alignments) {
        for (const auto& mu : a.correspondences) {
            switch (mu.relation) {
                case Relation::Leq: add(Fact::sub(mu.from, mu.to)); break;
                case Relation::Geq: add(Fact::sub(mu.to, mu.from)); break;
                case Relation::Equiv:
                    add(Fact::sub(mu.from, mu.to));
                    add(Fact::sub(mu.to, mu.from));
                    break;
                case Relation::Disjoint: add(Fact::disj(mu.from, mu.to)); break;
                case Relation::In: add(Fact::inst(mu.from, mu.to)); break;
                case Relation::Ni: add(Fact::inst(mu.to, mu.from)); break;
            }
        }
    }
    return out;
}

namespace detail {

class Saturator {
public:
    explicit Saturator(const Network& net) {
        for (const auto& [id, o] : net.ontologies)
            for (const auto& ax : o.axioms) assert_axiom(ax, "axiom of " + id);
        for (const auto& [id, a] : net.alignments)
            for (const auto& mu : a.correspondences)
                assert_correspondence(mu, "correspondence in " + id);
        run();
    }

    SaturationGraph take() && { return std::move(g_); }

private:
    using Neighbours = std::map<EntityRef, std::set<EntityRef>>;

    SaturationGraph g_;
    Neighbours sups_;        // SUB(x,y): sups_[x] contains y
    Neighbours subs_;        // SUB(x,y): subs_[y] contains x
    Neighbours disj_;        // DISJ{x,y}: both directions
    Neighbours types_;       // INST(i,c): types_[i] contains c
    Neighbours members_;     // INST(i,c): members_[c] contains i
    std::deque<Fact> queue_;

    void assert_axiom(const Axiom& ax, std::string src) {
        switch (ax.kind) {
            case AxiomKind::SubClassOf: add(Fact::sub(ax.lhs, ax.rhs), {"asserted", src, {}}); break;
            case AxiomKind::Disjoint: add(Fact::disj(ax.lhs, ax.rhs), {"asserted", src, {}}); break;
            case AxiomKind::MemberOf: add(Fact::inst(ax.lhs, ax.rhs), {"asserted", src, {}}); break;
        }
    }

    void assert_correspondence(const Correspondence& mu, std::string src) {
        switch (mu.relation) {
            case Relation::Leq: add(Fact::sub(mu.from, mu.to), {"asserted", src, {}}); break;
            case Relation::Geq: add(Fact::sub(mu.to, mu.from), {"asserted", src, {}}); break;
            case Relation::Equiv:
                add(Fact::sub(mu.from, mu.to), {"asserted", src, {}});
                add(Fact::sub(mu.to, mu.from), {"asserted", src, {}});
                break;
            case Relation::Disjoint: add(Fact::disj(mu.from, mu.to), {"asserted", src, {}}); break;
            case Relation::In: add(Fact::inst(mu.from, mu.to), {"asserted", src, {}}); break;
            case Relation::Ni: add(Fact::inst(mu.to, mu.from), {"asserted", src, {}}); break;
        }
    }

    void add(Fact f, Derivation d) {
        if (g_.facts.count(f)) return;
        switch (f.kind) {
            case FactKind::Sub:
                sups_[f.lhs].insert(f.rhs);
                subs_[f.rhs].insert(f.lhs);
                break;
            case FactKind::Disj:
                disj_[f.lhs].insert(f.rhs);
                disj_[f.rhs].insert(f.lhs);
                break;
            case FactKind::Inst:
                types_[f.lhs].insert(f.rhs);
                members_[f.rhs].insert(f.lhs);
                break;
        }
        g_.provenance.emplace(f, std::move(d));
        g_.facts.insert(f);
        queue_.push_back(std::move(f));
    }

    void clash(EntityRef ind, Fact inst_a, Fact inst_b, Fact disj) {
        if (!g_.clash)
            g_.clash = Clash{std::move(ind), std::move(inst_a), std::move(inst_b), std::move(disj)};
    }

    void run() {
        while (!queue_.empty()) {
            Fact f = queue_.front();
            queue_.pop_front();
            switch (f.kind) {
                case FactKind::Sub: on_sub(f); break;
                case FactKind::Disj: on_disj(f); break;
                case FactKind::Inst: on_inst(f); break;
            }
        }
    }

    void on_sub(const Fact& f) {
        const EntityRef& x = f.lhs;
        const EntityRef& y = f.rhs;
        for (const auto& z : copy(sups_, y))  // R1 forward
            add(Fact::sub(x, z), {"R1", "", {f, Fact::sub(y, z)}});
        for (const auto& w : copy(subs_, x))  // R1 backward
            add(Fact::sub(w, y), {"R1", "", {Fact::sub(w, x), f}});
        for (const auto& z : copy(disj_, y))  // R3
            add(Fact::disj(x, z), {"R3", "", {f, Fact::disj(y, z)}});
        for (const auto& i : copy(members_, x))  // R4
            add(Fact::inst(i, y), {"R4", "", {Fact::inst(i, x), f}});
    }

    void on_disj(const Fact& f) {
        const EntityRef& x = f.lhs;
        const EntityRef& y = f.rhs;
        for (const auto& w : copy(subs_, x))  // R3 (symmetric side)
            add(Fact::disj(w, y), {"R3", "", {Fact::sub(w, x), f}});
        for (const auto& w : copy(subs_, y))
            add(Fact::disj(w, x), {"R3", "", {Fact::sub(w, y), f}});
        for (const auto& i : copy(members_, x))  // R5
            if (types_[i].count(y))
                clash(i, Fact::inst(i, x), Fact::inst(i, y), f);
    }

    void on_inst(const Fact& f) {
        const EntityRef& i = f.lhs;
        const EntityRef& x = f.rhs;
        for (const auto& y : copy(sups_, x))  // R4
            add(Fact::inst(i, y), {"R4", "", {f, Fact::sub(x, y)}});
        for (const auto& y : copy(disj_, x))  // R5
            if (types_[i].count(y))
                clash(i, f, Fact::inst(i, y), Fact::disj(x, y));
    }

    // Rule loops insert into the indexes they iterate; iterate a snapshot.
    static std::vector<EntityRef> copy(const Neighbours& n, const EntityRef& key) {
        auto it = n.find(key);
        if (it == n.end()) return {};
        return {it->second.begin(), it->second.end()};
    }
};

}  // namespace detail

/// Least fixpoint of R1-R5 over encode(net), with provenance for every
/// fact. Saturation is run to completion even when a clash is found, so
/// the fact set is a function of the network's constraints alone.
inline SaturationGraph saturate(const Network& net) {
    return detail::Saturator(net).take();
}

inline bool is_consistent(const SaturationGraph& g) { return !g.clash.has_value(); }

inline bool is_consistent(const Network& net) { return is_consistent(saturate(net)); }

/// Closure results carry a distinguished "everything follows" state for
/// inconsistent networks instead of materialising the exploded set.
struct OmegaClosure {
    bool all_consequences = false;
    std::set<Axiom> axioms;
};

struct AlphaClosure {
    bool all_consequences = false;
    CorrespondenceSet correspondences;
};

/// Facts whose entities all belong to `o`, read back as axioms of `o`.
inline OmegaClosure decode_omega(const SaturationGraph& g, const std::string& ontology_id) {
    if (g.clash) return {true, {}};
    OmegaClosure out;
    for (const auto& f : g.facts) {
        if (f.lhs.ontology != ontology_id || f.rhs.ontology != ontology_id) continue;
        switch (f.kind) {
            case FactKind::Sub: out.axioms.insert(Axiom::sub_class_of(f.lhs, f.rhs)); break;
            case FactKind::Disj: out.axioms.insert(Axiom::disjoint(f.lhs, f.rhs)); break;
            case FactKind::Inst: out.axioms.insert(Axiom::member_of(f.lhs, f.rhs)); break;
        }
    }
    return out;
}

/// Facts crossing between `o` and `o2`, read back as correspondences
/// directed from `o` to `o2`. When both SUB directions are present the
/// equivalence correspondence is emitted in addition to <= and >=.
inline AlphaClosure decode_alpha(const SaturationGraph& g, const std::string& o,
                                 const std::string& o2) {
    if (g.clash) return {true, {}};
    AlphaClosure out;
    auto emit = [&](EntityRef from, EntityRef to, Relation r) {
        out.correspondences.insert(
            Correspondence::make(std::move(from), std::move(to), r));
    };
    for (const auto& f : g.facts) {
        bool fwd = f.lhs.ontology == o && f.rhs.ontology == o2;
        bool bwd = f.lhs.ontology == o2 && f.rhs.ontology == o;
        if (!fwd && !bwd) continue;
        switch (f.kind) {
            case FactKind::Sub:
                if (fwd) {
                    emit(f.lhs, f.rhs, Relation::Leq);
                    if (g.has(Fact::sub(f.rhs, f.lhs))) emit(f.lhs, f.rhs, Relation::Equiv);
                } else {
                    emit(f.rhs, f.lhs, Relation::Geq);
                    if (g.has(Fact::sub(f.rhs, f.lhs))) emit(f.rhs, f.lhs, Relation::Equiv);
                }
                break;
            case FactKind::Disj:
                if (fwd)
                    emit(f.lhs, f.rhs, Relation::Disjoint);
                else
                    emit(f.rhs, f.lhs, Relation::Disjoint);
                break;
            case FactKind::Inst:
                if (fwd)
                    emit(f.lhs, f.rhs, Relation::In);
                else
                    emit(f.rhs, f.lhs, Relation::Ni);
                break;
        }
    }
    return out;
}

inline void require_ontology(const Network& net, const std::string& id) {
    if (!net.find_ontology(id))
        throw std::invalid_argument("unknown ontology \"" + id + "\"");
}

inline OmegaClosure omega_closure(const Network& net, const std::string& ontology_id) {
    require_ontology(net, ontology_id);
    return decode_omega(saturate(net), ontology_id);
}

inline AlphaClosure alpha_closure(const Network& net, const std::string& o,
                                  const std::string& o2) {
    require_ontology(net, o);
    require_ontology(net, o2);
    if (o == o2) throw std::invalid_argument("alpha closure needs two distinct ontologies");
    return decode_alpha(saturate(net), o, o2);
}

/// The full network closure: every ontology replaced by its omega-closure
/// and every unordered pair connected by its alpha-closure (so previously
/// unconnected pairs may gain correspondences). The result is normalised.
/// Throws InconsistentNetworkError instead of materialising everything.
inline Network close_network(const Network& net) {
    SaturationGraph g = saturate(net);
    if (g.clash)
        throw InconsistentNetworkError(
            "network is inconsistent; its closure is the set of all statements");
    Network out;
    for (const auto& [id, o] : net.ontologies) {
        Ontology c = o;
        c.axioms = decode_omega(g, id).axioms;
        out.ontologies.emplace(id, std::move(c));
    }
    for (const auto& [a, b] : net.ontology_pairs()) {
        Alignment al;
        al.id = a + "-" + b;
        al.source = a;
        al.target = b;
        al.correspondences = decode_alpha(g, a, b).correspondences;
        out.alignments.emplace(al.id, std::move(al));
    }
    return out;
}

namespace detail {

inline std::set<Fact> query_facts(const Correspondence& mu) {
    switch (mu.relation) {
        case Relation::Leq: return {Fact::sub(mu.from, mu.to)};
        case Relation::Geq: return {Fact::sub(mu.to, mu.from)};
        case Relation::Equiv: return {Fact::sub(mu.from, mu.to), Fact::sub(mu.to, mu.from)};
        case Relation::Disjoint: return {Fact::disj(mu.from, mu.to)};
        case Relation::In: return {Fact::inst(mu.from, mu.to)};
        case Relation::Ni: return {Fact::inst(mu.to, mu.from)};
    }
    return {};
}

inline std::set<Fact> query_facts(const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::SubClassOf: return {Fact::sub(ax.lhs, ax.rhs)};
        case AxiomKind::Disjoint: return {Fact::disj(ax.lhs, ax.rhs)};
        case AxiomKind::MemberOf: return {Fact::inst(ax.lhs, ax.rhs)};
    }
    return {};
}

inline void require_declared(const Network& net, const EntityRef& e) {
    const Ontology* o = net.find_ontology(e.ontology);
    if (!o || o->kind_of(e.local) != e.kind)
        throw std::invalid_argument("query references undeclared entity " + e.qualified());
}

template <typename Query>
bool entails_impl(const Network& net, const Query& q) {
    SaturationGraph g = saturate(net);
    if (g.clash) return true;  // everything follows from an inconsistent network
    for (const auto& f : query_facts(q))
        if (!g.has(f)) return false;
    return true;
}

}  // namespace detail

inline bool entails(const Network& net, const Correspondence& query) {
    detail::require_declared(net, query.from);
    detail::require_declared(net, query.to);
    return detail::entails_impl(net, query);
}

inline bool entails(const Network& net, const Axiom& query) {
    detail::require_declared(net, query.lhs);
    detail::require_declared(net, query.rhs);
    return detail::entails_impl(net, query);
}

/// Appends the derivation chain of `f` to `lines`, premises first, each
/// fact once. Used to print proofs the way they are done on paper.
inline void explain_fact(const SaturationGraph& g, const Fact& f,
                         std::vector<std::string>& lines, std::set<Fact>& seen) {
    if (seen.count(f)) return;
    seen.insert(f);
    auto it = g.provenance.find(f);
    if (it == g.provenance.end()) return;
    for (const auto& p : it->second.premises) explain_fact(g, p, lines, seen);
    std::string line = fact_text(f);
    if (it->second.rule == "asserted")
        line += "   [" + it->second.source + "]";
    else
        line += "   [" + it->second.rule + "]";
    lines.push_back(std::move(line));
}

/// The full derivation of the recorded clash, ending in the R5 step.
inline std::vector<std::string> explain_clash(const SaturationGraph& g) {
    std::vector<std::string> lines;
    if (!g.clash) return lines;
    std::set<Fact> seen;
    explain_fact(g, g.clash->inst_a, lines, seen);
    explain_fact(g, g.clash->inst_b, lines, seen);
    explain_fact(g, g.clash->disj, lines, seen);
    lines.push_back("R5 clash on individual " + g.clash->individual.qualified() + ": " +
                    fact_text(g.clash->inst_a) + ", " + fact_text(g.clash->inst_b) + ", " +
                    fact_text(g.clash->disj));
    return lines;
}

}  // namespace noo
