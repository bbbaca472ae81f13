// Bounded finite-model oracle. Enumerates interpretations of every
// ontology over one shared domain {0..n-1} and decides satisfiability,
// entailment (by countermodel search) and model inclusion, independently
// of the saturation engine. Class extents are bitmasks over the domain,
// so a class variable ranges over 2^n candidate extents; the search keeps
// a set of still-possible values per entity and interleaves backtracking
// with arc-consistency propagation.
//
// All verdicts are explicitly bounded: "no model up to n" and "entailed
// up to n" never claim anything beyond the tested domain size. Witnesses
// (models and countermodels) are re-checked against the satisfaction
// definitions before being returned.
#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "noo/core.hpp"

namespace noo {

/// Interpretation of one ontology: class extents are subsets of the
/// shared domain encoded as bitmasks, individuals are domain elements.
struct Interpretation {
    int domain_size = 1;
    std::map<std::string, std::uint64_t> class_extents;
    std::map<std::string, int> individual_values;

    std::uint64_t extent(const std::string& local) const {
        auto it = class_extents.find(local);
        if (it == class_extents.end())
            throw std::invalid_argument("unmapped class " + local);
        return it->second;
    }
    int element(const std::string& local) const {
        auto it = individual_values.find(local);
        if (it == individual_values.end())
            throw std::invalid_argument("unmapped individual " + local);
        return it->second;
    }

    bool operator==(const Interpretation&) const = default;
};

/// A family of interpretations indexed by ontology id, all over the same
/// domain.
struct NetworkModel {
    int domain_size = 1;
    std::map<std::string, Interpretation> interpretations;

    const Interpretation& of(const std::string& ontology_id) const {
        auto it = interpretations.find(ontology_id);
        if (it == interpretations.end())
            throw std::invalid_argument("no interpretation for ontology " + ontology_id);
        return it->second;
    }

    bool operator==(const NetworkModel&) const = default;
};

inline bool satisfies_axiom(const Interpretation& m, const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::SubClassOf:
            return (m.extent(ax.lhs.local) & ~m.extent(ax.rhs.local)) == 0;
        case AxiomKind::Disjoint:
            return (m.extent(ax.lhs.local) & m.extent(ax.rhs.local)) == 0;
        case AxiomKind::MemberOf:
            return (m.extent(ax.rhs.local) >> m.element(ax.lhs.local)) & 1u;
    }
    return false;
}

/// The six-row satisfaction table for correspondences; `m` interprets the
/// source ontology and `m2` the target one.
inline bool satisfies_correspondence(const Interpretation& m, const Interpretation& m2,
                                     const Correspondence& mu) {
    switch (mu.relation) {
        case Relation::Equiv:
            return m.extent(mu.from.local) == m2.extent(mu.to.local);
        case Relation::Leq:
            return (m.extent(mu.from.local) & ~m2.extent(mu.to.local)) == 0;
        case Relation::Geq:
            return (m2.extent(mu.to.local) & ~m.extent(mu.from.local)) == 0;
        case Relation::Disjoint:
            return (m.extent(mu.from.local) & m2.extent(mu.to.local)) == 0;
        case Relation::In:
            return (m2.extent(mu.to.local) >> m.element(mu.from.local)) & 1u;
        case Relation::Ni:
            return (m.extent(mu.from.local) >> m2.element(mu.to.local)) & 1u;
    }
    return false;
}

/// Full satisfaction re-check of a candidate model, straight from the
/// definitions. Throws if the model leaves a constrained entity unmapped.
inline bool is_model_of(const NetworkModel& model, const Network& net) {
    for (const auto& [id, o] : net.ontologies) {
        const Interpretation& m = model.of(id);
        for (const auto& ax : o.axioms)
            if (!satisfies_axiom(m, ax)) return false;
    }
    for (const auto& [id, a] : net.alignments) {
        const Interpretation& m = model.of(a.source);
        const Interpretation& m2 = model.of(a.target);
        for (const auto& mu : a.correspondences)
            if (!satisfies_correspondence(m, m2, mu)) return false;
    }
    return true;
}

struct OracleVerdict {
    enum class Kind { Model, NoModelUpTo, Countermodel, EntailedUpTo };
    Kind kind = Kind::NoModelUpTo;
    int domain_size = 1;
    std::optional<NetworkModel> witness;

    bool affirmative() const {
        return kind == Kind::Model || kind == Kind::EntailedUpTo;
    }
};

inline const char* to_string(OracleVerdict::Kind k) {
    switch (k) {
        case OracleVerdict::Kind::Model: return "Model";
        case OracleVerdict::Kind::NoModelUpTo: return "NoModelUpTo";
        case OracleVerdict::Kind::Countermodel: return "Countermodel";
        case OracleVerdict::Kind::EntailedUpTo: return "EntailedUpTo";
    }
    return "?";
}

/// The oracle is a desk-scale ground truth, not a production reasoner:
/// above `unguarded_domain` it declines networks larger than the entity
/// limits. NOO_ORACLE_MAX_ENTITIES lifts (or lowers) both limits.
struct OracleLimits {
    int max_classes = 12;
    int max_individuals = 4;
    int unguarded_domain = 3;

    static OracleLimits from_env() {
        OracleLimits lim;
        if (const char* v = std::getenv("NOO_ORACLE_MAX_ENTITIES")) {
            int n = std::atoi(v);
            if (n > 0) {
                lim.max_classes = n;
                lim.max_individuals = n;
            }
        }
        return lim;
    }
};

class OracleDeclined : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

enum class ConstraintOp {
    Subset, Disjoint, Equal, Member,
    NotSubset, NotDisjoint, NotEqual, NotMember,
};

constexpr ConstraintOp negate(ConstraintOp op) {
    switch (op) {
        case ConstraintOp::Subset: return ConstraintOp::NotSubset;
        case ConstraintOp::Disjoint: return ConstraintOp::NotDisjoint;
        case ConstraintOp::Equal: return ConstraintOp::NotEqual;
        case ConstraintOp::Member: return ConstraintOp::NotMember;
        case ConstraintOp::NotSubset: return ConstraintOp::Subset;
        case ConstraintOp::NotDisjoint: return ConstraintOp::Disjoint;
        case ConstraintOp::NotEqual: return ConstraintOp::Equal;
        case ConstraintOp::NotMember: return ConstraintOp::Member;
    }
    return op;
}

/// A semantic constraint over at most two entities. For Member, `a` is
/// the individual and `b` the class.
struct SemanticConstraint {
    ConstraintOp op;
    EntityRef a;
    EntityRef b;
};

inline SemanticConstraint constraint_of(const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::SubClassOf: return {ConstraintOp::Subset, ax.lhs, ax.rhs};
        case AxiomKind::Disjoint: return {ConstraintOp::Disjoint, ax.lhs, ax.rhs};
        case AxiomKind::MemberOf: return {ConstraintOp::Member, ax.lhs, ax.rhs};
    }
    return {ConstraintOp::Subset, ax.lhs, ax.rhs};
}

inline SemanticConstraint constraint_of(const Correspondence& mu) {
    switch (mu.relation) {
        case Relation::Leq: return {ConstraintOp::Subset, mu.from, mu.to};
        case Relation::Geq: return {ConstraintOp::Subset, mu.to, mu.from};
        case Relation::Equiv: return {ConstraintOp::Equal, mu.from, mu.to};
        case Relation::Disjoint: return {ConstraintOp::Disjoint, mu.from, mu.to};
        case Relation::In: return {ConstraintOp::Member, mu.from, mu.to};
        case Relation::Ni: return {ConstraintOp::Member, mu.to, mu.from};
    }
    return {ConstraintOp::Equal, mu.from, mu.to};
}

inline std::vector<SemanticConstraint> network_constraints(const Network& net) {
    std::vector<SemanticConstraint> out;
    for (const auto& [id, o] : net.ontologies)
        for (const auto& ax : o.axioms) out.push_back(constraint_of(ax));
    for (const auto& [id, a] : net.alignments)
        for (const auto& mu : a.correspondences) out.push_back(constraint_of(mu));
    return out;
}

/// Pointwise check of an operator over concrete values: class values are
/// extent bitmasks, individual values are element indexes.
inline bool holds(ConstraintOp op, std::uint64_t av, std::uint64_t bv) {
    switch (op) {
        case ConstraintOp::Subset: return (av & ~bv) == 0;
        case ConstraintOp::Disjoint: return (av & bv) == 0;
        case ConstraintOp::Equal: return av == bv;
        case ConstraintOp::Member: return (bv >> av) & 1u;
        case ConstraintOp::NotSubset: return (av & ~bv) != 0;
        case ConstraintOp::NotDisjoint: return (av & bv) != 0;
        case ConstraintOp::NotEqual: return av != bv;
        case ConstraintOp::NotMember: return !((bv >> av) & 1u);
    }
    return false;
}

/// Search over candidate interpretations. Each entity appearing in a
/// constraint becomes a variable whose current domain is a bitmask over
/// candidate values (bit v = value v still possible); arc consistency is
/// re-established after every tentative assignment.
class InterpretationSearch {
public:
    InterpretationSearch(const Network& net, int domain_size,
                         const std::vector<SemanticConstraint>& constraints,
                         const std::vector<EntityRef>& extra_entities = {}) {
        if (domain_size < 1) throw std::invalid_argument("domain size must be >= 1");
        if (domain_size > 6)
            throw std::invalid_argument("domain sizes above 6 are not supported");
        n_ = domain_size;
        for (const auto& c : constraints) {
            var_of(c.a);
            var_of(c.b);
        }
        for (const auto& e : extra_entities) var_of(e);
        for (const auto& c : constraints) {
            int a = index_.at(c.a), b = index_.at(c.b);
            if (a == b) {
                unary_.push_back({c.op, a});
            } else {
                int ci = static_cast<int>(cons_.size());
                cons_.push_back({c.op, a, b});
                cons_of_[a].push_back(ci);
                cons_of_[b].push_back(ci);
            }
        }
        // Static tie-break rank: individuals first, then by descending
        // constraint degree, then by name.
        std::vector<int> idx(entities_.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) {
            bool xi = entities_[x].kind == EntityKind::Individual;
            bool yi = entities_[y].kind == EntityKind::Individual;
            if (xi != yi) return xi;
            size_t dx = cons_of_.at(x).size(), dy = cons_of_.at(y).size();
            if (dx != dy) return dx > dy;
            return entities_[x] < entities_[y];
        });
        rank_.resize(idx.size());
        for (size_t pos = 0; pos < idx.size(); ++pos) rank_[idx[pos]] = static_cast<int>(pos);
        (void)net;
    }

    /// Runs the search; `emit` receives each complete assignment and
    /// returns true to continue enumerating. Returns false if the search
    /// was stopped early by `emit`.
    bool run(const std::function<bool(const std::map<EntityRef, std::uint64_t>&)>& emit) {
        std::vector<std::uint64_t> dom(entities_.size());
        for (size_t v = 0; v < entities_.size(); ++v) dom[v] = full_domain(static_cast<int>(v));
        for (const auto& [op, v] : unary_) {
            std::uint64_t d = 0;
            for_each_value(dom[v], [&](std::uint64_t val) {
                if (holds(op, val, val)) d |= bit_of(val);
            });
            dom[v] = d;
            if (!d) return true;  // wiped out: no assignment exists
        }
        std::deque<int> all;
        for (int ci = 0; ci < static_cast<int>(cons_.size()); ++ci) all.push_back(ci);
        if (!propagate(dom, std::move(all))) return true;
        return descend(dom, emit);
    }

private:
    struct BinCon {
        ConstraintOp op;
        int a, b;
    };

    int n_ = 1;
    std::vector<EntityRef> entities_;
    std::map<EntityRef, int> index_;
    std::vector<BinCon> cons_;
    std::map<int, std::vector<int>> cons_of_;
    std::vector<std::pair<ConstraintOp, int>> unary_;
    std::vector<int> rank_;

    int var_of(const EntityRef& e) {
        auto it = index_.find(e);
        if (it != index_.end()) return it->second;
        int v = static_cast<int>(entities_.size());
        entities_.push_back(e);
        index_.emplace(e, v);
        cons_of_[v];
        return v;
    }

    bool is_class_var(int v) const { return entities_[v].kind == EntityKind::Class; }

    std::uint64_t full_domain(int v) const {
        int values = is_class_var(v) ? (1 << n_) : n_;
        return values >= 64 ? ~0ull : (1ull << values) - 1;
    }

    static std::uint64_t bit_of(std::uint64_t value) { return 1ull << value; }

    template <typename F>
    static void for_each_value(std::uint64_t domain, F&& f) {
        while (domain) {
            std::uint64_t v = static_cast<std::uint64_t>(std::countr_zero(domain));
            domain &= domain - 1;
            f(v);
        }
    }

    /// Removes values without support across `c`, one side at a time.
    bool revise(std::vector<std::uint64_t>& dom, const BinCon& c, bool prune_a) {
        int x = prune_a ? c.a : c.b;
        int y = prune_a ? c.b : c.a;
        std::uint64_t kept = 0;
        for_each_value(dom[x], [&](std::uint64_t vx) {
            bool supported = false;
            for_each_value(dom[y], [&](std::uint64_t vy) {
                if (supported) return;
                std::uint64_t av = prune_a ? vx : vy;
                std::uint64_t bv = prune_a ? vy : vx;
                if (holds(c.op, av, bv)) supported = true;
            });
            if (supported) kept |= bit_of(vx);
        });
        if (kept == dom[x]) return true;
        dom[x] = kept;
        return kept != 0;
    }

    bool propagate(std::vector<std::uint64_t>& dom, std::deque<int> work) {
        std::set<int> queued(work.begin(), work.end());
        while (!work.empty()) {
            int ci = work.front();
            work.pop_front();
            queued.erase(ci);
            const BinCon& c = cons_[ci];
            for (bool side : {true, false}) {
                std::uint64_t before = dom[side ? c.a : c.b];
                if (!revise(dom, c, side)) return false;
                if (before != dom[side ? c.a : c.b]) {
                    for (int nb : cons_of_.at(side ? c.a : c.b))
                        if (nb != ci && queued.insert(nb).second) work.push_back(nb);
                }
            }
        }
        return true;
    }

    bool descend(const std::vector<std::uint64_t>& dom,
                 const std::function<bool(const std::map<EntityRef, std::uint64_t>&)>& emit) {
        int pick = -1, best = 0;
        for (size_t v = 0; v < dom.size(); ++v) {
            int count = std::popcount(dom[v]);
            if (count > 1 && (pick < 0 || count < best ||
                              (count == best && rank_[v] < rank_[pick]))) {
                pick = static_cast<int>(v);
                best = count;
            }
        }
        if (pick < 0) {
            std::map<EntityRef, std::uint64_t> solution;
            for (size_t v = 0; v < dom.size(); ++v)
                solution[entities_[v]] = static_cast<std::uint64_t>(std::countr_zero(dom[v]));
            return emit(solution);
        }
        bool keep_going = true;
        for_each_value(dom[pick], [&](std::uint64_t val) {
            if (!keep_going) return;
            std::vector<std::uint64_t> next = dom;
            next[pick] = bit_of(val);
            std::deque<int> work(cons_of_.at(pick).begin(), cons_of_.at(pick).end());
            if (propagate(next, std::move(work))) keep_going = descend(next, emit);
        });
        return keep_going;
    }
};

inline void apply_guard(const Network& net, int domain_size, const OracleLimits& limits) {
    if (domain_size <= limits.unguarded_domain) return;
    int classes = 0, individuals = 0;
    for (const auto& [id, o] : net.ontologies) {
        classes += static_cast<int>(o.classes.size());
        individuals += static_cast<int>(o.individuals.size());
    }
    if (classes > limits.max_classes || individuals > limits.max_individuals)
        throw OracleDeclined(
            "oracle declined: " + std::to_string(classes) + " classes / " +
            std::to_string(individuals) + " individuals exceed the guard at domain size " +
            std::to_string(domain_size) + " (set NOO_ORACLE_MAX_ENTITIES to override)");
}

/// Completes a raw assignment into a model mapping every declared entity;
/// entities untouched by any constraint default to the empty extent or
/// element 0.
inline NetworkModel assemble_model(const Network& net, int domain_size,
                                   const std::map<EntityRef, std::uint64_t>& assignment) {
    NetworkModel model;
    model.domain_size = domain_size;
    for (const auto& [id, o] : net.ontologies) {
        Interpretation m;
        m.domain_size = domain_size;
        for (const auto& c : o.classes) {
            auto it = assignment.find(o.cls(c));
            m.class_extents[c] = it == assignment.end() ? 0 : it->second;
        }
        for (const auto& i : o.individuals) {
            auto it = assignment.find(o.ind(i));
            m.individual_values[i] = it == assignment.end() ? 0 : static_cast<int>(it->second);
        }
        model.interpretations.emplace(id, std::move(m));
    }
    return model;
}

inline void require_declared(const Network& net, const EntityRef& e) {
    const Ontology* o = net.find_ontology(e.ontology);
    if (!o || o->kind_of(e.local) != e.kind)
        throw std::invalid_argument("query references undeclared entity " + e.qualified());
}

template <typename Query>
OracleVerdict entails_search(const Network& net, const Query& query, int domain_size,
                             const OracleLimits& limits) {
    apply_guard(net, domain_size, limits);
    auto constraints = network_constraints(net);
    SemanticConstraint negated = constraint_of(query);
    negated.op = negate(negated.op);
    constraints.push_back(negated);
    InterpretationSearch search(net, domain_size, constraints);
    std::optional<NetworkModel> counter;
    search.run([&](const std::map<EntityRef, std::uint64_t>& a) {
        counter = assemble_model(net, domain_size, a);
        return false;
    });
    if (counter) {
        if (!is_model_of(*counter, net))
            throw std::logic_error("oracle produced an invalid countermodel");
        return {OracleVerdict::Kind::Countermodel, domain_size, std::move(counter)};
    }
    return {OracleVerdict::Kind::EntailedUpTo, domain_size, std::nullopt};
}

}  // namespace detail

/// Searches for a model of the network over a domain of `domain_size`
/// elements. Because adding unused domain elements never invalidates a
/// model, a Model verdict at size n covers every size up to n, and
/// NoModelUpTo(n) rules out all of them.
inline OracleVerdict find_model(const Network& net, int domain_size,
                                const OracleLimits& limits = {}) {
    detail::apply_guard(net, domain_size, limits);
    detail::InterpretationSearch search(net, domain_size, detail::network_constraints(net));
    std::optional<NetworkModel> model;
    search.run([&](const std::map<EntityRef, std::uint64_t>& a) {
        model = detail::assemble_model(net, domain_size, a);
        return false;
    });
    if (model) {
        if (!is_model_of(*model, net))
            throw std::logic_error("oracle produced an invalid model");
        return {OracleVerdict::Kind::Model, domain_size, std::move(model)};
    }
    return {OracleVerdict::Kind::NoModelUpTo, domain_size, std::nullopt};
}

/// Looks for a model of the network that violates the query. Finding one
/// (a countermodel) definitively refutes entailment; finding none is
/// bounded evidence for it.
inline OracleVerdict oracle_entails(const Network& net, const Correspondence& query,
                                    int domain_size, const OracleLimits& limits = {}) {
    detail::require_declared(net, query.from);
    detail::require_declared(net, query.to);
    return detail::entails_search(net, query, domain_size, limits);
}

inline OracleVerdict oracle_entails(const Network& net, const Axiom& query,
                                    int domain_size, const OracleLimits& limits = {}) {
    detail::require_declared(net, query.lhs);
    detail::require_declared(net, query.rhs);
    return detail::entails_search(net, query, domain_size, limits);
}

/// Decides whether every model of `superior` restricts along `h` (a map
/// from inferior ontology ids to superior ones) to a model of `inferior`,
/// at the given domain size. Equivalently: every axiom and correspondence
/// of the inferior network, transported along h, must have no countermodel
/// among the superior's models, which is what is checked constraint by
/// constraint.
inline bool check_model_inclusion(const Network& inferior, const Network& superior,
                                  const std::map<std::string, std::string>& h,
                                  int domain_size, const OracleLimits& limits = {}) {
    auto image = [&](const std::string& o) -> const std::string& {
        auto it = h.find(o);
        if (it == h.end())
            throw std::invalid_argument("map is not total: missing ontology " + o);
        if (!superior.find_ontology(it->second))
            throw std::invalid_argument("map targets unknown ontology " + it->second);
        return it->second;
    };
    auto transport = [&](const EntityRef& e) {
        EntityRef out{image(e.ontology), e.local, e.kind};
        detail::require_declared(superior, out);
        return out;
    };
    std::vector<detail::SemanticConstraint> queries;
    for (const auto& [id, o] : inferior.ontologies) {
        image(id);
        for (const auto& ax : o.axioms) {
            auto c = detail::constraint_of(ax);
            c.a = transport(c.a);
            c.b = transport(c.b);
            queries.push_back(std::move(c));
        }
    }
    for (const auto& [id, a] : inferior.alignments) {
        for (const auto& mu : a.correspondences) {
            auto c = detail::constraint_of(mu);
            c.a = transport(c.a);
            c.b = transport(c.b);
            queries.push_back(std::move(c));
        }
    }
    detail::apply_guard(superior, domain_size, limits);
    auto base = detail::network_constraints(superior);
    for (const auto& q : queries) {
        auto constraints = base;
        detail::SemanticConstraint negated = q;
        negated.op = detail::negate(negated.op);
        constraints.push_back(negated);
        detail::InterpretationSearch search(superior, domain_size, constraints);
        bool counterexample = false;
        search.run([&](const std::map<EntityRef, std::uint64_t>&) {
            counterexample = true;
            return false;
        });
        if (counterexample) return false;
    }
    return true;
}

/// Enumerates every assignment of the constrained entities (plus any
/// `extra_entities`) that yields a model at the given domain size. Meant
/// for tiny networks; the callback receives entity values (extent masks
/// for classes, element indexes for individuals).
inline void for_each_model(const Network& net, int domain_size,
                           const std::function<void(const std::map<EntityRef, std::uint64_t>&)>& fn,
                           const std::vector<EntityRef>& extra_entities = {},
                           const OracleLimits& limits = {}) {
    detail::apply_guard(net, domain_size, limits);
    detail::InterpretationSearch search(net, domain_size, detail::network_constraints(net),
                                        extra_entities);
    search.run([&](const std::map<EntityRef, std::uint64_t>& a) {
        fn(a);
        return true;
    });
}

}  // namespace noo
