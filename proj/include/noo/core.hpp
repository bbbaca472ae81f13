// Core model for networks of ontologies: ontologies with subsumption,
// disjointness and membership axioms, alignments made of directed
// correspondences, and the network container tying them together.
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace noo {

enum class EntityKind { Class, Individual };

inline const char* to_string(EntityKind k) {
    return k == EntityKind::Class ? "class" : "individual";
}

/// A globally unique entity reference: (ontology id, local name).
/// The same local name in two ontologies denotes two distinct entities.
struct EntityRef {
    std::string ontology;
    std::string local;
    EntityKind kind = EntityKind::Class;

    auto operator<=>(const EntityRef&) const = default;

    std::string qualified() const { return ontology + ":" + local; }
};

enum class AxiomKind { SubClassOf, Disjoint, MemberOf };

/// An axiom of a single ontology. Disjointness is unordered and stored
/// with the two classes in lexicographic order of local name.
struct Axiom {
    AxiomKind kind = AxiomKind::SubClassOf;
    EntityRef lhs;  // sub / first disjoint class / individual
    EntityRef rhs;  // sup / second disjoint class / class

    auto operator<=>(const Axiom&) const = default;

    static Axiom sub_class_of(EntityRef sub, EntityRef sup) {
        sub.kind = EntityKind::Class;
        sup.kind = EntityKind::Class;
        return {AxiomKind::SubClassOf, std::move(sub), std::move(sup)};
    }
    static Axiom disjoint(EntityRef a, EntityRef b) {
        a.kind = EntityKind::Class;
        b.kind = EntityKind::Class;
        if (b.local < a.local) std::swap(a, b);
        return {AxiomKind::Disjoint, std::move(a), std::move(b)};
    }
    static Axiom member_of(EntityRef ind, EntityRef cls) {
        ind.kind = EntityKind::Individual;
        cls.kind = EntityKind::Class;
        return {AxiomKind::MemberOf, std::move(ind), std::move(cls)};
    }
};

/// Confidence degree attached to a correspondence. Concretely a number in
/// [0,1] under the usual total order; 1 is top (Boolean true) and 0 is
/// bottom. All comparisons go through this type so the representation can
/// change without touching callers.
struct Confidence {
    double value = 1.0;

    static Confidence top() { return {1.0}; }
    static Confidence bottom() { return {0.0}; }

    bool in_range() const { return value >= 0.0 && value <= 1.0; }
    bool is_top() const { return value == 1.0; }

    auto operator<=>(const Confidence&) const = default;
};

/// The closed relation set for correspondences.
enum class Relation { Equiv, Leq, Geq, Disjoint, In, Ni };

/// Relation obtained by reading a correspondence in the opposite
/// direction: swaps Leq/Geq and In/Ni, fixes Equiv and Disjoint.
constexpr Relation dual(Relation r) {
    switch (r) {
        case Relation::Leq: return Relation::Geq;
        case Relation::Geq: return Relation::Leq;
        case Relation::In: return Relation::Ni;
        case Relation::Ni: return Relation::In;
        default: return r;
    }
}

/// Entity kinds a relation accepts on each side.
constexpr EntityKind required_from_kind(Relation r) {
    return r == Relation::In ? EntityKind::Individual : EntityKind::Class;
}
constexpr EntityKind required_to_kind(Relation r) {
    return r == Relation::Ni ? EntityKind::Individual : EntityKind::Class;
}

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equiv: return "=";
        case Relation::Leq: return "<=";
        case Relation::Geq: return ">=";
        case Relation::Disjoint: return "disjoint";
        case Relation::In: return "in";
        case Relation::Ni: return "ni";
    }
    return "?";
}

inline std::optional<Relation> relation_from_string(const std::string& s) {
    if (s == "=") return Relation::Equiv;
    if (s == "<=") return Relation::Leq;
    if (s == ">=") return Relation::Geq;
    if (s == "disjoint") return Relation::Disjoint;
    if (s == "in") return Relation::In;
    if (s == "ni") return Relation::Ni;
    return std::nullopt;
}

/// A directed correspondence between an entity of the source ontology and
/// an entity of the target ontology.
struct Correspondence {
    EntityRef from;
    EntityRef to;
    Relation relation = Relation::Equiv;
    Confidence confidence = Confidence::top();

    bool operator==(const Correspondence&) const = default;

    /// The same constraint read in the opposite direction.
    Correspondence reversed() const {
        return {to, from, dual(relation), confidence};
    }

    static Correspondence make(EntityRef from, EntityRef to, Relation r,
                               Confidence c = Confidence::top()) {
        from.kind = required_from_kind(r);
        to.kind = required_to_kind(r);
        return {std::move(from), std::move(to), r, c};
    }
};

/// Identity of a correspondence within an alignment is its
/// (from, to, relation) triple; confidence is a function of that triple.
struct CorrespondenceTripleLess {
    bool operator()(const Correspondence& a, const Correspondence& b) const {
        return std::tie(a.from, a.to, a.relation) <
               std::tie(b.from, b.to, b.relation);
    }
};

using CorrespondenceSet = std::set<Correspondence, CorrespondenceTripleLess>;

/// A finite logical theory: declared classes and individuals plus axioms
/// over them.
struct Ontology {
    std::string id;
    std::set<std::string> classes;
    std::set<std::string> individuals;
    std::set<Axiom> axioms;

    bool operator==(const Ontology&) const = default;

    std::optional<EntityKind> kind_of(const std::string& local) const {
        if (classes.count(local)) return EntityKind::Class;
        if (individuals.count(local)) return EntityKind::Individual;
        return std::nullopt;
    }

    EntityRef cls(const std::string& local) const {
        return {id, local, EntityKind::Class};
    }
    EntityRef ind(const std::string& local) const {
        return {id, local, EntityKind::Individual};
    }

    // Builder helpers, used by the parser, the test fixtures and closure
    // construction. They do not validate; validate() does.
    Ontology& declare_class(const std::string& name) {
        classes.insert(name);
        return *this;
    }
    Ontology& declare_individual(const std::string& name) {
        individuals.insert(name);
        return *this;
    }
    Ontology& sub_class_of(const std::string& sub, const std::string& sup) {
        axioms.insert(Axiom::sub_class_of(cls(sub), cls(sup)));
        return *this;
    }
    Ontology& disjoint(const std::string& a, const std::string& b) {
        axioms.insert(Axiom::disjoint(cls(a), cls(b)));
        return *this;
    }
    Ontology& member_of(const std::string& i, const std::string& c) {
        axioms.insert(Axiom::member_of(ind(i), cls(c)));
        return *this;
    }
};

/// A set of correspondences between two distinct ontologies, directed
/// from source to target.
struct Alignment {
    std::string id;
    std::string source;
    std::string target;
    CorrespondenceSet correspondences;

    bool operator==(const Alignment&) const = default;

    bool connects(const std::string& a, const std::string& b) const {
        return (source == a && target == b) || (source == b && target == a);
    }

    Alignment& add(const std::string& from_local, const std::string& to_local,
                   Relation r, Confidence c = Confidence::top()) {
        correspondences.insert(Correspondence::make(
            {source, from_local}, {target, to_local}, r, c));
        return *this;
    }
};

/// A network of ontologies: a finite set of ontologies plus alignments
/// between pairs of them, both keyed by id.
struct Network {
    std::map<std::string, Ontology> ontologies;
    std::map<std::string, Alignment> alignments;

    bool operator==(const Network&) const = default;

    const Ontology* find_ontology(const std::string& id) const {
        auto it = ontologies.find(id);
        return it == ontologies.end() ? nullptr : &it->second;
    }
    const Alignment* find_alignment(const std::string& id) const {
        auto it = alignments.find(id);
        return it == alignments.end() ? nullptr : &it->second;
    }

    /// All alignments whose endpoint set is {a, b}, in either direction.
    std::vector<const Alignment*> alignments_between(
        const std::string& a, const std::string& b) const {
        std::vector<const Alignment*> out;
        for (const auto& [id, al] : alignments)
            if (al.connects(a, b)) out.push_back(&al);
        return out;
    }

    /// Unordered pairs of distinct ontology ids, each as (min, max).
    std::vector<std::pair<std::string, std::string>> ontology_pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto i = ontologies.begin(); i != ontologies.end(); ++i)
            for (auto j = std::next(i); j != ontologies.end(); ++j)
                out.emplace_back(i->first, j->first);
        return out;
    }
};

enum class ViolationKind {
    DuplicateId,
    DanglingEndpoint,
    SelfAlignment,
    UndeclaredEntity,
    KindMismatch,
    ForeignEntity,
    NameClash,
    NonCanonical,
    InvalidConfidence,
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::DuplicateId: return "duplicate-id";
        case ViolationKind::DanglingEndpoint: return "dangling-endpoint";
        case ViolationKind::SelfAlignment: return "self-alignment";
        case ViolationKind::UndeclaredEntity: return "undeclared-entity";
        case ViolationKind::KindMismatch: return "kind-mismatch";
        case ViolationKind::ForeignEntity: return "foreign-entity";
        case ViolationKind::NameClash: return "name-clash";
        case ViolationKind::NonCanonical: return "non-canonical";
        case ViolationKind::InvalidConfidence: return "invalid-confidence";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::string where;
    std::string message;
};

class NetworkError : public std::runtime_error {
public:
    explicit NetworkError(std::vector<Violation> vs)
        : std::runtime_error(vs.empty() ? "invalid network"
                                        : vs.front().where + ": " + vs.front().message),
          violations_(std::move(vs)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

namespace detail {

inline void check_entity(const Ontology& o, const EntityRef& e,
                         const std::string& where,
                         std::vector<Violation>& out) {
    if (e.ontology != o.id) {
        out.push_back({ViolationKind::ForeignEntity, where,
                       "entity " + e.qualified() + " does not belong to ontology " + o.id});
        return;
    }
    auto k = o.kind_of(e.local);
    if (!k) {
        out.push_back({ViolationKind::UndeclaredEntity, where,
                       "entity " + e.local + " is not declared in ontology " + o.id});
    } else if (*k != e.kind) {
        out.push_back({ViolationKind::KindMismatch, where,
                       e.qualified() + " is declared as a " + to_string(*k) +
                           " but used as a " + to_string(e.kind)});
    }
}

}  // namespace detail

/// Checks every structural invariant of a network and reports all
/// violations found. An empty result means the network is valid.
inline std::vector<Violation> validate(const Network& net) {
    std::vector<Violation> out;
    for (const auto& [id, o] : net.ontologies) {
        std::string where = "ontology " + id;
        if (id != o.id)
            out.push_back({ViolationKind::DuplicateId, where, "ontology keyed under a different id"});
        for (const auto& c : o.classes)
            if (o.individuals.count(c))
                out.push_back({ViolationKind::NameClash, where,
                               "name " + c + " declared both as class and individual"});
        for (const auto& ax : o.axioms) {
            detail::check_entity(o, ax.lhs, where, out);
            detail::check_entity(o, ax.rhs, where, out);
            switch (ax.kind) {
                case AxiomKind::SubClassOf:
                case AxiomKind::Disjoint:
                    if (ax.lhs.kind != EntityKind::Class || ax.rhs.kind != EntityKind::Class)
                        out.push_back({ViolationKind::KindMismatch, where,
                                       "axiom requires two classes"});
                    if (ax.kind == AxiomKind::Disjoint && ax.rhs.local < ax.lhs.local)
                        out.push_back({ViolationKind::NonCanonical, where,
                                       "disjointness must be stored in lexicographic order"});
                    break;
                case AxiomKind::MemberOf:
                    if (ax.lhs.kind != EntityKind::Individual || ax.rhs.kind != EntityKind::Class)
                        out.push_back({ViolationKind::KindMismatch, where,
                                       "membership relates an individual and a class"});
                    break;
            }
        }
    }
    for (const auto& [id, a] : net.alignments) {
        std::string where = "alignment " + id;
        if (id != a.id)
            out.push_back({ViolationKind::DuplicateId, where, "alignment keyed under a different id"});
        if (a.source == a.target) {
            out.push_back({ViolationKind::SelfAlignment, where,
                           "alignment endpoints must be two distinct ontologies"});
            continue;
        }
        const Ontology* src = net.find_ontology(a.source);
        const Ontology* tgt = net.find_ontology(a.target);
        if (!src)
            out.push_back({ViolationKind::DanglingEndpoint, where,
                           "source ontology " + a.source + " is not part of the network"});
        if (!tgt)
            out.push_back({ViolationKind::DanglingEndpoint, where,
                           "target ontology " + a.target + " is not part of the network"});
        if (!src || !tgt) continue;
        for (const auto& mu : a.correspondences) {
            if (mu.from.ontology != a.source || mu.to.ontology != a.target) {
                out.push_back({ViolationKind::ForeignEntity, where,
                               "correspondence endpoints must live in the alignment's ontologies"});
                continue;
            }
            if (mu.from.kind != required_from_kind(mu.relation) ||
                mu.to.kind != required_to_kind(mu.relation))
                out.push_back({ViolationKind::KindMismatch, where,
                               std::string("relation ") + to_string(mu.relation) +
                                   " applied to entities of the wrong kind"});
            detail::check_entity(*src, mu.from, where, out);
            detail::check_entity(*tgt, mu.to, where, out);
            if (!mu.confidence.in_range())
                out.push_back({ViolationKind::InvalidConfidence, where,
                               "confidence must lie in [0,1]"});
        }
    }
    return out;
}

/// Assembles and validates a network; throws NetworkError listing every
/// violation if the parts do not form a valid network.
inline Network make_network(std::vector<Ontology> ontologies,
                            std::vector<Alignment> alignments) {
    Network net;
    std::vector<Violation> out;
    for (auto& o : ontologies) {
        if (net.ontologies.count(o.id))
            out.push_back({ViolationKind::DuplicateId, "ontology " + o.id,
                           "two ontologies share this id"});
        else
            net.ontologies.emplace(o.id, std::move(o));
    }
    for (auto& a : alignments) {
        if (net.alignments.count(a.id))
            out.push_back({ViolationKind::DuplicateId, "alignment " + a.id,
                           "two alignments share this id"});
        else
            net.alignments.emplace(a.id, std::move(a));
    }
    auto vs = validate(net);
    out.insert(out.end(), vs.begin(), vs.end());
    if (!out.empty()) throw NetworkError(std::move(out));
    return net;
}

/// True iff every unordered pair of distinct ontologies is connected by
/// exactly one alignment. Vacuously true below two ontologies.
inline bool is_normalised(const Network& net) {
    for (const auto& [a, b] : net.ontology_pairs())
        if (net.alignments_between(a, b).size() != 1) return false;
    return true;
}

namespace detail {

/// Merge a correspondence into a set, keeping the maximal confidence when
/// the same triple arrives from several alignments.
inline void merge_correspondence(CorrespondenceSet& set, Correspondence mu) {
    auto it = set.find(mu);
    if (it == set.end()) {
        set.insert(std::move(mu));
    } else if (it->confidence < mu.confidence) {
        set.erase(it);
        set.insert(std::move(mu));
    }
}

inline std::string fresh_alignment_id(const Network& net, const std::string& a,
                                      const std::string& b,
                                      const std::set<std::string>& reserved) {
    std::string base = a + "-" + b;
    std::string id = base;
    int suffix = 2;
    while (reserved.count(id) || net.alignments.count(id))
        id = base + "#" + std::to_string(suffix++);
    return id;
}

}  // namespace detail

/// Standard normalisation: one alignment per unordered pair, oriented
/// from the lexicographically smaller ontology id to the larger one.
/// Pairs without alignments receive an empty one; pairs with several get
/// the union of their correspondences, re-read through relation duals
/// where the stored direction disagrees.
inline Network normalise(const Network& net) {
    Network out;
    out.ontologies = net.ontologies;
    std::set<std::string> used_ids;
    for (const auto& [a, b] : net.ontology_pairs()) {
        auto existing = net.alignments_between(a, b);
        Alignment merged;
        merged.source = a;
        merged.target = b;
        for (const Alignment* al : existing) {
            for (const auto& mu : al->correspondences)
                detail::merge_correspondence(
                    merged.correspondences,
                    al->source == a ? mu : mu.reversed());
        }
        if (existing.size() == 1 && !used_ids.count(existing.front()->id))
            merged.id = existing.front()->id;
        else
            merged.id = detail::fresh_alignment_id(out, a, b, used_ids);
        used_ids.insert(merged.id);
        out.alignments.emplace(merged.id, std::move(merged));
    }
    return out;
}

/// Network substitution [old/replacement] on ontologies: the old ontology
/// leaves, the replacement enters, and every alignment incident to the
/// old one is dropped.
inline Network substitute_ontology(const Network& net, const std::string& old_id,
                                   Ontology replacement) {
    if (!net.find_ontology(old_id))
        throw NetworkError({{ViolationKind::DanglingEndpoint, "ontology " + old_id,
                             "unknown ontology"}});
    Network out;
    out.ontologies = net.ontologies;
    out.ontologies.erase(old_id);
    if (out.ontologies.count(replacement.id))
        throw NetworkError({{ViolationKind::DuplicateId, "ontology " + replacement.id,
                             "replacement id already present"}});
    out.ontologies.emplace(replacement.id, std::move(replacement));
    for (const auto& [id, al] : net.alignments)
        if (al.source != old_id && al.target != old_id)
            out.alignments.emplace(id, al);
    auto vs = validate(out);
    if (!vs.empty()) throw NetworkError(std::move(vs));
    return out;
}

/// Network substitution on alignments: the replacement must connect the
/// same two ontologies (in either direction).
inline Network substitute_alignment(const Network& net, const std::string& old_id,
                                    Alignment replacement) {
    const Alignment* old = net.find_alignment(old_id);
    if (!old)
        throw NetworkError({{ViolationKind::DanglingEndpoint, "alignment " + old_id,
                             "unknown alignment"}});
    if (!replacement.connects(old->source, old->target))
        throw NetworkError({{ViolationKind::DanglingEndpoint, "alignment " + replacement.id,
                             "replacement must connect " + old->source + " and " + old->target}});
    Network out = net;
    out.alignments.erase(old_id);
    if (out.alignments.count(replacement.id))
        throw NetworkError({{ViolationKind::DuplicateId, "alignment " + replacement.id,
                             "replacement id already present"}});
    out.alignments.emplace(replacement.id, std::move(replacement));
    auto vs = validate(out);
    if (!vs.empty()) throw NetworkError(std::move(vs));
    return out;
}

/// Correspondences between a and b, re-oriented so that `a` is the source.
inline CorrespondenceSet oriented_correspondences(const Network& net,
                                                  const std::string& a,
                                                  const std::string& b) {
    CorrespondenceSet out;
    for (const Alignment* al : net.alignments_between(a, b))
        for (const auto& mu : al->correspondences)
            detail::merge_correspondence(out, al->source == a ? mu : mu.reversed());
    return out;
}

/// Equality up to alignment identifiers: same ontologies (content-wise)
/// and, for every pair, the same oriented correspondence set.
inline bool same_network(const Network& x, const Network& y) {
    if (x.ontologies != y.ontologies) return false;
    for (const auto& [a, b] : x.ontology_pairs())
        if (oriented_correspondences(x, a, b) != oriented_correspondences(y, a, b))
            return false;
    return true;
}

}  // namespace noo
