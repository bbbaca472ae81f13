// Morphisms between networks of ontologies: structure-preserving pairs
// of maps (h on ontologies, k on alignments) with containment of axioms
// and correspondences, plus the subsumption relations they induce.
//
// Containment is read through local names: an axiom of o is "in" h(o)
// iff h(o) carries an axiom with the same kind and the same local names.
// Correspondence containment is orientation-aware: if the target
// alignment runs the other way, the correspondence is matched against
// its dual reading.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "noo/core.hpp"
#include "noo/saturation.hpp"

namespace noo {

struct NetworkMorphism {
    std::map<std::string, std::string> h;  // ontology id -> ontology id
    std::map<std::string, std::string> k;  // alignment id -> alignment id

    bool operator==(const NetworkMorphism&) const = default;
};

inline NetworkMorphism identity_morphism(const Network& net) {
    NetworkMorphism m;
    for (const auto& [id, o] : net.ontologies) m.h[id] = id;
    for (const auto& [id, a] : net.alignments) m.k[id] = id;
    return m;
}

/// Function composition: `first` followed by `then`. Every image of
/// `first` must be in the domain of `then`.
inline NetworkMorphism compose(const NetworkMorphism& first, const NetworkMorphism& then) {
    NetworkMorphism out;
    for (const auto& [x, y] : first.h) {
        auto it = then.h.find(y);
        if (it == then.h.end())
            throw std::invalid_argument("morphism composition: ontology " + y +
                                        " is not in the second morphism's domain");
        out.h[x] = it->second;
    }
    for (const auto& [x, y] : first.k) {
        auto it = then.k.find(y);
        if (it == then.k.end())
            throw std::invalid_argument("morphism composition: alignment " + y +
                                        " is not in the second morphism's domain");
        out.k[x] = it->second;
    }
    return out;
}

namespace detail {

inline Axiom transport_axiom(const Axiom& ax, const std::string& target_ontology) {
    switch (ax.kind) {
        case AxiomKind::SubClassOf:
            return Axiom::sub_class_of({target_ontology, ax.lhs.local},
                                       {target_ontology, ax.rhs.local});
        case AxiomKind::Disjoint:
            return Axiom::disjoint({target_ontology, ax.lhs.local},
                                   {target_ontology, ax.rhs.local});
        case AxiomKind::MemberOf:
            return Axiom::member_of({target_ontology, ax.lhs.local},
                                    {target_ontology, ax.rhs.local});
    }
    return ax;
}

inline bool axioms_contained(const Ontology& o, const Ontology& target) {
    for (const auto& ax : o.axioms)
        if (!target.axioms.count(transport_axiom(ax, target.id))) return false;
    return true;
}

/// The correspondence of `a` as it must appear in `b` (which connects the
/// images of a's endpoints, possibly in the opposite direction), or
/// nothing when b does not contain it. Confidence is the one found in b.
inline std::optional<Correspondence> find_in_alignment(const Correspondence& mu,
                                                       const Alignment& b,
                                                       const std::string& image_source,
                                                       const std::string& image_target) {
    Correspondence probe;
    if (b.source == image_source && b.target == image_target) {
        probe = Correspondence::make({b.source, mu.from.local}, {b.target, mu.to.local},
                                     mu.relation);
    } else if (b.source == image_target && b.target == image_source) {
        probe = Correspondence::make({b.source, mu.to.local}, {b.target, mu.from.local},
                                     dual(mu.relation));
    } else {
        return std::nullopt;
    }
    auto it = b.correspondences.find(probe);
    if (it == b.correspondences.end()) return std::nullopt;
    return *it;
}

inline bool correspondences_contained(const Alignment& a, const Alignment& b,
                                      const std::string& image_source,
                                      const std::string& image_target, bool weighted) {
    for (const auto& mu : a.correspondences) {
        auto found = find_in_alignment(mu, b, image_source, image_target);
        if (!found) return false;
        if (weighted && found->confidence < mu.confidence) return false;
    }
    return true;
}

inline bool check_morphism(const Network& src, const Network& dst,
                           const NetworkMorphism& m, bool weighted) {
    for (const auto& [id, o] : src.ontologies) {
        auto it = m.h.find(id);
        if (it == m.h.end())
            throw std::invalid_argument("morphism is not total: missing ontology " + id);
        const Ontology* target = dst.find_ontology(it->second);
        if (!target || !axioms_contained(o, *target)) return false;
    }
    for (const auto& [id, a] : src.alignments) {
        auto it = m.k.find(id);
        if (it == m.k.end())
            throw std::invalid_argument("morphism is not total: missing alignment " + id);
        const Alignment* target = dst.find_alignment(it->second);
        if (!target) return false;
        const std::string& hs = m.h.at(a.source);
        const std::string& ht = m.h.at(a.target);
        if (!target->connects(hs, ht)) return false;
        if (!correspondences_contained(a, *target, hs, ht, weighted)) return false;
    }
    return true;
}

/// Backtracking search for h over per-ontology candidate sets; k never
/// needs search because any alignment between the right images with the
/// right correspondences will do.
class MorphismFinder {
public:
    MorphismFinder(const Network& src, const Network& dst, bool weighted)
        : src_(src), dst_(dst), weighted_(weighted) {
        for (const auto& [id, o] : src.ontologies) order_.push_back(id);
        std::sort(order_.begin(), order_.end(), [&](const std::string& x, const std::string& y) {
            size_t nx = src.ontologies.at(x).axioms.size();
            size_t ny = src.ontologies.at(y).axioms.size();
            if (nx != ny) return nx > ny;  // most constrained first
            return x < y;
        });
        for (const auto& id : order_) {
            auto& cands = candidates_[id];
            for (const auto& [did, d] : dst.ontologies)
                if (axioms_contained(src.ontologies.at(id), d)) cands.push_back(did);
        }
    }

    std::optional<NetworkMorphism> find() {
        NetworkMorphism m;
        if (!assign(0, m)) return std::nullopt;
        for (const auto& [id, a] : src_.alignments) {
            auto target = pick_alignment(a, m);
            if (!target) return std::nullopt;  // cannot happen after a successful assign
            m.k[id] = *target;
        }
        return m;
    }

private:
    const Network& src_;
    const Network& dst_;
    bool weighted_;
    std::vector<std::string> order_;
    std::map<std::string, std::vector<std::string>> candidates_;

    std::optional<std::string> pick_alignment(const Alignment& a,
                                              const NetworkMorphism& m) const {
        const std::string& hs = m.h.at(a.source);
        const std::string& ht = m.h.at(a.target);
        for (const Alignment* b : dst_.alignments_between(hs, ht))
            if (correspondences_contained(a, *b, hs, ht, weighted_)) return b->id;
        return std::nullopt;
    }

    bool alignments_feasible(const NetworkMorphism& m, const std::string& just_assigned) const {
        for (const auto& [id, a] : src_.alignments) {
            if (a.source != just_assigned && a.target != just_assigned) continue;
            if (!m.h.count(a.source) || !m.h.count(a.target)) continue;
            if (!pick_alignment(a, m)) return false;
        }
        return true;
    }

    bool assign(size_t i, NetworkMorphism& m) {
        if (i == order_.size()) return true;
        const std::string& o = order_[i];
        for (const auto& cand : candidates_.at(o)) {
            m.h[o] = cand;
            if (alignments_feasible(m, o) && assign(i + 1, m)) return true;
            m.h.erase(o);
        }
        return false;
    }
};

}  // namespace detail

/// Checks the syntactic morphism conditions: containment of every axiom
/// in the image ontology, containment of every correspondence in the
/// image alignment, and preservation of the network structure.
inline bool check_syntactic_morphism(const Network& src, const Network& dst,
                                     const NetworkMorphism& m) {
    return detail::check_morphism(src, dst, m, /*weighted=*/false);
}

/// Syntactic conditions plus the confidence condition: each source
/// correspondence must appear in its image with at least the same
/// confidence degree.
inline bool check_weight_aware_morphism(const Network& src, const Network& dst,
                                        const NetworkMorphism& m) {
    return detail::check_morphism(src, dst, m, /*weighted=*/true);
}

/// Exhaustive (desk-scale) search for a syntactic morphism witness.
inline std::optional<NetworkMorphism> find_syntactic_morphism(const Network& src,
                                                              const Network& dst) {
    return detail::MorphismFinder(src, dst, /*weighted=*/false).find();
}

inline std::optional<NetworkMorphism> find_weight_aware_morphism(const Network& src,
                                                                 const Network& dst) {
    return detail::MorphismFinder(src, dst, /*weighted=*/true).find();
}

inline bool is_subsumed(const Network& a, const Network& b) {
    return find_syntactic_morphism(a, b).has_value();
}

inline bool equivalent(const Network& a, const Network& b) {
    return is_subsumed(a, b) && is_subsumed(b, a);
}

inline bool strictly_subsumed(const Network& a, const Network& b) {
    return is_subsumed(a, b) && !is_subsumed(b, a);
}

/// Result of a semantic morphism check. Verdicts are sound under the
/// saturation calculus and possibly incomplete: `holds == false` means
/// the calculus could not derive the required consequences.
struct SemanticVerdict {
    bool holds = false;
    bool destination_inconsistent = false;
};

/// A semantic morphism maps every ontology to one that entails its axioms
/// within the destination network, and every alignment to one whose pair
/// alpha-entails its correspondences. For an inconsistent destination the
/// check holds trivially (and says so).
inline SemanticVerdict check_semantic_morphism(const Network& src, const Network& dst,
                                               const NetworkMorphism& m) {
    for (const auto& [id, o] : src.ontologies)
        if (!m.h.count(id))
            throw std::invalid_argument("morphism is not total: missing ontology " + id);
    for (const auto& [id, a] : src.alignments)
        if (!m.k.count(id))
            throw std::invalid_argument("morphism is not total: missing alignment " + id);

    SaturationGraph g = saturate(dst);
    if (g.clash) return {true, true};

    for (const auto& [id, o] : src.ontologies) {
        const Ontology* target = dst.find_ontology(m.h.at(id));
        if (!target) return {false, false};
        auto closure = decode_omega(g, target->id).axioms;
        for (const auto& ax : o.axioms)
            if (!closure.count(detail::transport_axiom(ax, target->id))) return {false, false};
    }
    for (const auto& [id, a] : src.alignments) {
        const Alignment* target = dst.find_alignment(m.k.at(id));
        if (!target) return {false, false};
        const std::string& hs = m.h.at(a.source);
        const std::string& ht = m.h.at(a.target);
        if (!target->connects(hs, ht)) return {false, false};
        auto closure = decode_alpha(g, hs, ht).correspondences;
        for (const auto& mu : a.correspondences) {
            Correspondence probe = Correspondence::make({hs, mu.from.local},
                                                        {ht, mu.to.local}, mu.relation);
            if (!closure.count(probe)) return {false, false};
        }
    }
    return {true, false};
}

/// Search counterpart of check_semantic_morphism. On an inconsistent
/// destination any structure-preserving total map qualifies.
inline std::optional<NetworkMorphism> find_semantic_morphism(const Network& src,
                                                             const Network& dst) {
    SaturationGraph g = saturate(dst);
    bool exploded = g.clash.has_value();

    std::map<std::string, std::set<Axiom>> omega;
    if (!exploded)
        for (const auto& [id, o] : dst.ontologies) omega[id] = decode_omega(g, id).axioms;

    std::vector<std::string> order;
    for (const auto& [id, o] : src.ontologies) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](const std::string& x, const std::string& y) {
        size_t nx = src.ontologies.at(x).axioms.size();
        size_t ny = src.ontologies.at(y).axioms.size();
        if (nx != ny) return nx > ny;
        return x < y;
    });

    auto axioms_entailed = [&](const Ontology& o, const std::string& target) {
        if (exploded) return true;
        const auto& closure = omega.at(target);
        for (const auto& ax : o.axioms)
            if (!closure.count(detail::transport_axiom(ax, target))) return false;
        return true;
    };
    auto alignment_image = [&](const Alignment& a, const NetworkMorphism& m)
        -> std::optional<std::string> {
        const std::string& hs = m.h.at(a.source);
        const std::string& ht = m.h.at(a.target);
        auto between = dst.alignments_between(hs, ht);
        if (between.empty()) return std::nullopt;
        if (exploded) return between.front()->id;
        auto closure = decode_alpha(g, hs, ht).correspondences;
        for (const auto& mu : a.correspondences) {
            Correspondence probe = Correspondence::make({hs, mu.from.local},
                                                        {ht, mu.to.local}, mu.relation);
            if (!closure.count(probe)) return std::nullopt;
        }
        return between.front()->id;
    };

    std::map<std::string, std::vector<std::string>> candidates;
    for (const auto& id : order)
        for (const auto& [did, d] : dst.ontologies)
            if (axioms_entailed(src.ontologies.at(id), did)) candidates[id].push_back(did);

    NetworkMorphism m;
    std::function<bool(size_t)> assign = [&](size_t i) {
        if (i == order.size()) return true;
        const std::string& o = order[i];
        for (const auto& cand : candidates[o]) {
            m.h[o] = cand;
            bool feasible = true;
            for (const auto& [id, a] : src.alignments) {
                if (a.source != o && a.target != o) continue;
                if (!m.h.count(a.source) || !m.h.count(a.target)) continue;
                if (!alignment_image(a, m)) {
                    feasible = false;
                    break;
                }
            }
            if (feasible && assign(i + 1)) return true;
            m.h.erase(o);
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    for (const auto& [id, a] : src.alignments) m.k[id] = *alignment_image(a, m);
    return m;
}

}  // namespace noo
