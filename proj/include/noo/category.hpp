// Category-level operations: fibred meets along isomorphisms into a
// common generator, pullback verification, and the confidence-threshold
// functor from weighted networks to plain ones.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "noo/core.hpp"
#include "noo/morphism.hpp"

namespace noo {

/// A family of networks tied to a common generator by pairs (h_j, k_j)
/// that are valid syntactic morphisms and bijective on both ontologies
/// and alignments. Bijectivity is what makes the meet's projections
/// well-defined.
struct IsoFamily {
    Network generator;
    std::vector<Network> members;
    std::vector<NetworkMorphism> pairs;  // member_j -> generator
};

namespace detail {

inline bool bijective(const std::map<std::string, std::string>& f,
                      const std::set<std::string>& codomain) {
    std::set<std::string> image;
    for (const auto& [x, y] : f) image.insert(y);
    return image.size() == f.size() && image == codomain;
}

/// Validates the family and returns, per member, the inverse maps
/// generator id -> member id for ontologies and alignments.
struct FamilyIndex {
    std::vector<std::map<std::string, std::string>> inv_h;
    std::vector<std::map<std::string, std::string>> inv_k;
};

inline FamilyIndex index_family(const IsoFamily& family) {
    if (family.members.empty() || family.members.size() != family.pairs.size())
        throw std::invalid_argument("family needs one morphism per member");
    std::set<std::string> gen_onts, gen_aligns;
    for (const auto& [id, o] : family.generator.ontologies) gen_onts.insert(id);
    for (const auto& [id, a] : family.generator.alignments) gen_aligns.insert(id);

    FamilyIndex idx;
    for (size_t j = 0; j < family.members.size(); ++j) {
        const auto& m = family.pairs[j];
        if (!check_syntactic_morphism(family.members[j], family.generator, m))
            throw std::invalid_argument("pair " + std::to_string(j) +
                                        " is not a syntactic morphism into the generator");
        if (m.h.size() != family.members[j].ontologies.size() ||
            m.k.size() != family.members[j].alignments.size() ||
            !bijective(m.h, gen_onts) || !bijective(m.k, gen_aligns))
            throw std::invalid_argument("pair " + std::to_string(j) +
                                        " is not an isomorphism pair: the maps must be "
                                        "bijections onto the generator");
        std::map<std::string, std::string> ih, ik;
        for (const auto& [x, y] : m.h) ih[y] = x;
        for (const auto& [x, y] : m.k) ik[y] = x;
        idx.inv_h.push_back(std::move(ih));
        idx.inv_k.push_back(std::move(ik));
    }
    return idx;
}

}  // namespace detail

/// The fibred meet: per generator ontology the intersection of its
/// preimages' axioms (and declared entities), per generator alignment the
/// orientation-aware intersection of its preimages' correspondences.
/// Meet ontologies and alignments keep the generator's identifiers.
inline Network fibred_meet(const IsoFamily& family) {
    auto idx = detail::index_family(family);
    Network meet;

    for (const auto& [gid, gont] : family.generator.ontologies) {
        Ontology o;
        o.id = gid;
        bool first = true;
        std::set<std::string> classes, individuals;
        std::set<Axiom> axioms;
        for (size_t j = 0; j < family.members.size(); ++j) {
            const Ontology& pre = family.members[j].ontologies.at(idx.inv_h[j].at(gid));
            std::set<Axiom> transported;
            for (const auto& ax : pre.axioms)
                transported.insert(detail::transport_axiom(ax, gid));
            if (first) {
                classes = pre.classes;
                individuals = pre.individuals;
                axioms = std::move(transported);
                first = false;
            } else {
                std::set<std::string> cs, is;
                std::set<Axiom> as;
                std::set_intersection(classes.begin(), classes.end(), pre.classes.begin(),
                                      pre.classes.end(), std::inserter(cs, cs.end()));
                std::set_intersection(individuals.begin(), individuals.end(),
                                      pre.individuals.begin(), pre.individuals.end(),
                                      std::inserter(is, is.end()));
                std::set_intersection(axioms.begin(), axioms.end(), transported.begin(),
                                      transported.end(), std::inserter(as, as.end()));
                classes = std::move(cs);
                individuals = std::move(is);
                axioms = std::move(as);
            }
        }
        o.classes = std::move(classes);
        o.individuals = std::move(individuals);
        o.axioms = std::move(axioms);
        // Keep declarations for every entity a surviving axiom mentions.
        for (const auto& ax : o.axioms) {
            auto declare = [&](const EntityRef& e) {
                if (e.kind == EntityKind::Class)
                    o.classes.insert(e.local);
                else
                    o.individuals.insert(e.local);
            };
            declare(ax.lhs);
            declare(ax.rhs);
        }
        meet.ontologies.emplace(gid, std::move(o));
    }

    for (const auto& [aid, galign] : family.generator.alignments) {
        Alignment al;
        al.id = aid;
        al.source = galign.source;
        al.target = galign.target;
        bool first = true;
        CorrespondenceSet corrs;
        for (size_t j = 0; j < family.members.size(); ++j) {
            const Alignment& pre = family.members[j].alignments.at(idx.inv_k[j].at(aid));
            const std::string& pre_source = idx.inv_h[j].at(al.source);
            CorrespondenceSet transported;
            for (const auto& mu : pre.correspondences) {
                Correspondence oriented = pre.source == pre_source ? mu : mu.reversed();
                transported.insert(Correspondence::make({al.source, oriented.from.local},
                                                        {al.target, oriented.to.local},
                                                        oriented.relation,
                                                        oriented.confidence));
            }
            if (first) {
                corrs = std::move(transported);
                first = false;
            } else {
                CorrespondenceSet kept;
                for (const auto& mu : corrs) {
                    auto it = transported.find(mu);
                    if (it == transported.end()) continue;
                    Correspondence merged = mu;
                    merged.confidence = std::min(mu.confidence, it->confidence);
                    kept.insert(std::move(merged));
                }
                corrs = std::move(kept);
            }
        }
        al.correspondences = std::move(corrs);
        meet.alignments.emplace(aid, std::move(al));
    }

    auto vs = validate(meet);
    if (!vs.empty()) throw NetworkError(std::move(vs));
    return meet;
}

/// The projections pi_j from the meet into each member, defined through
/// the inverse of the generating bijections.
inline std::vector<NetworkMorphism> meet_projections(const IsoFamily& family) {
    auto idx = detail::index_family(family);
    std::vector<NetworkMorphism> out;
    for (size_t j = 0; j < family.members.size(); ++j) {
        NetworkMorphism pj;
        for (const auto& [gid, o] : family.generator.ontologies)
            pj.h[gid] = idx.inv_h[j].at(gid);
        for (const auto& [aid, a] : family.generator.alignments)
            pj.k[aid] = idx.inv_k[j].at(aid);
        out.push_back(std::move(pj));
    }
    return out;
}

struct PullbackCandidate {
    Network network;
    std::vector<NetworkMorphism> thetas;  // candidate -> member_j, one per member
};

struct PullbackReport {
    Network meet;
    std::vector<NetworkMorphism> projections;
    bool projections_valid = false;
    bool diagram_commutes = false;

    struct CandidateOutcome {
        bool input_valid = false;
        int mediator_count = 0;
        std::optional<NetworkMorphism> mediator;
        bool ok() const { return input_valid && mediator_count == 1; }
    };
    std::vector<CandidateOutcome> candidates;

    bool ok() const {
        if (!projections_valid || !diagram_commutes) return false;
        for (const auto& c : candidates)
            if (!c.ok()) return false;
        return true;
    }
};

/// Verifies the pullback property of the fibred meet: the projections are
/// morphisms, the squares commute, and each candidate factors through the
/// meet by exactly one mediating morphism (found by exhaustive
/// enumeration, which is why networks are capped at 4 ontologies here).
inline PullbackReport verify_pullback(const IsoFamily& family,
                                      const std::vector<PullbackCandidate>& candidates) {
    PullbackReport report;
    report.meet = fibred_meet(family);
    report.projections = meet_projections(family);

    if (report.meet.ontologies.size() > 4)
        throw std::invalid_argument("pullback verification is capped at 4 ontologies");

    report.projections_valid = true;
    for (size_t j = 0; j < family.members.size(); ++j)
        if (!check_syntactic_morphism(report.meet, family.members[j], report.projections[j]))
            report.projections_valid = false;

    report.diagram_commutes = true;
    std::optional<NetworkMorphism> composite;
    for (size_t j = 0; j < family.members.size(); ++j) {
        NetworkMorphism through = compose(report.projections[j], family.pairs[j]);
        if (!composite)
            composite = std::move(through);
        else if (!(*composite == through))
            report.diagram_commutes = false;
    }

    for (const auto& cand : candidates) {
        PullbackReport::CandidateOutcome outcome;
        if (cand.network.ontologies.size() > 4)
            throw std::invalid_argument("pullback verification is capped at 4 ontologies");
        outcome.input_valid = cand.thetas.size() == family.members.size();
        if (outcome.input_valid) {
            std::optional<NetworkMorphism> theta_composite;
            for (size_t j = 0; j < family.members.size(); ++j) {
                if (!check_syntactic_morphism(cand.network, family.members[j], cand.thetas[j])) {
                    outcome.input_valid = false;
                    break;
                }
                NetworkMorphism through = compose(cand.thetas[j], family.pairs[j]);
                if (!theta_composite)
                    theta_composite = std::move(through);
                else if (!(*theta_composite == through))
                    outcome.input_valid = false;
            }
        }
        if (outcome.input_valid) {
            // Enumerate every map from the candidate into the meet; count
            // those that are morphisms and make all triangles commute.
            std::vector<std::string> c_onts, c_aligns, m_onts;
            for (const auto& [id, o] : cand.network.ontologies) c_onts.push_back(id);
            for (const auto& [id, a] : cand.network.alignments) c_aligns.push_back(id);
            for (const auto& [id, o] : report.meet.ontologies) m_onts.push_back(id);

            NetworkMorphism u;
            std::function<void(size_t)> pick_alignments = [&](size_t i) {
                if (i == c_aligns.size()) {
                    bool valid = false;
                    try {
                        valid = check_syntactic_morphism(cand.network, report.meet, u);
                    } catch (const std::invalid_argument&) {
                        valid = false;
                    }
                    if (!valid) return;
                    for (size_t j = 0; j < family.members.size(); ++j)
                        if (!(compose(u, report.projections[j]) == cand.thetas[j])) return;
                    if (outcome.mediator_count++ == 0) outcome.mediator = u;
                    return;
                }
                const Alignment& a = cand.network.alignments.at(c_aligns[i]);
                const std::string& hs = u.h.at(a.source);
                const std::string& ht = u.h.at(a.target);
                for (const Alignment* b : report.meet.alignments_between(hs, ht)) {
                    u.k[c_aligns[i]] = b->id;
                    pick_alignments(i + 1);
                }
                u.k.erase(c_aligns[i]);
            };
            std::function<void(size_t)> pick_ontologies = [&](size_t i) {
                if (i == c_onts.size()) {
                    pick_alignments(0);
                    return;
                }
                for (const auto& target : m_onts) {
                    u.h[c_onts[i]] = target;
                    pick_ontologies(i + 1);
                }
                u.h.erase(c_onts[i]);
            };
            pick_ontologies(0);
        }
        report.candidates.push_back(std::move(outcome));
    }
    return report;
}

/// The threshold functor on objects: keeps exactly the correspondences
/// with confidence >= w. Ontologies are untouched and surviving
/// confidences are retained (stripping weights is a serialisation
/// concern, applied last if at all).
inline Network apply_threshold(const Network& net, Confidence w) {
    Network out = net;
    for (auto& [id, a] : out.alignments) {
        CorrespondenceSet kept;
        for (const auto& mu : a.correspondences)
            if (mu.confidence >= w) kept.insert(mu);
        a.correspondences = std::move(kept);
    }
    return out;
}

/// The threshold functor on morphisms: the underlying maps are unchanged,
/// they are simply read between the thresholded networks.
inline NetworkMorphism map_morphism_threshold(const NetworkMorphism& m, Confidence) {
    return m;
}

}  // namespace noo
