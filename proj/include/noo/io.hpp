// JSON (de)serialisation of networks and parsing of correspondence
// literals such as "o1:e1 >= o3:f3 [0.8]".
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "noo/core.hpp"

namespace noo {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string location;  // JSON pointer-ish path or byte offset
    std::string message;

    std::string str() const {
        return std::string(severity == Severity::Error ? "error" : "warning") +
               " at " + (location.empty() ? "<document>" : location) + ": " + message;
    }
};

struct ParseResult {
    std::optional<Network> network;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return network.has_value(); }

    std::string report() const {
        std::string out;
        for (const auto& d : diagnostics) out += d.str() + "\n";
        return out;
    }
};

class LiteralError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::json;

inline void error(std::vector<Diagnostic>& ds, std::string loc, std::string msg) {
    ds.push_back({Diagnostic::Severity::Error, std::move(loc), std::move(msg)});
}

inline bool expect_string(const json& j, const std::string& key,
                          const std::string& path, std::vector<Diagnostic>& ds,
                          std::string& out) {
    if (!j.contains(key) || !j[key].is_string()) {
        error(ds, path + "/" + key, "expected a string field \"" + key + "\"");
        return false;
    }
    out = j[key].get<std::string>();
    return true;
}

inline void parse_ontology(const json& j, const std::string& path,
                           std::vector<Ontology>& out, std::vector<Diagnostic>& ds) {
    Ontology o;
    if (!expect_string(j, "id", path, ds, o.id)) return;
    for (const char* key : {"classes", "individuals"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array()) {
            error(ds, path + "/" + key, "expected an array of names");
            continue;
        }
        size_t i = 0;
        for (const auto& name : j[key]) {
            if (!name.is_string()) {
                error(ds, path + "/" + key + "/" + std::to_string(i), "expected a string");
            } else if (std::string(key) == "classes") {
                o.declare_class(name.get<std::string>());
            } else {
                o.declare_individual(name.get<std::string>());
            }
            ++i;
        }
    }
    if (j.contains("axioms")) {
        if (!j["axioms"].is_array()) {
            error(ds, path + "/axioms", "expected an array of axioms");
        } else {
            size_t i = 0;
            for (const auto& ja : j["axioms"]) {
                std::string apath = path + "/axioms/" + std::to_string(i++);
                std::string kind;
                if (!ja.is_object() || !expect_string(ja, "kind", apath, ds, kind)) continue;
                if (kind == "subClassOf") {
                    std::string sub, sup;
                    if (expect_string(ja, "sub", apath, ds, sub) &&
                        expect_string(ja, "sup", apath, ds, sup))
                        o.sub_class_of(sub, sup);
                } else if (kind == "disjoint") {
                    std::string a, b;
                    if (expect_string(ja, "a", apath, ds, a) &&
                        expect_string(ja, "b", apath, ds, b))
                        o.disjoint(a, b);
                } else if (kind == "memberOf") {
                    std::string ind, cls;
                    if (expect_string(ja, "individual", apath, ds, ind) &&
                        expect_string(ja, "class", apath, ds, cls))
                        o.member_of(ind, cls);
                } else {
                    error(ds, apath + "/kind", "unknown axiom kind \"" + kind + "\"");
                }
            }
        }
    }
    out.push_back(std::move(o));
}

inline void parse_alignment(const json& j, const std::string& path,
                            std::vector<Alignment>& out, std::vector<Diagnostic>& ds) {
    Alignment a;
    bool ok = expect_string(j, "id", path, ds, a.id);
    ok &= expect_string(j, "source", path, ds, a.source);
    ok &= expect_string(j, "target", path, ds, a.target);
    if (!ok) return;
    if (j.contains("correspondences")) {
        if (!j["correspondences"].is_array()) {
            error(ds, path + "/correspondences", "expected an array");
        } else {
            size_t i = 0;
            for (const auto& jc : j["correspondences"]) {
                std::string cpath = path + "/correspondences/" + std::to_string(i++);
                std::string from, to, rel;
                if (!jc.is_object() || !expect_string(jc, "from", cpath, ds, from) ||
                    !expect_string(jc, "to", cpath, ds, to) ||
                    !expect_string(jc, "relation", cpath, ds, rel))
                    continue;
                auto r = relation_from_string(rel);
                if (!r) {
                    error(ds, cpath + "/relation", "unknown relation \"" + rel + "\"");
                    continue;
                }
                Confidence conf = Confidence::top();
                if (jc.contains("confidence")) {
                    if (!jc["confidence"].is_number()) {
                        error(ds, cpath + "/confidence", "expected a number");
                        continue;
                    }
                    conf.value = jc["confidence"].get<double>();
                    if (!conf.in_range()) {
                        error(ds, cpath + "/confidence", "confidence must lie in [0,1]");
                        continue;
                    }
                }
                Correspondence mu = Correspondence::make({a.source, from}, {a.target, to}, *r, conf);
                if (a.correspondences.count(mu)) {
                    error(ds, cpath, "duplicate correspondence (same entities and relation)");
                    continue;
                }
                a.correspondences.insert(std::move(mu));
            }
        }
    }
    out.push_back(std::move(a));
}

}  // namespace detail

/// Parses a network document. On success the returned network satisfies
/// every core invariant; on failure at least one error diagnostic points
/// at each violation.
inline ParseResult parse_network(std::string_view text) {
    ParseResult res;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        detail::error(res.diagnostics, "offset " + std::to_string(e.byte), e.what());
        return res;
    }
    if (!doc.is_object() || !doc.contains("ontologies") || !doc.contains("alignments") ||
        !doc["ontologies"].is_array() || !doc["alignments"].is_array()) {
        detail::error(res.diagnostics, "",
                      "document must be an object with \"ontologies\" and \"alignments\" arrays");
        return res;
    }
    std::vector<Ontology> ontologies;
    std::vector<Alignment> alignments;
    size_t i = 0;
    for (const auto& jo : doc["ontologies"])
        detail::parse_ontology(jo, "/ontologies/" + std::to_string(i++), ontologies,
                               res.diagnostics);
    i = 0;
    for (const auto& ja : doc["alignments"])
        detail::parse_alignment(ja, "/alignments/" + std::to_string(i++), alignments,
                                res.diagnostics);
    if (!res.diagnostics.empty()) return res;
    try {
        res.network = make_network(std::move(ontologies), std::move(alignments));
    } catch (const NetworkError& e) {
        for (const auto& v : e.violations())
            detail::error(res.diagnostics, v.where,
                          std::string(to_string(v.kind)) + ": " + v.message);
    }
    return res;
}

inline ParseResult parse_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        detail::error(res.diagnostics, path, "cannot open file");
        return res;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

inline nlohmann::ordered_json axiom_to_json(const Axiom& ax) {
    nlohmann::ordered_json j;
    switch (ax.kind) {
        case AxiomKind::SubClassOf:
            j["kind"] = "subClassOf";
            j["sub"] = ax.lhs.local;
            j["sup"] = ax.rhs.local;
            break;
        case AxiomKind::Disjoint:
            j["kind"] = "disjoint";
            j["a"] = ax.lhs.local;
            j["b"] = ax.rhs.local;
            break;
        case AxiomKind::MemberOf:
            j["kind"] = "memberOf";
            j["individual"] = ax.lhs.local;
            j["class"] = ax.rhs.local;
            break;
    }
    return j;
}

inline nlohmann::ordered_json correspondence_to_json(const Correspondence& mu,
                                                     bool strip_weights = false) {
    nlohmann::ordered_json j;
    j["from"] = mu.from.local;
    j["to"] = mu.to.local;
    j["relation"] = to_string(mu.relation);
    if (!strip_weights && !mu.confidence.is_top()) j["confidence"] = mu.confidence.value;
    return j;
}

inline nlohmann::ordered_json network_to_json(const Network& net,
                                              bool strip_weights = false) {
    nlohmann::ordered_json doc;
    doc["ontologies"] = nlohmann::ordered_json::array();
    for (const auto& [id, o] : net.ontologies) {
        nlohmann::ordered_json jo;
        jo["id"] = id;
        jo["classes"] = o.classes;
        jo["individuals"] = o.individuals;
        jo["axioms"] = nlohmann::ordered_json::array();
        for (const auto& ax : o.axioms) jo["axioms"].push_back(axiom_to_json(ax));
        doc["ontologies"].push_back(std::move(jo));
    }
    doc["alignments"] = nlohmann::ordered_json::array();
    for (const auto& [id, a] : net.alignments) {
        nlohmann::ordered_json ja;
        ja["id"] = id;
        ja["source"] = a.source;
        ja["target"] = a.target;
        ja["correspondences"] = nlohmann::ordered_json::array();
        for (const auto& mu : a.correspondences)
            ja["correspondences"].push_back(correspondence_to_json(mu, strip_weights));
        doc["alignments"].push_back(std::move(ja));
    }
    return doc;
}

/// Deterministic serialisation: equal networks produce byte-identical
/// documents (everything is emitted in canonical sorted order).
inline std::string serialize_network(const Network& net, bool strip_weights = false) {
    return network_to_json(net, strip_weights).dump(2) + "\n";
}

/// Parses a correspondence literal like "o1:b1 >= o3:e3 [0.8]" against the
/// entities declared in `net`. Both entities may live in the same ontology,
/// which makes the literal usable as an axiom-level query.
inline Correspondence parse_correspondence(std::string_view literal, const Network& net) {
    std::istringstream in{std::string(literal)};
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.size() != 3 && tokens.size() != 4)
        throw LiteralError("malformed literal: expected \"ont:entity REL ont:entity [conf]\"");

    auto resolve = [&](const std::string& t) -> std::pair<const Ontology*, std::string> {
        auto colon = t.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == t.size())
            throw LiteralError("malformed entity \"" + t + "\": expected ontology:name");
        std::string ont = t.substr(0, colon), local = t.substr(colon + 1);
        const Ontology* o = net.find_ontology(ont);
        if (!o) throw LiteralError("unknown ontology \"" + ont + "\"");
        if (!o->kind_of(local))
            throw LiteralError("unknown entity \"" + local + "\" in ontology " + ont);
        return {o, local};
    };

    auto rel = relation_from_string(tokens[1]);
    if (!rel) throw LiteralError("unknown relation \"" + tokens[1] + "\"");
    auto [from_o, from_l] = resolve(tokens[0]);
    auto [to_o, to_l] = resolve(tokens[2]);

    auto check_kind = [](const Ontology& o, const std::string& local, EntityKind want) {
        EntityKind have = *o.kind_of(local);
        if (have != want)
            throw LiteralError("kind mismatch: " + o.id + ":" + local + " is a " +
                               std::string(to_string(have)) + ", relation needs a " +
                               to_string(want));
    };
    check_kind(*from_o, from_l, required_from_kind(*rel));
    check_kind(*to_o, to_l, required_to_kind(*rel));

    Confidence conf = Confidence::top();
    if (tokens.size() == 4) {
        const std::string& t = tokens[3];
        if (t.size() < 3 || t.front() != '[' || t.back() != ']')
            throw LiteralError("malformed confidence \"" + t + "\": expected [number]");
        try {
            conf.value = std::stod(t.substr(1, t.size() - 2));
        } catch (const std::exception&) {
            throw LiteralError("malformed confidence \"" + t + "\"");
        }
        if (!conf.in_range()) throw LiteralError("confidence must lie in [0,1]");
    }
    return Correspondence::make({from_o->id, from_l}, {to_o->id, to_l}, *rel, conf);
}

/// Human-readable forms mirroring the usual notation; `unicode` switches
/// the ASCII relation spellings to the corresponding glyphs.
inline std::string relation_text(Relation r, bool unicode) {
    if (!unicode) return to_string(r);
    switch (r) {
        case Relation::Equiv: return "=";
        case Relation::Leq: return "≤";
        case Relation::Geq: return "≥";
        case Relation::Disjoint: return "⊥";
        case Relation::In: return "∈";
        case Relation::Ni: return "∋";
    }
    return "?";
}

inline std::string correspondence_text(const Correspondence& mu, bool unicode = false,
                                       bool with_confidence = true) {
    std::string s = mu.from.qualified() + " " + relation_text(mu.relation, unicode) + " " +
                    mu.to.qualified();
    if (with_confidence && !mu.confidence.is_top()) {
        std::ostringstream os;
        os << " [" << mu.confidence.value << "]";
        s += os.str();
    }
    return s;
}

inline std::string axiom_text(const Axiom& ax, bool unicode = false) {
    switch (ax.kind) {
        case AxiomKind::SubClassOf:
            return ax.lhs.local + (unicode ? " ⊑ " : " < ") + ax.rhs.local;
        case AxiomKind::Disjoint:
            return ax.lhs.local + (unicode ? " ⊥ " : " disjoint ") + ax.rhs.local;
        case AxiomKind::MemberOf:
            return ax.lhs.local + (unicode ? " ∈ " : " in ") + ax.rhs.local;
    }
    return "?";
}

}  // namespace noo
