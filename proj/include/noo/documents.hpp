// JSON documents for the compound inputs and outputs of the tooling:
// morphism witnesses, iso-family descriptions and pullback candidates.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "noo/category.hpp"
#include "noo/io.hpp"
#include "noo/morphism.hpp"

namespace noo {

inline nlohmann::ordered_json morphism_to_json(const NetworkMorphism& m) {
    nlohmann::ordered_json j;
    j["h"] = nlohmann::ordered_json::object();
    for (const auto& [x, y] : m.h) j["h"][x] = y;
    j["k"] = nlohmann::ordered_json::object();
    for (const auto& [x, y] : m.k) j["k"][x] = y;
    return j;
}

inline NetworkMorphism morphism_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("h") || !j.contains("k") || !j["h"].is_object() ||
        !j["k"].is_object())
        throw std::runtime_error(
            "morphism witness must be an object with \"h\" and \"k\" maps");
    NetworkMorphism m;
    for (const auto& [x, y] : j["h"].items()) {
        if (!y.is_string()) throw std::runtime_error("morphism \"h\" must map strings to strings");
        m.h[x] = y.get<std::string>();
    }
    for (const auto& [x, y] : j["k"].items()) {
        if (!y.is_string()) throw std::runtime_error("morphism \"k\" must map strings to strings");
        m.k[x] = y.get<std::string>();
    }
    return m;
}

namespace detail {

inline Network load_network_or_throw(const std::filesystem::path& path) {
    ParseResult res = parse_network_file(path.string());
    if (!res.ok()) throw std::runtime_error(path.string() + ":\n" + res.report());
    return std::move(*res.network);
}

inline nlohmann::json load_json_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace detail

/// Family document: {"generator": file, "members": [file...],
/// "pairs": [morphism-witness...]}, with file paths resolved relative to
/// the document's directory.
inline IsoFamily load_iso_family(const std::filesystem::path& path) {
    nlohmann::json j = detail::load_json_or_throw(path);
    if (!j.is_object() || !j.contains("generator") || !j.contains("members") ||
        !j.contains("pairs") || !j["members"].is_array() || !j["pairs"].is_array())
        throw std::runtime_error(
            "family document needs \"generator\", \"members\" and \"pairs\"");
    std::filesystem::path base = path.parent_path();
    IsoFamily family;
    family.generator = detail::load_network_or_throw(base / j["generator"].get<std::string>());
    for (const auto& f : j["members"])
        family.members.push_back(detail::load_network_or_throw(base / f.get<std::string>()));
    for (const auto& w : j["pairs"]) family.pairs.push_back(morphism_from_json(w));
    if (family.members.size() != family.pairs.size())
        throw std::runtime_error("family document: one pair morphism per member is required");
    return family;
}

/// Candidate document: {"candidates": [{"network": file,
/// "thetas": [morphism-witness...]}...]}.
inline std::vector<PullbackCandidate> load_pullback_candidates(
    const std::filesystem::path& path) {
    nlohmann::json j = detail::load_json_or_throw(path);
    if (!j.is_object() || !j.contains("candidates") || !j["candidates"].is_array())
        throw std::runtime_error("candidate document needs a \"candidates\" array");
    std::filesystem::path base = path.parent_path();
    std::vector<PullbackCandidate> out;
    for (const auto& jc : j["candidates"]) {
        PullbackCandidate c;
        c.network = detail::load_network_or_throw(base / jc.at("network").get<std::string>());
        for (const auto& w : jc.at("thetas")) c.thetas.push_back(morphism_from_json(w));
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace noo
