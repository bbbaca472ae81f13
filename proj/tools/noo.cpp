// Command-line front end. Exit codes are script-stable:
//   0  affirmative verdict / success
//   1  negative verdict (inconsistent, not subsumed, not entailed, ...)
//   2  usage or input error
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noo/category.hpp"
#include "noo/core.hpp"
#include "noo/documents.hpp"
#include "noo/io.hpp"
#include "noo/morphism.hpp"
#include "noo/oracle.hpp"
#include "noo/saturation.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

std::optional<noo::Network> load(const std::string& path) {
    noo::ParseResult res = noo::parse_network_file(path);
    if (!res.ok()) {
        std::cerr << path << ":\n" << res.report();
        return std::nullopt;
    }
    return std::move(res.network);
}

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kYes;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return kError;
    }
    out << text;
    return kYes;
}

nlohmann::ordered_json model_to_json(const noo::NetworkModel& model) {
    nlohmann::ordered_json j;
    j["domainSize"] = model.domain_size;
    j["interpretations"] = nlohmann::ordered_json::object();
    for (const auto& [id, m] : model.interpretations) {
        nlohmann::ordered_json jm;
        jm["classes"] = nlohmann::ordered_json::object();
        for (const auto& [name, extent] : m.class_extents) {
            std::vector<int> elems;
            for (int e = 0; e < m.domain_size; ++e)
                if ((extent >> e) & 1u) elems.push_back(e);
            jm["classes"][name] = elems;
        }
        jm["individuals"] = nlohmann::ordered_json::object();
        for (const auto& [name, value] : m.individual_values) jm["individuals"][name] = value;
        j["interpretations"][id] = std::move(jm);
    }
    return j;
}

int cmd_validate(const std::string& file) {
    auto net = load(file);
    if (!net) return kError;
    size_t axioms = 0, corrs = 0;
    for (const auto& [id, o] : net->ontologies) axioms += o.axioms.size();
    for (const auto& [id, a] : net->alignments) corrs += a.correspondences.size();
    std::cout << "valid: " << net->ontologies.size() << " ontologies, "
              << net->alignments.size() << " alignments, " << axioms << " axioms, " << corrs
              << " correspondences\n";
    return kYes;
}

int cmd_normalize(const std::string& file, const std::string& out) {
    auto net = load(file);
    if (!net) return kError;
    return write_output(noo::serialize_network(noo::normalise(*net)), out);
}

int cmd_consistent(const std::string& file, bool explain, bool unicode) {
    auto net = load(file);
    if (!net) return kError;
    noo::SaturationGraph g = noo::saturate(*net);
    (void)unicode;
    if (!g.clash) {
        std::cout << "consistent\n";
        return kYes;
    }
    std::cout << "inconsistent\n";
    auto lines = noo::explain_clash(g);
    if (explain) {
        for (const auto& l : lines) std::cout << l << "\n";
    } else if (!lines.empty()) {
        std::cout << lines.back() << "\n";
    }
    return kNo;
}

int cmd_close(const std::string& file, const std::string& out) {
    auto net = load(file);
    if (!net) return kError;
    try {
        return write_output(noo::serialize_network(noo::close_network(*net)), out);
    } catch (const noo::InconsistentNetworkError& e) {
        std::cerr << e.what() << "\n";
        return kNo;
    }
}

int cmd_omega(const std::string& file, const std::string& ontology, bool json, bool unicode) {
    auto net = load(file);
    if (!net) return kError;
    noo::OmegaClosure closure = noo::omega_closure(*net, ontology);
    if (closure.all_consequences) {
        std::cout << "network is inconsistent: every axiom is a consequence\n";
        return kNo;
    }
    if (json) {
        nlohmann::ordered_json j;
        j["ontology"] = ontology;
        j["axioms"] = nlohmann::ordered_json::array();
        for (const auto& ax : closure.axioms) j["axioms"].push_back(noo::axiom_to_json(ax));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "omega closure of " << ontology << " (" << closure.axioms.size()
                  << " axioms):\n";
        for (const auto& ax : closure.axioms)
            std::cout << "  " << noo::axiom_text(ax, unicode) << "\n";
    }
    return kYes;
}

int cmd_alpha(const std::string& file, const std::vector<std::string>& pair, bool json,
              bool unicode) {
    auto net = load(file);
    if (!net) return kError;
    noo::AlphaClosure closure = noo::alpha_closure(*net, pair[0], pair[1]);
    if (closure.all_consequences) {
        std::cout << "network is inconsistent: every correspondence is a consequence\n";
        return kNo;
    }
    if (json) {
        nlohmann::ordered_json j;
        j["source"] = pair[0];
        j["target"] = pair[1];
        j["correspondences"] = nlohmann::ordered_json::array();
        for (const auto& mu : closure.correspondences)
            j["correspondences"].push_back(noo::correspondence_to_json(mu));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "alpha closure of (" << pair[0] << ", " << pair[1] << ") ("
                  << closure.correspondences.size() << " correspondences):\n";
        for (const auto& mu : closure.correspondences)
            std::cout << "  " << noo::correspondence_text(mu, unicode) << "\n";
    }
    return kYes;
}

int cmd_entails(const std::string& file, const std::string& query) {
    auto net = load(file);
    if (!net) return kError;
    noo::Correspondence mu = noo::parse_correspondence(query, *net);
    if (noo::entails(*net, mu)) {
        std::cout << "entailed\n";
        return kYes;
    }
    std::cout << "not entailed\n";
    return kNo;
}

int cmd_subsumes(const std::string& src_file, const std::string& dst_file,
                 const std::string& witness_out, bool weighted, bool semantic) {
    if (weighted && semantic) {
        std::cerr << "--weighted and --semantic cannot be combined\n";
        return kError;
    }
    auto src = load(src_file);
    auto dst = load(dst_file);
    if (!src || !dst) return kError;
    std::optional<noo::NetworkMorphism> witness;
    if (semantic) {
        if (!noo::is_consistent(*dst))
            std::cerr << "note: destination network is inconsistent; the semantic check "
                         "holds trivially\n";
        witness = noo::find_semantic_morphism(*src, *dst);
    } else if (weighted) {
        witness = noo::find_weight_aware_morphism(*src, *dst);
    } else {
        witness = noo::find_syntactic_morphism(*src, *dst);
    }
    if (!witness) {
        std::cout << "not subsumed\n";
        return kNo;
    }
    std::string doc = noo::morphism_to_json(*witness).dump(2) + "\n";
    std::cout << doc;
    if (!witness_out.empty()) {
        std::ofstream out(witness_out);
        if (!out) {
            std::cerr << "cannot write " << witness_out << "\n";
            return kError;
        }
        out << doc;
    }
    return kYes;
}

int cmd_meet(const std::string& family_file, const std::string& out) {
    noo::IsoFamily family = noo::load_iso_family(family_file);
    return write_output(noo::serialize_network(noo::fibred_meet(family)), out);
}

int cmd_verify_pullback(const std::string& family_file, const std::string& candidates_file) {
    noo::IsoFamily family = noo::load_iso_family(family_file);
    auto candidates = noo::load_pullback_candidates(candidates_file);
    noo::PullbackReport report = noo::verify_pullback(family, candidates);
    std::cout << "projections: " << (report.projections_valid ? "ok" : "FAIL") << "\n";
    std::cout << "commutation: " << (report.diagram_commutes ? "ok" : "FAIL") << "\n";
    for (size_t i = 0; i < report.candidates.size(); ++i) {
        const auto& c = report.candidates[i];
        std::cout << "candidate " << i << ": ";
        if (!c.input_valid)
            std::cout << "FAIL (invalid candidate morphisms)\n";
        else if (c.mediator_count == 1)
            std::cout << "ok (unique mediating morphism)\n";
        else
            std::cout << "FAIL (" << c.mediator_count << " mediating morphisms)\n";
    }
    return report.ok() ? kYes : kNo;
}

int cmd_threshold(const std::string& file, double w, bool strip, const std::string& out) {
    auto net = load(file);
    if (!net) return kError;
    noo::Confidence conf{w};
    if (!conf.in_range()) {
        std::cerr << "threshold must lie in [0,1]\n";
        return kError;
    }
    return write_output(noo::serialize_network(noo::apply_threshold(*net, conf), strip), out);
}

int cmd_oracle_consistent(const std::string& file, int domain_size, bool json) {
    auto net = load(file);
    if (!net) return kError;
    noo::OracleVerdict verdict = noo::find_model(*net, domain_size, noo::OracleLimits::from_env());
    if (verdict.kind == noo::OracleVerdict::Kind::Model) {
        std::cout << "model found at domain size " << domain_size << "\n";
        if (json) std::cout << model_to_json(*verdict.witness).dump(2) << "\n";
        return kYes;
    }
    std::cout << "no model up to domain size " << domain_size << "\n";
    return kNo;
}

int cmd_oracle_entails(const std::string& file, const std::string& query, int domain_size,
                       bool json) {
    auto net = load(file);
    if (!net) return kError;
    noo::Correspondence mu = noo::parse_correspondence(query, *net);
    noo::OracleVerdict verdict =
        noo::oracle_entails(*net, mu, domain_size, noo::OracleLimits::from_env());
    if (verdict.kind == noo::OracleVerdict::Kind::EntailedUpTo) {
        std::cout << "entailed up to domain size " << domain_size << "\n";
        return kYes;
    }
    std::cout << "countermodel found at domain size " << domain_size << "\n";
    if (json) std::cout << model_to_json(*verdict.witness).dump(2) << "\n";
    return kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reasoner for networks of ontologies connected by alignments"};
    app.require_subcommand(1);

    std::string file, out, ontology, query, src_file, dst_file, witness_out;
    std::string family_file, candidates_file;
    std::vector<std::string> pair;
    bool explain = false, unicode = false, json = false;
    bool weighted = false, semantic = false, strip = false;
    double w = 1.0;
    int domain_size = 2;

    auto* validate = app.add_subcommand("validate", "check a network document");
    validate->add_option("file", file)->required();

    auto* normalize = app.add_subcommand("normalize", "one alignment per pair of ontologies");
    normalize->add_option("file", file)->required();
    normalize->add_option("-o,--output", out);

    auto* consistent = app.add_subcommand("consistent", "decide consistency by saturation");
    consistent->add_option("file", file)->required();
    consistent->add_flag("--explain", explain, "print the full clash derivation");
    consistent->add_flag("--unicode", unicode);

    auto* close = app.add_subcommand("close", "full network closure");
    close->add_option("file", file)->required();
    close->add_option("-o,--output", out);

    auto* omega = app.add_subcommand("omega", "omega closure of one ontology");
    omega->add_option("file", file)->required();
    omega->add_option("--ontology", ontology)->required();
    omega->add_flag("--json", json);
    omega->add_flag("--unicode", unicode);

    auto* alpha = app.add_subcommand("alpha", "alpha closure of an ontology pair");
    alpha->add_option("file", file)->required();
    alpha->add_option("--pair", pair)->expected(2)->required();
    alpha->add_flag("--json", json);
    alpha->add_flag("--unicode", unicode);

    auto* entails = app.add_subcommand("entails", "decide entailment by saturation");
    entails->add_option("file", file)->required();
    entails->add_option("--query", query, "literal like \"o1:b1 <= o3:b3\"")->required();

    auto* subsumes = app.add_subcommand("subsumes", "search for a morphism SRC -> DST");
    subsumes->add_option("src", src_file)->required();
    subsumes->add_option("dst", dst_file)->required();
    subsumes->add_option("--witness", witness_out, "write the witness document here");
    subsumes->add_flag("--weighted", weighted, "require non-decreasing confidences");
    subsumes->add_flag("--semantic", semantic, "use closure containment instead of syntax");

    auto* meet = app.add_subcommand("meet", "fibred meet of a family document");
    meet->add_option("family", family_file)->required();
    meet->add_option("-o,--output", out);

    auto* verify = app.add_subcommand("verify-pullback", "check the pullback property");
    verify->add_option("family", family_file)->required();
    verify->add_option("candidates", candidates_file)->required();

    auto* threshold = app.add_subcommand("threshold", "drop correspondences below -w");
    threshold->add_option("file", file)->required();
    threshold->add_option("-w,--threshold", w)->required();
    threshold->add_flag("--strip-weights", strip, "omit confidences in the output");
    threshold->add_option("-o,--output", out);

    auto* oracle = app.add_subcommand("oracle", "bounded finite-model search");
    oracle->require_subcommand(1);
    auto* oracle_consistent = oracle->add_subcommand("consistent", "search for a model");
    oracle_consistent->add_option("file", file)->required();
    oracle_consistent->add_option("--domain-size", domain_size)->required();
    oracle_consistent->add_flag("--json", json);
    auto* oracle_entails = oracle->add_subcommand("entails", "search for a countermodel");
    oracle_entails->add_option("file", file)->required();
    oracle_entails->add_option("--query", query)->required();
    oracle_entails->add_option("--domain-size", domain_size)->required();
    oracle_entails->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kError;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*normalize) return cmd_normalize(file, out);
        if (*consistent) return cmd_consistent(file, explain, unicode);
        if (*close) return cmd_close(file, out);
        if (*omega) return cmd_omega(file, ontology, json, unicode);
        if (*alpha) return cmd_alpha(file, pair, json, unicode);
        if (*entails) return cmd_entails(file, query);
        if (*subsumes) return cmd_subsumes(src_file, dst_file, witness_out, weighted, semantic);
        if (*meet) return cmd_meet(family_file, out);
        if (*verify) return cmd_verify_pullback(family_file, candidates_file);
        if (*threshold) return cmd_threshold(file, w, strip, out);
        if (*oracle_consistent) return cmd_oracle_consistent(file, domain_size, json);
        if (*oracle_entails) return cmd_oracle_entails(file, query, domain_size, json);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kError;
    }
    return kError;
}
