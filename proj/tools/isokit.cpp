// isokit command line: graph isomorphism toolkit for hereditary classes.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "isokit/canon.hpp"
#include "isokit/classify.hpp"
#include "isokit/encoding.hpp"
#include "isokit/engines.hpp"
#include "isokit/graph_io.hpp"
#include "isokit/moddecomp.hpp"

using namespace isokit;

namespace {

// exit codes: 0 iso/success, 1 noniso, 2 contract violation, 3 budget, 64 parse
constexpr int kExitNonIso = 1;
constexpr int kExitContract = 2;
constexpr int kExitBudget = 3;
constexpr int kExitParse = 64;

std::uint64_t default_budget() {
    if (const char* env = std::getenv("ISOKIT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

struct IsoEngine {
    std::string name;
    std::vector<long long> params;
};

IsoEngine parse_engine(const std::string& text) {
    IsoEngine e;
    auto colon = text.find(':');
    e.name = text.substr(0, colon);
    if (colon != std::string::npos) {
        std::istringstream rest(text.substr(colon + 1));
        std::string part;
        while (std::getline(rest, part, ','))
            e.params.push_back(std::stoll(part));
    }
    return e;
}

std::string hex_bytes(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

int run_iso(const std::string& engine_text, const std::string& path1, const std::string& path2,
            Budget& budget) {
    ColorTable table;
    ColoredGraph g1 = read_graph_file(path1, &table);
    ColoredGraph g2 = read_graph_file(path2, &table);
    int shared = std::max(g1.color_count(), g2.color_count());
    g1.set_color_count(shared);
    g2.set_color_count(shared);
    IsoEngine engine = parse_engine(engine_text);

    auto finish_with_witness = [&](const std::optional<Perm>& witness) {
        if (witness) {
            std::cout << "ISO witness " << to_cycle_string(*witness) << "\n";
            return 0;
        }
        std::cout << "NONISO\n";
        return kExitNonIso;
    };
    auto finish_bool = [&](bool iso) {
        std::cout << (iso ? "ISO" : "NONISO") << " nodes " << budget.used() << "\n";
        return iso ? 0 : kExitNonIso;
    };

    if (engine.name == "brute") return finish_with_witness(brute_force_iso(g1, g2, &budget));
    if (engine.name == "ir") return finish_with_witness(ir_iso(g1, g2, &budget));
    if (engine.name == "blv") {
        if (engine.params.size() != 1) throw contract_error("blv engine needs blv:<c>");
        return finish_bool(bounded_color_valence_iso(g1, g2, static_cast<int>(engine.params[0]), &budget));
    }
    if (engine.name == "gcv") {
        if (engine.params.size() != 1) throw contract_error("gcv engine needs gcv:<c>");
        return finish_bool(gen_color_valence_iso(g1, g2, static_cast<int>(engine.params[0]), &budget));
    }
    if (engine.name == "dstar") {
        if (engine.params.size() != 2) throw contract_error("dstar engine needs dstar:<s>,<t>");
        return finish_bool(double_star_kt_iso(g1, g2, static_cast<int>(engine.params[0]),
                                              static_cast<int>(engine.params[1]), &budget));
    }
    if (engine.name == "p5") {
        if (engine.params.size() != 1) throw contract_error("p5 engine needs p5:<t>");
        return finish_bool(p5_kt_iso(g1, g2, static_cast<int>(engine.params[0]), &budget));
    }
    if (engine.name == "h1b0") {
        if (engine.params.size() != 2) throw contract_error("h1b0 engine needs h1b0:<b>,<s>");
        return finish_bool(h1b0_ks_iso(g1, g2, static_cast<int>(engine.params[0]),
                                       static_cast<int>(engine.params[1]), &budget));
    }
    throw contract_error("unknown engine '" + engine.name + "'");
}

int run_aut(const std::string& path, Budget& budget) {
    ColorTable table;
    ColoredGraph g = read_graph_file(path, &table);
    PermutationGroup aut = automorphism_group(g, &budget);
    std::cout << "order " << aut.order() << "\n";
    for (const Perm& p : aut.generators()) std::cout << "gen " << to_cycle_string(p) << "\n";
    return 0;
}

int run_refine(const std::string& path) {
    ColorTable table;
    ColoredGraph g = read_graph_file(path, &table);
    StableColoring stable = naive_refine(g);
    for (const auto& cell : stable.cells) {
        for (size_t i = 0; i < cell.size(); ++i) std::cout << (i ? " " : "") << cell[i];
        std::cout << "\n";
    }
    return 0;
}

int run_moddecomp(const std::string& path, const std::string& functor_text, Budget& budget) {
    ColorTable table;
    ColoredGraph g = read_graph_file(path, &table);

    DecompositionFunctor functor;
    IsoEngine f = parse_engine(functor_text);
    if (f.name == "classical") {
        functor = classical_functor;
    } else if (f.name == "degdep") {
        if (f.params.size() != 1) throw contract_error("functor degdep needs degdep:<c>");
        int c = static_cast<int>(f.params[0]);
        functor = [c](const ColoredGraph& h) { return degree_dependence_modules(h, c); };
    } else {
        throw contract_error("unknown functor '" + f.name + "'");
    }

    DecompositionFunctor logged = [&](const ColoredGraph& h) {
        ModuleFamily fam = functor(h);
        int nontrivial = 0;
        for (bool b : fam.nontrivial)
            if (b) ++nontrivial;
        std::cout << "trace n " << h.size() << " modules " << fam.size() << " nontrivial "
                  << nontrivial << "\n";
        return fam;
    };
    ModuleFamily fam = functor(g);
    for (size_t i = 0; i < fam.size(); ++i) {
        std::cout << "module";
        for (int v : fam.modules[i]) std::cout << " " << v;
        std::cout << (fam.nontrivial[i] ? " nontrivial" : " trivial") << "\n";
    }
    ModuleInvariant prime_inv = [&](const ColoredGraph& h) { return canonical_form(h, &budget); };
    if (fam.any_nontrivial()) {
        InvariantValue inv = decomposition_invariant(g, logged, keep_one_per_adjacency_type, prime_inv,
                                                     table, nullptr);
        ColoredGraph q = quotient(g, fam, keep_one_per_adjacency_type,
                                  [&](const ColoredGraph& m) {
                                      return decomposition_invariant(m, functor,
                                                                     keep_one_per_adjacency_type,
                                                                     prime_inv, table, nullptr);
                                  },
                                  table);
        std::cout << "quotient\n" << graph_to_string(q, &table);
        std::cout << "invariant " << hex_bytes(inv.bytes) << "\n";
    } else {
        std::cout << "prime\n";
        std::cout << "invariant " << hex_bytes(prime_inv(g).bytes) << "\n";
    }
    return 0;
}

int run_encode_check(const std::string& encoding_text, const std::string& graph_path, Budget& budget) {
    Encoding enc;
    if (const Encoding* builtin = builtin_encoding(encoding_text)) enc = *builtin;
    else enc = read_encoding_file(encoding_text);
    ColoredGraph g = read_graph_file(graph_path);
    std::uint64_t nodes = 0;
    auto phi = find_encoding_map(g, enc, &budget, &nodes);
    if (phi) {
        std::cout << "ENCODABLE map";
        for (int lab : *phi) std::cout << " " << lab;
        std::cout << "\n";
        return 0;
    }
    std::cout << "EXCLUDED nodes " << nodes << "\n";
    return 0;
}

int run_reduce(const std::string& encoding_text, const std::string& graph_path,
               const std::string& out_path) {
    Encoding enc;
    if (const Encoding* builtin = builtin_encoding(encoding_text)) enc = *builtin;
    else enc = read_encoding_file(encoding_text);
    auto witness = is_simple_path_encoding(enc);
    if (!witness) throw contract_error("the encoding is not a simple path encoding");
    ColoredGraph g = read_graph_file(graph_path);
    ColoredGraph normalized = normalize_for_reduction(g);
    ColoredGraph reduced = reduce_into_class(normalized, enc, *witness);
    std::cout << "witness-path";
    for (int lab : witness->labels) std::cout << " " << lab;
    std::cout << "\nnormalized " << normalized.size() << " reduced " << reduced.size() << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        write_graph(out, reduced);
    } else {
        write_graph(std::cout, reduced);
    }
    return 0;
}

int run_classify(const std::string& path1, const std::string& path2, bool as_json) {
    ColoredGraph h1 = read_graph_file(path1);
    ColoredGraph h2 = read_graph_file(path2);
    Verdict v = classify(h1, h2);
    if (as_json) {
        nlohmann::json out;
        out["status"] = to_string(v.status);
        out["trail"] = nlohmann::json::array();
        for (const auto& step : v.trail)
            out["trail"].push_back({{"rule", step.rule}, {"cite", step.cite}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "status " << to_string(v.status) << "\n";
        for (const auto& step : v.trail)
            std::cout << "rule " << step.rule << (step.cite.empty() ? "" : " | " + step.cite) << "\n";
    }
    return 0;
}

int run_invariant(const std::string& path, Budget& budget) {
    ColorTable table;
    ColoredGraph g = read_graph_file(path, &table);
    ModuleInvariant prime_inv = [&](const ColoredGraph& h) { return canonical_form(h, &budget); };
    InvariantValue inv =
        decomposition_invariant(g, classical_functor, keep_one_per_adjacency_type, prime_inv, table);
    std::cout << "invariant " << hex_bytes(inv.bytes) << "\n";
    return 0;
}

int run_gen(int n, double p, std::uint64_t seed, const std::string& out_path) {
    if (n < 0 || p < 0.0 || p > 1.0) throw contract_error("gen: need n >= 0 and 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    ColoredGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        write_graph(out, g);
    } else {
        write_graph(std::cout, g);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isokit: exact isomorphism toolkit for hereditary graph classes"};
    app.require_subcommand(1);

    std::uint64_t budget_nodes = default_budget();
    std::uint64_t seed = 0;
    app.add_option("--budget", budget_nodes, "search node budget (env ISOKIT_BUDGET sets the default)");
    app.add_option("--seed", seed, "seed for the generation subcommands");

    std::string engine = "ir", g1path, g2path;
    auto* iso = app.add_subcommand("iso", "decide isomorphism (exit 0 iso, 1 noniso, 2 error)");
    iso->add_option("--engine", engine, "brute|ir|blv:c|gcv:c|dstar:s,t|p5:t|h1b0:b,s");
    iso->add_option("g1", g1path, "first graph file")->required();
    iso->add_option("g2", g2path, "second graph file")->required();

    std::string autpath;
    auto* aut = app.add_subcommand("aut", "automorphism group: order and generators");
    aut->add_option("graph", autpath, "graph file")->required();

    std::string refinepath;
    auto* refine = app.add_subcommand("refine", "stable coloring classes, one sorted class per line");
    refine->add_option("graph", refinepath, "graph file")->required();

    std::string modpath, functor = "classical";
    auto* mod = app.add_subcommand("moddecomp", "module family, quotient and recursion trace");
    mod->add_option("graph", modpath, "graph file")->required();
    mod->add_option("--functor", functor, "classical|degdep:<c>");

    std::string encfile, encgraph;
    auto* enc = app.add_subcommand("encode-check", "test whether a graph is encodable");
    enc->add_option("--encoding", encfile, "encoding file or builtin name")->required();
    enc->add_option("--graph", encgraph, "graph file")->required();

    std::string redenc, redgraph, redout;
    auto* red = app.add_subcommand("reduce", "normalize and reduce a graph into an encoded class");
    red->add_option("--encoding", redenc, "encoding file or builtin name")->required();
    red->add_option("graph", redgraph, "graph file")->required();
    red->add_option("-o,--output", redout, "output graph file (stdout otherwise)");

    std::string c1path, c2path;
    bool classify_json = false;
    auto* cls = app.add_subcommand("classify", "poly/GI-complete verdict for two forbidden graphs");
    cls->add_option("h1", c1path, "first forbidden graph")->required();
    cls->add_option("h2", c2path, "second forbidden graph")->required();
    cls->add_flag("--json", classify_json, "JSON output");

    std::string invpath;
    auto* inv = app.add_subcommand("invariant", "classical-decomposition complete invariant");
    inv->add_option("graph", invpath, "graph file")->required();

    int gen_n = 8;
    double gen_p = 0.5;
    std::string genout;
    auto* gen = app.add_subcommand("gen", "write a seeded random graph");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("-o,--output", genout, "output file (stdout otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitParse;
    }

    Budget budget(budget_nodes);
    try {
        if (*iso) return run_iso(engine, g1path, g2path, budget);
        if (*aut) return run_aut(autpath, budget);
        if (*refine) return run_refine(refinepath);
        if (*mod) return run_moddecomp(modpath, functor, budget);
        if (*enc) return run_encode_check(encfile, encgraph, budget);
        if (*red) return run_reduce(redenc, redgraph, redout);
        if (*cls) return run_classify(c1path, c2path, classify_json);
        if (*inv) return run_invariant(invpath, budget);
        if (*gen) return run_gen(gen_n, gen_p, seed, genout);
    } catch (const budget_exhausted& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitParse;
}
