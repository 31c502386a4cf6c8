#include "report.hpp"

#include "homred/certificate_json.hpp"
#include "homred/code_weight.hpp"
#include "homred/convex.hpp"
#include "homred/csp.hpp"
#include "homred/error.hpp"
#include "homred/gadgets.hpp"
#include "homred/graph.hpp"
#include "homred/hom_count.hpp"
#include "homred/potts.hpp"
#include "homred/text_format.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace homred;
using homred::cli::Report;

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

auto sha256(const std::string & text) -> std::string
{
    unsigned char hash[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(hash[i]);
    return out.str();
}

auto load(Report & report, const std::string & path) -> std::string
{
    auto text = read_file(path);
    report.input(path, sha256(text));
    return text;
}

void save(Report & report, const std::string & key, const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (! out || ! (out << text))
        throw Error("io", "cannot write '" + path + "'");
    report.set(key, path);
}

auto parse_count(const std::string & text) -> std::size_t
{
    std::size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(text, &used);
    }
    catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw UsageError("expected a non-negative integer, got '" + text + "'");
    return value;
}

// p4 | path:n | star:n | jq:q | j3star | file:PATH
auto parse_target(Report & report, const std::string & spec) -> TargetTree
{
    auto colon = spec.find(':');
    auto head = spec.substr(0, colon);
    auto tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    if (spec == "p4")
        return build_target_tree({TreeKind::Path, 4, {}});
    if (spec == "j3star")
        return build_target_tree({TreeKind::J3Star, 0, {}});
    if (head == "path" && ! tail.empty())
        return build_target_tree({TreeKind::Path, parse_count(tail), {}});
    if (head == "star" && ! tail.empty())
        return build_target_tree({TreeKind::Star, parse_count(tail), {}});
    if (head == "jq" && ! tail.empty())
        return build_target_tree({TreeKind::Junction, parse_count(tail), {}});
    if (head == "file" && ! tail.empty())
        return build_target_tree({TreeKind::Custom, 0, parse_graph(load(report, tail))});
    throw UsageError("unknown target '" + spec + "' (expected p4, path:n, star:n, jq:q, j3star or file:PATH)");
}

auto parse_terminals(const std::string & text) -> std::array<Vertex, 3>
{
    std::array<Vertex, 3> out{};
    std::stringstream in(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(in, part, ',')) {
        if (i == 3)
            throw UsageError("expected three terminals a,b,c");
        out[i++] = parse_count(part);
    }
    if (i != 3)
        throw UsageError("expected three terminals a,b,c");
    return out;
}

auto parse_side(const std::string & text) -> Side
{
    if (text == "left")
        return Side::Left;
    if (text == "right")
        return Side::Right;
    throw UsageError("side must be 'left' or 'right'");
}

auto positive_q(unsigned long q) -> unsigned long
{
    if (q == 0)
        throw UsageError("q must be positive");
    return q;
}

void describe(Report & report, const ReductionCertificate & cert)
{
    report.set("kind", to_string(cert.kind));
    for (const auto & [name, value] : cert.constants)
        report.set(name, to_string(value));
    report.set("scale", to_string(cert.scale));
    report.set("slack", to_string(cert.slack));
    if (cert.graph)
        report.set("instance_vertices", std::to_string(cert.graph->vertex_count()));
    if (cert.hypergraph)
        report.set("instance_hyperedges", std::to_string(cert.hypergraph->hyperedge_count()));
}

void emit(Report & report, const ReductionCertificate & cert, const std::string & prefix)
{
    describe(report, cert);
    if (cert.graph)
        save(report, "graph_file", prefix + ".graph", write_graph(*cert.graph));
    if (cert.weights)
        save(report, "weights_file", prefix + ".weights", write_weights(*cert.weights));
    if (cert.hypergraph)
        save(report, "hypergraph_file", prefix + ".hyper", write_hypergraph(*cert.hypergraph));
    save(report, "certificate_file", prefix + ".cert.json", certificate_to_json(cert, false));
}

void verify_loaded(Report & report, LoadedCertificate loaded)
{
    auto & cert = loaded.certificate;
    describe(report, cert);
    if (! loaded.mismatches.empty()) {
        std::string list;
        for (const auto & m : loaded.mismatches)
            list += (list.empty() ? "" : ",") + m;
        report.set("mismatch", list);
        report.verdict(false);
        return;
    }
    auto side = cert;
    auto oracle = std::async(std::launch::async, [side] { return independent_oracle(side); });
    evaluate_certificate(cert);
    auto result = verify_certificate(cert, oracle.get());
    report.set("value", to_string(result.value));
    for (const auto & [name, value] : cert.counters)
        if (name != "Z")
            report.set(name, to_string(value));
    report.set("oracle", to_string(result.lower));
    report.set("ratio", to_string(result.ratio));
    report.set("lower", to_string(result.lower));
    report.set("upper", to_string(result.upper));
    if (result.recovered)
        report.set("recovered", to_string(*result.recovered));
    for (const auto & [name, ok] : result.checks)
        report.set("check_" + name, ok ? "pass" : "fail");
    report.verdict(result.pass);
}

auto command_echo(int argc, char ** argv) -> std::string
{
    std::string out;
    for (int i = 1; i < argc; ++i)
        out += (i > 1 ? " " : "") + std::string(argv[i]);
    return out;
}

}

int main(int argc, char ** argv)
{
    CLI::App app{"Exact homomorphism counts, Potts partition functions, reduction gadgets and their verification.", "homred"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false, timing = false;
    app.add_flag("--json", json, "Emit the report as JSON");
    app.add_flag("--timing", timing, "Append the wall-clock duration to the report");

    std::function<void(Report &)> action;
    std::optional<std::string> raw;

    // Shared option storage.
    std::string graph_path, target_spec, weights_path, gamma_text = "1", lambda_text, terminals_text, out_prefix,
            side_text = "left", file_path;
    unsigned long q = 0, p = 0, k = 1;
    std::optional<unsigned long> s_override;
    bool materialise = false, reversed = false, random_cluster = false;
    std::string via = "direct";

    auto graph_arg = [&](CLI::App * sub, const char * what = "Graph file") {
        sub->add_option("graph", graph_path, what)->required();
    };

    auto * classify = app.add_subcommand("classify", "Classify a tree target");
    classify->add_option("--tree", graph_path, "Tree file")->required();
    classify->callback([&] {
        action = [&](Report & r) {
            auto g = parse_graph(load(r, graph_path));
            r.set("vertices", std::to_string(g.vertex_count()));
            r.set("class", to_string(classify_tree(g)));
            r.set("induced_p4", contains_induced(g, Pattern::P4) ? "yes" : "no");
            r.set("induced_j3", contains_induced(g, Pattern::J3) ? "yes" : "no");
        };
    });

    auto * hom = app.add_subcommand("hom", "Count homomorphisms G -> T");
    hom->add_option("--target", target_spec, "Target spec")->required();
    graph_arg(hom);
    hom->callback([&] {
        action = [&](Report & r) {
            auto t = parse_target(r, target_spec);
            r.set("count", to_string(count_hom(parse_graph(load(r, graph_path)), t.graph)));
        };
    });

    auto * whom = app.add_subcommand("whom", "Weighted homomorphism count");
    whom->add_option("--target", target_spec, "Target spec")->required();
    whom->add_option("--weights", weights_path, "Weights file")->required();
    whom->add_option("--via", via, "Evaluator")->check(CLI::IsMember({"direct", "csp", "bipartite"}));
    graph_arg(whom);
    whom->callback([&] {
        action = [&](Report & r) {
            auto t = parse_target(r, target_spec);
            auto g = parse_graph(load(r, graph_path));
            auto w = parse_weights(load(r, weights_path));
            Rational value = via == "csp" ? whom_via_csp(g, w, t.graph)
                    : via == "bipartite"  ? complete_bipartite_whom(g, t.graph, w)
                                          : count_whom(g, t.graph, w);
            r.set("value", to_string(value));
        };
    });

    auto * potts = app.add_subcommand("potts", "Potts partition function of a graph");
    potts->add_option("-q", q, "Number of spins")->required();
    potts->add_option("--gamma", gamma_text, "Edge interaction gamma (a/b)");
    potts->add_flag("--random-cluster", random_cluster, "Evaluate by subset expansion");
    graph_arg(potts);
    potts->callback([&] {
        action = [&](Report & r) {
            auto g = parse_graph(load(r, graph_path));
            PottsParams params{positive_q(q), parse_rational(gamma_text)};
            r.set("value", to_string(random_cluster ? random_cluster_oracle(g, params) : potts_graph(g, params)));
        };
    });

    auto * hyper = app.add_subcommand("hyperpotts", "Potts partition function of a hypergraph");
    hyper->add_option("-q", q, "Number of spins")->required();
    hyper->add_option("--gamma", gamma_text, "Hyperedge interaction gamma (a/b)");
    graph_arg(hyper, "Hypergraph file");
    hyper->callback([&] {
        action = [&](Report & r) {
            auto h = parse_hypergraph(load(r, graph_path));
            r.set("value", to_string(potts_hypergraph(h, {positive_q(q), parse_rational(gamma_text)})));
        };
    });

    auto * qcol = app.add_subcommand("qcol", "Proper q-colourings of a bipartite graph");
    qcol->add_option("-q", q, "Number of colours")->required();
    graph_arg(qcol);
    qcol->callback([&] {
        action = [&](Report & r) {
            r.set("count", to_string(count_proper_colourings(parse_graph(load(r, graph_path)), q)));
        };
    });

    auto * csp_count = app.add_subcommand("csp-count", "Count solutions of an IMP-CSP");
    csp_count->add_option("file", file_path, "CSP file")->required();
    csp_count->callback([&] {
        action = [&](Report & r) { r.set("count", to_string(count_csp(parse_csp(load(r, file_path))))); };
    });

    auto * wcsp_count = app.add_subcommand("wcsp-count", "Weighted count of an IMP-CSP");
    wcsp_count->add_option("file", file_path, "Weighted CSP file")->required();
    wcsp_count->callback([&] {
        action = [&](Report & r) { r.set("value", to_string(count_wcsp(parse_weighted_csp(load(r, file_path))))); };
    });

    auto * compile = app.add_subcommand("compile-weights", "Replace variable weights by unweighted gadgets");
    compile->add_option("file", file_path, "Weighted CSP file")->required();
    compile->add_option("-o,--out", out_prefix, "Write the compiled CSP here");
    compile->callback([&] {
        action = [&](Report & r) {
            auto weighted = parse_weighted_csp(load(r, file_path));
            auto cleared = clear_denominators(weighted);
            auto compiled = compile_weight_gadget(cleared.instance);
            r.set("scale", to_string(cleared.scale));
            r.set("variables", std::to_string(compiled.instance.variables));
            r.set("constraints", std::to_string(compiled.instance.constraints.size()));
            r.set("weighted_count", to_string(count_wcsp(weighted)));
            r.set("compiled_count", to_string(count_csp(compiled.instance)));
            if (! out_prefix.empty())
                save(r, "csp_file", out_prefix, write_csp(compiled.instance));
        };
    });

    auto * cuts = app.add_subcommand("cuts", "Minimum three-terminal cuts");
    cuts->add_option("--terminals", terminals_text, "Terminals a,b,c")->required();
    graph_arg(cuts);
    cuts->callback([&] {
        action = [&](Report & r) {
            auto cut = multiterminal_cuts(parse_graph(load(r, graph_path)), parse_terminals(terminals_text));
            r.set("b", std::to_string(cut.b));
            r.set("count", to_string(cut.count));
        };
    });

    auto * wenum = app.add_subcommand("wenum", "Weight enumerator of a linear code");
    wenum->add_option("-p", p, "Field size")->required();
    wenum->add_option("--lambda", lambda_text, "Evaluation point (a/b)")->required();
    wenum->add_option("code", file_path, "Code file")->required();
    wenum->callback([&] {
        action = [&](Report & r) {
            auto code = parse_code(load(r, file_path));
            if (code.p != p)
                throw UsageError("code file is over F_" + std::to_string(code.p) + ", not F_" + std::to_string(p));
            r.set("rank", std::to_string(row_basis(code).size()));
            r.set("value", to_string(weight_enumerator(code, parse_rational(lambda_text))));
        };
    });

    auto * walk = app.add_subcommand("walk-table", "Path and walk counts from the vertices of J3*");
    walk->callback([&] {
        action = [&](Report & r) {
            auto rows = walk_table();
            if (! json) {
                raw = format_walk_table(rows);
                return;
            }
            for (const auto & row : rows) {
                std::string values;
                for (const auto * list : {&row.profile.simple_paths, &row.profile.walks})
                    for (const auto & x : *list)
                        values += (values.empty() ? "" : ",") + to_string(x);
                r.set(row.label, values);
            }
        };
    });

    auto * reduce = app.add_subcommand("reduce", "Build a reduction instance and its certificate");
    reduce->require_subcommand(1);
    auto reduce_common = [&](CLI::App * sub) {
        sub->add_option("--out", out_prefix, "Output path prefix")->required();
    };
    auto s_options = [&](CLI::App * sub) {
        sub->add_option("--s", s_override, "Override the gadget size s");
        sub->add_flag("--materialise", materialise, "Evaluate the expanded instance");
    };

    auto * cut_whom = reduce->add_subcommand("cut-to-whom", "Multiterminal cuts to weighted homomorphisms");
    cut_whom->add_option("--terminals", terminals_text, "Terminals a,b,c")->required();
    cut_whom->add_option("--target", target_spec, "Tree with an induced J3")->default_val("jq:3");
    s_options(cut_whom);
    reduce_common(cut_whom);
    graph_arg(cut_whom);
    cut_whom->callback([&] {
        action = [&](Report & r) {
            auto t = parse_target(r, target_spec);
            auto cut = multiterminal_cuts(parse_graph(load(r, graph_path)), parse_terminals(terminals_text));
            emit(r, build_cut_to_whom(cut, t.graph, find_induced_j3(t.graph), {s_override, materialise}), out_prefix);
        };
    });

    auto * potts_jq = reduce->add_subcommand("potts-to-jq", "Potts model to homomorphisms into J_q");
    potts_jq->add_option("-q", q, "Number of spins")->required();
    s_options(potts_jq);
    reduce_common(potts_jq);
    graph_arg(potts_jq);
    potts_jq->callback([&] {
        action = [&](Report & r) {
            emit(r, build_potts_to_jq(parse_graph(load(r, graph_path)), q, {s_override, materialise}), out_prefix);
        };
    });

    auto * jq_hyper = reduce->add_subcommand("jq-to-hyperpotts", "J_q homomorphisms to hypergraph Potts");
    jq_hyper->add_option("-q", q, "Number of spins")->required();
    jq_hyper->add_option("--side", side_text, "Side U of the bipartition (left|right)");
    reduce_common(jq_hyper);
    graph_arg(jq_hyper, "Connected bipartite graph");
    jq_hyper->callback([&] {
        action = [&](Report & r) {
            auto b = parse_graph(load(r, graph_path));
            emit(r, certify_jq_to_hyperpotts(b, positive_q(q), parse_side(side_text)), out_prefix);
        };
    });

    auto * uniform = reduce->add_subcommand("uniformize", "Hypergraph Potts to a uniform hypergraph");
    uniform->add_option("-q", q, "Number of spins")->required();
    uniform->add_option("--gamma", gamma_text, "Interaction gamma (a/b)");
    reduce_common(uniform);
    graph_arg(uniform, "Hypergraph file");
    uniform->callback([&] {
        action = [&](Report & r) {
            auto h = parse_hypergraph(load(r, graph_path));
            emit(r, uniformize(h, positive_q(q), parse_rational(gamma_text)), out_prefix);
        };
    });

    auto * cut_star = reduce->add_subcommand("cut-to-j3star", "Multiterminal cuts to homomorphisms into J3*");
    cut_star->add_option("--terminals", terminals_text, "Terminals a,b,c")->required();
    s_options(cut_star);
    reduce_common(cut_star);
    graph_arg(cut_star);
    cut_star->callback([&] {
        action = [&](Report & r) {
            auto cut = multiterminal_cuts(parse_graph(load(r, graph_path)), parse_terminals(terminals_text));
            emit(r, build_cut_to_j3star(cut, {s_override, materialise}), out_prefix);
        };
    });

    auto * whom_csp = reduce->add_subcommand("whom-to-csp", "Weighted homomorphisms into a J3-free tree to a weighted IMP-CSP");
    whom_csp->add_option("--target", target_spec, "J3-free tree")->required();
    whom_csp->add_option("--weights", weights_path, "Weights file (uniform if omitted)");
    whom_csp->add_option("--side", side_text, "Side of H receiving G's left side (left|right)");
    reduce_common(whom_csp);
    graph_arg(whom_csp, "Connected bipartite graph");
    whom_csp->callback([&] {
        action = [&](Report & r) {
            auto t = parse_target(r, target_spec);
            auto g = parse_graph(load(r, graph_path));
            auto w = weights_path.empty() ? WeightTable::uniform(g.vertex_count(), t.graph.vertex_count())
                                          : parse_weights(load(r, weights_path));
            auto order = convex_order(t.graph);
            auto reduction = reduce_whom_side(g, w, t.graph, order, parse_side(side_text));
            r.set("variables", std::to_string(reduction.instance.csp.variables));
            r.set("constraints", std::to_string(reduction.instance.csp.constraints.size()));
            r.set("value", to_string(count_wcsp(reduction.instance)));
            save(r, "csp_file", out_prefix + ".csp", write_weighted_csp(reduction.instance));
            nlohmann::json sidecar;
            sidecar["left"] = order.left;
            sidecar["right"] = order.right;
            sidecar["m"] = order.m;
            sidecar["M"] = order.M;
            sidecar["m_prime"] = order.m_prime;
            sidecar["M_prime"] = order.M_prime;
            sidecar["first_variable"] = reduction.first;
            sidecar["colours"] = reduction.colours;
            save(r, "order_file", out_prefix + ".order.json", sidecar.dump(2) + "\n");
        };
    });

    auto * verify = app.add_subcommand("verify", "Re-check an identity or a reduction certificate");
    verify->add_option("certificate", file_path, "Certificate JSON written by reduce");
    verify->require_subcommand(0, 1);

    auto * potts_we = verify->add_subcommand("potts-we", "Potts model against the weight enumerator of its code");
    potts_we->add_option("-p", p, "Prime")->required();
    potts_we->add_option("-k", k, "Extension degree");
    potts_we->add_option("--lambda", lambda_text, "Evaluation point in (0,1)")->required();
    potts_we->add_flag("--reversed", reversed, "Orient edges high to low");
    graph_arg(potts_we);
    potts_we->callback([&] {
        action = [&](Report & r) {
            auto g = parse_graph(load(r, graph_path));
            auto result = verify_potts_we(g, p, k, parse_rational(lambda_text), reversed);
            r.set("q", std::to_string(result.q));
            r.set("gamma", to_string(result.gamma));
            r.set("potts", to_string(result.potts));
            r.set("enumerator", to_string(result.enumerator));
            r.set("prefactor", to_string(result.prefactor));
            r.verdict(result.pass);
        };
    });

    auto * bqcol = verify->add_subcommand("bqcol", "Proper colourings of the 2-stretch against the Potts model");
    bqcol->add_option("-q", q, "Number of colours (> 2)")->required();
    graph_arg(bqcol);
    bqcol->callback([&] {
        action = [&](Report & r) {
            auto g = parse_graph(load(r, graph_path));
            auto red = reduce_potts_to_bqcol(g, q);
            Integer colourings = count_proper_colourings(red.stretch.graph, q);
            Rational potts_value = potts_graph(g, {q, red.gamma});
            r.set("colourings", to_string(colourings));
            r.set("scale", to_string(red.scale));
            r.set("gamma", to_string(red.gamma));
            r.set("potts", to_string(potts_value));
            r.verdict(Rational(colourings) == red.scale * potts_value);
        };
    });

    verify->callback([&] {
        if (! action) {
            if (file_path.empty())
                throw CLI::RequiredError("verify needs a certificate file or a subcommand");
            action = [&](Report & r) { verify_loaded(r, load_certificate(load(r, file_path))); };
        }
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return 2;
    }

    Report report(command_echo(argc, argv));
    try {
        action(report);
    }
    catch (const UsageError & e) {
        std::cerr << "homred: " << e.what() << '\n';
        return 2;
    }
    catch (const Error & e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    if (raw) {
        std::cout << *raw;
        return 0;
    }
    report.print(std::cout, json, timing);
    return report.passed() ? 0 : 1;
}
