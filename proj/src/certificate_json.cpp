#include "homred/certificate_json.hpp"
#include "homred/error.hpp"

#include <json.hpp>

namespace homred {

namespace
{
    const std::string module = "certificate";

    using json = nlohmann::json;

    auto source_json(const ReductionSource & src) -> json
    {
        json out = json::object();
        if (src.cut)
            out["cut"] = {{"graph", write_graph(src.cut->graph)},
                {"terminals", {src.cut->terminals[0], src.cut->terminals[1], src.cut->terminals[2]}},
                {"b", src.cut->b},
                {"count", to_string(src.cut->count)}};
        if (src.graph)
            out["graph"] = write_graph(*src.graph);
        if (src.hypergraph)
            out["hypergraph"] = write_hypergraph(*src.hypergraph);
        if (src.target)
            out["target"] = write_graph(*src.target);
        if (! src.embedding.empty())
            out["embedding"] = src.embedding;
        if (src.q != 0)
            out["q"] = src.q;
        out["gamma"] = to_string(src.gamma);
        out["side"] = src.side == Side::Left ? "left" : "right";
        out["options"] = {{"s", src.options.s ? json(*src.options.s) : json(nullptr)},
            {"materialise", src.options.materialise}};
        return out;
    }

    auto instance_json(const ReductionCertificate & cert) -> json
    {
        json out = json::object();
        if (cert.graph)
            out["graph"] = write_graph(*cert.graph);
        if (cert.weights)
            out["weights"] = write_weights(*cert.weights);
        if (cert.hypergraph)
            out["hypergraph"] = write_hypergraph(*cert.hypergraph);
        return out;
    }

    auto constants_json(const ReductionCertificate & cert) -> json
    {
        json out = json::object();
        for (const auto & [name, value] : cert.constants)
            out[name] = to_string(value);
        return out;
    }

    auto parse_source(const json & j) -> ReductionSource
    {
        ReductionSource src;
        if (j.contains("cut")) {
            const auto & c = j.at("cut");
            CutInstance cut;
            cut.graph = parse_graph(c.at("graph").get<std::string>());
            auto t = c.at("terminals").get<std::vector<Vertex>>();
            if (t.size() != 3)
                throw ParseError(module, 0, "a cut needs three terminals");
            cut.terminals = {t[0], t[1], t[2]};
            cut.b = c.at("b").get<std::size_t>();
            cut.count = parse_integer(c.at("count").get<std::string>());
            src.cut = cut;
        }
        if (j.contains("graph"))
            src.graph = parse_graph(j.at("graph").get<std::string>());
        if (j.contains("hypergraph"))
            src.hypergraph = parse_hypergraph(j.at("hypergraph").get<std::string>());
        if (j.contains("target"))
            src.target = parse_graph(j.at("target").get<std::string>());
        if (j.contains("embedding"))
            src.embedding = j.at("embedding").get<J3Embedding>();
        src.q = j.value("q", 0UL);
        src.gamma = parse_rational(j.value("gamma", std::string("0")));
        auto side = j.value("side", std::string("left"));
        if (side != "left" && side != "right")
            throw ParseError(module, 0, "side must be 'left' or 'right'");
        src.side = side == "left" ? Side::Left : Side::Right;
        if (j.contains("options")) {
            const auto & o = j.at("options");
            if (o.contains("s") && ! o.at("s").is_null())
                src.options.s = o.at("s").get<unsigned long>();
            src.options.materialise = o.value("materialise", false);
        }
        return src;
    }
}

auto certificate_to_json(const ReductionCertificate & cert, bool include_counters) -> std::string
{
    json out;
    out["kind"] = to_string(cert.kind);
    out["source"] = source_json(cert.source);
    out["instance"] = instance_json(cert);
    out["constants"] = constants_json(cert);
    out["scale"] = to_string(cert.scale);
    out["slack"] = to_string(cert.slack);
    if (include_counters && ! cert.counters.empty()) {
        json counters = json::object();
        for (const auto & [name, value] : cert.counters)
            counters[name] = to_string(value);
        out["counters"] = counters;
    }
    return out.dump(2) + "\n";
}

auto load_certificate(std::string_view text) -> LoadedCertificate
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::parse_error & e) {
        throw ParseError(module, 0, e.what());
    }

    try {
        ReductionCertificate recorded;
        recorded.kind = parse_reduction_kind(j.at("kind").get<std::string>());
        recorded.source = parse_source(j.at("source"));

        LoadedCertificate loaded{rebuild_certificate(recorded), {}};
        const auto & cert = loaded.certificate;
        if (j.value("instance", json::object()) != instance_json(cert))
            loaded.mismatches.push_back("instance");
        if (j.value("constants", json::object()) != constants_json(cert))
            loaded.mismatches.push_back("constants");
        if (j.value("scale", std::string()) != to_string(cert.scale))
            loaded.mismatches.push_back("scale");
        if (j.value("slack", std::string()) != to_string(cert.slack))
            loaded.mismatches.push_back("slack");
        return loaded;
    }
    catch (const json::exception & e) {
        throw ParseError(module, 0, e.what());
    }
}

}
