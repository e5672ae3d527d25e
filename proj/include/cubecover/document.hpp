#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cubecover/chain.hpp"
#include "cubecover/construct.hpp"
#include "cubecover/hypercube.hpp"
#include "cubecover/oracle.hpp"
#include "cubecover/verify.hpp"

namespace cubecover {

using Json = nlohmann::ordered_json;

struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// On-disk form of a generated structure: either a polygonal chain (with
/// optional construction metadata) or a star segment set.
struct ChainDocument {
    int k = 0;
    std::variant<PolyChain, SegmentSet> payload;

    bool is_chain() const { return std::holds_alternative<PolyChain>(payload); }
    const PolyChain& chain() const { return std::get<PolyChain>(payload); }
    const SegmentSet& star() const { return std::get<SegmentSet>(payload); }
};

inline ChainDocument make_document(PolyChain chain) {
    ChainDocument doc;
    doc.k = chain.k;
    doc.payload = std::move(chain);
    return doc;
}

inline ChainDocument make_document(SegmentSet star) {
    ChainDocument doc;
    doc.k = star.k;
    doc.payload = std::move(star);
    return doc;
}

namespace detail {

inline Json point_to_json(const PointQ& p) {
    Json arr = Json::array();
    for (const Rat& c : p.coords()) arr.push_back(c.str());
    return arr;
}

inline Json node_to_json(int k, NodeId n) { return point_to_json(node_point(k, n)); }

// Document rationals must already be canonical text.
inline Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw DocumentError("document: rational values must be strings");
    std::string text = j.get<std::string>();
    Rat r;
    try {
        r = Rat::parse(text);
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
    if (r.str() != text) throw DocumentError("document: non-canonical rational '" + text + "'");
    return r;
}

inline PointQ point_from_json(const Json& j, int k) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(k))
        throw DocumentError("document: coordinate list has wrong length");
    std::vector<Rat> coords;
    coords.reserve(k);
    for (const auto& c : j) coords.push_back(rat_from_json(c));
    return PointQ(std::move(coords));
}

// Reconstruct builder metadata from the declared parameters; dropped
// silently when the shape does not line up (e.g. a truncated vertex list),
// in which case verification simply runs in full mode.
inline std::optional<ConstructionMeta> rebuild_meta(const PolyChain& chain, ChainVariant variant,
                                                    const Rat& scale,
                                                    const std::vector<Rat>& heights) {
    try {
        PolyChain rebuilt = variant == ChainVariant::shared_apex
                                ? build_shared_apex_cycle(chain.k, scale)
                                : build_perfect_cycle(chain.k, heights);
        if (rebuilt.vertices.size() != chain.vertices.size()) return std::nullopt;
        return rebuilt.meta;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline Json to_json(const ChainDocument& doc) {
    Json j;
    j["format_version"] = 1;
    j["k"] = doc.k;
    if (doc.is_chain()) {
        const PolyChain& chain = doc.chain();
        j["closed"] = chain.closed;
        if (chain.meta) {
            if (chain.meta->variant == ChainVariant::shared_apex) {
                j["variant"] = "shared-apex";
                j["scale"] = chain.meta->scale.str();
            } else {
                j["variant"] = "perfect";
                Json hs = Json::array();
                for (const Rat& h : chain.meta->heights) hs.push_back(h.str());
                j["heights"] = hs;
            }
        }
        Json verts = Json::array();
        for (const PointQ& v : chain.vertices) verts.push_back(detail::point_to_json(v));
        j["vertices"] = verts;
    } else {
        j["variant"] = "star";
        Json segs = Json::array();
        for (const SegmentQ& s : doc.star().segments)
            segs.push_back(Json::array({detail::point_to_json(s.a), detail::point_to_json(s.b)}));
        j["segments"] = segs;
    }
    return j;
}

inline ChainDocument document_from_json(const Json& j) {
    if (!j.is_object()) throw DocumentError("document: expected a JSON object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != 1)
        throw DocumentError("document: unsupported format_version");
    if (!j.contains("k") || !j["k"].is_number_integer())
        throw DocumentError("document: missing dimension");
    int k = j["k"].get<int>();
    if (k < 2 || k > 26) throw DocumentError("document: dimension out of range");

    std::string variant = j.contains("variant") ? j["variant"].get<std::string>() : "";
    if (variant == "star") {
        if (!j.contains("segments") || !j["segments"].is_array())
            throw DocumentError("document: star variant needs a segments array");
        SegmentSet set;
        set.k = k;
        for (const auto& seg : j["segments"]) {
            if (!seg.is_array() || seg.size() != 2)
                throw DocumentError("document: segment needs two endpoints");
            PointQ a = detail::point_from_json(seg[0], k);
            PointQ b = detail::point_from_json(seg[1], k);
            if (a == b) throw DocumentError("document: degenerate segment");
            set.segments.emplace_back(std::move(a), std::move(b));
        }
        if (set.segments.empty()) throw DocumentError("document: star without segments");
        return make_document(std::move(set));
    }

    if (!j.contains("closed") || !j["closed"].is_boolean())
        throw DocumentError("document: missing closed flag");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw DocumentError("document: missing vertices");
    PolyChain chain;
    chain.k = k;
    chain.closed = j["closed"].get<bool>();
    for (const auto& v : j["vertices"]) chain.vertices.push_back(detail::point_from_json(v, k));
    try {
        validate_chain(chain);
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }

    if (variant == "shared-apex") {
        if (!j.contains("scale")) throw DocumentError("document: shared-apex needs a scale");
        Rat scale = detail::rat_from_json(j["scale"]);
        if (auto meta = detail::rebuild_meta(chain, ChainVariant::shared_apex, scale, {}))
            chain.meta = std::move(meta);
        else {
            ConstructionMeta bare;
            bare.variant = ChainVariant::shared_apex;
            bare.scale = scale;
            chain.meta = std::move(bare);  // keeps the declaration, no triangles
        }
    } else if (variant == "perfect") {
        if (!j.contains("heights") || !j["heights"].is_array())
            throw DocumentError("document: perfect needs heights");
        std::vector<Rat> heights;
        for (const auto& h : j["heights"]) heights.push_back(detail::rat_from_json(h));
        if (auto meta = detail::rebuild_meta(chain, ChainVariant::perfect, Rat(), heights))
            chain.meta = std::move(meta);
        else {
            ConstructionMeta bare;
            bare.variant = ChainVariant::perfect;
            bare.heights = std::move(heights);
            chain.meta = std::move(bare);
        }
    } else if (!variant.empty()) {
        throw DocumentError("document: unknown variant '" + variant + "'");
    }
    return make_document(std::move(chain));
}

inline std::string serialize_document(const ChainDocument& doc) {
    return to_json(doc).dump(2) + "\n";
}

inline ChainDocument parse_document(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DocumentError("document: invalid JSON");
    return document_from_json(j);
}

/// Deterministic report document; summary fields plus every irregularity
/// spelled out (multiplicity histogram, nodes on several links, chain
/// vertices used by more than two links).
inline Json report_to_json(const VerificationReport& rep, VerifyMode mode) {
    Json j;
    j["format_version"] = 1;
    j["type"] = "verification";
    j["k"] = rep.k;
    j["mode"] = mode == VerifyMode::full ? "full" : "fast";
    j["link_length"] = rep.link_length;
    j["covered"] = rep.covered;
    Json unc = Json::array();
    for (NodeId n : rep.uncovered) unc.push_back(detail::node_to_json(rep.k, n));
    j["uncovered"] = unc;
    j["classification"] = to_string(rep.classification);
    j["optimal"] = rep.optimal;

    std::map<std::uint32_t, std::uint64_t> histogram;
    for (std::uint32_t m : rep.node_link_multiplicity) ++histogram[m];
    Json hist = Json::array();
    for (const auto& [mult, count] : histogram) hist.push_back(Json::array({mult, count}));
    j["node_multiplicity_histogram"] = hist;

    Json multi = Json::array();
    for (std::size_t id = 0; id < rep.node_link_multiplicity.size(); ++id)
        if (rep.node_link_multiplicity[id] > 1)
            multi.push_back(detail::node_to_json(rep.k, NodeId{std::uint32_t(id)}));
    j["nodes_on_multiple_links"] = multi;

    j["max_vertex_link_multiplicity"] = rep.max_vertex_links();
    Json revisited = Json::array();
    for (const auto& [v, count] : rep.vertex_link_multiplicity)
        if (count > 2) revisited.push_back(Json::array({detail::point_to_json(v), count}));
    j["revisited_vertices"] = revisited;
    return j;
}

inline Json oracle_to_json(const OracleOutcome& out, int k, const std::string& mode,
                           std::optional<std::uint64_t> seed = std::nullopt,
                           std::optional<Rat> box = std::nullopt) {
    Json j;
    j["format_version"] = 1;
    j["type"] = "oracle";
    j["k"] = k;
    j["mode"] = mode;
    j["holds"] = out.holds;
    if (out.samples) {
        j["samples"] = *out.samples;
        if (seed) j["seed"] = *seed;
        if (box) j["box"] = box->str();
        j["max_nodes_observed"] = *out.max_nodes_observed;
    } else {
        j["assignments"] = out.stats.assignments;
        j["feasibility_calls"] = out.stats.feasibility_calls;
    }
    Json ces = Json::array();
    for (const Counterexample& ce : out.counterexamples) {
        Json c;
        Json nodes = Json::array();
        for (NodeId n : ce.assignment.nodes) nodes.push_back(detail::node_to_json(k, n));
        Json groups = Json::array();
        for (const auto& g : ce.assignment.groups) {
            Json group = Json::array();
            for (NodeId n : g) group.push_back(detail::node_to_json(k, n));
            groups.push_back(group);
        }
        if (!ce.assignment.groups[0].empty() || !ce.assignment.groups[1].empty()) {
            c["nodes"] = nodes;
            c["pattern"] = ce.assignment.pattern;
            c["groups"] = groups;
        }
        Json w = Json::array();
        for (const PointQ& v : ce.witness) w.push_back(detail::point_to_json(v));
        c["witness_vertices"] = w;
        c["replay_covered"] = ce.replay_covered;
        ces.push_back(c);
    }
    j["counterexamples"] = ces;
    return j;
}

}  // namespace cubecover
