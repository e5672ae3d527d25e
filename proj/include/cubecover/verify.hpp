#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubecover/chain.hpp"
#include "cubecover/construct.hpp"
#include "cubecover/hypercube.hpp"
#include "cubecover/linear.hpp"

namespace cubecover {

enum class Classification {
    not_covering,
    covering_trail,
    covering_path,
    covering_cycle,
    perfect_covering_cycle,
};

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::not_covering: return "not_covering";
        case Classification::covering_trail: return "covering_trail";
        case Classification::covering_path: return "covering_path";
        case Classification::covering_cycle: return "covering_cycle";
        case Classification::perfect_covering_cycle: return "perfect_covering_cycle";
    }
    return "?";
}

enum class VerifyMode { full, fast };

struct VerificationReport {
    int k = 0;
    std::size_t link_length = 0;
    std::uint64_t covered = 0;
    std::vector<NodeId> uncovered;
    std::vector<std::uint32_t> node_link_multiplicity;             // by node id
    std::vector<std::pair<PointQ, std::size_t>> vertex_link_multiplicity;  // distinct vertices
    Classification classification = Classification::not_covering;
    bool optimal = false;

    std::size_t max_vertex_links() const {
        std::size_t m = 0;
        for (const auto& [v, n] : vertex_link_multiplicity) m = std::max(m, n);
        return m;
    }
};

/// Minimum link-length of any chain covering all 2^k nodes: 3 * 2^(k-2).
inline std::uint64_t lower_bound(int k) {
    detail::require_dimension(k);
    return std::uint64_t(3) << (k - 2);
}

namespace detail {

// Precomputed link for repeated point tests.
struct PreLink {
    const PointQ* a;
    VecQ d;
    std::size_t pivot;
};

inline std::vector<PreLink> prepare_links(const PolyChain& chain) {
    std::vector<PreLink> links;
    links.reserve(chain.link_count());
    for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
        PreLink l;
        l.a = &chain.vertices[i];
        l.d = chain.vertices[i + 1] - chain.vertices[i];
        l.pivot = 0;
        while (l.pivot < l.d.dim() && l.d[l.pivot].is_zero()) ++l.pivot;
        if (l.pivot == l.d.dim()) throw std::invalid_argument("chain: degenerate link");
        links.push_back(std::move(l));
    }
    return links;
}

inline bool link_contains(const PreLink& l, const PointQ& p) {
    Rat t = (p[l.pivot] - (*l.a)[l.pivot]) / l.d[l.pivot];
    if (t.sign() < 0 || t > Rat(1)) return false;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i == l.pivot) continue;
        if (p[i] != (*l.a)[i] + t * l.d[i]) return false;
    }
    return true;
}

inline Classification classify(const PolyChain& chain, std::uint64_t covered, std::uint64_t total,
                               const std::vector<std::uint32_t>& node_mult,
                               std::size_t max_vertex_links) {
    if (covered != total) return Classification::not_covering;
    bool single = std::all_of(node_mult.begin(), node_mult.end(),
                              [](std::uint32_t m) { return m == 1; });
    if (!single) return Classification::covering_trail;
    if (!chain.closed) return Classification::covering_path;
    if (max_vertex_links > 2) return Classification::covering_cycle;
    return Classification::perfect_covering_cycle;
}

inline VerificationReport verify_full(const PolyChain& chain, int k) {
    VerificationReport rep;
    rep.k = k;
    rep.link_length = chain.link_count();
    std::uint64_t total = node_count(k);
    auto links = prepare_links(chain);

    rep.node_link_multiplicity.assign(total, 0);
    for (std::uint64_t id = 0; id < total; ++id) {
        PointQ p = node_point(k, NodeId{std::uint32_t(id)});
        std::uint32_t mult = 0;
        for (const auto& l : links)
            if (link_contains(l, p)) ++mult;
        rep.node_link_multiplicity[id] = mult;
        if (mult > 0)
            ++rep.covered;
        else
            rep.uncovered.push_back(NodeId{std::uint32_t(id)});
    }

    std::map<PointQ, std::size_t> vertex_mult;
    for (const PointQ& v : chain.vertices) vertex_mult.emplace(v, 0);
    for (auto& [v, count] : vertex_mult)
        for (const auto& l : links)
            if (link_contains(l, v)) ++count;
    rep.vertex_link_multiplicity.assign(vertex_mult.begin(), vertex_mult.end());

    rep.classification =
        classify(chain, rep.covered, total, rep.node_link_multiplicity, rep.max_vertex_links());
    rep.optimal = rep.covered == total && rep.link_length == lower_bound(k);
    return rep;
}

// Fast path for builder outputs: confirm the predicted incidences against the
// stored vertices and derive the rest from the plane partition and the vertex
// list. Returns nullopt when a prediction fails (caller falls back to full).
inline std::optional<VerificationReport> verify_fast(const PolyChain& chain, int k) {
    std::vector<Incidence> predicted = incidence_table(chain);
    std::uint64_t total = node_count(k);
    std::vector<std::uint32_t> seen(total, 0);
    for (const Incidence& inc : predicted) {
        if (inc.link + 1 >= chain.vertices.size()) return std::nullopt;
        if (inc.t.sign() < 0 || inc.t > Rat(1)) return std::nullopt;
        const PointQ& a = chain.vertices[inc.link];
        const PointQ& b = chain.vertices[inc.link + 1];
        PointQ expect = node_point(k, inc.node);
        for (std::size_t i = 0; i < expect.dim(); ++i)
            if (expect[i] != a[i] + inc.t * (b[i] - a[i])) return std::nullopt;
        if (inc.node.bits >= total) return std::nullopt;
        ++seen[inc.node.bits];
    }
    if (!std::all_of(seen.begin(), seen.end(), [](std::uint32_t s) { return s == 1; }))
        return std::nullopt;

    VerificationReport rep;
    rep.k = k;
    rep.link_length = chain.link_count();
    rep.covered = total;
    rep.node_link_multiplicity.assign(total, 1);

    // End vertices touch one link, interior occurrences two.
    std::map<PointQ, std::size_t> vertex_mult;
    for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
        std::size_t weight = (i == 0 || i + 1 == chain.vertices.size()) ? 1 : 2;
        vertex_mult[chain.vertices[i]] += weight;
    }
    rep.vertex_link_multiplicity.assign(vertex_mult.begin(), vertex_mult.end());

    rep.classification =
        classify(chain, rep.covered, total, rep.node_link_multiplicity, rep.max_vertex_links());
    rep.optimal = rep.link_length == lower_bound(k);
    return rep;
}

}  // namespace detail

/// Exact verification of an arbitrary chain against the node set of H(2,k).
/// Full mode tests every (node, link) pair; fast mode needs construction
/// metadata and falls back to full without it (or when any prediction fails).
inline VerificationReport verify_chain(const PolyChain& chain, int k,
                                       VerifyMode mode = VerifyMode::full) {
    detail::require_dimension(k);
    if (chain.k != k || chain.vertices.empty() ||
        chain.vertices.front().dim() != static_cast<std::size_t>(k))
        throw std::invalid_argument("verify: chain dimension mismatch");
    validate_chain(chain);
    if (mode == VerifyMode::fast && chain.meta) {
        if (auto rep = detail::verify_fast(chain, k)) return *rep;
    }
    return detail::verify_full(chain, k);
}

/// Number of distinct nodes of H(2,k) met by the chain's closed segments.
inline std::uint64_t count_nodes_on_chain(const PolyChain& chain, int k) {
    detail::require_dimension(k);
    if (chain.vertices.size() < 2) return 0;
    auto links = detail::prepare_links(chain);
    std::uint64_t covered = 0;
    for (std::uint64_t id = 0; id < node_count(k); ++id) {
        PointQ p = node_point(k, NodeId{std::uint32_t(id)});
        for (const auto& l : links) {
            if (detail::link_contains(l, p)) {
                ++covered;
                break;
            }
        }
    }
    return covered;
}

}  // namespace cubecover
