#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubecover/chain.hpp"
#include "cubecover/hypercube.hpp"
#include "cubecover/linear.hpp"
#include "cubecover/rational.hpp"

namespace cubecover {

/// Covering cycle with one apex shared by all triangles. For scale p > 1 the
/// apex sits at C + (p/(p-1))*axis and triangle l runs apex -> C + p*s_l ->
/// C - p*s_l -> apex; the derived height is exactly what places each plane's
/// node quadruple on the three links.
inline PolyChain build_shared_apex_cycle(int k, const Rat& scale = Rat(3)) {
    detail::require_dimension(k);
    if (scale <= Rat(1)) throw std::invalid_argument("shared-apex cycle: scale must exceed 1");
    Rat height = scale / (scale - Rat(1));
    PointQ c = plane_center(k);
    PointQ apex = c + height * axis_vector(k);
    std::uint32_t planes = plane_count(k);

    PolyChain chain;
    chain.k = k;
    chain.closed = true;
    chain.vertices.reserve(3 * static_cast<std::size_t>(planes) + 1);
    chain.vertices.push_back(apex);
    ConstructionMeta meta;
    meta.variant = ChainVariant::shared_apex;
    meta.scale = scale;
    for (std::uint32_t l = 0; l < planes; ++l) {
        VecQ s = direction_vector(k, l);
        chain.vertices.push_back(c + scale * s);
        chain.vertices.push_back(c - scale * s);
        chain.vertices.push_back(apex);
        meta.triangles.push_back({l, height, scale, scale});
    }
    chain.meta = std::move(meta);
    return chain;
}

/// Apex heights used when none are given: (l+2)/2 for l = 1..2^{k-2}.
inline std::vector<Rat> default_heights(int k) {
    detail::require_dimension(k);
    std::uint32_t planes = plane_count(k);
    std::vector<Rat> h;
    h.reserve(planes);
    for (std::uint32_t l = 1; l <= planes; ++l) h.push_back(Rat(BigInt(l) + 2, BigInt(2)));
    return h;
}

/// Covering cycle with all Steiner points distinct (closure pair aside).
/// Triangle l gets its own apex at height h_l; the outgoing scale is
/// p_l = h_l/(h_l - 1) and the incoming scale is the next triangle's p
/// (cyclically), which is exactly the condition for the returning link to
/// pick up its node on the way to the next apex.
inline PolyChain build_perfect_cycle(int k, const std::vector<Rat>& heights) {
    detail::require_dimension(k);
    std::uint32_t planes = plane_count(k);
    if (heights.size() != planes)
        throw std::invalid_argument("perfect cycle: need one height per plane");
    for (const Rat& h : heights)
        if (h <= Rat(1)) throw std::invalid_argument("perfect cycle: heights must exceed 1");
    std::vector<Rat> sorted = heights;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("perfect cycle: heights must be pairwise distinct");

    std::vector<Rat> outgoing;
    outgoing.reserve(planes);
    for (const Rat& h : heights) outgoing.push_back(h / (h - Rat(1)));

    PointQ c = plane_center(k);
    VecQ axis = axis_vector(k);
    PolyChain chain;
    chain.k = k;
    chain.closed = true;
    chain.vertices.reserve(3 * static_cast<std::size_t>(planes) + 1);
    ConstructionMeta meta;
    meta.variant = ChainVariant::perfect;
    meta.heights = heights;
    for (std::uint32_t l = 0; l < planes; ++l) {
        const Rat& q = outgoing[(l + 1) % planes];
        VecQ s = direction_vector(k, l);
        chain.vertices.push_back(c + heights[l] * axis);
        chain.vertices.push_back(c + outgoing[l] * s);
        chain.vertices.push_back(c - q * s);
        meta.triangles.push_back({l, heights[l], outgoing[l], q});
    }
    chain.vertices.push_back(chain.vertices.front());
    chain.meta = std::move(meta);
    return chain;
}

inline PolyChain build_perfect_cycle(int k) { return build_perfect_cycle(k, default_heights(k)); }

/// Star covering tree: one segment per pair of opposite nodes, all passing
/// through the cube center.
inline SegmentSet build_star_tree(int k) {
    detail::require_dimension(k);
    std::uint32_t mask = std::uint32_t(node_count(k)) - 1;
    SegmentSet set;
    set.k = k;
    for (std::uint32_t n = 0; n < node_count(k) / 2; ++n)
        set.segments.emplace_back(node_point(k, NodeId{n}), node_point(k, NodeId{n ^ mask}));
    return set;
}

/// Predicted (link, node, parameter) incidence of a built cycle.
struct Incidence {
    std::size_t link = 0;
    NodeId node;
    Rat t;
};

/// The incidences implied by the construction parameters, without any
/// geometric search: for triangle scales (p, q) the four nodes sit at 1/p on
/// apex->P, (p-1)/(p+q) and (p+1)/(p+q) on P->Q, and (q-1)/q on Q->apex.
inline std::vector<Incidence> incidence_table(const PolyChain& chain) {
    if (!chain.meta) throw std::invalid_argument("incidence table: chain has no construction metadata");
    std::vector<Incidence> out;
    out.reserve(4 * chain.meta->triangles.size());
    for (std::size_t i = 0; i < chain.meta->triangles.size(); ++i) {
        const TriangleParams& tri = chain.meta->triangles[i];
        PlaneQuadruple quad = plane_nodes(chain.k, tri.plane);
        const Rat& p = tri.outgoing;
        const Rat& q = tri.incoming;
        out.push_back({3 * i, quad.nodes[0], Rat(1) / p});
        out.push_back({3 * i + 1, quad.nodes[1], (p - Rat(1)) / (p + q)});
        out.push_back({3 * i + 1, quad.nodes[2], (p + Rat(1)) / (p + q)});
        out.push_back({3 * i + 2, quad.nodes[3], (q - Rat(1)) / q});
    }
    return out;
}

}  // namespace cubecover
