#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubecover/linear.hpp"
#include "cubecover/rational.hpp"

namespace cubecover {

enum class ChainVariant { shared_apex, perfect };

/// Per-triangle construction parameters: apex height h, outgoing scale p
/// (vertex C + p*s), incoming scale q (vertex C - q*s).
struct TriangleParams {
    std::uint32_t plane = 0;
    Rat height;
    Rat outgoing;
    Rat incoming;
};

struct ConstructionMeta {
    ChainVariant variant = ChainVariant::shared_apex;
    Rat scale;                        // shared_apex
    std::vector<Rat> heights;         // perfect
    std::vector<TriangleParams> triangles;
};

/// Ordered vertex list; a closed chain stores the final vertex explicitly
/// equal to the first. Builders attach their construction metadata.
struct PolyChain {
    int k = 0;
    std::vector<PointQ> vertices;
    bool closed = false;
    std::optional<ConstructionMeta> meta;

    std::size_t link_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    SegmentQ link(std::size_t i) const { return SegmentQ(vertices[i], vertices[i + 1]); }
};

inline void validate_chain(const PolyChain& chain) {
    if (chain.k < 2) throw std::invalid_argument("chain: dimension must be at least 2");
    if (chain.vertices.size() < 2) throw std::invalid_argument("chain: needs at least one link");
    for (const PointQ& v : chain.vertices)
        if (v.dim() != static_cast<std::size_t>(chain.k))
            throw std::invalid_argument("chain: vertex dimension mismatch");
    for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i)
        if (chain.vertices[i] == chain.vertices[i + 1])
            throw std::invalid_argument("chain: consecutive vertices coincide");
    if (chain.closed && chain.vertices.front() != chain.vertices.back())
        throw std::invalid_argument("chain: closed flag requires first vertex == last");
}

/// Unordered collection of segments (the star covering tree lives here).
struct SegmentSet {
    int k = 0;
    std::vector<SegmentQ> segments;
};

}  // namespace cubecover
