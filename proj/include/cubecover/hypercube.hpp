#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubecover/linear.hpp"
#include "cubecover/rational.hpp"

namespace cubecover {

/// Raised when an exhaustive operation would be too expensive for the
/// requested dimension.
struct CostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One of the 2^k cube nodes; bit i holds coordinate i (0-indexed).
struct NodeId {
    std::uint32_t bits = 0;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

namespace detail {
inline void require_dimension(int k) {
    if (k < 2) throw std::invalid_argument("dimension must be at least 2");
    if (k > 26) throw std::invalid_argument("dimension too large");
}
}  // namespace detail

inline std::uint64_t node_count(int k) {
    detail::require_dimension(k);
    return std::uint64_t(1) << k;
}

inline std::uint32_t plane_count(int k) {
    detail::require_dimension(k);
    return std::uint32_t(1) << (k - 2);
}

inline PointQ node_point(int k, NodeId n) {
    detail::require_dimension(k);
    std::vector<Rat> c(k);
    for (int i = 0; i < k; ++i) c[i] = Rat((n.bits >> i) & 1u);
    return PointQ(std::move(c));
}

inline std::optional<NodeId> point_to_node(int k, const PointQ& p) {
    if (p.dim() != static_cast<std::size_t>(k)) return std::nullopt;
    NodeId n;
    for (int i = 0; i < k; ++i) {
        if (p[i] == Rat(1))
            n.bits |= std::uint32_t(1) << i;
        else if (p[i] != Rat(0))
            return std::nullopt;
    }
    return n;
}

/// Center of the base layer: (1/2, ..., 1/2, 0). Anchor of the plane sheaf.
inline PointQ plane_center(int k) {
    detail::require_dimension(k);
    std::vector<Rat> c(k, Rat(1, 2));
    c[k - 1] = Rat(0);
    return PointQ(std::move(c));
}

/// True center of the cube: (1/2, ..., 1/2).
inline PointQ cube_center(int k) {
    detail::require_dimension(k);
    return PointQ(std::vector<Rat>(k, Rat(1, 2)));
}

/// Last canonical basis vector; the sheaf's common line runs along it.
inline VecQ axis_vector(int k) {
    detail::require_dimension(k);
    std::vector<Rat> c(k, Rat(0));
    c[k - 1] = Rat(1);
    return VecQ(std::move(c));
}

/// Per-plane direction: first component -1/2, last 0, middle components
/// +-1/2 decoded from l in big-endian binary (coordinate 2 is the most
/// significant bit; bit 1 maps to +1/2).
inline VecQ direction_vector(int k, std::uint32_t l) {
    detail::require_dimension(k);
    if (l >= plane_count(k)) throw std::invalid_argument("plane index out of range");
    std::vector<Rat> c(k);
    c[0] = Rat(-1, 2);
    c[k - 1] = Rat(0);
    for (int j = 1; j <= k - 2; ++j) {
        bool hi = (l >> (k - 2 - j)) & 1u;
        c[j] = hi ? Rat(1, 2) : Rat(-1, 2);
    }
    return VecQ(std::move(c));
}

/// The four nodes of plane l, in the order produced by the parameter pairs
/// (t,u) = (1,1), (0,1), (0,-1), (1,-1) applied to C + t*axis + u*s_l.
struct PlaneQuadruple {
    std::array<NodeId, 4> nodes;
};

inline PlaneQuadruple plane_nodes(int k, std::uint32_t l) {
    VecQ s = direction_vector(k, l);
    PointQ c = plane_center(k);
    VecQ axis = axis_vector(k);
    const std::array<std::pair<int, int>, 4> tu = {{{1, 1}, {0, 1}, {0, -1}, {1, -1}}};
    PlaneQuadruple q;
    for (std::size_t i = 0; i < 4; ++i) {
        PointQ p = c + Rat(tu[i].first) * axis + Rat(tu[i].second) * s;
        auto n = point_to_node(k, p);
        if (!n) throw std::logic_error("plane node landed off the cube");
        q.nodes[i] = *n;
    }
    return q;
}

/// Inverse of plane_nodes: the unique (plane, position) holding the node.
/// Positions are 1-based to match the quadruple order.
inline std::pair<std::uint32_t, int> plane_of_node(int k, NodeId n) {
    detail::require_dimension(k);
    if (n.bits >= node_count(k)) throw std::invalid_argument("node out of range");
    bool u_pos = ((n.bits >> 0) & 1u) == 0;  // first coordinate 0 <=> u = +1
    bool t_one = ((n.bits >> (k - 1)) & 1u) == 1;
    int position = u_pos ? (t_one ? 1 : 2) : (t_one ? 4 : 3);
    std::uint32_t l = 0;
    for (int j = 1; j <= k - 2; ++j) {
        bool coord = (n.bits >> j) & 1u;
        bool hi = u_pos ? coord : !coord;  // sign of s_l on this coordinate
        if (hi) l |= std::uint32_t(1) << (k - 2 - j);
    }
    return {l, position};
}

/// Squared side lengths of each plane's node rectangle: (|V1-V2|^2, |V2-V3|^2).
inline std::pair<Rat, Rat> rectangle_side_squares(int k) {
    detail::require_dimension(k);
    return {Rat(1), Rat(k - 1)};
}

/// Exhaustive check that no three distinct nodes are collinear. O(2^{3k}),
/// refused above k = 6.
inline bool no_three_collinear(int k) {
    detail::require_dimension(k);
    if (k > 6) throw CostError("no_three_collinear: k > 6 would scan too many triples");
    std::uint32_t n = std::uint32_t(node_count(k));
    for (std::uint32_t a = 0; a < n; ++a) {
        PointQ pa = node_point(k, NodeId{a});
        for (std::uint32_t b = a + 1; b < n; ++b) {
            VecQ ab = node_point(k, NodeId{b}) - pa;
            for (std::uint32_t c = b + 1; c < n; ++c) {
                VecQ ac = node_point(k, NodeId{c}) - pa;
                bool proportional = true;
                for (int i = 0; i < k && proportional; ++i)
                    for (int j = i + 1; j < k; ++j)
                        if (ab[i] * ac[j] != ab[j] * ac[i]) {
                            proportional = false;
                            break;
                        }
                if (proportional) return false;
            }
        }
    }
    return true;
}

}  // namespace cubecover
