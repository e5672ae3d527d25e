#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "cubecover/chain.hpp"
#include "cubecover/construct.hpp"
#include "cubecover/feasibility.hpp"
#include "cubecover/hypercube.hpp"
#include "cubecover/linear.hpp"
#include "cubecover/verify.hpp"

namespace cubecover {

struct LimitSearchOptions {
    // Test hook: accept any line crossing in the adjacent-pairs case, ignoring
    // the requirement that the shared vertex sits outside both open node
    // intervals. Turns the search deliberately unsound to prove it is not
    // vacuous.
    bool allow_interior_crossing = false;
    unsigned threads = 0;  // 0: one worker per hardware thread
    std::size_t max_counterexamples = 16;
};

/// One way of routing three links through five distinct nodes: group sizes
/// per link (the pattern) and the node groups themselves.
struct Assignment {
    std::array<NodeId, 5> nodes{};
    std::array<int, 3> pattern{};
    std::array<std::vector<NodeId>, 3> groups;
};

struct Counterexample {
    Assignment assignment;
    std::vector<PointQ> witness;  // four chain vertices
    std::uint64_t replay_covered = 0;
};

struct OracleStats {
    std::uint64_t assignments = 0;
    std::uint64_t feasibility_calls = 0;
    double wall_seconds = 0.0;
};

struct OracleOutcome {
    bool holds = true;
    std::vector<Counterexample> counterexamples;
    OracleStats stats;
    std::optional<std::uint64_t> samples;             // sampler runs
    std::optional<std::uint64_t> max_nodes_observed;  // sampler runs
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
    return out;
}

// Lexicographic unranking of an ascending 5-combination of {0..n-1}.
inline std::array<std::uint32_t, 5> unrank_combination(std::uint64_t rank, std::uint32_t n) {
    std::array<std::uint32_t, 5> combo{};
    std::uint32_t c = 0;
    for (int i = 0; i < 5; ++i) {
        while (true) {
            std::uint64_t block = binomial(n - 1 - c, 4 - i);
            if (block > rank) break;
            rank -= block;
            ++c;
        }
        combo[i] = c++;
    }
    return combo;
}

inline bool next_combination(std::array<std::uint32_t, 5>& combo, std::uint32_t n) {
    for (int i = 4; i >= 0; --i) {
        if (combo[i] < n - (5 - i)) {
            ++combo[i];
            for (int j = i + 1; j < 5; ++j) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Exact ray membership: p = origin + t*dir with t >= 0.
inline std::optional<Rat> on_ray(const PointQ& p, const PointQ& origin, const VecQ& dir) {
    auto t = line_parameter(p, origin, dir);
    if (t && t->sign() >= 0) return t;
    return std::nullopt;
}

// A 2-node group fixes its link's supporting line; the free endpoint of that
// link must sit at parameter <= 0 or >= 1 of the node parameterization.
inline bool outside_open_unit(const Rat& t) { return t <= Rat(0) || t >= Rat(1); }

struct PairLines {
    const PointQ* first;
    const PointQ* second;
};

// Adjacent 2-node groups: both links' lines are fixed and share the joint
// Steiner point, so the assignment is feasible exactly when the lines meet at
// a point lying outside both open node intervals (the lone third node is then
// always reachable from the remaining free endpoints).
inline bool adjacent_pairs_feasible(const PairLines& a, const PairLines& b,
                                    const LimitSearchOptions& opt, LineIntersection& inter) {
    LineQ la(*a.first, *a.second - *a.first);
    LineQ lb(*b.first, *b.second - *b.first);
    inter = line_intersection(la, lb);
    if (inter.kind == LineIntersection::Kind::identical)
        throw std::logic_error("oracle: four collinear nodes cannot happen");
    if (inter.kind != LineIntersection::Kind::point) return false;
    if (opt.allow_interior_crossing) return true;
    return outside_open_unit(inter.t1) && outside_open_unit(inter.t2);
}

// Middle-node case: S2 ranges over the closed ray from A along u, S3 over the
// closed ray from B along v. The middle node m lies on some segment S2-S3
// exactly when m is on one of the rays itself or when the mixed system
// m = alpha*A + (1-alpha)*B + p*u + q*v (alpha in [0,1], p,q >= 0) admits a
// solution with alpha strictly inside (0,1); the strictness is decided from
// the exact alpha-interval of the system's Fourier-Motzkin projection.
struct RayJoinResult {
    bool feasible = false;
    // Witness when feasible: either a ray parameter or a mixed solution.
    std::optional<Rat> ray_a_t;
    std::optional<Rat> ray_b_t;
    std::optional<std::array<Rat, 3>> mixed;  // alpha, p' = alpha*p, q' = (1-alpha)*q
};

inline RayJoinResult point_in_ray_join(const PointQ& m, const PointQ& a_origin, const VecQ& u,
                                       const PointQ& b_origin, const VecQ& v,
                                       std::uint64_t& feasibility_calls) {
    RayJoinResult res;
    if (auto t = on_ray(m, a_origin, u)) {
        res.feasible = true;
        res.ray_a_t = *t;
        return res;
    }
    if (auto t = on_ray(m, b_origin, v)) {
        res.feasible = true;
        res.ray_b_t = *t;
        return res;
    }

    std::size_t k = m.dim();
    AffineFeasibility f;
    f.lower = {Rat(0), Rat(0), Rat(0)};
    f.upper = {Rat(1), std::nullopt, std::nullopt};
    f.eq_coeffs.reserve(k);
    f.eq_rhs.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        f.eq_coeffs.push_back({a_origin[i] - b_origin[i], u[i], v[i]});
        f.eq_rhs.push_back(m[i] - b_origin[i]);
    }
    ++feasibility_calls;
    auto interval = project_interval(f, 0);
    if (!interval) return res;
    Rat lo = interval->lo.value_or(Rat(0));
    Rat hi = interval->hi.value_or(Rat(1));
    if (!(hi > Rat(0) && lo < Rat(1))) return res;

    // Pick an alpha strictly inside (0,1) and solve for the translations.
    Rat alpha = (std::max(lo, Rat(0)) + std::min(hi, Rat(1))) / Rat(2);
    f.eq_coeffs.push_back({Rat(1), Rat(0), Rat(0)});
    f.eq_rhs.push_back(alpha);
    ++feasibility_calls;
    auto witness = solve_feasibility(f);
    if (!witness) throw std::logic_error("oracle: alpha interval lied about feasibility");
    res.feasible = true;
    res.mixed = std::array<Rat, 3>{(*witness)[0], (*witness)[1], (*witness)[2]};
    return res;
}

struct GroupGeometry {
    // 2-node groups store inner/outer per side choice; built on demand.
    PointQ points[2];
};

// Chain vertices realizing a feasible adjacent-pairs assignment. `reversed`
// flips the result for the mirror pattern (1,2,2).
inline std::vector<PointQ> adjacent_pairs_witness(const PointQ& a1, const PointQ& a2,
                                                  const PointQ& b1, const PointQ& b2,
                                                  const PointQ& lone,
                                                  const LineIntersection& inter, bool reversed) {
    const PointQ& x = inter.point;
    // Free endpoint of the first link, on the far side of its nodes from x.
    PointQ s1 = inter.t1 >= Rat(1) ? a1 + (a1 - a2) : a2 + (a2 - a1);
    // Shared endpoint of links two and three, on the far side of b1,b2 from x.
    PointQ s3 = inter.t2 <= Rat(0) ? b2 + (b2 - b1) : b1 + (b1 - b2);
    PointQ s4 = lone + (lone - s3);
    if (s4 == s3) s4 = s3 + (b2 - b1);
    std::vector<PointQ> w = {s1, x, s3, s4};
    if (reversed) std::reverse(w.begin(), w.end());
    return w;
}

inline std::vector<PointQ> middle_node_witness(const PointQ& m, const PointQ& a_inner,
                                               const PointQ& a_outer, const PointQ& b_inner,
                                               const PointQ& b_outer, const RayJoinResult& join) {
    VecQ u = a_outer - a_inner;
    VecQ v = b_outer - b_inner;
    PointQ s1 = a_inner - u;
    PointQ s4 = b_inner - v;
    PointQ s2 = a_outer;
    PointQ s3 = b_outer;
    if (join.ray_a_t) {
        s2 = m;
        s3 = b_outer + v;
        if (s3 == s2) s3 = b_outer + Rat(2) * v;
    } else if (join.ray_b_t) {
        s3 = m;
        s2 = a_outer + u;
        if (s2 == s3) s2 = a_outer + Rat(2) * u;
    } else {
        const auto& [alpha, p_scaled, q_scaled] = *join.mixed;
        s2 = a_outer + (p_scaled / alpha) * u;
        s3 = b_outer + (q_scaled / (Rat(1) - alpha)) * v;
    }
    return {s1, s2, s3, s4};
}

struct ChunkResult {
    std::uint64_t assignments = 0;
    std::uint64_t feasibility_calls = 0;
    std::vector<Counterexample> counterexamples;
};

// Runs all 90 assignments of one 5-subset through the exact case analysis.
inline void process_subset(int k, const std::array<std::uint32_t, 5>& combo,
                           const LimitSearchOptions& opt, ChunkResult& out) {
    std::array<PointQ, 5> pts;
    for (int i = 0; i < 5; ++i) pts[i] = node_point(k, NodeId{combo[i]});

    auto record = [&](Assignment asg, std::vector<PointQ> witness) {
        PolyChain chain;
        chain.k = k;
        chain.vertices = std::move(witness);
        std::uint64_t replayed = count_nodes_on_chain(chain, k);
        if (!opt.allow_interior_crossing && replayed < 5)
            throw std::logic_error("oracle: claimed counterexample failed exact replay");
        if (out.counterexamples.size() < opt.max_counterexamples)
            out.counterexamples.push_back({std::move(asg), std::move(chain.vertices), replayed});
    };

    for (int lone = 0; lone < 5; ++lone) {
        int rest[4], r = 0;
        for (int i = 0; i < 5; ++i)
            if (i != lone) rest[r++] = i;
        // The three pairings of the remaining four nodes, each in both
        // slot orders.
        const int pairings[3][4] = {{rest[0], rest[1], rest[2], rest[3]},
                                    {rest[0], rest[2], rest[1], rest[3]},
                                    {rest[0], rest[3], rest[1], rest[2]}};
        for (const auto& pairing : pairings) {
            for (int order = 0; order < 2; ++order) {
                int x1 = pairing[order ? 2 : 0], x2 = pairing[order ? 3 : 1];
                int y1 = pairing[order ? 0 : 2], y2 = pairing[order ? 1 : 3];

                auto make_assignment = [&](std::array<int, 3> pattern,
                                           std::array<std::vector<NodeId>, 3> groups) {
                    Assignment a;
                    for (int i = 0; i < 5; ++i) a.nodes[i] = NodeId{combo[i]};
                    a.pattern = pattern;
                    a.groups = std::move(groups);
                    return a;
                };
                NodeId nx1{combo[x1]}, nx2{combo[x2]}, ny1{combo[y1]}, ny2{combo[y2]},
                    nl{combo[lone]};

                // Pattern (2,2,1): links one and two carry the pairs.
                ++out.assignments;
                {
                    LineIntersection inter;
                    PairLines pa{&pts[x1], &pts[x2]}, pb{&pts[y1], &pts[y2]};
                    if (adjacent_pairs_feasible(pa, pb, opt, inter))
                        record(make_assignment({2, 2, 1}, {{{nx1, nx2}, {ny1, ny2}, {nl}}}),
                               adjacent_pairs_witness(pts[x1], pts[x2], pts[y1], pts[y2],
                                                      pts[lone], inter, false));
                }

                // Pattern (1,2,2): same test, mirrored chain.
                ++out.assignments;
                {
                    LineIntersection inter;
                    PairLines pa{&pts[y1], &pts[y2]}, pb{&pts[x1], &pts[x2]};
                    if (adjacent_pairs_feasible(pa, pb, opt, inter))
                        record(make_assignment({1, 2, 2}, {{{nl}, {nx1, nx2}, {ny1, ny2}}}),
                               adjacent_pairs_witness(pts[y1], pts[y2], pts[x1], pts[x2],
                                                      pts[lone], inter, true));
                }

                // Pattern (2,1,2): the lone node must meet the join of a
                // closed ray of each fixed line; four outer-end choices.
                ++out.assignments;
                for (int side_a = 0; side_a < 2; ++side_a) {
                    const PointQ& a_inner = side_a ? pts[x2] : pts[x1];
                    const PointQ& a_outer = side_a ? pts[x1] : pts[x2];
                    VecQ u = a_outer - a_inner;
                    bool done = false;
                    for (int side_b = 0; side_b < 2 && !done; ++side_b) {
                        const PointQ& b_inner = side_b ? pts[y2] : pts[y1];
                        const PointQ& b_outer = side_b ? pts[y1] : pts[y2];
                        VecQ v = b_outer - b_inner;
                        auto join = point_in_ray_join(pts[lone], a_outer, u, b_outer, v,
                                                      out.feasibility_calls);
                        if (join.feasible) {
                            record(make_assignment({2, 1, 2}, {{{nx1, nx2}, {nl}, {ny1, ny2}}}),
                                   middle_node_witness(pts[lone], a_inner, a_outer, b_inner,
                                                       b_outer, join));
                            done = true;
                        }
                    }
                    if (done) break;
                }
            }
        }
    }
}

inline ChunkResult scan_subsets(int k, std::uint64_t rank_begin, std::uint64_t rank_end,
                                const LimitSearchOptions& opt) {
    ChunkResult out;
    std::uint32_t n = std::uint32_t(node_count(k));
    if (rank_begin >= rank_end) return out;
    auto combo = unrank_combination(rank_begin, n);
    for (std::uint64_t rank = rank_begin; rank < rank_end; ++rank) {
        process_subset(k, combo, opt, out);
        next_combination(combo, n);
    }
    return out;
}

}  // namespace detail

/// Decides a single five-node subset with the same machinery as the
/// exhaustive search; true when some 3-link assignment is realizable.
inline bool five_nodes_realizable(int k, const std::array<NodeId, 5>& nodes,
                                  const LimitSearchOptions& opt = {}) {
    std::array<std::uint32_t, 5> combo{};
    for (int i = 0; i < 5; ++i) combo[i] = nodes[i].bits;
    detail::ChunkResult r;
    detail::process_subset(k, combo, opt, r);
    return !r.counterexamples.empty();
}

/// Exhaustive machine check that no 3-link chain meets five distinct nodes of
/// H(2,k). Enumerates every 5-subset and every group assignment (90 per
/// subset) and decides each exactly; `holds` iff none is realizable.
inline OracleOutcome four_node_limit_exhaustive(int k, const LimitSearchOptions& opt = {}) {
    if (k < 3 || k > 5)
        throw CostError("exhaustive oracle supports 3 <= k <= 5 (cost grows as C(2^k,5)*90)");
    // Completeness premise: every link carries at most two nodes.
    if (!no_three_collinear(k)) throw std::logic_error("oracle: collinear nodes found");

    auto start = std::chrono::steady_clock::now();
    std::uint64_t total = detail::binomial(node_count(k), 5);
    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t chunk_count = std::min<std::uint64_t>(total, 64);

    std::vector<detail::ChunkResult> results(chunk_count);
    auto run_chunk = [&](std::uint64_t c) {
        std::uint64_t begin = total * c / chunk_count;
        std::uint64_t end = total * (c + 1) / chunk_count;
        results[c] = detail::scan_subsets(k, begin, end, opt);
    };
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::future<void>> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.push_back(std::async(std::launch::async, [&] {
                for (std::uint64_t c = next++; c < chunk_count; c = next++) run_chunk(c);
            }));
        for (auto& f : pool) f.get();
    }

    OracleOutcome out;
    for (const auto& r : results) {
        out.stats.assignments += r.assignments;
        out.stats.feasibility_calls += r.feasibility_calls;
        for (const auto& ce : r.counterexamples)
            if (out.counterexamples.size() < opt.max_counterexamples)
                out.counterexamples.push_back(ce);
    }
    out.holds = out.counterexamples.empty();
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// Randomized smoke test: seeded sampling of 3-link chains with small
/// rational coordinates, counting nodes met. Deterministic for a given
/// (k, samples, seed, box).
inline OracleOutcome four_node_limit_sample(int k, std::uint64_t samples, std::uint64_t seed,
                                   const Rat& box = Rat(3)) {
    detail::require_dimension(k);
    if (samples < 1) throw std::invalid_argument("sampler: need at least one sample");
    if (box.sign() <= 0) throw std::invalid_argument("sampler: box bound must be positive");

    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return rng() % bound; };  // bound <= a few hundred

    OracleOutcome out;
    out.samples = samples;
    std::uint64_t max_seen = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        PolyChain chain;
        chain.k = k;
        chain.vertices.reserve(4);
        for (int vtx = 0; vtx < 4; ++vtx) {
            while (true) {
                std::vector<Rat> coords(k);
                for (int i = 0; i < k; ++i) {
                    BigInt den = BigInt(1 + draw(64));
                    BigInt span = (box.num() * den) / box.den();  // floor(box * den)
                    std::uint64_t width = span.convert_to<std::uint64_t>();
                    BigInt numer = BigInt(draw(2 * width + 1)) - BigInt(width);
                    coords[i] = Rat(std::move(numer), std::move(den));
                }
                PointQ p{std::move(coords)};
                if (chain.vertices.empty() || chain.vertices.back() != p) {
                    chain.vertices.push_back(std::move(p));
                    break;
                }
            }
        }
        std::uint64_t covered = count_nodes_on_chain(chain, k);
        max_seen = std::max(max_seen, covered);
        if (covered >= 5 && out.counterexamples.size() < 16) {
            Counterexample ce;
            ce.witness = chain.vertices;
            ce.replay_covered = covered;
            out.counterexamples.push_back(std::move(ce));
        }
        ++out.stats.assignments;
    }
    out.max_nodes_observed = max_seen;
    out.holds = max_seen <= 4;
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// One triangle of the shared-apex construction: a 3-link closed chain that
/// meets exactly four nodes, showing the bound of four is tight.
inline PolyChain four_node_witness(int k) {
    PolyChain cycle = build_shared_apex_cycle(k, Rat(3));
    PolyChain tri;
    tri.k = k;
    tri.closed = true;
    tri.vertices.assign(cycle.vertices.begin(), cycle.vertices.begin() + 4);
    ConstructionMeta meta;
    meta.variant = ChainVariant::shared_apex;
    meta.scale = Rat(3);
    meta.triangles = {cycle.meta->triangles.front()};
    tri.meta = std::move(meta);
    return tri;
}

}  // namespace cubecover
