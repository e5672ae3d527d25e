#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubecover/rational.hpp"

namespace cubecover {

class VecQ;

/// Point of Q^k.
class PointQ {
public:
    PointQ() = default;
    explicit PointQ(std::vector<Rat> coords) : coords_(std::move(coords)) {}
    PointQ(std::initializer_list<Rat> coords) : coords_(coords) {}

    std::size_t dim() const { return coords_.size(); }
    const Rat& operator[](std::size_t i) const { return coords_[i]; }
    Rat& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rat>& coords() const { return coords_; }

    friend bool operator==(const PointQ& a, const PointQ& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const PointQ& a, const PointQ& b) { return !(a == b); }
    friend bool operator<(const PointQ& a, const PointQ& b) {
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                            b.coords_.begin(), b.coords_.end());
    }

private:
    std::vector<Rat> coords_;
};

/// Direction / displacement in Q^k.
class VecQ {
public:
    VecQ() = default;
    explicit VecQ(std::vector<Rat> comps) : comps_(std::move(comps)) {}
    VecQ(std::initializer_list<Rat> comps) : comps_(comps) {}

    std::size_t dim() const { return comps_.size(); }
    const Rat& operator[](std::size_t i) const { return comps_[i]; }
    Rat& operator[](std::size_t i) { return comps_[i]; }
    const std::vector<Rat>& comps() const { return comps_; }

    bool is_zero() const {
        for (const Rat& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const VecQ& a, const VecQ& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const VecQ& a, const VecQ& b) { return !(a == b); }

private:
    std::vector<Rat> comps_;
};

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace detail

inline VecQ operator-(const PointQ& a, const PointQ& b) {
    detail::require_same_dim(a.dim(), b.dim(), "point difference");
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return VecQ(std::move(c));
}

inline PointQ operator+(const PointQ& p, const VecQ& v) {
    detail::require_same_dim(p.dim(), v.dim(), "point + vector");
    std::vector<Rat> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) c[i] = p[i] + v[i];
    return PointQ(std::move(c));
}

inline PointQ operator-(const PointQ& p, const VecQ& v) {
    detail::require_same_dim(p.dim(), v.dim(), "point - vector");
    std::vector<Rat> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) c[i] = p[i] - v[i];
    return PointQ(std::move(c));
}

inline VecQ operator+(const VecQ& a, const VecQ& b) {
    detail::require_same_dim(a.dim(), b.dim(), "vector sum");
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return VecQ(std::move(c));
}

inline VecQ operator-(const VecQ& a, const VecQ& b) {
    detail::require_same_dim(a.dim(), b.dim(), "vector difference");
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return VecQ(std::move(c));
}

inline VecQ operator-(const VecQ& a) {
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = -a[i];
    return VecQ(std::move(c));
}

inline VecQ operator*(const Rat& s, const VecQ& v) {
    std::vector<Rat> c(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) c[i] = s * v[i];
    return VecQ(std::move(c));
}

inline Rat dot(const VecQ& a, const VecQ& b) {
    detail::require_same_dim(a.dim(), b.dim(), "dot product");
    Rat acc;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rat norm_sq(const VecQ& v) { return dot(v, v); }

/// Closed segment with distinct endpoints.
struct SegmentQ {
    SegmentQ(PointQ a_, PointQ b_) : a(std::move(a_)), b(std::move(b_)) {
        detail::require_same_dim(a.dim(), b.dim(), "segment");
        if (a == b) throw std::invalid_argument("segment: degenerate endpoints");
    }
    PointQ a;
    PointQ b;
};

/// Line through `origin` with direction `dir` (parameter 0 at origin, 1 at
/// origin + dir).
struct LineQ {
    LineQ(PointQ origin_, VecQ dir_) : origin(std::move(origin_)), dir(std::move(dir_)) {
        detail::require_same_dim(origin.dim(), dir.dim(), "line");
        if (dir.is_zero()) throw std::invalid_argument("line: zero direction");
    }
    PointQ origin;
    VecQ dir;
};

/// Exact parameter of p on the line through a segment, or nullopt if p is
/// off the supporting line. Does not range-check.
inline std::optional<Rat> line_parameter(const PointQ& p, const PointQ& a, const VecQ& d) {
    detail::require_same_dim(p.dim(), a.dim(), "line parameter");
    std::size_t pivot = 0;
    while (pivot < d.dim() && d[pivot].is_zero()) ++pivot;
    // d is nonzero by construction of all callers.
    Rat t = (p[pivot] - a[pivot]) / d[pivot];
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (p[i] != a[i] + t * d[i]) return std::nullopt;
    }
    return t;
}

/// Exact point-on-segment test (closed: endpoints included). Returns the
/// parameter t with p = a + t*(b-a), 0 <= t <= 1, when it exists.
inline std::optional<Rat> on_segment(const PointQ& p, const SegmentQ& s) {
    detail::require_same_dim(p.dim(), s.a.dim(), "on_segment");
    std::size_t k = p.dim();
    std::size_t pivot = 0;
    Rat t;
    for (; pivot < k; ++pivot) {
        Rat d = s.b[pivot] - s.a[pivot];
        if (!d.is_zero()) {
            t = (p[pivot] - s.a[pivot]) / d;
            break;
        }
    }
    if (t.sign() < 0 || t > Rat(1)) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == pivot) continue;
        if (p[i] != s.a[i] + t * (s.b[i] - s.a[i])) return std::nullopt;
    }
    return t;
}

struct LineIntersection {
    enum class Kind { empty, point, identical };
    Kind kind = Kind::empty;
    // Valid only for Kind::point.
    PointQ point;
    Rat t1;
    Rat t2;
};

/// Exact intersection of two lines of equal dimension. Parallel-distinct and
/// skew pairs both report `empty`.
inline LineIntersection line_intersection(const LineQ& l1, const LineQ& l2) {
    detail::require_same_dim(l1.origin.dim(), l2.origin.dim(), "line intersection");
    std::size_t k = l1.origin.dim();
    const VecQ& u = l1.dir;
    const VecQ& v = l2.dir;

    bool proportional = true;
    for (std::size_t i = 0; i < k && proportional; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (u[i] * v[j] != u[j] * v[i]) {
                proportional = false;
                break;
            }

    VecQ w = l2.origin - l1.origin;
    if (proportional) {
        // Same direction: identical iff l2's origin lies on l1.
        LineIntersection r;
        r.kind = line_parameter(l2.origin, l1.origin, u) ? LineIntersection::Kind::identical
                                                         : LineIntersection::Kind::empty;
        return r;
    }

    // Solve t1*u - t2*v = w on two independent coordinates, then check the rest.
    std::size_t r1 = k, r2 = k;
    for (std::size_t i = 0; i < k && r2 == k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (u[i] * v[j] != u[j] * v[i]) {
                r1 = i;
                r2 = j;
                break;
            }
        }
    }
    Rat det = u[r1] * (-v[r2]) - (-v[r1]) * u[r2];
    Rat t1 = (w[r1] * (-v[r2]) - (-v[r1]) * w[r2]) / det;
    Rat t2 = (u[r1] * w[r2] - w[r1] * u[r2]) / det;
    for (std::size_t i = 0; i < k; ++i) {
        if (t1 * u[i] - t2 * v[i] != w[i]) return LineIntersection{};  // skew
    }
    LineIntersection r;
    r.kind = LineIntersection::Kind::point;
    r.point = l1.origin + t1 * u;
    r.t1 = std::move(t1);
    r.t2 = std::move(t2);
    return r;
}

/// Rank of a rational matrix (rows need equal length). Destroys its copy.
inline std::size_t matrix_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col].is_zero()) continue;
            Rat f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace cubecover
