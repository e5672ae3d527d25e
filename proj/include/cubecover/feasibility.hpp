#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubecover/rational.hpp"

namespace cubecover {

/// Small exact linear-feasibility instance: equality rows over at most three
/// variables plus optional per-variable bounds.
struct AffineFeasibility {
    std::vector<std::vector<Rat>> eq_coeffs;  // one row per equation
    std::vector<Rat> eq_rhs;
    std::vector<std::optional<Rat>> lower;  // size = variable count
    std::vector<std::optional<Rat>> upper;
};

namespace detail {

// One inequality sum(coeffs * y) >= rhs over the current working columns.
struct Ineq {
    std::vector<Rat> coeffs;
    Rat rhs;
};

// Affine expression constant + sum(coeffs * y); bound on an eliminated var.
struct BoundExpr {
    Rat constant;
    std::vector<Rat> coeffs;

    Rat eval(const std::vector<Rat>& y) const {
        Rat v = constant;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) v += coeffs[i] * y[i];
        return v;
    }
};

struct EliminationStep {
    std::size_t var;
    std::vector<BoundExpr> lowers;
    std::vector<BoundExpr> uppers;
};

// Fourier-Motzkin elimination of the listed columns, in order. Returns false
// on an inconsistent constant row. On success `rows` holds the projection and
// `steps` the per-variable bound stacks for witness back-substitution.
inline bool fourier_motzkin(std::vector<Ineq>& rows, const std::vector<std::size_t>& order,
                            std::vector<EliminationStep>& steps) {
    for (std::size_t var : order) {
        EliminationStep step;
        step.var = var;
        std::vector<Ineq> rest;
        for (const Ineq& row : rows) {
            const Rat& c = row.coeffs[var];
            if (c.is_zero()) {
                rest.push_back(row);
                continue;
            }
            BoundExpr e;
            e.constant = row.rhs / c;
            e.coeffs.assign(row.coeffs.size(), Rat());
            for (std::size_t i = 0; i < row.coeffs.size(); ++i)
                if (i != var && !row.coeffs[i].is_zero()) e.coeffs[i] = -(row.coeffs[i] / c);
            if (c.sign() > 0)
                step.lowers.push_back(std::move(e));
            else
                step.uppers.push_back(std::move(e));
        }
        // Every (lower, upper) pair becomes upper - lower >= 0.
        for (const BoundExpr& lo : step.lowers) {
            for (const BoundExpr& hi : step.uppers) {
                Ineq combined;
                combined.coeffs.assign(lo.coeffs.size(), Rat());
                bool all_zero = true;
                for (std::size_t i = 0; i < lo.coeffs.size(); ++i) {
                    combined.coeffs[i] = hi.coeffs[i] - lo.coeffs[i];
                    if (!combined.coeffs[i].is_zero()) all_zero = false;
                }
                combined.rhs = lo.constant - hi.constant;
                if (all_zero) {
                    if (combined.rhs.sign() > 0) return false;
                } else {
                    rest.push_back(std::move(combined));
                }
            }
        }
        rows = std::move(rest);
        steps.push_back(std::move(step));
    }
    for (const Ineq& row : rows) {
        bool all_zero = true;
        for (const Rat& c : row.coeffs)
            if (!c.is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero && row.rhs.sign() > 0) return false;
    }
    return true;
}

// Reduced row echelon form of (coeffs | rhs). Returns false if inconsistent.
// pivot_col[r] records each surviving row's pivot column.
inline bool rref(std::vector<std::vector<Rat>>& coeffs, std::vector<Rat>& rhs,
                 std::vector<std::size_t>& pivot_cols, std::size_t num_vars) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < num_vars && row < coeffs.size(); ++col) {
        std::size_t p = row;
        while (p < coeffs.size() && coeffs[p][col].is_zero()) ++p;
        if (p == coeffs.size()) continue;
        std::swap(coeffs[row], coeffs[p]);
        std::swap(rhs[row], rhs[p]);
        Rat inv = coeffs[row][col];
        for (std::size_t c = 0; c < num_vars; ++c) coeffs[row][c] /= inv;
        rhs[row] /= inv;
        for (std::size_t r = 0; r < coeffs.size(); ++r) {
            if (r == row || coeffs[r][col].is_zero()) continue;
            Rat f = coeffs[r][col];
            for (std::size_t c = 0; c < num_vars; ++c) coeffs[r][c] -= f * coeffs[row][c];
            rhs[r] -= f * rhs[row];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < coeffs.size(); ++r)
        if (!rhs[r].is_zero()) return false;
    coeffs.resize(row);
    rhs.resize(row);
    return true;
}

// Gauss-reduced view of an AffineFeasibility: pivot variables expressed over
// the free ones, plus all bounds rewritten as inequalities over free columns.
struct ReducedSystem {
    bool consistent = false;
    std::size_t num_vars = 0;
    std::vector<std::size_t> free_cols;
    std::vector<std::optional<std::size_t>> free_index;        // var -> free column
    std::vector<std::optional<BoundExpr>> pivot_expr;          // var -> expr over free cols
    std::vector<Ineq> bound_rows;                              // over free cols
};

inline ReducedSystem reduce(const AffineFeasibility& f) {
    ReducedSystem rs;
    rs.num_vars = f.lower.size();
    if (f.upper.size() != rs.num_vars)
        throw std::invalid_argument("feasibility: bound lists differ in length");
    for (const auto& row : f.eq_coeffs)
        if (row.size() != rs.num_vars)
            throw std::invalid_argument("feasibility: row width mismatch");
    if (f.eq_coeffs.size() != f.eq_rhs.size())
        throw std::invalid_argument("feasibility: rhs length mismatch");

    auto coeffs = f.eq_coeffs;
    auto rhs = f.eq_rhs;
    std::vector<std::size_t> pivot_cols;
    if (!rref(coeffs, rhs, pivot_cols, rs.num_vars)) return rs;  // inconsistent
    rs.consistent = true;

    rs.free_index.assign(rs.num_vars, std::nullopt);
    rs.pivot_expr.assign(rs.num_vars, std::nullopt);
    std::vector<bool> is_pivot(rs.num_vars, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    for (std::size_t v = 0; v < rs.num_vars; ++v) {
        if (!is_pivot[v]) {
            rs.free_index[v] = rs.free_cols.size();
            rs.free_cols.push_back(v);
        }
    }
    std::size_t width = rs.free_cols.size();
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
        BoundExpr e;
        e.constant = rhs[r];
        e.coeffs.assign(width, Rat());
        for (std::size_t i = 0; i < width; ++i) e.coeffs[i] = -coeffs[r][rs.free_cols[i]];
        rs.pivot_expr[pivot_cols[r]] = std::move(e);
    }

    // Bounds become inequalities over the free columns.
    auto add = [&](const BoundExpr& expr, const Rat& bound, bool lower_bound) {
        // lower: expr >= bound; upper: -expr >= -bound
        Ineq row;
        row.coeffs.assign(width, Rat());
        bool all_zero = true;
        for (std::size_t i = 0; i < width; ++i) {
            row.coeffs[i] = lower_bound ? expr.coeffs[i] : -expr.coeffs[i];
            if (!row.coeffs[i].is_zero()) all_zero = false;
        }
        row.rhs = lower_bound ? bound - expr.constant : expr.constant - bound;
        if (all_zero) {
            if (row.rhs.sign() > 0) rs.consistent = false;
        } else {
            rs.bound_rows.push_back(std::move(row));
        }
    };
    for (std::size_t v = 0; v < rs.num_vars && rs.consistent; ++v) {
        BoundExpr self;
        if (rs.pivot_expr[v]) {
            self = *rs.pivot_expr[v];
        } else {
            self.constant = Rat();
            self.coeffs.assign(width, Rat());
            self.coeffs[*rs.free_index[v]] = Rat(1);
        }
        if (f.lower[v]) add(self, *f.lower[v], true);
        if (f.upper[v]) add(self, *f.upper[v], false);
    }
    return rs;
}

}  // namespace detail

/// Exact feasibility decision: Gaussian elimination on the equalities, then
/// Fourier-Motzkin on the remaining free variables against the bounds.
/// Returns one exact witness when feasible.
inline std::optional<std::vector<Rat>> solve_feasibility(const AffineFeasibility& f) {
    if (f.lower.size() > 3)
        throw std::invalid_argument("feasibility: more than 3 variables");
    detail::ReducedSystem rs = detail::reduce(f);
    if (!rs.consistent) return std::nullopt;

    std::size_t width = rs.free_cols.size();
    std::vector<detail::Ineq> rows = rs.bound_rows;
    std::vector<std::size_t> order(width);
    for (std::size_t i = 0; i < width; ++i) order[i] = i;
    std::vector<detail::EliminationStep> steps;
    if (!detail::fourier_motzkin(rows, order, steps)) return std::nullopt;

    // Back-substitute, last eliminated variable first. Closed bounds, so the
    // tightest lower bound (when any) is itself feasible.
    std::vector<Rat> y(width);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::optional<Rat> lo, hi;
        for (const auto& e : it->lowers) {
            Rat v = e.eval(y);
            if (!lo || v > *lo) lo = v;
        }
        for (const auto& e : it->uppers) {
            Rat v = e.eval(y);
            if (!hi || v < *hi) hi = v;
        }
        y[it->var] = lo ? *lo : (hi ? *hi : Rat());
    }

    std::vector<Rat> witness(rs.num_vars);
    for (std::size_t v = 0; v < rs.num_vars; ++v)
        witness[v] = rs.pivot_expr[v] ? rs.pivot_expr[v]->eval(y) : y[*rs.free_index[v]];
    return witness;
}

/// Closed interval of a polyhedron's projection onto one variable; an absent
/// endpoint means unbounded on that side.
struct ProjectedInterval {
    std::optional<Rat> lo;
    std::optional<Rat> hi;
};

/// Exact projection of the instance's solution set onto variable `var`.
/// Returns nullopt when the instance is infeasible.
inline std::optional<ProjectedInterval> project_interval(const AffineFeasibility& f,
                                                         std::size_t var) {
    if (var >= f.lower.size())
        throw std::invalid_argument("feasibility: projection variable out of range");
    detail::ReducedSystem rs = detail::reduce(f);
    if (!rs.consistent) return std::nullopt;

    // Work over free columns plus a synthetic column equal to the target
    // variable; eliminate everything else.
    std::size_t width = rs.free_cols.size();
    std::vector<detail::Ineq> rows;
    rows.reserve(rs.bound_rows.size() + 2);
    for (const auto& r : rs.bound_rows) {
        detail::Ineq wide;
        wide.coeffs = r.coeffs;
        wide.coeffs.push_back(Rat());
        wide.rhs = r.rhs;
        rows.push_back(std::move(wide));
    }
    detail::BoundExpr target;
    if (rs.pivot_expr[var]) {
        target = *rs.pivot_expr[var];
    } else {
        target.constant = Rat();
        target.coeffs.assign(width, Rat());
        target.coeffs[*rs.free_index[var]] = Rat(1);
    }
    for (int dir : {1, -1}) {
        // dir=+1: z - target >= 0; dir=-1: target - z >= 0
        detail::Ineq row;
        row.coeffs.assign(width + 1, Rat());
        for (std::size_t i = 0; i < width; ++i) row.coeffs[i] = Rat(-dir) * target.coeffs[i];
        row.coeffs[width] = Rat(dir);
        row.rhs = Rat(dir) * target.constant;
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> order(width);
    for (std::size_t i = 0; i < width; ++i) order[i] = i;
    std::vector<detail::EliminationStep> steps;
    if (!detail::fourier_motzkin(rows, order, steps)) return std::nullopt;

    ProjectedInterval iv;
    for (const auto& row : rows) {
        const Rat& c = row.coeffs[width];
        if (c.is_zero()) continue;  // constant rows already checked
        Rat v = row.rhs / c;
        if (c.sign() > 0) {
            if (!iv.lo || v > *iv.lo) iv.lo = v;
        } else {
            if (!iv.hi || v < *iv.hi) iv.hi = v;
        }
    }
    if (iv.lo && iv.hi && *iv.lo > *iv.hi) return std::nullopt;
    return iv;
}

}  // namespace cubecover
