#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cubecover/feasibility.hpp"

using namespace cubecover;

namespace {

bool satisfies(const AffineFeasibility& f, const std::vector<Rat>& x) {
    for (std::size_t r = 0; r < f.eq_coeffs.size(); ++r) {
        Rat acc;
        for (std::size_t v = 0; v < x.size(); ++v) acc += f.eq_coeffs[r][v] * x[v];
        if (acc != f.eq_rhs[r]) return false;
    }
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (f.lower[v] && x[v] < *f.lower[v]) return false;
        if (f.upper[v] && x[v] > *f.upper[v]) return false;
    }
    return true;
}

// Independent oracle: substitute every grid point with denominators <= max_den
// and |value| <= span into all constraints.
bool grid_search(const AffineFeasibility& f, int max_den, int span) {
    std::vector<Rat> values;
    for (int q = 1; q <= max_den; ++q)
        for (int p = -span * q; p <= span * q; ++p) {
            Rat r(p, q);
            if (std::find(values.begin(), values.end(), r) == values.end()) values.push_back(r);
        }
    std::size_t n = f.lower.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<Rat> x(n);
        for (std::size_t v = 0; v < n; ++v) x[v] = values[idx[v]];
        if (satisfies(f, x)) return true;
        std::size_t v = 0;
        while (v < n && ++idx[v] == values.size()) idx[v++] = 0;
        if (v == n) return false;
    }
}

}  // namespace

TEST_CASE("unit simplex slice is feasible", "[feasibility]") {
    AffineFeasibility f;
    f.eq_coeffs = {{Rat(1), Rat(1)}};
    f.eq_rhs = {Rat(1)};
    f.lower = {Rat(0), Rat(0)};
    f.upper = {Rat(1), Rat(1)};
    auto w = solve_feasibility(f);
    REQUIRE(w);
    CHECK(satisfies(f, *w));
}

TEST_CASE("contradicting bound is infeasible", "[feasibility]") {
    AffineFeasibility f;
    f.eq_coeffs = {{Rat(1)}};
    f.eq_rhs = {Rat(2)};
    f.lower = {Rat(0)};
    f.upper = {Rat(1)};
    CHECK_FALSE(solve_feasibility(f));
}

TEST_CASE("point on one ray solves the mixed ray-join system", "[feasibility]") {
    // m = alpha*A + (1-alpha)*B + p*u + q*v with m = A + 2u: alpha=1, q=0.
    std::vector<Rat> a = {Rat(1), Rat(1), Rat(0)};
    std::vector<Rat> b = {Rat(0), Rat(5), Rat(0)};
    std::vector<Rat> u = {Rat(1), Rat(1), Rat(0)};
    std::vector<Rat> v = {Rat(0), Rat(1), Rat(0)};
    std::vector<Rat> m = {Rat(3), Rat(3), Rat(0)};
    AffineFeasibility f;
    f.lower = {Rat(0), Rat(0), Rat(0)};
    f.upper = {Rat(1), std::nullopt, std::nullopt};
    for (int i = 0; i < 3; ++i) {
        f.eq_coeffs.push_back({a[i] - b[i], u[i], v[i]});
        f.eq_rhs.push_back(m[i] - b[i]);
    }
    auto w = solve_feasibility(f);
    REQUIRE(w);
    CHECK(satisfies(f, *w));
    CHECK((*w)[0] == Rat(1));  // alpha pinned to 1 by the geometry
    CHECK((*w)[2] == Rat(0));
}

TEST_CASE("solver agrees with brute-force grid search", "[feasibility]") {
    std::mt19937_64 rng(4242);
    auto coeff = [&] { return Rat(static_cast<long long>(rng() % 9) - 4); };

    int grid_hits = 0;
    for (int iter = 0; iter < 120; ++iter) {
        std::size_t n = iter < 90 ? 2 : 3;
        int max_den = n == 2 ? 8 : 3;
        AffineFeasibility f;
        f.lower.assign(n, Rat(-2));
        f.upper.assign(n, Rat(2));
        std::size_t eqs = rng() % n;
        for (std::size_t e = 0; e < eqs; ++e) {
            std::vector<Rat> row(n);
            for (auto& c : row) c = coeff();
            f.eq_coeffs.push_back(row);
            if (rng() % 2) {
                // anchor the rhs at a grid point so feasible cases occur
                Rat acc;
                for (std::size_t v = 0; v < n; ++v)
                    acc += f.eq_coeffs[e][v] * Rat(static_cast<long long>(rng() % 5) - 2,
                                                   1 + static_cast<long long>(rng() % max_den));
                f.eq_rhs.push_back(acc);
            } else {
                f.eq_rhs.push_back(coeff());
            }
        }
        bool grid = grid_search(f, max_den, 2);
        auto solved = solve_feasibility(f);
        if (grid) {
            ++grid_hits;
            REQUIRE(solved);
        }
        if (solved) CHECK(satisfies(f, *solved));
    }
    CHECK(grid_hits > 10);  // the comparison actually exercised feasible cases
}

TEST_CASE("projection intervals are exact", "[feasibility]") {
    AffineFeasibility f;
    f.eq_coeffs = {{Rat(1), Rat(1)}};
    f.eq_rhs = {Rat(1)};
    f.lower = {Rat(0), Rat(0)};
    f.upper = {Rat(1, 3), Rat(1)};
    auto ix = project_interval(f, 0);
    REQUIRE(ix);
    CHECK(*ix->lo == Rat(0));
    CHECK(*ix->hi == Rat(1, 3));
    auto iy = project_interval(f, 1);
    REQUIRE(iy);
    CHECK(*iy->lo == Rat(2, 3));
    CHECK(*iy->hi == Rat(1));

    AffineFeasibility unbounded;
    unbounded.lower = {Rat(0)};
    unbounded.upper = {std::nullopt};
    auto iu = project_interval(unbounded, 0);
    REQUIRE(iu);
    CHECK(*iu->lo == Rat(0));
    CHECK_FALSE(iu->hi);

    AffineFeasibility infeasible;
    infeasible.eq_coeffs = {{Rat(1)}};
    infeasible.eq_rhs = {Rat(5)};
    infeasible.lower = {Rat(0)};
    infeasible.upper = {Rat(1)};
    CHECK_FALSE(project_interval(infeasible, 0));
}

TEST_CASE("more than three variables are refused", "[feasibility]") {
    AffineFeasibility f;
    f.lower.assign(4, std::nullopt);
    f.upper.assign(4, std::nullopt);
    CHECK_THROWS_AS(solve_feasibility(f), std::invalid_argument);
}
