#include "mondyn/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mondyn/error.hpp"

namespace mondyn::lp {

namespace {

struct Tableau {
    std::size_t m = 0;      // constraint rows
    std::size_t ncols = 0;  // structural + slack + artificial columns
    std::vector<std::vector<double>> a;  // m rows, ncols + 1 (last = rhs)
    std::vector<std::size_t> basis;
    double eps = 1e-11;
    int pivots = 0;

    double& rhs(std::size_t i) { return a[i][ncols]; }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / a[r][s];
        for (double& v : a[r]) v *= inv;
        a[r][s] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = a[i][s];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) a[i][j] -= f * a[r][j];
            a[i][s] = 0.0;
        }
        basis[r] = s;
        ++pivots;
    }

    double objective(const std::vector<double>& cost) const {
        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) z += cost[basis[i]] * a[i][ncols];
        return z;
    }

    // Maximizes cost over columns flagged in `allowed`.
    Status run(const std::vector<double>& cost, const std::vector<bool>& allowed, int max_pivots) {
        std::vector<bool> in_basis(ncols, false);
        while (true) {
            if (pivots > max_pivots) return Status::iteration_limit;
            std::fill(in_basis.begin(), in_basis.end(), false);
            for (std::size_t b : basis) in_basis[b] = true;

            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (!allowed[j] || in_basis[j]) continue;
                double d = cost[j];
                for (std::size_t i = 0; i < m; ++i) d -= cost[basis[i]] * a[i][j];
                if (d > eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) return Status::optimal;

            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i)
                if (a[i][enter] > eps) best = std::min(best, a[i][ncols] / a[i][enter]);
            if (!std::isfinite(best)) return Status::unbounded;
            // Bland: among minimum-ratio rows, the smallest basic index leaves.
            std::size_t leave = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (a[i][enter] <= eps) continue;
                if (a[i][ncols] / a[i][enter] > best + eps) continue;
                if (leave == m || basis[i] < basis[leave]) leave = i;
            }
            pivot(leave, enter);
        }
    }
};

}  // namespace

const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

Solution solve(const LinearProgram& problem) {
    const std::size_t n = problem.objective.size();
    const std::size_t n_le = problem.le_rows.size();
    const std::size_t n_eq = problem.eq_rows.size();
    if (problem.le_rhs.size() != n_le || problem.eq_rhs.size() != n_eq)
        throw InvalidArgument("lp: rhs size mismatch");
    for (const auto& r : problem.le_rows)
        if (r.size() != n) throw InvalidArgument("lp: row length mismatch");
    for (const auto& r : problem.eq_rows)
        if (r.size() != n) throw InvalidArgument("lp: row length mismatch");

    double scale = 1.0;
    auto track = [&scale](double v) { scale = std::max(scale, std::abs(v)); };
    for (const auto& r : problem.le_rows) std::for_each(r.begin(), r.end(), track);
    for (const auto& r : problem.eq_rows) std::for_each(r.begin(), r.end(), track);
    std::for_each(problem.le_rhs.begin(), problem.le_rhs.end(), track);
    std::for_each(problem.eq_rhs.begin(), problem.eq_rhs.end(), track);
    std::for_each(problem.objective.begin(), problem.objective.end(), track);

    // Every row gets an artificial except <= rows with nonnegative rhs,
    // whose slack starts in the basis.
    const std::size_t m = n_le + n_eq;
    std::size_t n_art = n_eq;
    for (double b : problem.le_rhs)
        if (b < 0.0) ++n_art;

    Tableau t;
    t.m = m;
    t.ncols = n + n_le + n_art;
    t.eps = 1e-11 * scale;
    t.a.assign(m, std::vector<double>(t.ncols + 1, 0.0));
    t.basis.assign(m, 0);

    std::size_t art = n + n_le;
    for (std::size_t i = 0; i < n_le; ++i) {
        const double sign = problem.le_rhs[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * problem.le_rows[i][j];
        t.a[i][n + i] = sign;
        t.a[i][t.ncols] = sign * problem.le_rhs[i];
        if (sign > 0.0) {
            t.basis[i] = n + i;
        } else {
            t.a[i][art] = 1.0;
            t.basis[i] = art++;
        }
    }
    for (std::size_t k = 0; k < n_eq; ++k) {
        const std::size_t i = n_le + k;
        const double sign = problem.eq_rhs[k] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * problem.eq_rows[k][j];
        t.a[i][t.ncols] = sign * problem.eq_rhs[k];
        t.a[i][art] = 1.0;
        t.basis[i] = art++;
    }

    const int max_pivots = 5000 + 50 * static_cast<int>(m + t.ncols);
    Solution sol;

    if (n_art > 0) {
        std::vector<double> cost1(t.ncols, 0.0);
        for (std::size_t j = n + n_le; j < t.ncols; ++j) cost1[j] = -1.0;
        std::vector<bool> all(t.ncols, true);
        const Status s1 = t.run(cost1, all, max_pivots);
        if (s1 == Status::iteration_limit) {
            sol.status = s1;
            sol.pivots = t.pivots;
            return sol;
        }
        if (t.objective(cost1) < -1e-9 * scale) {
            sol.status = Status::infeasible;
            sol.pivots = t.pivots;
            return sol;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < n + n_le) continue;
            for (std::size_t j = 0; j < n + n_le; ++j) {
                if (std::abs(t.a[i][j]) > t.eps) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<double> cost2(t.ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost2[j] = problem.objective[j];
    std::vector<bool> allowed(t.ncols, false);
    for (std::size_t j = 0; j < n + n_le; ++j) allowed[j] = true;

    sol.status = t.run(cost2, allowed, max_pivots);
    sol.pivots = t.pivots;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.a[i][t.ncols];
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
    return sol;
}

}  // namespace mondyn::lp
