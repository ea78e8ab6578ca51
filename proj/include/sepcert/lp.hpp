#ifndef SEPCERT_LP_HPP
#define SEPCERT_LP_HPP

#include "sepcert/graph.hpp"
#include "sepcert/rational.hpp"

#include <algorithm>
#include <vector>

namespace sepcert {

/// Exact-rational solution of min c'x subject to Ax = b, x >= 0, via the
/// two-phase full-tableau simplex with Bland's anti-cycling rule. Every
/// number stays a rational end to end.
class Simplex {
  public:
    enum class Status { Optimal, Infeasible, Unbounded };

    struct Result {
        Status status = Status::Optimal;
        std::vector<Rational> x;     // primal solution over the original columns
        std::vector<Rational> dual;  // y with A'y <= c at optimality
        Rational objective = 0;
        std::vector<int> basis;      // row -> column (original or artificial)
        int columns = 0;

        bool column_basic(int j) const {
            return std::find(basis.begin(), basis.end(), j) != basis.end();
        }
    };

    static Result solve(const std::vector<std::vector<Rational>>& a,
                        const std::vector<Rational>& b, const std::vector<Rational>& c) {
        int m = static_cast<int>(a.size());
        int n = static_cast<int>(c.size());
        require(static_cast<int>(b.size()) == m, "simplex: rhs size mismatch");
        for (const auto& row : a)
            require(static_cast<int>(row.size()) == n, "simplex: row size mismatch");

        Simplex sx(m, n);
        for (int i = 0; i < m; ++i) {
            bool flip = b[i] < 0;
            sx.row_sign_[i] = flip ? -1 : 1;
            for (int j = 0; j < n; ++j) sx.t_[i][j] = flip ? -a[i][j] : a[i][j];
            sx.t_[i][n + i] = 1;  // artificial
            sx.t_[i][sx.rhs_] = flip ? -b[i] : b[i];
            sx.basis_[i] = n + i;
        }

        // Phase 1: minimize the artificial sum.
        std::vector<Rational> phase1(sx.total_, 0);
        for (int i = 0; i < m; ++i) phase1[n + i] = 1;
        sx.load_cost_row(phase1);
        if (!sx.iterate(phase1, /*allow_artificials=*/true))
            throw Error("simplex: phase 1 unbounded");
        for (int i = 0; i < m; ++i)
            if (sx.basis_[i] >= n && sx.t_[i][sx.rhs_] != 0)
                return Result{Status::Infeasible, {}, {}, 0, {}, n};
        sx.expel_artificials();

        // Phase 2 with the real costs; artificial columns stay barred.
        std::vector<Rational> phase2(sx.total_, 0);
        for (int j = 0; j < n; ++j) phase2[j] = c[j];
        sx.load_cost_row(phase2);
        if (!sx.iterate(phase2, /*allow_artificials=*/false))
            return Result{Status::Unbounded, {}, {}, 0, {}, n};

        Result result;
        result.columns = n;
        result.x.assign(n, 0);
        for (int i = 0; i < m; ++i)
            if (sx.basis_[i] < n) result.x[sx.basis_[i]] = sx.t_[i][sx.rhs_];
        for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
        result.dual.assign(m, 0);
        // Reduced cost of artificial i equals -y_i (its phase-2 cost is 0).
        for (int i = 0; i < m; ++i)
            result.dual[i] = -sx.cost_[n + i] * sx.row_sign_[i];
        result.basis = sx.basis_;
        return result;
    }

  private:
    Simplex(int m, int n)
        : m_(m), n_(n), total_(n + m), rhs_(total_),
          t_(m, std::vector<Rational>(total_ + 1, 0)), cost_(total_ + 1, 0), basis_(m, -1),
          row_sign_(m, 1) {}

    void load_cost_row(const std::vector<Rational>& c) {
        for (int j = 0; j <= total_; ++j) cost_[j] = j < total_ ? c[j] : Rational(0);
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j <= total_; ++j) cost_[j] -= cb * t_[i][j];
        }
    }

    bool iterate(const std::vector<Rational>&, bool allow_artificials) {
        while (true) {
            int enter = -1;
            int limit = allow_artificials ? total_ : n_;
            for (int j = 0; j < limit; ++j)
                if (cost_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;

            int leave = -1;
            Rational best_ratio = 0;
            for (int i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][rhs_] / t_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        Rational inv = 1 / t_[row][col];
        for (int j = 0; j <= total_; ++j) t_[row][j] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == row || t_[i][col] == 0) continue;
            Rational f = t_[i][col];
            for (int j = 0; j <= total_; ++j) t_[i][j] -= f * t_[row][j];
        }
        if (cost_[col] != 0) {
            Rational f = cost_[col];
            for (int j = 0; j <= total_; ++j) cost_[j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    void expel_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (t_[i][j] != 0) {
                    col = j;
                    break;
                }
            require(col >= 0, "simplex: redundant constraint row");
            pivot(i, col);
        }
    }

    int m_, n_, total_, rhs_;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> cost_;
    std::vector<int> basis_;
    std::vector<int> row_sign_;
};

/// Exact optimum of the restricted master pair
///   max s   s.t. q >= 0, sum q = 1, q(X) >= s for X in the column set
///   min eps s.t. p >= 0, sum p = 1, sum_{X : v in X} p(X) <= eps for all v
/// with strong duality s* = eps* verified exactly on every solve. The
/// returned p is basic, so its support has at most n nonzero entries.
struct MasterSolution {
    std::vector<Rational> q;
    Rational s = 0;
    std::vector<Rational> p;
    Rational eps = 0;
    std::vector<int> tight_columns;  // the at-most-n columns defining the optimum
};

namespace detail {

struct QSideSolution {
    std::vector<Rational> q;
    Rational s = 0;
    std::vector<Rational> dual_p;    // dual values per column, normalized
    std::vector<int> tight_columns;
};

/// Solves the q-side program and extracts the dual distribution from the
/// optimal basis. Verifies primal feasibility and exact strong duality.
inline QSideSolution solve_q_side(int n, const std::vector<VertexSet>& columns) {
    require(n >= 1, "restricted master: n must be >= 1");
    require(!columns.empty(), "restricted master: column set must be nonempty");
    int k = static_cast<int>(columns.size());
    int vars = n + 1 + k;  // q_0..q_{n-1}, s, u_1..u_k
    std::vector<std::vector<Rational>> a(1 + k, std::vector<Rational>(vars, 0));
    std::vector<Rational> b(1 + k, 0), c(vars, 0);
    for (int v = 0; v < n; ++v) a[0][v] = 1;
    b[0] = 1;
    for (int j = 0; j < k; ++j) {
        for (Vertex v : columns[j]) {
            require(v >= 0 && v < n, "restricted master: column vertex out of range");
            a[1 + j][v] = 1;
        }
        a[1 + j][n] = -1;
        a[1 + j][n + 1 + j] = -1;
    }
    c[n] = -1;  // maximize s

    auto res = Simplex::solve(a, b, c);
    require(res.status == Simplex::Status::Optimal, "restricted master: q-side solve failed");

    QSideSolution out;
    out.q.assign(res.x.begin(), res.x.begin() + n);
    out.s = res.x[n];

    Rational check = 0;
    for (const auto& qv : out.q) {
        require(qv >= 0, "restricted master: negative dual cost");
        check += qv;
    }
    require(check == 1, "restricted master: dual costs do not sum to 1");
    for (int j = 0; j < k; ++j) {
        Rational qx = 0;
        for (Vertex v : columns[j]) qx += out.q[v];
        require(qx >= out.s, "restricted master: column constraint violated");
    }

    out.dual_p.assign(k, 0);
    Rational sigma = 0;
    for (int j = 0; j < k; ++j) {
        out.dual_p[j] = res.dual[1 + j];
        require(out.dual_p[j] >= 0, "restricted master: negative dual multiplier");
        sigma += out.dual_p[j];
    }
    require(sigma >= 1, "restricted master: dual multipliers sum below 1");
    if (sigma != 1)
        for (auto& pj : out.dual_p) pj /= sigma;
    Rational eps = 0;
    for (int v = 0; v < n; ++v) {
        Rational mass = 0;
        for (int j = 0; j < k; ++j)
            if (set_contains(columns[j], v)) mass += out.dual_p[j];
        eps = std::max(eps, mass);
    }
    require(eps == out.s, "restricted master: strong duality s* = eps* failed");

    for (int j = 0; j < k; ++j)
        if (!res.column_basic(n + 1 + j)) out.tight_columns.push_back(j);
    if (out.tight_columns.empty()) {
        // Degenerate corner: every tight slack stayed basic at zero. Fall
        // back to the value-tight columns.
        for (int j = 0; j < k; ++j) {
            Rational qx = 0;
            for (Vertex v : columns[j]) qx += out.q[v];
            if (qx == out.s) out.tight_columns.push_back(j);
        }
        require(!out.tight_columns.empty(), "restricted master: no tight column at optimum");
    }
    return out;
}

/// Solves the p-side program restricted to the given columns, returning a
/// basic optimal distribution.
inline std::pair<std::vector<Rational>, Rational> solve_p_side(
    int n, const std::vector<VertexSet>& columns, const std::vector<int>& use) {
    int k = static_cast<int>(use.size());
    int vars = k + 1 + n;  // p_1..p_k, eps, w_0..w_{n-1}
    std::vector<std::vector<Rational>> a(1 + n, std::vector<Rational>(vars, 0));
    std::vector<Rational> b(1 + n, 0), c(vars, 0);
    for (int j = 0; j < k; ++j) a[0][j] = 1;
    b[0] = 1;
    for (int j = 0; j < k; ++j)
        for (Vertex v : columns[use[j]]) a[1 + v][j] = 1;
    for (int v = 0; v < n; ++v) {
        a[1 + v][k] = -1;
        a[1 + v][k + 1 + v] = 1;
    }
    c[k] = 1;  // minimize eps

    auto res = Simplex::solve(a, b, c);
    require(res.status == Simplex::Status::Optimal, "restricted master: p-side solve failed");
    return {std::vector<Rational>(res.x.begin(), res.x.begin() + k), res.x[k]};
}

}  // namespace detail

inline MasterSolution solve_restricted_master(int n, const std::vector<VertexSet>& columns) {
    auto q_side = detail::solve_q_side(n, columns);

    auto [p_tight, eps] = detail::solve_p_side(n, columns, q_side.tight_columns);
    require(eps == q_side.s, "restricted master: basic p optimum differs from s*");

    MasterSolution out;
    out.q = std::move(q_side.q);
    out.s = q_side.s;
    out.eps = eps;
    out.p.assign(columns.size(), 0);
    int support = 0;
    Rational total = 0;
    for (std::size_t j = 0; j < q_side.tight_columns.size(); ++j) {
        out.p[q_side.tight_columns[j]] = p_tight[j];
        if (p_tight[j] > 0) ++support;
        require(p_tight[j] >= 0, "restricted master: negative probability");
        total += p_tight[j];
    }
    require(total == 1, "restricted master: probabilities do not sum to 1");
    require(support <= n, "restricted master: support exceeds n");
    out.tight_columns = std::move(q_side.tight_columns);
    return out;
}

}  // namespace sepcert

#endif
