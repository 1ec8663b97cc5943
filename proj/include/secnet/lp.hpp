#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace secnet::lp {
inline thread_local long g_pivots = 0;
inline thread_local long g_degenerate = 0;

// Sparse constraint row: (variable index, coefficient), sorted by index,
// indices unique, no zero coefficients.
using SparseRow = std::vector<std::pair<std::int32_t, Rational>>;

inline void sort_row(SparseRow& row)
{
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

enum class Sense { minimize, maximize };

enum class LPStatus { optimal, infeasible, unbounded };

// An exact-rational linear program:
//   optimize objective . x
//   subject to  eq_rows[r] . x  = eq_rhs[r]
//               ineq_rows[r] . x >= ineq_rhs[r]
//               x_i >= 0 for every i with nonneg[i]
struct LinearProgram {
    int num_vars = 0;
    Sense sense = Sense::minimize;
    std::vector<Rational> objective;
    std::vector<SparseRow> eq_rows;
    std::vector<Rational> eq_rhs;
    std::vector<SparseRow> ineq_rows;
    std::vector<Rational> ineq_rhs;
    std::vector<char> nonneg;

    static LinearProgram make(int num_vars, Sense sense, bool all_nonneg = true)
    {
        LinearProgram lp;
        lp.num_vars = num_vars;
        lp.sense = sense;
        lp.objective.assign(num_vars, Rational(0));
        lp.nonneg.assign(num_vars, all_nonneg ? 1 : 0);
        return lp;
    }

    void add_eq(SparseRow row, Rational rhs)
    {
        check_row(row);
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(std::move(rhs));
    }

    void add_ineq(SparseRow row, Rational rhs)
    {
        check_row(row);
        ineq_rows.push_back(std::move(row));
        ineq_rhs.push_back(std::move(rhs));
    }

    void validate() const
    {
        if (num_vars < 0)
            throw std::invalid_argument("negative variable count");
        if ((int)objective.size() != num_vars || (int)nonneg.size() != num_vars)
            throw std::invalid_argument("objective/nonneg length mismatch");
        if (eq_rows.size() != eq_rhs.size() || ineq_rows.size() != ineq_rhs.size())
            throw std::invalid_argument("row/rhs length mismatch");
        for (const auto& r : eq_rows)
            check_row(r);
        for (const auto& r : ineq_rows)
            check_row(r);
    }

private:
    void check_row(const SparseRow& row) const
    {
        std::int32_t prev = -1;
        for (const auto& [i, c] : row) {
            if (i < 0 || i >= num_vars)
                throw std::invalid_argument("row index out of range");
            if (i <= prev)
                throw std::invalid_argument("row indices not strictly increasing");
            if (sgn(c) == 0)
                throw std::invalid_argument("zero coefficient stored in row");
            prev = i;
        }
    }
};

// Certified solver outcome. Which fields are meaningful depends on status:
//   optimal:    value, primal (optimizer), dual_eq/dual_ineq (LP duals)
//   infeasible: dual_eq/dual_ineq form a Farkas certificate
//   unbounded:  primal (a feasible point) and ray (improving direction)
struct LPOutcome {
    LPStatus status = LPStatus::optimal;
    Rational value;
    std::vector<Rational> primal;
    std::vector<Rational> dual_eq;
    std::vector<Rational> dual_ineq;
    std::vector<Rational> ray;
};

namespace detail {

inline Rational dot(const SparseRow& row, const std::vector<Rational>& x)
{
    Rational acc = 0;
    for (const auto& [i, c] : row)
        acc += c * x[i];
    return acc;
}

} // namespace detail

// Exact check that `out` proves its claimed status for `lp`. Never throws
// on a bad certificate; simply returns false.
inline bool verify_certificate(const LinearProgram& lp, const LPOutcome& out)
{
    const bool minimize = lp.sense == Sense::minimize;
    const std::size_t me = lp.eq_rows.size(), mi = lp.ineq_rows.size();

    auto combine = [&](std::vector<Rational>& t) {
        // t_i = sum_r dual_eq[r]*eq[r][i] + sum_r dual_ineq[r]*ineq[r][i]
        t.assign(lp.num_vars, Rational(0));
        for (std::size_t r = 0; r < me; ++r)
            for (const auto& [i, c] : lp.eq_rows[r])
                t[i] += out.dual_eq[r] * c;
        for (std::size_t r = 0; r < mi; ++r)
            for (const auto& [i, c] : lp.ineq_rows[r])
                t[i] += out.dual_ineq[r] * c;
    };

    auto dual_objective = [&]() {
        Rational acc = 0;
        for (std::size_t r = 0; r < me; ++r)
            acc += out.dual_eq[r] * lp.eq_rhs[r];
        for (std::size_t r = 0; r < mi; ++r)
            acc += out.dual_ineq[r] * lp.ineq_rhs[r];
        return acc;
    };

    auto primal_feasible = [&](const std::vector<Rational>& x) {
        if ((int)x.size() != lp.num_vars)
            return false;
        for (int i = 0; i < lp.num_vars; ++i)
            if (lp.nonneg[i] && sgn(x[i]) < 0)
                return false;
        for (std::size_t r = 0; r < me; ++r)
            if (detail::dot(lp.eq_rows[r], x) != lp.eq_rhs[r])
                return false;
        for (std::size_t r = 0; r < mi; ++r)
            if (detail::dot(lp.ineq_rows[r], x) < lp.ineq_rhs[r])
                return false;
        return true;
    };

    switch (out.status) {
    case LPStatus::optimal: {
        if (out.dual_eq.size() != me || out.dual_ineq.size() != mi)
            return false;
        if (!primal_feasible(out.primal))
            return false;
        Rational obj = 0;
        for (int i = 0; i < lp.num_vars; ++i)
            obj += lp.objective[i] * out.primal[i];
        if (obj != out.value)
            return false;
        // Dual feasibility + stationarity.
        for (const Rational& w : out.dual_ineq)
            if (minimize ? sgn(w) < 0 : sgn(w) > 0)
                return false;
        std::vector<Rational> t;
        combine(t);
        for (int i = 0; i < lp.num_vars; ++i) {
            Rational slack = lp.objective[i] - t[i];
            if (lp.nonneg[i]) {
                if (minimize ? sgn(slack) < 0 : sgn(slack) > 0)
                    return false;
            } else if (sgn(slack) != 0) {
                return false;
            }
        }
        // Strong duality, exactly.
        return dual_objective() == out.value;
    }
    case LPStatus::infeasible: {
        if (out.dual_eq.size() != me || out.dual_ineq.size() != mi)
            return false;
        for (const Rational& w : out.dual_ineq)
            if (sgn(w) < 0)
                return false;
        std::vector<Rational> t;
        combine(t);
        for (int i = 0; i < lp.num_vars; ++i) {
            if (lp.nonneg[i]) {
                if (sgn(t[i]) > 0)
                    return false;
            } else if (sgn(t[i]) != 0) {
                return false;
            }
        }
        return sgn(dual_objective()) > 0;
    }
    case LPStatus::unbounded: {
        if (!primal_feasible(out.primal))
            return false;
        if ((int)out.ray.size() != lp.num_vars)
            return false;
        for (int i = 0; i < lp.num_vars; ++i)
            if (lp.nonneg[i] && sgn(out.ray[i]) < 0)
                return false;
        for (std::size_t r = 0; r < me; ++r)
            if (sgn(detail::dot(lp.eq_rows[r], out.ray)) != 0)
                return false;
        for (std::size_t r = 0; r < mi; ++r)
            if (sgn(detail::dot(lp.ineq_rows[r], out.ray)) < 0)
                return false;
        Rational step = 0;
        for (int i = 0; i < lp.num_vars; ++i)
            step += lp.objective[i] * out.ray[i];
        return minimize ? sgn(step) < 0 : sgn(step) > 0;
    }
    }
    return false;
}

// Two-phase primal simplex with Bland's anti-cycling pivot rule over the
// mechanical standard form of the program (free variables split, surplus
// columns for inequality rows, artificial basis for phase 1). The session
// keeps its final basis so that the same program can be re-solved for new
// right-hand sides by dual simplex steps, which is much cheaper than
// starting over. Every outcome is self-verified before being returned.
class SimplexSession {
public:
    explicit SimplexSession(LinearProgram lp) : lp_(std::move(lp))
    {
        lp_.validate();
        build_canonical();
    }

    const LinearProgram& program() const { return lp_; }

    LPOutcome solve()
    {
        reset_basis();
        LPOutcome out = run_two_phase();
        certify(out);
        return out;
    }

    // Same matrix, costs and sense; new right-hand sides. Starts dual
    // simplex from the previous optimal basis when one is available.
    LPOutcome resolve(std::vector<Rational> eq_rhs, std::vector<Rational> ineq_rhs)
    {
        if (eq_rhs.size() != lp_.eq_rhs.size() || ineq_rhs.size() != lp_.ineq_rhs.size())
            throw std::invalid_argument("resolve rhs length mismatch");
        lp_.eq_rhs = std::move(eq_rhs);
        lp_.ineq_rhs = std::move(ineq_rhs);
        LPOutcome out = warm_ ? run_dual() : (reset_basis(), run_two_phase());
        certify(out);
        return out;
    }

private:
    // ---- canonical form -------------------------------------------------

    enum class ColKind : std::uint8_t { var_pos, var_neg, surplus };

    struct Column {
        std::vector<std::pair<std::int32_t, Rational>> entries; // (row, coeff)
        Rational cost;      // phase-2 cost in the minimized canonical form
        ColKind kind;
        std::int32_t ref;   // variable index, or inequality-row index
    };

    LinearProgram lp_;
    std::vector<Column> cols_;
    std::vector<int> row_sign_;        // +-1 per canonical row
    int m_ = 0;                        // rows
    // Basis state: ids < cols_.size() are real columns, ids >= cols_.size()
    // are the artificial of row (id - cols_.size()).
    std::vector<std::int32_t> basis_;
    std::vector<Rational> binv_;       // m x m, row-major
    std::vector<Rational> xb_;
    bool warm_ = false;                // basis is dual-feasible for phase-2 costs

    bool is_artificial(std::int32_t id) const { return id >= (std::int32_t)cols_.size(); }

    Rational canon_rhs(int r) const
    {
        const std::size_t me = lp_.eq_rhs.size();
        const Rational& v = r < (int)me ? lp_.eq_rhs[r] : lp_.ineq_rhs[r - me];
        return row_sign_[r] > 0 ? v : -v;
    }

    void build_canonical()
    {
        const std::size_t me = lp_.eq_rows.size(), mi = lp_.ineq_rows.size();
        m_ = int(me + mi);
        row_sign_.assign(m_, 1);
        for (int r = 0; r < m_; ++r) {
            const Rational& rhs = r < (int)me ? lp_.eq_rhs[r] : lp_.ineq_rhs[r - me];
            if (sgn(rhs) < 0)
                row_sign_[r] = -1;
        }

        const bool minimize = lp_.sense == Sense::minimize;
        std::vector<std::vector<std::pair<std::int32_t, Rational>>> by_var(lp_.num_vars);
        auto scan = [&](const std::vector<SparseRow>& rows, int row0) {
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (const auto& [i, c] : rows[r]) {
                    int row = row0 + int(r);
                    by_var[i].push_back({row, row_sign_[row] > 0 ? c : -c});
                }
        };
        scan(lp_.eq_rows, 0);
        scan(lp_.ineq_rows, int(me));

        cols_.clear();
        for (int i = 0; i < lp_.num_vars; ++i) {
            Column pos;
            pos.entries = by_var[i];
            pos.cost = minimize ? lp_.objective[i] : -lp_.objective[i];
            pos.kind = ColKind::var_pos;
            pos.ref = i;
            cols_.push_back(std::move(pos));
            if (!lp_.nonneg[i]) {
                Column neg;
                neg.entries = by_var[i];
                for (auto& e : neg.entries)
                    e.second = -e.second;
                neg.cost = minimize ? -lp_.objective[i] : lp_.objective[i];
                neg.kind = ColKind::var_neg;
                neg.ref = i;
                cols_.push_back(std::move(neg));
            }
        }
        for (std::size_t r = 0; r < mi; ++r) {
            int row = int(me + r);
            Column s;
            s.entries = {{row, Rational(-row_sign_[row])}};
            s.cost = 0;
            s.kind = ColKind::surplus;
            s.ref = std::int32_t(r);
            cols_.push_back(std::move(s));
        }
    }

    void reset_basis()
    {
        basis_.assign(m_, 0);
        for (int r = 0; r < m_; ++r)
            basis_[r] = std::int32_t(cols_.size()) + r; // artificial
        binv_.assign(std::size_t(m_) * m_, Rational(0));
        for (int r = 0; r < m_; ++r)
            binv_[std::size_t(r) * m_ + r] = 1;
        xb_.assign(m_, Rational(0));
        for (int r = 0; r < m_; ++r)
            xb_[r] = canon_rhs(r); // row signs make this >= 0 for the initial rhs
        warm_ = false;
    }

    Rational col_cost(std::int32_t id, bool phase1) const
    {
        if (is_artificial(id))
            return phase1 ? Rational(1) : Rational(0);
        return phase1 ? Rational(0) : cols_[id].cost;
    }

    // y = c_B^T B^-1, exploiting sparsity of the basic cost vector.
    std::vector<Rational> price(bool phase1) const
    {
        std::vector<Rational> y(m_, Rational(0));
        for (int r = 0; r < m_; ++r) {
            Rational cb = col_cost(basis_[r], phase1);
            if (sgn(cb) == 0)
                continue;
            const Rational* row = &binv_[std::size_t(r) * m_];
            for (int j = 0; j < m_; ++j)
                if (sgn(row[j]) != 0)
                    y[j] += cb * row[j];
        }
        return y;
    }

    Rational sparse_dot(const std::vector<Rational>& y, const Column& col) const
    {
        Rational acc = 0;
        for (const auto& [r, c] : col.entries)
            acc += y[r] * c;
        return acc;
    }

    std::vector<Rational> ftran(const Column& col) const
    {
        std::vector<Rational> d(m_, Rational(0));
        for (const auto& [r, c] : col.entries) {
            const std::size_t off = r; // column r of binv_, strided access
            for (int i = 0; i < m_; ++i) {
                const Rational& b = binv_[std::size_t(i) * m_ + off];
                if (sgn(b) != 0)
                    d[i] += c * b;
            }
        }
        return d;
    }

    void pivot(int leave_row, std::int32_t enter_id, const std::vector<Rational>& d)
    {
        ++g_pivots;
        if (sgn(xb_[leave_row]) == 0) ++g_degenerate;
        const Rational piv = d[leave_row];
        Rational* prow = &binv_[std::size_t(leave_row) * m_];
        if (piv != 1)
            for (int j = 0; j < m_; ++j)
                if (sgn(prow[j]) != 0)
                    prow[j] /= piv;
        Rational theta = xb_[leave_row] / piv;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_row)
                continue;
            if (sgn(d[i]) == 0)
                continue;
            Rational* irow = &binv_[std::size_t(i) * m_];
            for (int j = 0; j < m_; ++j)
                if (sgn(prow[j]) != 0)
                    irow[j] -= d[i] * prow[j];
            xb_[i] -= theta * d[i];
        }
        xb_[leave_row] = theta;
        basis_[leave_row] = enter_id;
    }

    // ---- primal simplex --------------------------------------------------

    // Returns true when the phase reached optimality, false on unbounded
    // (phase 2 only); fills `unbounded_col` in the latter case.
    bool primal_loop(bool phase1, std::int32_t* unbounded_col,
                     std::vector<Rational>* unbounded_dir)
    {
        std::vector<char> in_basis(cols_.size(), 0);
        for (int r = 0; r < m_; ++r)
            if (!is_artificial(basis_[r]))
                in_basis[basis_[r]] = 1;

        while (true) {
            std::vector<Rational> y = price(phase1);

            // Bland: entering column = lowest index with negative reduced cost.
            std::int32_t enter = -1;
            for (std::int32_t j = 0; j < (std::int32_t)cols_.size(); ++j) {
                if (in_basis[j])
                    continue;
                Rational red = col_cost(j, phase1) - sparse_dot(y, cols_[j]);
                if (sgn(red) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0)
                return true;

            std::vector<Rational> d = ftran(cols_[enter]);

            // Ratio test with Bland tie-break on the leaving basic id. Rows
            // holding an artificial at value zero block with ratio zero as
            // soon as the direction touches them, which both drives
            // artificials out and prevents them from regrowing in phase 2.
            int leave = -1;
            bool have = false;
            Rational best;
            for (int r = 0; r < m_; ++r) {
                int ds = sgn(d[r]);
                Rational ratio;
                if (ds > 0) {
                    ratio = xb_[r] / d[r];
                } else if (ds != 0 && is_artificial(basis_[r]) && sgn(xb_[r]) == 0) {
                    ratio = 0;
                } else {
                    continue;
                }
                if (!have || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    have = true;
                    best = ratio;
                    leave = r;
                }
            }
            if (!have) {
                if (phase1)
                    throw internal_error("phase-1 objective unbounded");
                *unbounded_col = enter;
                *unbounded_dir = std::move(d);
                return false;
            }

            if (!is_artificial(basis_[leave]))
                in_basis[basis_[leave]] = 0;
            in_basis[enter] = 1;
            pivot(leave, enter, d);
        }
    }

    // ---- outcome extraction ----------------------------------------------

    std::vector<Rational> primal_point() const
    {
        std::vector<Rational> x(lp_.num_vars, Rational(0));
        for (int r = 0; r < m_; ++r) {
            std::int32_t id = basis_[r];
            if (is_artificial(id))
                continue;
            const Column& col = cols_[id];
            if (col.kind == ColKind::var_pos)
                x[col.ref] += xb_[r];
            else if (col.kind == ColKind::var_neg)
                x[col.ref] -= xb_[r];
        }
        return x;
    }

    void fill_duals(LPOutcome& out, const std::vector<Rational>& y, int sign) const
    {
        const std::size_t me = lp_.eq_rows.size(), mi = lp_.ineq_rows.size();
        out.dual_eq.assign(me, Rational(0));
        out.dual_ineq.assign(mi, Rational(0));
        for (int r = 0; r < m_; ++r) {
            Rational v = y[r] * row_sign_[r] * sign;
            if (r < (int)me)
                out.dual_eq[r] = std::move(v);
            else
                out.dual_ineq[r - me] = std::move(v);
        }
    }

    LPOutcome extract_optimal()
    {
        LPOutcome out;
        out.status = LPStatus::optimal;
        out.primal = primal_point();
        Rational val = 0;
        for (int r = 0; r < m_; ++r) {
            Rational cb = col_cost(basis_[r], false);
            if (sgn(cb) != 0)
                val += cb * xb_[r];
        }
        const bool maximize = lp_.sense == Sense::maximize;
        out.value = maximize ? Rational(-val) : val;
        fill_duals(out, price(false), maximize ? -1 : 1);
        warm_ = true;
        return out;
    }

    LPOutcome extract_unbounded(std::int32_t enter, const std::vector<Rational>& d)
    {
        LPOutcome out;
        out.status = LPStatus::unbounded;
        out.primal = primal_point();
        out.ray.assign(lp_.num_vars, Rational(0));
        auto bump = [&](std::int32_t id, const Rational& amount) {
            if (is_artificial(id))
                return;
            const Column& col = cols_[id];
            if (col.kind == ColKind::var_pos)
                out.ray[col.ref] += amount;
            else if (col.kind == ColKind::var_neg)
                out.ray[col.ref] -= amount;
        };
        bump(enter, Rational(1));
        for (int r = 0; r < m_; ++r)
            if (sgn(d[r]) != 0)
                bump(basis_[r], -d[r]);
        warm_ = false;
        return out;
    }

    LPOutcome extract_infeasible()
    {
        // Phase-1 duals give the Farkas certificate.
        LPOutcome out;
        out.status = LPStatus::infeasible;
        fill_duals(out, price(true), 1);
        warm_ = false;
        return out;
    }

    LPOutcome run_two_phase()
    {
        if (m_ > 0) {
            // Inequality rows whose surplus column is +1 after row signing
            // can start basic instead of their artificial.
            const std::size_t me = lp_.eq_rows.size();
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                const Column& col = cols_[j];
                if (col.kind != ColKind::surplus)
                    continue;
                int row = int(me) + col.ref;
                if (row_sign_[row] < 0) // coefficient is +1
                    basis_[row] = std::int32_t(j);
            }

            bool phase1_needed = false;
            for (int r = 0; r < m_; ++r)
                if (is_artificial(basis_[r]))
                    phase1_needed = true;

            if (phase1_needed) {
                primal_loop(true, nullptr, nullptr);
                Rational infeas = 0;
                for (int r = 0; r < m_; ++r)
                    if (is_artificial(basis_[r]))
                        infeas += xb_[r];
                if (sgn(infeas) > 0)
                    return extract_infeasible();
            }
        }

        std::int32_t unb_col = -1;
        std::vector<Rational> unb_dir;
        if (!primal_loop(false, &unb_col, &unb_dir))
            return extract_unbounded(unb_col, unb_dir);
        return extract_optimal();
    }

    // ---- dual simplex re-solve --------------------------------------------

    LPOutcome run_dual()
    {
        // Recompute basic values for the new rhs: x_B = B^-1 b.
        for (int i = 0; i < m_; ++i)
            xb_[i] = 0;
        for (int r = 0; r < m_; ++r) {
            Rational b = canon_rhs(r);
            if (sgn(b) == 0)
                continue;
            for (int i = 0; i < m_; ++i) {
                const Rational& v = binv_[std::size_t(i) * m_ + r];
                if (sgn(v) != 0)
                    xb_[i] += v * b;
            }
        }

        std::vector<char> in_basis(cols_.size(), 0);
        for (int r = 0; r < m_; ++r)
            if (!is_artificial(basis_[r]))
                in_basis[basis_[r]] = 1;

        while (true) {
            // Leaving row: Bland-style, smallest basic id among negative values.
            int leave = -1;
            for (int r = 0; r < m_; ++r)
                if (sgn(xb_[r]) < 0 && (leave < 0 || basis_[r] < basis_[leave]))
                    leave = r;
            if (leave < 0)
                return extract_optimal();

            const Rational* krow = &binv_[std::size_t(leave) * m_];
            std::vector<Rational> y = price(false);

            // Entering column: dual ratio test over alpha_j < 0, ties by index.
            std::int32_t enter = -1;
            Rational best_num, best_den; // ratio = red_j / -alpha_j
            for (std::int32_t j = 0; j < (std::int32_t)cols_.size(); ++j) {
                if (in_basis[j])
                    continue;
                Rational alpha = 0;
                for (const auto& [r, c] : cols_[j].entries)
                    if (sgn(krow[r]) != 0)
                        alpha += krow[r] * c;
                if (sgn(alpha) >= 0)
                    continue;
                Rational red = cols_[j].cost - sparse_dot(y, cols_[j]);
                // Compare red/-alpha < best_num/best_den without division.
                if (enter < 0 || red * best_den < best_num * (-alpha)) {
                    enter = j;
                    best_num = red;
                    best_den = -alpha;
                }
            }
            if (enter < 0) {
                // Row `leave` of B^-1 certifies infeasibility for this rhs.
                LPOutcome out;
                out.status = LPStatus::infeasible;
                const std::size_t me = lp_.eq_rows.size(), mi = lp_.ineq_rows.size();
                out.dual_eq.assign(me, Rational(0));
                out.dual_ineq.assign(mi, Rational(0));
                for (int r = 0; r < m_; ++r) {
                    Rational v = -krow[r] * row_sign_[r];
                    if (r < (int)me)
                        out.dual_eq[r] = std::move(v);
                    else
                        out.dual_ineq[r - me] = std::move(v);
                }
                // Basis stays dual-feasible; later resolves can still warm-start.
                return out;
            }

            std::vector<Rational> d = ftran(cols_[enter]);
            if (!is_artificial(basis_[leave]))
                in_basis[basis_[leave]] = 0;
            in_basis[enter] = 1;
            pivot(leave, enter, d);
        }
    }

    void certify(const LPOutcome& out) const
    {
        if (!verify_certificate(lp_, out))
            throw internal_error("LP certificate failed self-verification");
    }
};

// One-shot certified solve.
inline LPOutcome solve(const LinearProgram& lp)
{
    SimplexSession session(lp);
    return session.solve();
}

} // namespace secnet::lp
