#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "functional.hpp"
#include "lp.hpp"

namespace secnet {

// Problem constraints layered on top of the Shannon cone: a list of
// functionals each constrained to equal zero. The elemental inequalities
// themselves are implicit and never stored here.
struct ConstraintSet {
    int ground;
    std::vector<EntropyFunctional> equalities;

    explicit ConstraintSet(int g) : ground(g)
    {
        if (g < 1 || g > kMaxGround)
            throw std::invalid_argument("ground size out of range");
    }

    void add(EntropyFunctional f)
    {
        if (f.ground() != ground)
            throw std::invalid_argument("ground-set mismatch in constraint set");
        equalities.push_back(std::move(f));
    }
};

namespace detail {

// Elemental inequality lists are immutable once built; share them.
inline const std::vector<EntropyFunctional>& elementals_cached(int n)
{
    if (n < 1 || n > kMaxGround)
        throw std::invalid_argument("ground size out of range");
    static std::array<std::once_flag, kMaxGround + 1> flags;
    static std::array<std::vector<EntropyFunctional>, kMaxGround + 1> store;
    std::call_once(flags[n], [n] { store[n] = elemental_inequalities(n); });
    return store[n];
}

// Quotient of the entropy coordinates by the functional dependencies in a
// constraint set. An equality of the shape a*H(U) - a*H(V) = 0 with
// V strictly inside U pins H(S) = H(S u U) for every S containing V on any
// point of {Shannon cone  /\  equalities} (conditioning cannot increase a
// conditional entropy), so all coordinates can be folded onto the closure
// cl(S). The fold is exact: it changes neither feasibility nor the value
// of any projected functional, and any quotient point lifts back to a full
// polymatroid via h(S) := h_q(cl(S)).
struct Quotient {
    int ground = 0;
    std::vector<std::uint32_t> cl;    // mask -> closure mask, size 2^ground
    std::vector<std::uint32_t> coords; // closed nonempty masks, ascending
    std::vector<std::int32_t> index;  // mask -> coordinate row, or -1

    static Quotient build(const ConstraintSet& cs, bool use_closure)
    {
        Quotient q;
        q.ground = cs.ground;
        const std::uint32_t space = 1u << cs.ground;

        std::vector<std::pair<std::uint32_t, std::uint32_t>> rules; // (V, U)
        if (use_closure) {
            for (const auto& f : cs.equalities) {
                const auto& t = f.terms();
                if (t.size() != 2 || t[0].second != -t[1].second)
                    continue;
                VarSet a = t[0].first, b = t[1].first;
                if (a.subset_of(b) && a != b)
                    rules.push_back({a.mask, b.mask});
                else if (b.subset_of(a) && a != b)
                    rules.push_back({b.mask, a.mask});
            }
        }

        q.cl.resize(space);
        for (std::uint32_t s = 0; s < space; ++s) {
            std::uint32_t t = s;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& [v, u] : rules)
                    if ((t & v) == v && (t | u) != t) {
                        t |= u;
                        changed = true;
                    }
            }
            q.cl[s] = t;
        }

        q.index.assign(space, -1);
        for (std::uint32_t s = 1; s < space; ++s)
            if (q.cl[s] == s) {
                q.index[s] = std::int32_t(q.coords.size());
                q.coords.push_back(s);
            }
        return q;
    }

    // Projection of a functional onto the quotient coordinates, as sorted
    // sparse (mask, coeff) terms with exact zeros dropped.
    std::vector<std::pair<std::uint32_t, Rational>>
    project(const EntropyFunctional& f) const
    {
        std::map<std::uint32_t, Rational> acc;
        for (const auto& [s, c] : f.terms())
            acc[cl[s.mask]] += c;
        std::vector<std::pair<std::uint32_t, Rational>> out;
        for (auto& [mask, c] : acc)
            if (sgn(c) != 0)
                out.push_back({mask, std::move(c)});
        return out;
    }
};

} // namespace detail

// Exact optimizer over one slice {Shannon cone /\ cs = 0 /\ normalizations},
// answering repeated linear queries. Internally this solves the multiplier
// form of each query (one LP row per entropy coordinate), so changing the
// query only changes the right-hand side and warm dual-simplex restarts
// apply. Copy a built oracle to fan queries out across threads.
class SliceOracle {
public:
    struct Opt {
        enum class Kind { finite, unbounded, empty };
        Kind kind = Kind::finite;
        Rational value; // finite only

        static Opt finite(Rational v) { return {Kind::finite, std::move(v)}; }
        static Opt unbounded() { return {Kind::unbounded, Rational(0)}; }
        static Opt empty() { return {Kind::empty, Rational(0)}; }
    };

    SliceOracle(const ConstraintSet& cs,
                const std::vector<std::pair<EntropyFunctional, Rational>>& normalizations,
                bool use_closure = true)
        : ground_(cs.ground), q_(detail::Quotient::build(cs, use_closure))
    {
        build_program(cs, normalizations);
    }

    int ground() const { return ground_; }
    int coordinates() const { return int(q_.coords.size()); }
    int columns() const { return lp_.num_vars; }

    // Exact minimum of f over the slice. `unbounded` means -infinity,
    // `empty` means the slice has no point at all.
    Opt minimize(const EntropyFunctional& f) { return optimize(f); }

    // Exact maximum (`unbounded` now means +infinity).
    Opt maximize(const EntropyFunctional& f)
    {
        Opt r = optimize(f.negated());
        if (r.kind == Opt::Kind::finite)
            r.value = -r.value;
        return r;
    }

    // True when the whole functional is forced to one value on the slice.
    bool pinned_at(const EntropyFunctional& f, const Rational& v)
    {
        Opt lo = minimize(f);
        if (lo.kind != Opt::Kind::finite || lo.value != v)
            return false;
        Opt hi = maximize(f);
        return hi.kind == Opt::Kind::finite && hi.value == v;
    }

    bool slice_feasible()
    {
        if (feas_ == Feas::unknown)
            probe_feasibility();
        return feas_ == Feas::yes;
    }

private:
    enum class Feas { unknown, yes, no };

    int ground_;
    detail::Quotient q_;
    lp::LinearProgram lp_;
    std::optional<lp::SimplexSession> session_;
    Feas feas_ = Feas::unknown;

    void build_program(const ConstraintSet& cs,
                       const std::vector<std::pair<EntropyFunctional, Rational>>& norms)
    {
        const int rows = int(q_.coords.size());
        std::vector<std::vector<std::pair<std::int32_t, Rational>>> row_entries(rows);
        int col = 0;

        auto add_column = [&](const std::vector<std::pair<std::uint32_t, Rational>>& terms) {
            for (const auto& [mask, c] : terms)
                row_entries[q_.index[mask]].push_back({col, c});
            ++col;
        };

        // One nonnegative multiplier per distinct projected elemental row.
        std::map<std::vector<std::pair<std::uint32_t, Rational>>, int> seen;
        for (const auto& g : detail::elementals_cached(ground_)) {
            auto p = q_.project(g);
            if (p.empty())
                continue;
            if (seen.insert({p, col}).second)
                add_column(p);
        }
        const int elem_cols = col;

        // One free multiplier per surviving projected equality.
        for (const auto& c : cs.equalities) {
            auto p = q_.project(c);
            if (!p.empty())
                add_column(p);
        }
        const int cs_cols = col - elem_cols;

        // One free multiplier per normalization; its rhs is the objective.
        std::vector<Rational> norm_obj;
        for (const auto& [f, rhs] : norms) {
            auto p = q_.project(f);
            if (p.empty())
                throw std::invalid_argument("normalization functional projects to zero");
            add_column(p);
            norm_obj.push_back(rhs);
        }

        lp_ = lp::LinearProgram::make(col, lp::Sense::maximize);
        for (int j = 0; j < elem_cols; ++j)
            lp_.nonneg[j] = 1;
        for (int j = elem_cols; j < col; ++j)
            lp_.nonneg[j] = 0;
        for (std::size_t k = 0; k < norm_obj.size(); ++k)
            lp_.objective[elem_cols + cs_cols + int(k)] = norm_obj[k];
        for (int r = 0; r < rows; ++r) {
            lp::SparseRow row = row_entries[r];
            lp::sort_row(row);
            lp_.add_eq(std::move(row), Rational(0));
        }
    }

    std::vector<Rational> project_rhs(const EntropyFunctional& f) const
    {
        if (f.ground() != ground_)
            throw std::invalid_argument("ground-set mismatch with slice");
        std::vector<Rational> rhs(q_.coords.size(), Rational(0));
        for (const auto& [mask, c] : q_.project(f))
            rhs[q_.index[mask]] = c;
        return rhs;
    }

    lp::LPOutcome solve_with_rhs(std::vector<Rational> rhs)
    {
        if (!session_) {
            lp_.eq_rhs = std::move(rhs);
            session_.emplace(lp_);
            return session_->solve();
        }
        return session_->resolve(std::move(rhs), {});
    }

    // The multiplier program is the exact dual of "optimize f over the
    // slice": optimal <-> same finite value, unbounded <-> empty slice,
    // infeasible <-> the query is unbounded over a nonempty slice (or the
    // slice is empty; a bounded probe settles which).
    Opt optimize(const EntropyFunctional& f)
    {
        lp::LPOutcome out = solve_with_rhs(project_rhs(f));
        switch (out.status) {
        case lp::LPStatus::optimal:
            feas_ = Feas::yes;
            return Opt::finite(out.value);
        case lp::LPStatus::unbounded:
            feas_ = Feas::no;
            return Opt::empty();
        case lp::LPStatus::infeasible:
            if (feas_ == Feas::unknown)
                probe_feasibility();
            return feas_ == Feas::yes ? Opt::unbounded() : Opt::empty();
        }
        throw internal_error("unreachable LP status");
    }

    // H(everything) is a sum of elemental rows, so its multiplier program
    // is always feasible: it is bounded exactly when the slice is nonempty.
    void probe_feasibility()
    {
        EntropyFunctional htop(ground_);
        htop.add(VarSet::full(ground_), 1);
        lp::LPOutcome out = solve_with_rhs(project_rhs(htop));
        if (out.status == lp::LPStatus::optimal)
            feas_ = Feas::yes;
        else if (out.status == lp::LPStatus::unbounded)
            feas_ = Feas::no;
        else
            throw internal_error("feasibility probe cannot be infeasible");
    }
};

// Outcome of a Shannon-type provability check. A provable verdict carries
// the nonnegative combination of elemental rows (by index into
// elemental_inequalities(ground)) plus constraint rows that reproduces the
// target exactly; a not-provable one carries a polymatroid point of the
// constrained cone on which the target is negative.
struct Verdict {
    bool provable = false;
    std::vector<std::pair<std::size_t, Rational>> elemental_weights;
    std::vector<Rational> constraint_weights;
    EntropyVector counterexample;
};

// Decides whether target >= 0 follows from the elemental inequalities plus
// the equalities in cs. The feasible set is a cone, so the internal
// minimum is exactly 0 (provable) or -infinity (not provable); this
// dichotomy is asserted on every call.
inline Verdict prove_inequality(const ConstraintSet& cs, const EntropyFunctional& target)
{
    if (target.ground() != cs.ground)
        throw std::invalid_argument("ground-set mismatch with constraint set");

    const int n = cs.ground;
    const auto& elems = detail::elementals_cached(n);
    const std::uint32_t space = 1u << n;

    lp::LinearProgram prog =
        lp::LinearProgram::make(int(elems.size() + cs.equalities.size()),
                                lp::Sense::minimize);
    for (std::size_t j = elems.size(); j < elems.size() + cs.equalities.size(); ++j)
        prog.nonneg[j] = 0;

    std::vector<std::vector<std::pair<std::int32_t, Rational>>> row_entries(space - 1);
    auto scatter = [&](const EntropyFunctional& f, int col) {
        for (const auto& [s, c] : f.terms())
            row_entries[s.mask - 1].push_back({col, c});
    };
    for (std::size_t j = 0; j < elems.size(); ++j)
        scatter(elems[j], int(j));
    for (std::size_t j = 0; j < cs.equalities.size(); ++j)
        scatter(cs.equalities[j], int(elems.size() + j));

    std::vector<Rational> rhs(space - 1, Rational(0));
    for (const auto& [s, c] : target.terms())
        rhs[s.mask - 1] = c;
    for (std::uint32_t s = 1; s < space; ++s) {
        lp::SparseRow row = row_entries[s - 1];
        lp::sort_row(row);
        prog.add_eq(std::move(row), rhs[s - 1]);
    }

    lp::LPOutcome out = lp::solve(prog);
    Verdict v;
    if (out.status == lp::LPStatus::optimal) {
        if (sgn(out.value) != 0)
            throw internal_error("cone dichotomy violated: nonzero feasibility optimum");
        v.provable = true;
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (sgn(out.primal[j]) != 0)
                v.elemental_weights.push_back({j, out.primal[j]});
        v.constraint_weights.assign(out.primal.begin() + elems.size(), out.primal.end());
        // The certificate must rebuild the target term for term.
        EntropyFunctional rebuilt(n);
        for (const auto& [j, w] : v.elemental_weights)
            rebuilt += w * elems[j];
        for (std::size_t j = 0; j < cs.equalities.size(); ++j)
            rebuilt += v.constraint_weights[j] * cs.equalities[j];
        if (!(rebuilt == target))
            throw internal_error("provability certificate does not rebuild the target");
        return v;
    }
    if (out.status == lp::LPStatus::infeasible) {
        // The Farkas vector, negated, is a point of the constrained cone
        // with a negative target value.
        v.provable = false;
        for (std::uint32_t s = 1; s < space; ++s)
            v.counterexample[VarSet(s)] = -out.dual_eq[s - 1];
        for (const auto& g : elems)
            if (sgn(evaluate(g, v.counterexample)) < 0)
                throw internal_error("counterexample violates the Shannon cone");
        for (const auto& c : cs.equalities)
            if (sgn(evaluate(c, v.counterexample)) != 0)
                throw internal_error("counterexample violates a constraint");
        if (sgn(evaluate(target, v.counterexample)) >= 0)
            throw internal_error("counterexample does not refute the target");
        return v;
    }
    throw internal_error("feasibility program cannot be unbounded");
}

// Exact minimum of H(key) over {Shannon cone, cs, H(msg)=1}; equivalently
// the best c such that H(key) >= c*H(msg) is Shannon-provable under cs.
// Empty optional: the constraints force H(msg) = 0, i.e. no secure code
// exists for the problem that generated cs.
inline std::optional<Rational> shannon_bound(const ConstraintSet& cs, VarSet key, VarSet msg)
{
    if (key.count() != 1 || msg.count() != 1)
        throw std::invalid_argument("key and msg must be single ground variables");
    if (!key.within_ground(cs.ground) || !msg.within_ground(cs.ground))
        throw std::invalid_argument("ground-set mismatch with constraint set");

    EntropyFunctional hmsg(cs.ground), hkey(cs.ground);
    hmsg.add(msg, 1);
    hkey.add(key, 1);

    SliceOracle oracle(cs, {{hmsg, Rational(1)}});
    SliceOracle::Opt r = oracle.minimize(hkey);
    switch (r.kind) {
    case SliceOracle::Opt::Kind::finite:
        if (sgn(r.value) < 0)
            throw internal_error("negative key entropy minimum");
        return r.value;
    case SliceOracle::Opt::Kind::empty:
        return std::nullopt;
    case SliceOracle::Opt::Kind::unbounded:
        break;
    }
    throw internal_error("H(key) cannot be unbounded below over the cone");
}

// A rational extended with the two infinities, for range results.
struct ExtRat {
    enum class Kind { finite, neg_inf, pos_inf };
    Kind kind = Kind::finite;
    Rational value;

    static ExtRat finite(Rational v) { return {Kind::finite, std::move(v)}; }
    static ExtRat minus_inf() { return {Kind::neg_inf, Rational(0)}; }
    static ExtRat plus_inf() { return {Kind::pos_inf, Rational(0)}; }
    bool is_finite() const { return kind == Kind::finite; }
    bool operator==(const ExtRat& o) const
    {
        return kind == o.kind && (kind != Kind::finite || value == o.value);
    }
};

// Exact range of f over {Shannon cone, cs, extra equalities (with
// right-hand sides, so normalizations like H(M)=1 fit here)}. An implied
// equality f = 0 shows up as the degenerate range (0, 0). Throws if the
// slice is empty.
inline std::pair<ExtRat, ExtRat>
functional_range(const ConstraintSet& cs,
                 const std::vector<std::pair<EntropyFunctional, Rational>>& extra,
                 const EntropyFunctional& f)
{
    SliceOracle oracle(cs, extra);
    SliceOracle::Opt lo = oracle.minimize(f);
    if (lo.kind == SliceOracle::Opt::Kind::empty)
        throw std::invalid_argument("functional_range over an empty slice");
    SliceOracle::Opt hi = oracle.maximize(f);
    ExtRat lov = lo.kind == SliceOracle::Opt::Kind::finite ? ExtRat::finite(lo.value)
                                                           : ExtRat::minus_inf();
    ExtRat hiv = hi.kind == SliceOracle::Opt::Kind::finite ? ExtRat::finite(hi.value)
                                                           : ExtRat::plus_inf();
    return {lov, hiv};
}

} // namespace secnet
