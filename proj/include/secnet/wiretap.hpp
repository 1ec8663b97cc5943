#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shannon.hpp"

namespace secnet {

enum class DecodeClass { I, II };

inline std::string to_string(DecodeClass c) { return c == DecodeClass::I ? "I" : "II"; }

// The two-layer network: n1 parallel channels from source to relay, n2
// from relay to destination. Ground-set layout is fixed everywhere:
// index 0 = M, index 1 = K, 2..n1+1 = layer-1 edges, n1+2..n1+n2+1 =
// layer-2 edges. Edges are named 1..n1+n2.
struct NetworkSpec {
    int n1 = 0;
    int n2 = 0;
    DecodeClass cls = DecodeClass::I;

    static constexpr int kMsgIndex = 0;
    static constexpr int kKeyIndex = 1;

    NetworkSpec() = default;
    NetworkSpec(int n1_, int n2_, DecodeClass cls_) : n1(n1_), n2(n2_), cls(cls_)
    {
        if (n1 < 1 || n2 < 1)
            throw std::invalid_argument("each layer needs at least one edge");
        if (ground() > kMaxGround)
            throw std::invalid_argument("n1 + n2 + 2 exceeds the ground-set limit");
    }

    int edges() const { return n1 + n2; }
    int ground() const { return n1 + n2 + 2; }

    bool is_layer1(int edge) const { return edge >= 1 && edge <= n1; }
    bool is_layer2(int edge) const { return edge > n1 && edge <= edges(); }
    int ground_of_edge(int edge) const { return edge + 1; }

    VarSet msg() const { return VarSet::single(kMsgIndex); }
    VarSet key() const { return VarSet::single(kKeyIndex); }

    VarSet layer1() const
    {
        VarSet s;
        for (int e = 1; e <= n1; ++e)
            s = s.with(ground_of_edge(e));
        return s;
    }

    VarSet layer2() const
    {
        VarSet s;
        for (int e = n1 + 1; e <= edges(); ++e)
            s = s.with(ground_of_edge(e));
        return s;
    }

    // Edge bit mask (bit e-1 = edge e) to ground VarSet.
    VarSet edge_vars(std::uint32_t edge_mask) const
    {
        VarSet s;
        for (int e = 1; e <= edges(); ++e)
            if (edge_mask & (1u << (e - 1)))
                s = s.with(ground_of_edge(e));
        return s;
    }

    bool operator==(const NetworkSpec&) const = default;
};

// A wiretap pattern: which channel subsets single eavesdroppers can read.
// Stored as the maximal antichain equivalent to what was supplied, since a
// dominated set adds a weaker secrecy constraint than its dominator. Each
// member is an edge bit mask; members are unique and ascending.
class WiretapPattern {
public:
    WiretapPattern() = default;

    static WiretapPattern reduce(std::vector<std::uint32_t> sets)
    {
        std::erase(sets, 0u);
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        std::vector<std::uint32_t> keep;
        for (std::uint32_t a : sets) {
            bool dominated = false;
            for (std::uint32_t b : sets)
                if (a != b && (a & b) == a) {
                    dominated = true;
                    break;
                }
            if (!dominated)
                keep.push_back(a);
        }
        WiretapPattern p;
        p.sets_ = std::move(keep);
        return p;
    }

    // 1-based edge index lists, e.g. {{2,4,5},{1,3}}.
    static WiretapPattern from_lists(const std::vector<std::vector<int>>& lists, int edge_count)
    {
        std::vector<std::uint32_t> masks;
        for (const auto& l : lists) {
            std::uint32_t m = 0;
            for (int e : l) {
                if (e < 1 || e > edge_count)
                    throw std::invalid_argument("edge index out of range in wiretap set");
                m |= 1u << (e - 1);
            }
            masks.push_back(m);
        }
        return reduce(std::move(masks));
    }

    const std::vector<std::uint32_t>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    bool operator==(const WiretapPattern&) const = default;

private:
    std::vector<std::uint32_t> sets_;
};

struct WiretapProblem {
    NetworkSpec spec;
    WiretapPattern pattern;

    WiretapProblem(NetworkSpec s, WiretapPattern p) : spec(s), pattern(std::move(p))
    {
        for (std::uint32_t m : pattern.sets())
            if (m >> spec.edges())
                throw std::invalid_argument("wiretap set mentions a nonexistent edge");
    }
};

// A bound on H(K)/H(M): either an exact rational (zero included), or the
// distinguished "no secure code exists" value, which compares like
// +infinity so the bound chain stays well defined.
struct Bound {
    enum class Kind { finite, none_secure };
    Kind kind = Kind::finite;
    Rational value;

    static Bound finite(Rational v) { return {Kind::finite, std::move(v)}; }
    static Bound none_secure() { return {Kind::none_secure, Rational(0)}; }

    bool is_none_secure() const { return kind == Kind::none_secure; }
    bool operator==(const Bound& o) const
    {
        return kind == o.kind && (kind != Kind::finite || value == o.value);
    }

    // <= with none-secure as +infinity.
    bool leq(const Bound& o) const
    {
        if (o.is_none_secure())
            return true;
        if (is_none_secure())
            return false;
        return value <= o.value;
    }
};

inline std::string to_string(const Bound& b)
{
    return b.is_none_secure() ? "none-secure" : rat_str(b.value);
}

enum class GapClass { routing_tight_by_cutset, gap_found, shannon_equals_routing };

inline std::string to_string(GapClass g)
{
    switch (g) {
    case GapClass::routing_tight_by_cutset:
        return "routing-tight-by-cutset";
    case GapClass::gap_found:
        return "gap-found";
    case GapClass::shannon_equals_routing:
        return "shannon-equals-routing";
    }
    return "";
}

struct BoundReport {
    Bound cutset;
    Bound routing;
    Bound shannon;
    GapClass gap_class = GapClass::routing_tight_by_cutset;
    bool shannon_solved = false; // false: recorded equal via the shortcut
};

// The equality constraints a problem imposes on top of the Shannon cone:
// source independence, the two encoding steps, the decoding requirement of
// the class, and one secrecy equality per wiretap set. Exactly
// 4 + |pattern| functionals, in that order.
inline ConstraintSet build_constraints(const WiretapProblem& p)
{
    const NetworkSpec& ns = p.spec;
    const int n = ns.ground();
    ConstraintSet cs(n);

    VarSet m = ns.msg(), k = ns.key(), l1 = ns.layer1(), l2 = ns.layer2();

    cs.add(expand_measure(n, Measure::mutual_information, {m, k}));
    cs.add(expand_measure(n, Measure::conditional_entropy, {l1, m | k}));
    cs.add(expand_measure(n, Measure::conditional_entropy, {l2, l1}));
    if (ns.cls == DecodeClass::I)
        cs.add(expand_measure(n, Measure::conditional_entropy, {m, l2}));
    else
        cs.add(expand_measure(n, Measure::conditional_entropy, {m | k, l2}));
    for (std::uint32_t set : p.pattern.sets())
        cs.add(expand_measure(n, Measure::mutual_information, {m, ns.edge_vars(set)}));
    return cs;
}

namespace detail {

// One cut: maximize total rate subject to "each eavesdropped subset of the
// cut carries at most one key's worth". The reciprocal of (optimum - 1) is
// the bound contributed by this cut.
inline Bound cut_program_bound(int cut_size, std::vector<std::uint32_t> restricted)
{
    std::erase(restricted, 0u);
    if (restricted.empty())
        return Bound::finite(Rational(0)); // nobody watches this cut
    const std::uint32_t full = (1u << cut_size) - 1u;
    for (std::uint32_t r : restricted)
        if (r == full)
            return Bound::none_secure();

    // Keep maximal members only; dominated subsets give implied rows.
    std::sort(restricted.begin(), restricted.end());
    restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());

    auto prog = lp::LinearProgram::make(cut_size, lp::Sense::maximize);
    for (int i = 0; i < cut_size; ++i)
        prog.objective[i] = 1;
    for (std::size_t a = 0; a < restricted.size(); ++a) {
        bool dominated = false;
        for (std::uint32_t b : restricted)
            if (b != restricted[a] && (restricted[a] & b) == restricted[a])
                dominated = true;
        if (dominated)
            continue;
        lp::SparseRow row;
        for (int i = 0; i < cut_size; ++i)
            if (restricted[a] & (1u << i))
                row.push_back({i, Rational(-1)});
        prog.add_ineq(std::move(row), Rational(-1)); // sum over the set <= 1
    }

    lp::LPOutcome out = lp::solve(prog);
    if (out.status == lp::LPStatus::unbounded)
        return Bound::finite(Rational(0)); // some edge is watched by nobody
    if (out.status != lp::LPStatus::optimal)
        throw internal_error("cut program can neither be infeasible nor fail");
    if (out.value <= 1)
        throw internal_error("covered cut without a full member must exceed rate 1");
    return Bound::finite(1 / Rational(out.value - 1));
}

} // namespace detail

// Larger of the two single-cut bounds (source side and destination side).
// Wiretap sets spanning both layers participate restricted to each cut.
inline Bound cutset_bound(const WiretapProblem& p)
{
    const int n1 = p.spec.n1, n2 = p.spec.n2;
    std::vector<std::uint32_t> left, right;
    for (std::uint32_t s : p.pattern.sets()) {
        left.push_back(s & ((1u << n1) - 1u));
        right.push_back(s >> n1);
    }
    Bound a = detail::cut_program_bound(n1, std::move(left));
    Bound b = detail::cut_program_bound(n2, std::move(right));
    return a.leq(b) ? b : a;
}

// Bound for the path-expanded point-to-point network: n1*n2 routed paths,
// path (i,j) having index (i-1)*n2 + j; an eavesdropper on edge e sees
// every path through e. Identical for both decoding classes.
inline Bound routing_bound(const WiretapProblem& p)
{
    const int n1 = p.spec.n1, n2 = p.spec.n2;
    const int paths = n1 * n2;
    std::vector<std::uint32_t> expanded;
    for (std::uint32_t s : p.pattern.sets()) {
        std::uint32_t cover = 0;
        for (int i = 1; i <= n1; ++i)
            if (s & (1u << (i - 1)))
                for (int j = 1; j <= n2; ++j)
                    cover |= 1u << ((i - 1) * n2 + j - 1);
        for (int j = 1; j <= n2; ++j)
            if (s & (1u << (n1 + j - 1)))
                for (int i = 1; i <= n1; ++i)
                    cover |= 1u << ((i - 1) * n2 + j - 1);
        expanded.push_back(cover);
    }
    return detail::cut_program_bound(paths, std::move(expanded));
}

inline Bound shannon_bound_of(const WiretapProblem& p)
{
    auto r = shannon_bound(build_constraints(p), p.spec.key(), p.spec.msg());
    return r ? Bound::finite(*r) : Bound::none_secure();
}

// Cut-set and routing bounds always; the Shannon bound only when they
// disagree (when they agree the chain pins it) unless lazy_shannon is off.
inline BoundReport bound_report(const WiretapProblem& p, bool lazy_shannon = false)
{
    BoundReport r;
    r.cutset = cutset_bound(p);
    r.routing = routing_bound(p);
    if (r.cutset == r.routing) {
        r.gap_class = GapClass::routing_tight_by_cutset;
        if (lazy_shannon) {
            r.shannon = r.routing;
            r.shannon_solved = false;
        } else {
            r.shannon = shannon_bound_of(p);
            r.shannon_solved = true;
            if (!(r.shannon == r.routing))
                throw internal_error("bound chain violated: ends match, middle differs");
        }
        return r;
    }
    r.shannon = shannon_bound_of(p);
    r.shannon_solved = true;
    r.gap_class = r.shannon == r.routing ? GapClass::shannon_equals_routing
                                         : GapClass::gap_found;
    return r;
}

} // namespace secnet
