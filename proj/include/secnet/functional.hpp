#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "varset.hpp"

namespace secnet {

// A finite rational linear combination of joint entropies over a fixed
// ground set: f(h) = sum over nonempty S of coeff(S) * H(S). H(empty) is
// identically zero, so empty-set terms are discarded on insertion, and
// zero coefficients are never stored. Terms are kept sorted by subset
// mask, which makes equality of functionals structural.
class EntropyFunctional {
public:
    using Term = std::pair<VarSet, Rational>;

    explicit EntropyFunctional(int ground) : ground_(ground)
    {
        if (ground < 1 || ground > kMaxGround)
            throw std::invalid_argument("ground size out of range");
    }

    int ground() const { return ground_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * H(s). Terms with equal subsets combine; results of zero
    // vanish. Adding H(empty) is a no-op.
    void add(VarSet s, const Rational& c)
    {
        if (!s.within_ground(ground_))
            throw std::invalid_argument("subset outside ground set");
        if (s.empty() || sgn(c) == 0)
            return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                                   [](const Term& t, VarSet v) { return t.first < v; });
        if (it != terms_.end() && it->first == s) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        } else {
            terms_.insert(it, {s, c});
        }
    }

    Rational coeff(VarSet s) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                                   [](const Term& t, VarSet v) { return t.first < v; });
        if (it != terms_.end() && it->first == s)
            return it->second;
        return Rational(0);
    }

    EntropyFunctional& operator+=(const EntropyFunctional& o)
    {
        require_same_ground(o);
        for (const auto& [s, c] : o.terms_)
            add(s, c);
        return *this;
    }

    EntropyFunctional& operator-=(const EntropyFunctional& o)
    {
        require_same_ground(o);
        for (const auto& [s, c] : o.terms_)
            add(s, -c);
        return *this;
    }

    EntropyFunctional& operator*=(const Rational& c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
        } else {
            for (auto& t : terms_)
                t.second *= c;
        }
        return *this;
    }

    EntropyFunctional negated() const
    {
        EntropyFunctional f(ground_);
        f.terms_ = terms_;
        for (auto& t : f.terms_)
            t.second = -t.second;
        return f;
    }

    friend EntropyFunctional operator+(EntropyFunctional a, const EntropyFunctional& b)
    {
        a += b;
        return a;
    }

    friend EntropyFunctional operator-(EntropyFunctional a, const EntropyFunctional& b)
    {
        a -= b;
        return a;
    }

    friend EntropyFunctional operator*(const Rational& c, EntropyFunctional f)
    {
        f *= c;
        return f;
    }

    bool operator==(const EntropyFunctional& o) const
    {
        return ground_ == o.ground_ && terms_ == o.terms_;
    }

private:
    void require_same_ground(const EntropyFunctional& o) const
    {
        if (ground_ != o.ground_)
            throw std::invalid_argument("ground-set mismatch between functionals");
    }

    int ground_;
    std::vector<Term> terms_;
};

// An entropy(-like) vector: one rational per nonempty subset.
using EntropyVector = std::map<VarSet, Rational>;

enum class Measure {
    joint_entropy,                 // H(A)            args: A
    conditional_entropy,           // H(A|B)          args: A, B
    mutual_information,            // I(A;B)          args: A, B
    conditional_mutual_information // I(A;B|C)        args: A, B, C
};

// Signed joint-entropy expansion of a Shannon information measure.
// Evaluating the returned functional on an entropy vector gives exactly
// the named measure.
inline EntropyFunctional expand_measure(int ground, Measure kind,
                                        const std::vector<VarSet>& args)
{
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("wrong number of argument sets for measure");
        for (VarSet s : args)
            if (!s.within_ground(ground))
                throw std::invalid_argument("argument set outside ground set");
    };

    EntropyFunctional f(ground);
    const Rational one = 1;
    switch (kind) {
    case Measure::joint_entropy: {
        need(1);
        f.add(args[0], one);
        break;
    }
    case Measure::conditional_entropy: {
        // H(A|B) = H(A,B) - H(B)
        need(2);
        f.add(args[0] | args[1], one);
        f.add(args[1], -one);
        break;
    }
    case Measure::mutual_information: {
        // I(A;B) = H(A) + H(B) - H(A,B)
        need(2);
        f.add(args[0], one);
        f.add(args[1], one);
        f.add(args[0] | args[1], -one);
        break;
    }
    case Measure::conditional_mutual_information: {
        // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
        need(3);
        f.add(args[0] | args[2], one);
        f.add(args[1] | args[2], one);
        f.add(args[0] | args[1] | args[2], -one);
        f.add(args[2], -one);
        break;
    }
    }
    return f;
}

inline constexpr std::uint64_t elemental_count(int n)
{
    if (n == 1)
        return 1;
    std::uint64_t pairs = std::uint64_t(n) * (n - 1) / 2;
    return std::uint64_t(n) + pairs * (std::uint64_t(1) << (n - 2));
}

// The minimal generating set of Shannon-type inequalities over n ground
// variables, expanded into joint entropies:
//   H(X_i | X_{[n]-i}) >= 0                            (n of them)
//   I(X_i ; X_j | X_K) >= 0, i<j, K subset of the rest (C(n,2)*2^(n-2))
// Every returned functional is nonnegative on every entropic vector.
inline std::vector<EntropyFunctional> elemental_inequalities(int n)
{
    if (n < 1 || n > kMaxGround)
        throw std::invalid_argument("ground size out of range");

    std::vector<EntropyFunctional> out;
    out.reserve(elemental_count(n));
    const VarSet all = VarSet::full(n);

    for (int i = 0; i < n; ++i) {
        EntropyFunctional f(n);
        f.add(all, 1);
        f.add(all - VarSet::single(i), -1); // vanishes for n=1
        out.push_back(std::move(f));
    }
    if (n == 1)
        return out;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            VarSet rest = (all - VarSet::single(i)) - VarSet::single(j);
            // Walk every K subset of `rest` via the standard submask trick,
            // starting from the empty set.
            std::uint32_t k = 0;
            while (true) {
                VarSet K(k);
                EntropyFunctional f(n);
                f.add(K | VarSet::single(i), 1);
                f.add(K | VarSet::single(j), 1);
                f.add(K | VarSet::single(i) | VarSet::single(j), -1);
                f.add(K, -1);
                out.push_back(std::move(f));
                if (k == rest.mask)
                    break;
                k = (k - rest.mask) & rest.mask;
            }
        }
    }
    return out;
}

// Exact inner product of a functional with an entropy vector. Every
// subset appearing in f must be present in h.
inline Rational evaluate(const EntropyFunctional& f, const EntropyVector& h)
{
    Rational acc = 0;
    for (const auto& [s, c] : f.terms()) {
        auto it = h.find(s);
        if (it == h.end())
            throw std::invalid_argument("entropy vector is missing a coordinate");
        acc += c * it->second;
    }
    return acc;
}

} // namespace secnet
