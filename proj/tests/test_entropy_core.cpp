#include <catch2/catch_amalgamated.hpp>

#include <secnet/functional.hpp>

using namespace secnet;

namespace {

// Ground convention used throughout: 0 = M, 1 = K, 2.. = edge variables.
constexpr int M = 0, K = 1;

EntropyVector vec(int ground, std::initializer_list<std::pair<VarSet, Rational>> vals)
{
    EntropyVector h;
    for (auto& [s, v] : vals)
        h[s] = v;
    (void)ground;
    return h;
}

} // namespace

TEST_CASE("expand_measure matches the defining identities")
{
    const int n = 4;
    VarSet m = VarSet::single(M), k = VarSet::single(K);

    SECTION("I(M;K) = H(M) + H(K) - H(M,K)")
    {
        auto f = expand_measure(n, Measure::mutual_information, {m, k});
        REQUIRE(f.coeff(m) == 1);
        REQUIRE(f.coeff(k) == 1);
        REQUIRE(f.coeff(m | k) == -1);
        REQUIRE(f.terms().size() == 3);
    }

    SECTION("H(X|Y) = H(X,Y) - H(Y)")
    {
        VarSet x = VarSet::single(2), y = VarSet::single(3);
        auto f = expand_measure(n, Measure::conditional_entropy, {x, y});
        REQUIRE(f.coeff(x | y) == 1);
        REQUIRE(f.coeff(y) == -1);
        REQUIRE(f.terms().size() == 2);
    }

    SECTION("I(X;Y|Z) = H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z)")
    {
        VarSet x = VarSet::single(0), y = VarSet::single(1), z = VarSet::single(2);
        auto f = expand_measure(n, Measure::conditional_mutual_information, {x, y, z});
        REQUIRE(f.coeff(x | z) == 1);
        REQUIRE(f.coeff(y | z) == 1);
        REQUIRE(f.coeff(x | y | z) == -1);
        REQUIRE(f.coeff(z) == -1);
    }

    SECTION("ground mismatch is rejected")
    {
        REQUIRE_THROWS_AS(expand_measure(2, Measure::joint_entropy, {VarSet::single(5)}),
                          std::invalid_argument);
    }

    SECTION("overlapping argument sets collapse terms")
    {
        // I(X;X) = H(X)
        VarSet x = VarSet::single(2);
        auto f = expand_measure(n, Measure::mutual_information, {x, x});
        REQUIRE(f.coeff(x) == 1);
        REQUIRE(f.terms().size() == 1);
    }
}

TEST_CASE("expand_measure is linear: I(X;Y|Z) = H(X|Z) - H(X|Y,Z)")
{
    const int n = 5;
    VarSet x = VarSet::single(0), y = VarSet::single(1), z = VarSet::of({2, 3});
    auto lhs = expand_measure(n, Measure::conditional_mutual_information, {x, y, z});
    auto rhs = expand_measure(n, Measure::conditional_entropy, {x, z}) -
               expand_measure(n, Measure::conditional_entropy, {x, y | z});
    REQUIRE(lhs == rhs);
}

TEST_CASE("elemental inequality counts")
{
    REQUIRE(elemental_inequalities(2).size() == 3);
    REQUIRE(elemental_inequalities(3).size() == 9);
    REQUIRE(elemental_inequalities(8).size() == 1800);

    // Closed form n + C(n,2)*2^(n-2) for the whole supported sweep range.
    for (int n = 2; n <= 10; ++n)
        REQUIRE(elemental_inequalities(n).size() == elemental_count(n));

    REQUIRE_THROWS_AS(elemental_inequalities(0), std::invalid_argument);
    REQUIRE_THROWS_AS(elemental_inequalities(17), std::invalid_argument);
}

TEST_CASE("elemental inequalities for n=2 are the expected three")
{
    auto rows = elemental_inequalities(2);
    VarSet a = VarSet::single(0), b = VarSet::single(1);

    auto h_a_given_b = expand_measure(2, Measure::conditional_entropy, {a, b});
    auto h_b_given_a = expand_measure(2, Measure::conditional_entropy, {b, a});
    auto i_ab = expand_measure(2, Measure::mutual_information, {a, b});

    REQUIRE(std::count(rows.begin(), rows.end(), h_a_given_b) == 1);
    REQUIRE(std::count(rows.begin(), rows.end(), h_b_given_a) == 1);
    REQUIRE(std::count(rows.begin(), rows.end(), i_ab) == 1);
}

TEST_CASE("evaluate")
{
    const int n = 2;
    VarSet a = VarSet::single(0), b = VarSet::single(1);

    SECTION("independent pair gives zero mutual information")
    {
        auto f = expand_measure(n, Measure::mutual_information, {a, b});
        auto h = vec(n, {{a, 1}, {b, 1}, {a | b, 2}});
        REQUIRE(evaluate(f, h) == 0);
    }

    SECTION("functional dependence gives zero conditional entropy")
    {
        auto f = expand_measure(n, Measure::conditional_entropy, {a, b});
        auto h = vec(n, {{a | b, 1}, {b, 1}});
        REQUIRE(evaluate(f, h) == 0);
    }

    SECTION("3H(K) - 7H(M) vanishes at H(K)=7/3, H(M)=1")
    {
        EntropyFunctional f(n);
        f.add(b, 3);  // K
        f.add(a, -7); // M
        auto h = vec(n, {{b, rat(7, 3)}, {a, 1}});
        REQUIRE(evaluate(f, h) == 0);
    }

    SECTION("missing coordinate is an error")
    {
        EntropyFunctional f(n);
        f.add(a, 1);
        EntropyVector h;
        REQUIRE_THROWS_AS(evaluate(f, h), std::invalid_argument);
    }
}

TEST_CASE("functional arithmetic is exact and canonical")
{
    EntropyFunctional f(3);
    f.add(VarSet::single(0), rat(1, 3));
    f.add(VarSet::single(0), rat(2, 3));
    REQUIRE(f.coeff(VarSet::single(0)) == 1);

    f.add(VarSet::single(0), -1);
    REQUIRE(f.is_zero()); // exact cancellation removes the term

    // H(empty) is implicit and never stored.
    f.add(VarSet(), 5);
    REQUIRE(f.is_zero());

    EntropyFunctional g(3);
    g.add(VarSet::of({0, 1}), rat(1, 2));
    auto sum = g + g;
    REQUIRE(sum.coeff(VarSet::of({0, 1})) == 1);
    auto scaled = rat(-2) * g;
    REQUIRE(scaled.coeff(VarSet::of({0, 1})) == -1);
    REQUIRE((g - g).is_zero());
}

TEST_CASE("rational helpers")
{
    REQUIRE(rat_str(rat(19, 5)) == "19/5");
    REQUIRE(rat_str(rat(14, 7)) == "2");
    REQUIRE(rat_str(rat(-4, 6)) == "-2/3");
    REQUIRE(rat_parse("7/3") == rat(7, 3));
    REQUIRE(rat_parse("-12") == rat(-12));
    REQUIRE(rat_is_integer(rat(4, 2)));
    REQUIRE(!rat_is_integer(rat(1, 2)));
    REQUIRE_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_parse("x"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat(1, 0), std::invalid_argument);
}
