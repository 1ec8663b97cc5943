#pragma once

#include <secnet/wiretap.hpp>

// The six fixture problems used across the test suites. Edge lists are
// 1-based; edges 1..3 go source->relay and 4..6 relay->destination on the
// (3,3) network (4..5 on the (3,2) one).
namespace extest {

using namespace secnet;

inline WiretapProblem example1()
{
    return {NetworkSpec(3, 3, DecodeClass::II),
            WiretapPattern::from_lists(
                {{2, 4, 5}, {2, 3, 6}, {1, 5, 6}, {1, 3, 4}, {1, 2, 4, 6}}, 6)};
}

inline WiretapProblem example2(DecodeClass cls)
{
    return {NetworkSpec(3, 3, cls),
            WiretapPattern::from_lists({{2, 3, 5}, {1, 4, 5}, {1, 3, 6}, {2, 4, 6}}, 6)};
}

inline WiretapProblem example3(DecodeClass cls)
{
    return {NetworkSpec(3, 3, cls),
            WiretapPattern::from_lists({{1, 4}, {2, 3, 4}, {1, 2, 5, 6}, {3, 5, 6}}, 6)};
}

inline WiretapProblem example4(DecodeClass cls)
{
    return {NetworkSpec(3, 2, cls),
            WiretapPattern::from_lists({{1, 2, 4}, {3, 4}, {2, 5}, {1, 3, 5}}, 5)};
}

inline WiretapProblem example5()
{
    return {NetworkSpec(3, 3, DecodeClass::II),
            WiretapPattern::from_lists(
                {{2, 4, 5}, {2, 3, 6}, {1, 4, 6}, {1, 3, 5}, {1, 2, 4}}, 6)};
}

inline WiretapProblem example6()
{
    return {NetworkSpec(3, 3, DecodeClass::II),
            WiretapPattern::from_lists({{3, 5, 6},
                                        {3, 4, 6},
                                        {3, 4, 5},
                                        {2, 5, 6},
                                        {2, 4, 6},
                                        {2, 3, 6},
                                        {2, 3, 5},
                                        {2, 3, 4},
                                        {1, 5, 6},
                                        {1, 3, 5},
                                        {1, 3, 4},
                                        {1, 2, 4, 5}},
                                       6)};
}

} // namespace extest
