#pragma once

// Frozen reference instances shared by the harness and acceptance tests:
// a 5x5 three-letter end-view puzzle and a 6x6 twelve-stone pickup puzzle,
// each with one known solution.

#include "cardzk/abc.hpp"
#include "cardzk/goishi.hpp"

namespace cardzk::fixtures {

inline AbcPuzzle abc_reference_puzzle() {
    AbcPuzzle p;
    p.n = 5;
    p.k = 3;
    p.top = {2, 3, 0, 0, 0};
    p.bottom = {0, 0, 0, 1, 1};
    p.left = {0, 1, 0, 2, 0};
    p.right = {0, 3, 0, 0, 2};
    return p;
}

inline AbcSolution abc_reference_solution() {
    return AbcSolution{{{2, 0, 1, 3, 0},
                        {1, 0, 0, 2, 3},
                        {0, 3, 0, 1, 2},
                        {0, 2, 3, 0, 1},
                        {3, 1, 2, 0, 0}}};
}

inline GoishiPuzzle goishi_reference_puzzle() {
    GoishiPuzzle p;
    p.n = 6;
    p.stones = {{5, 0}, {4, 0}, {0, 0}, {4, 1}, {3, 1}, {2, 3},
                {1, 3}, {2, 4}, {5, 5}, {4, 5}, {2, 5}, {1, 5}};
    return p;
}

inline GoishiSolution goishi_reference_solution() {
    return GoishiSolution{{{3, 1}, {4, 1}, {4, 5}, {2, 5}, {2, 4}, {2, 3},
                          {1, 3}, {1, 5}, {5, 5}, {5, 0}, {4, 0}, {0, 0}}};
}

} // namespace cardzk::fixtures
