#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cardzk/primitives.hpp"

namespace cardzk {

// ABC End View: fill an n x n grid so every row and column holds each letter
// 1..k exactly once (0 = blank), while each edge clue names the first letter
// visible from that edge. Clue arrays use 0 for "no clue".
struct AbcPuzzle {
    int n = 0;
    int k = 0;
    std::vector<int> top, bottom, left, right; // length n each
};

struct AbcSolution {
    std::vector<std::vector<int>> grid; // n x n, values 0..k
};

// Throws invalid_argument unless n >= 1, 1 <= k <= n, clue arrays have
// length n and clue values lie in 0..k.
void check_abc_puzzle(const AbcPuzzle& p);

// True iff the grid satisfies the letter-count rule on every line and every
// present clue matches the first letter seen from its edge. Throws on shape
// mismatch; rule violations (including out-of-alphabet values) are false.
bool validate_abc(const AbcPuzzle& p, const AbcSolution& s);

// All solutions by backtracking, up to `limit` when given. Every returned
// solution passes validate_abc.
std::vector<AbcSolution> solve_abc(const AbcPuzzle& p,
                                   std::optional<std::uint64_t> limit = std::nullopt);

// One face-down card per cell (n x n matrix of single-card piles). Grid
// values must lie in 0..k, but need not form a valid solution: soundness
// tests deliberately encode cheating grids.
CardMatrix encode_solution(Engine& engine, const AbcPuzzle& p, const AbcSolution& s);

// Full interactive proof that s solves p, revealing nothing beyond validity:
// every row and column is checked against the multiset {1..k} + zeros, then
// every clue line is checked with the first-nonzero protocol oriented from
// the clue's edge inward (expected value = the clue letter). Accepts iff all
// checks pass; on reject, detail names the failing line by public indices
// only. Shuffles on accept: 2*(2n + number of clues).
ProtocolResult prove_abc(const AbcPuzzle& p, const AbcSolution& s, RandomSource& rng);

} // namespace cardzk
