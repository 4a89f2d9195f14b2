#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cardzk/primitives.hpp"

namespace cardzk {

// Goishi Hiroi: pick up all m stones from an n x n grid, one at a time.
// After the freely chosen first stone, each move travels in a straight line
// (north/east/south/west) from the last picked stone, must pick the first
// remaining stone on that line, and may not head back the way the previous
// move came.

// Card values on the extended proof grid.
inline constexpr int kEmpty = 0;
inline constexpr int kStone = 1;
inline constexpr int kPicked = 2;
inline constexpr int kDummy = 3;

struct GoishiPuzzle {
    int n = 0;
    std::vector<std::pair<int, int>> stones; // distinct (row, col), 0-based
};

struct GoishiSolution {
    std::vector<std::pair<int, int>> picks; // claimed pick order
};

// Throws invalid_argument unless n >= 1 and stones are distinct in-grid
// cells with at least one stone.
void check_goishi_puzzle(const GoishiPuzzle& p);

// True iff picks is a permutation of the stones that respects all three
// movement rules.
bool validate_goishi(const GoishiPuzzle& p, const GoishiSolution& s);

// All pick orders by depth-first search, up to `limit` when given. Intended
// for desk-scale instances (the decision problem is hard in general).
std::vector<GoishiSolution> solve_goishi(const GoishiPuzzle& p,
                                         std::optional<std::uint64_t> limit = std::nullopt);

// The proof runs on the grid extended by n-1 cells of dummy cards in every
// direction: a (3n-2) x (3n-2) field of single-card piles, flattened
// row-major so neighbor steps become fixed index offsets (north -(3n-2),
// east +1, south +(3n-2), west -1).
struct ExtendedGrid {
    int n = 0;
    int side = 0;                // 3n-2
    std::vector<Pile> cells;     // side*side piles, row-major

    // Flat index of a puzzle cell (inner region).
    int flat_of(int row, int col) const;
    // Whether a flat index lies in the inner n x n region.
    bool is_inner(int flat) const;
};

// Publicly lays out the extended grid: stone cells get a 1, empty cells a 0,
// the border dummies a 3; every placement is a public event, and all cards
// end face-down.
ExtendedGrid setup_grid(Engine& engine, const GoishiPuzzle& p);

// Flat indices of the n-1 cells on the ray from `flat` toward each of
// north, east, south, west (nearest first). Requires an inner position, so
// the rays stay inside the extended grid.
std::array<std::vector<int>, 4> path_positions(int n, int flat);

// Removes the path cards around an inner cell into four stacks (nearest
// card on top); place_back restores them. Pure positional bookkeeping.
std::array<Pile, 4> path_stacks(ExtendedGrid& g, int flat);
void place_back(ExtendedGrid& g, int flat, std::array<Pile, 4> stacks);

struct GoishiProveOptions {
    // Test double for schema-audit negative controls: the prover silently
    // skips showing that the chosen direction is not forbidden.
    bool skip_forbidden_check = false;
    // White-box instrumentation: called after each completed iteration with
    // the 1-based iteration number and the flat grid snapshot.
    std::function<void(int iteration, const std::vector<std::uint64_t>& ids,
                       const std::vector<int>& values)>
        on_iteration;
};

// Full interactive proof that the pick order solves the puzzle. Iteration 1
// cuts to the first stone (shows a 1, leaves a 2); every later iteration
// cuts to the previous pick (shows the 2, leaves a 0), lifts the four
// directional paths into stacks topped by hidden direction markers, cuts to
// the travel direction (from iteration 3 on, first showing its marker is
// not the forbidden one), and proves the picked stone is the first on that
// path (shows a 1, leaves a 2). Accepts iff all m iterations pass; shuffles
// on accept: 2 + 6(m-1). picks must hold m in-grid cells (contents may
// cheat; the run then rejects).
ProtocolResult prove_goishi(const GoishiPuzzle& p, const GoishiSolution& s,
                            RandomSource& rng, const GoishiProveOptions& options = {});

} // namespace cardzk
