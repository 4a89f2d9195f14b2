#include "cardzk/goishi.hpp"

#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

namespace cardzk {

namespace {

constexpr int kNorth = 0, kEast = 1, kSouth = 2, kWest = 3;
constexpr int kDr[4] = {-1, 0, 1, 0};
constexpr int kDc[4] = {0, 1, 0, -1};

int reverse_dir(int d) { return (d + 2) % 4; }

} // namespace

void check_goishi_puzzle(const GoishiPuzzle& p) {
    if (p.n < 1) throw std::invalid_argument("goishi: grid size must be positive");
    if (p.stones.empty()) throw std::invalid_argument("goishi: at least one stone required");
    std::set<std::pair<int, int>> seen;
    for (auto [r, c] : p.stones) {
        if (r < 0 || r >= p.n || c < 0 || c >= p.n)
            throw std::invalid_argument("goishi: stone outside the grid");
        if (!seen.insert({r, c}).second)
            throw std::invalid_argument("goishi: duplicate stone");
    }
}

bool validate_goishi(const GoishiPuzzle& p, const GoishiSolution& s) {
    check_goishi_puzzle(p);
    const auto& picks = s.picks;
    if (picks.size() != p.stones.size()) return false;

    std::set<std::pair<int, int>> remaining(p.stones.begin(), p.stones.end());
    std::set<std::pair<int, int>> used;
    for (const auto& pk : picks)
        if (!remaining.count(pk) || !used.insert(pk).second) return false;

    remaining.erase(picks[0]);
    int prev_dir = -1;
    for (std::size_t i = 1; i < picks.size(); ++i) {
        const auto [r0, c0] = picks[i - 1];
        const auto [r1, c1] = picks[i];
        int d;
        if (r0 == r1 && c0 != c1)
            d = c1 > c0 ? kEast : kWest;
        else if (c0 == c1 && r0 != r1)
            d = r1 > r0 ? kSouth : kNorth;
        else
            return false; // not a straight move
        if (prev_dir != -1 && d == reverse_dir(prev_dir)) return false;
        for (int rr = r0 + kDr[d], cc = c0 + kDc[d]; rr != r1 || cc != c1;
             rr += kDr[d], cc += kDc[d])
            if (remaining.count({rr, cc})) return false; // not the first stone on the ray
        remaining.erase(picks[i]);
        prev_dir = d;
    }
    return true;
}

std::vector<GoishiSolution> solve_goishi(const GoishiPuzzle& p,
                                         std::optional<std::uint64_t> limit) {
    check_goishi_puzzle(p);
    std::vector<GoishiSolution> found;
    if (limit && *limit == 0) return found;

    std::set<std::pair<int, int>> remaining(p.stones.begin(), p.stones.end());
    std::vector<std::pair<int, int>> picks;

    // From each position at most one stone is reachable per direction (the
    // first on the ray), so the search branches only over directions.
    auto dfs = [&](auto&& self, std::pair<int, int> cur, int prev_dir) -> bool {
        if (remaining.empty()) {
            found.push_back(GoishiSolution{picks});
            return limit && found.size() >= *limit;
        }
        for (int d = 0; d < 4; ++d) {
            if (prev_dir != -1 && d == reverse_dir(prev_dir)) continue;
            for (int rr = cur.first + kDr[d], cc = cur.second + kDc[d];
                 rr >= 0 && rr < p.n && cc >= 0 && cc < p.n; rr += kDr[d], cc += kDc[d]) {
                if (!remaining.count({rr, cc})) continue;
                const std::pair<int, int> next{rr, cc};
                remaining.erase(next);
                picks.push_back(next);
                const bool stop = self(self, next, d);
                picks.pop_back();
                remaining.insert(next);
                if (stop) return true;
                break;
            }
        }
        return false;
    };

    for (const auto& first : p.stones) {
        remaining.erase(first);
        picks.push_back(first);
        const bool stop = dfs(dfs, first, -1);
        picks.pop_back();
        remaining.insert(first);
        if (stop) break;
    }
    return found;
}

int ExtendedGrid::flat_of(int row, int col) const {
    if (row < 0 || row >= n || col < 0 || col >= n)
        throw std::out_of_range("ExtendedGrid: cell outside the puzzle grid");
    return (row + n - 1) * side + (col + n - 1);
}

bool ExtendedGrid::is_inner(int flat) const {
    if (flat < 0 || flat >= side * side) return false;
    const int row = flat / side;
    const int col = flat % side;
    return row >= n - 1 && row <= 2 * n - 2 && col >= n - 1 && col <= 2 * n - 2;
}

ExtendedGrid setup_grid(Engine& engine, const GoishiPuzzle& p) {
    check_goishi_puzzle(p);
    const int side = 3 * p.n - 2;
    CardMatrix m = engine.new_matrix(side, side, std::vector<Pile>(side * side));
    const std::set<std::pair<int, int>> stones(p.stones.begin(), p.stones.end());
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const bool inner = r >= p.n - 1 && r <= 2 * p.n - 2 && c >= p.n - 1 &&
                               c <= 2 * p.n - 2;
            int v = kDummy;
            if (inner)
                v = stones.count({r - (p.n - 1), c - (p.n - 1)}) ? kStone : kEmpty;
            engine.place_card(m, r, c, engine.make_card(v), Visibility::PublicValue);
        }
    engine.turn_all_down(m);

    ExtendedGrid g;
    g.n = p.n;
    g.side = side;
    g.cells.reserve(static_cast<std::size_t>(side) * side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) g.cells.push_back(std::move(m.pile(r, c)));
    return g;
}

std::array<std::vector<int>, 4> path_positions(int n, int flat) {
    const int side = 3 * n - 2;
    const int row = flat / side;
    const int col = flat % side;
    if (flat < 0 || flat >= side * side ||
        row < n - 1 || row > 2 * n - 2 || col < n - 1 || col > 2 * n - 2)
        throw std::out_of_range("path_positions: not an inner cell");
    std::array<std::vector<int>, 4> out;
    for (int d = 0; d < 4; ++d)
        for (int j = 1; j <= n - 1; ++j)
            out[d].push_back((row + kDr[d] * j) * side + (col + kDc[d] * j));
    return out;
}

std::array<Pile, 4> path_stacks(ExtendedGrid& g, int flat) {
    auto positions = path_positions(g.n, flat);
    std::array<Pile, 4> stacks;
    for (int d = 0; d < 4; ++d)
        for (int idx : positions[d]) {
            Pile& cell = g.cells[idx];
            if (cell.size() != 1) throw std::logic_error("path_stacks: cell not intact");
            stacks[d].push_back(cell[0]);
            cell.clear();
        }
    return stacks;
}

void place_back(ExtendedGrid& g, int flat, std::array<Pile, 4> stacks) {
    auto positions = path_positions(g.n, flat);
    for (int d = 0; d < 4; ++d) {
        if (stacks[d].size() != positions[d].size())
            throw std::invalid_argument("place_back: stack size mismatch");
        for (std::size_t j = 0; j < positions[d].size(); ++j) {
            Pile& cell = g.cells[positions[d][j]];
            if (!cell.empty()) throw std::logic_error("place_back: cell occupied");
            cell.push_back(stacks[d][j]);
        }
    }
}

ProtocolResult prove_goishi(const GoishiPuzzle& puz, const GoishiSolution& sol,
                            RandomSource& rng, const GoishiProveOptions& options) {
    check_goishi_puzzle(puz);
    const int n = puz.n;
    const int side = 3 * n - 2;
    const int m = static_cast<int>(puz.stones.size());
    if (static_cast<int>(sol.picks.size()) != m)
        throw std::invalid_argument("goishi: pick list length must equal the stone count");
    for (auto [r, c] : sol.picks)
        if (r < 0 || r >= n || c < 0 || c >= n)
            throw std::invalid_argument("goishi: pick outside the grid");

    Engine engine(kDummy);
    ExtendedGrid grid = setup_grid(engine, puz);

    ProtocolResult out;
    out.grid_cards = side * side;
    for (const auto& pile : grid.cells) out.initial_layout.push_back(pile[0].id);

    const int dir_off[4] = {-side, 1, side, -1};

    bool ok = true;
    Reason why = Reason::None;
    std::string where;
    auto fail = [&](Reason reason, int iteration) {
        ok = false;
        why = reason;
        where = "pick " + std::to_string(iteration);
    };
    auto snapshot = [&](int iteration) {
        if (!options.on_iteration) return;
        std::vector<std::uint64_t> ids;
        std::vector<int> values;
        for (const auto& pile : grid.cells) {
            ids.push_back(pile[0].id);
            values.push_back(pile[0].value);
        }
        options.on_iteration(iteration, ids, values);
    };

    // First pick: cut to the claimed stone, show it, mark it picked.
    {
        ChosenCut cut(engine, std::move(grid.cells),
                      grid.flat_of(sol.picks[0].first, sol.picks[0].second), rng);
        if (engine.reveal(cut.matrix(), 0, cut.chosen_col()) != kStone) {
            fail(Reason::NoStoneAtFirstPick, 1);
        } else {
            engine.replace_card(cut.matrix(), 0, cut.chosen_col(),
                                engine.make_card(kPicked), Visibility::PublicValue);
            grid.cells = cut.end(rng);
            snapshot(1);
        }
    }

    std::array<Card, 4> holder{}; // direction markers, live from iteration 2 on

    for (int p = 2; p <= m && ok; ++p) {
        // The forbidden direction is the reverse of the last travel
        // direction: swapping north/south and east/west markers makes the
        // forbidden slot the one holding the 1.
        if (p >= 3) {
            std::swap(holder[kNorth], holder[kSouth]);
            std::swap(holder[kEast], holder[kWest]);
        }

        ChosenCut cut(engine, std::move(grid.cells),
                      grid.flat_of(sol.picks[p - 2].first, sol.picks[p - 2].second), rng);
        if (engine.reveal(cut.matrix(), 0, cut.chosen_col()) != kPicked) {
            fail(Reason::LostCurrentMarker, p);
            break;
        }
        engine.replace_card(cut.matrix(), 0, cut.chosen_col(), engine.make_card(kEmpty),
                            Visibility::PublicValue);

        // Travel claim from the witness.
        const auto [r0, c0] = sol.picks[p - 2];
        const auto [r1, c1] = sol.picks[p - 1];
        int claimed_dir;
        int claim_pos;
        if (r0 == r1 && c0 != c1) {
            claimed_dir = c1 > c0 ? kEast : kWest;
            claim_pos = std::abs(c1 - c0) - 1;
        } else if (c0 == c1 && r0 != r1) {
            claimed_dir = r1 > r0 ? kSouth : kNorth;
            claim_pos = std::abs(r1 - r0) - 1;
        } else {
            // No straight line joins the two cells, so no honest claim
            // exists. Aim at a ray whose farthest cell is a border dummy:
            // the first-on-path check then fails for certain, without
            // exposing which move the witness actually named.
            claimed_dir = r0 <= n - 2 ? kNorth : kSouth;
            claim_pos = n - 2;
        }

        // Lift the four directional paths out of the open cut.
        std::array<std::vector<int>, 4> cut_cols;
        std::array<Pile, 4> stacks;
        for (int d = 0; d < 4; ++d)
            for (int j = 1; j <= n - 1; ++j) {
                const int col = cut.relative(dir_off[d] * j);
                cut_cols[d].push_back(col);
                stacks[d].push_back(engine.take_card(cut.matrix(), 0, col));
            }

        // Top each stack with its direction marker: fresh public zeros on
        // the second pick (no direction is forbidden yet), the retained
        // hidden markers afterwards.
        CardMatrix staging =
            engine.new_matrix(1, 4, std::vector<Pile>(stacks.begin(), stacks.end()));
        for (int d = 0; d < 4; ++d) {
            if (p == 2)
                engine.place_card(staging, 0, d, engine.make_card(kEmpty),
                                  Visibility::PublicValue);
            else
                engine.place_card(staging, 0, d, holder[d], Visibility::Hidden);
        }
        std::vector<Pile> dir_piles;
        dir_piles.reserve(4);
        for (int d = 0; d < 4; ++d) dir_piles.push_back(std::move(staging.pile(0, d)));

        ChosenCut dir_cut(engine, std::move(dir_piles), claimed_dir, rng);
        const int dcol = dir_cut.chosen_col();

        if (p >= 3 && !options.skip_forbidden_check &&
            engine.reveal(dir_cut.matrix(), 0, dcol) != kEmpty) {
            fail(Reason::ForbiddenDirection, p);
            break;
        }

        Card old_marker = engine.take_card(dir_cut.matrix(), 0, dcol);
        std::vector<Card> path;
        path.reserve(n - 1);
        for (int j = 0; j < n - 1; ++j)
            path.push_back(engine.take_card(dir_cut.matrix(), 0, dcol));

        FnzOptions opt;
        opt.expected = kStone;
        opt.replacement = engine.make_card(kPicked);
        FnzResult fnz = first_non_zero(engine, std::move(path), claim_pos, opt, rng);
        if (!fnz.accepted) {
            fail(Reason::FirstOnPathMismatch, p);
            break;
        }

        // Rebuild the chosen stack, then swap every stack's marker for a
        // fresh hidden one: 1 at the chosen direction, 0 elsewhere.
        for (int j = n - 2; j >= 0; --j)
            engine.put_card(dir_cut.matrix(), 0, dcol, fnz.sequence[j]);
        engine.put_card(dir_cut.matrix(), 0, dcol, old_marker);
        for (int c = 0; c < 4; ++c)
            engine.replace_card(dir_cut.matrix(), 0, c,
                                engine.make_card(c == dcol ? kStone : kEmpty),
                                Visibility::Hidden);

        auto dir_restored = dir_cut.end(rng);
        for (int d = 0; d < 4; ++d) {
            holder[d] = dir_restored[d][0];
            for (int j = 1; j <= n - 1; ++j)
                engine.put_card(cut.matrix(), 0, cut_cols[d][j - 1], dir_restored[d][j]);
        }

        grid.cells = cut.end(rng);
        snapshot(p);
    }

    engine.append_verdict(ok, why);
    out.accepted = ok;
    out.reason = ok ? Reason::None : why;
    out.detail = where;
    if (ok)
        for (const auto& pile : grid.cells) out.final_layout.push_back(pile[0].id);
    out.cards_created = engine.cards_created();
    out.transcript = engine.take_transcript();
    return out;
}

} // namespace cardzk
