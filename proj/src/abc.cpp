#include "cardzk/abc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace cardzk {

namespace {

using Addr = std::pair<int, int>;

// Cell addresses of a clue's line, ordered from the clue's edge inward.
std::vector<Addr> line_addrs(int n, char edge, int index) {
    std::vector<Addr> addrs;
    addrs.reserve(n);
    for (int t = 0; t < n; ++t) {
        switch (edge) {
            case 't': addrs.emplace_back(t, index); break;
            case 'b': addrs.emplace_back(n - 1 - t, index); break;
            case 'l': addrs.emplace_back(index, t); break;
            case 'r': addrs.emplace_back(index, n - 1 - t); break;
        }
    }
    return addrs;
}

int first_letter(const std::vector<int>& line) {
    for (int v : line)
        if (v != 0) return v;
    return 0;
}

int first_nonzero_pos(const std::vector<int>& line) {
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] != 0) return static_cast<int>(i);
    return 0; // no honest claim exists; the protocol run will reject
}

bool line_counts_ok(const std::vector<int>& line, int k) {
    const int n = static_cast<int>(line.size());
    std::vector<int> count(k + 1, 0);
    for (int v : line) {
        if (v < 0 || v > k) return false;
        ++count[v];
    }
    for (int v = 1; v <= k; ++v)
        if (count[v] != 1) return false;
    return count[0] == n - k;
}

void check_solution_shape(const AbcPuzzle& p, const AbcSolution& s) {
    if (static_cast<int>(s.grid.size()) != p.n)
        throw std::invalid_argument("abc: solution grid has wrong number of rows");
    for (const auto& row : s.grid)
        if (static_cast<int>(row.size()) != p.n)
            throw std::invalid_argument("abc: solution grid has wrong row length");
}

} // namespace

void check_abc_puzzle(const AbcPuzzle& p) {
    if (p.n < 1) throw std::invalid_argument("abc: grid size must be positive");
    if (p.k < 1 || p.k > p.n)
        throw std::invalid_argument("abc: letter count must lie in 1..n");
    for (const auto* clues : {&p.top, &p.bottom, &p.left, &p.right}) {
        if (static_cast<int>(clues->size()) != p.n)
            throw std::invalid_argument("abc: clue array length must equal n");
        for (int v : *clues)
            if (v < 0 || v > p.k)
                throw std::invalid_argument("abc: clue letter outside 1..k");
    }
}

bool validate_abc(const AbcPuzzle& p, const AbcSolution& s) {
    check_abc_puzzle(p);
    check_solution_shape(p, s);
    const int n = p.n;

    for (int r = 0; r < n; ++r)
        if (!line_counts_ok(s.grid[r], p.k)) return false;
    for (int c = 0; c < n; ++c) {
        std::vector<int> col(n);
        for (int r = 0; r < n; ++r) col[r] = s.grid[r][c];
        if (!line_counts_ok(col, p.k)) return false;
    }

    auto clue_holds = [&](char edge, int index, int clue) {
        std::vector<int> line;
        for (Addr a : line_addrs(n, edge, index)) line.push_back(s.grid[a.first][a.second]);
        return first_letter(line) == clue;
    };
    for (int j = 0; j < n; ++j) {
        if (p.top[j] != 0 && !clue_holds('t', j, p.top[j])) return false;
        if (p.bottom[j] != 0 && !clue_holds('b', j, p.bottom[j])) return false;
    }
    for (int i = 0; i < n; ++i) {
        if (p.left[i] != 0 && !clue_holds('l', i, p.left[i])) return false;
        if (p.right[i] != 0 && !clue_holds('r', i, p.right[i])) return false;
    }
    return true;
}

std::vector<AbcSolution> solve_abc(const AbcPuzzle& p, std::optional<std::uint64_t> limit) {
    check_abc_puzzle(p);
    const int n = p.n;
    const int k = p.k;
    const int zeros_per_line = n - k;

    std::vector<AbcSolution> found;
    if (limit && *limit == 0) return found;

    std::vector<std::vector<int>> grid(n, std::vector<int>(n, 0));
    std::vector<std::vector<bool>> row_used(n, std::vector<bool>(k + 1, false));
    std::vector<std::vector<bool>> col_used(n, std::vector<bool>(k + 1, false));
    std::vector<int> row_zeros(n, 0), col_zeros(n, 0);

    auto row_clues_ok = [&](int r) {
        std::vector<int> line = grid[r];
        if (p.left[r] != 0 && first_letter(line) != p.left[r]) return false;
        std::reverse(line.begin(), line.end());
        return p.right[r] == 0 || first_letter(line) == p.right[r];
    };
    auto col_clues_ok = [&](int c) {
        std::vector<int> line(n);
        for (int r = 0; r < n; ++r) line[r] = grid[r][c];
        if (p.top[c] != 0 && first_letter(line) != p.top[c]) return false;
        std::reverse(line.begin(), line.end());
        return p.bottom[c] == 0 || first_letter(line) == p.bottom[c];
    };

    // Cell-by-cell backtracking; clue checks fire when a line completes.
    auto descend = [&](auto&& self, int cell) -> bool {
        if (cell == n * n) {
            found.push_back(AbcSolution{grid});
            return limit && found.size() >= *limit;
        }
        const int r = cell / n;
        const int c = cell % n;
        for (int v = 0; v <= k; ++v) {
            if (v == 0) {
                if (row_zeros[r] >= zeros_per_line || col_zeros[c] >= zeros_per_line)
                    continue;
                ++row_zeros[r];
                ++col_zeros[c];
            } else {
                if (row_used[r][v] || col_used[c][v]) continue;
                row_used[r][v] = col_used[c][v] = true;
            }
            grid[r][c] = v;
            const bool prune = (c == n - 1 && !row_clues_ok(r)) ||
                               (r == n - 1 && !col_clues_ok(c));
            if (!prune && self(self, cell + 1)) return true;
            grid[r][c] = 0;
            if (v == 0) {
                --row_zeros[r];
                --col_zeros[c];
            } else {
                row_used[r][v] = col_used[c][v] = false;
            }
        }
        return false;
    };
    descend(descend, 0);
    return found;
}

CardMatrix encode_solution(Engine& engine, const AbcPuzzle& p, const AbcSolution& s) {
    check_abc_puzzle(p);
    check_solution_shape(p, s);
    std::vector<Pile> piles;
    piles.reserve(static_cast<std::size_t>(p.n) * p.n);
    for (const auto& row : s.grid)
        for (int v : row) {
            if (v < 0 || v > p.k)
                throw std::invalid_argument("abc: cell value outside 0..k");
            piles.push_back({engine.make_card(v)});
        }
    return engine.new_matrix(p.n, p.n, std::move(piles));
}

ProtocolResult prove_abc(const AbcPuzzle& p, const AbcSolution& s, RandomSource& rng) {
    check_abc_puzzle(p);
    const int n = p.n;
    Engine engine(std::max(p.n, p.k));
    CardMatrix grid = encode_solution(engine, p, s);

    ProtocolResult out;
    out.grid_cards = n * n;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.initial_layout.push_back(grid.pile(r, c)[0].id);

    std::vector<int> required;
    for (int v = 1; v <= p.k; ++v) required.push_back(v);
    for (int i = 0; i < n - p.k; ++i) required.push_back(0);

    auto take_line = [&](const std::vector<Addr>& addrs) {
        std::vector<Card> cards;
        cards.reserve(addrs.size());
        for (Addr a : addrs) cards.push_back(engine.take_card(grid, a.first, a.second));
        return cards;
    };
    auto put_line = [&](const std::vector<Addr>& addrs, const std::vector<Card>& cards) {
        for (std::size_t i = 0; i < addrs.size(); ++i)
            engine.put_card(grid, addrs[i].first, addrs[i].second, cards[i]);
    };

    bool ok = true;
    Reason why = Reason::None;
    std::string where;
    auto fail = [&](Reason reason, std::string detail) {
        ok = false;
        why = reason;
        where = std::move(detail);
    };

    // Content checks: every row, then every column, holds each letter once
    // plus the forced number of blanks.
    for (int r = 0; r < n && ok; ++r) {
        auto addrs = line_addrs(n, 'l', r);
        MultisetResult res = verify_multiset(engine, take_line(addrs), required, rng);
        if (!res.accepted)
            fail(res.reason, "row " + std::to_string(r));
        else
            put_line(addrs, res.sequence);
    }
    for (int c = 0; c < n && ok; ++c) {
        auto addrs = line_addrs(n, 't', c);
        MultisetResult res = verify_multiset(engine, take_line(addrs), required, rng);
        if (!res.accepted)
            fail(res.reason, "col " + std::to_string(c));
        else
            put_line(addrs, res.sequence);
    }

    // Clue checks: the first letter seen from the clue's edge must equal the
    // clue. The claimed position comes from the prover's witness.
    struct ClueRef {
        char edge;
        const char* name;
        int index;
        int clue;
    };
    std::vector<ClueRef> clues;
    for (int j = 0; j < n; ++j)
        if (p.top[j] != 0) clues.push_back({'t', "top", j, p.top[j]});
    for (int j = 0; j < n; ++j)
        if (p.bottom[j] != 0) clues.push_back({'b', "bottom", j, p.bottom[j]});
    for (int i = 0; i < n; ++i)
        if (p.left[i] != 0) clues.push_back({'l', "left", i, p.left[i]});
    for (int i = 0; i < n; ++i)
        if (p.right[i] != 0) clues.push_back({'r', "right", i, p.right[i]});

    for (const ClueRef& ref : clues) {
        if (!ok) break;
        auto addrs = line_addrs(n, ref.edge, ref.index);
        std::vector<int> witness_line;
        witness_line.reserve(n);
        for (Addr a : addrs) witness_line.push_back(s.grid[a.first][a.second]);

        FnzOptions opt;
        opt.expected = ref.clue;
        FnzResult res = first_non_zero(engine, take_line(addrs),
                                       first_nonzero_pos(witness_line), opt, rng);
        if (!res.accepted)
            fail(res.reason, std::string(ref.name) + " " + std::to_string(ref.index));
        else
            put_line(addrs, res.sequence);
    }

    engine.append_verdict(ok, why);
    out.accepted = ok;
    out.reason = ok ? Reason::None : why;
    out.detail = where;
    if (ok)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out.final_layout.push_back(grid.pile(r, c)[0].id);
    out.cards_created = engine.cards_created();
    out.transcript = engine.take_transcript();
    return out;
}

} // namespace cardzk
