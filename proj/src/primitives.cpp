#include "cardzk/primitives.hpp"

#include <algorithm>
#include <stdexcept>

namespace cardzk {

FnzResult first_non_zero(Engine& engine, std::vector<Card> sequence, int claim_pos,
                         const FnzOptions& options, RandomSource& rng) {
    const int n = static_cast<int>(sequence.size());
    if (n == 0) throw std::invalid_argument("first_non_zero: empty sequence");
    if (claim_pos < 0 || claim_pos >= n)
        throw std::invalid_argument("first_non_zero: claim position out of range");
    if (options.replacement && options.replacement->face != Face::Down)
        throw std::invalid_argument("first_non_zero: replacement card must be face-down");

    // Left-pad with n-1 public zeros so that a full cycle starting anywhere
    // in the original sequence meets at most n-1 predecessors, all of which
    // are zero exactly when the claimed term is the first nonzero one.
    std::vector<Pile> piles;
    piles.reserve(2 * n - 1);
    for (int i = 0; i < n - 1; ++i) piles.push_back({engine.make_card(0)});
    for (auto& card : sequence) piles.push_back({card});

    std::optional<int> revealed;
    try {
        ChosenCut cut(engine, std::move(piles), (n - 1) + claim_pos, rng);
        for (int off = -(n - 1); off <= -1; ++off) {
            int col = cut.relative(off);
            if (engine.reveal(cut.matrix(), 0, col) != 0)
                throw RejectError{Reason::NonzeroBefore};
        }
        int value = engine.reveal(cut.matrix(), 0, cut.chosen_col());
        revealed = value;
        if (value == 0) throw RejectError{Reason::ZeroAtChosen};
        if (options.expected && value != *options.expected)
            throw RejectError{Reason::UnexpectedValue};
        if (options.replacement)
            engine.replace_card(cut.matrix(), 0, cut.chosen_col(), *options.replacement,
                                Visibility::PublicValue);

        auto restored = cut.end(rng);
        FnzResult result;
        result.accepted = true;
        result.revealed = revealed;
        result.sequence.reserve(n);
        for (int j = n - 1; j < 2 * n - 1; ++j) {
            if (restored[j].size() != 1)
                throw std::logic_error("first_non_zero: pile size corrupted");
            result.sequence.push_back(restored[j][0]);
        }
        return result;
    } catch (const RejectError& err) {
        FnzResult result;
        result.accepted = false;
        result.reason = err.reason;
        result.revealed = revealed;
        return result;
    }
}

MultisetResult verify_multiset(Engine& engine, std::vector<Card> sequence,
                               std::vector<int> required, RandomSource& rng) {
    const int n = static_cast<int>(sequence.size());
    if (n == 0) throw std::invalid_argument("verify_multiset: empty sequence");
    if (static_cast<int>(required.size()) != n)
        throw std::invalid_argument("verify_multiset: required multiset size mismatch");

    // Row 0 carries the sequence, row 1 an index card per column so the
    // original order survives the scrambles.
    std::vector<Pile> piles;
    piles.reserve(2 * n);
    for (auto& card : sequence) piles.push_back({card});
    for (int j = 0; j < n; ++j) piles.push_back({engine.make_card(j + 1)});
    CardMatrix m = engine.new_matrix(2, n, std::move(piles));

    try {
        engine.pile_scramble_shuffle(m, rng);
        std::vector<int> values;
        values.reserve(n);
        for (int c = 0; c < n; ++c) values.push_back(engine.reveal(m, 0, c));
        std::vector<int> sorted_values = values;
        std::vector<int> sorted_required = required;
        std::sort(sorted_values.begin(), sorted_values.end());
        std::sort(sorted_required.begin(), sorted_required.end());
        if (sorted_values != sorted_required) throw RejectError{Reason::MultisetMismatch};

        engine.pile_scramble_shuffle(m, rng);
        std::vector<int> order(n, -1);
        for (int c = 0; c < n; ++c) {
            int idx = engine.reveal(m, 1, c);
            if (idx < 1 || idx > n || order[idx - 1] != -1)
                throw std::logic_error("verify_multiset: index row corrupted");
            order[idx - 1] = c;
        }
        engine.public_reorder_columns(m, order);

        MultisetResult result;
        result.accepted = true;
        result.sequence.reserve(n);
        for (int j = 0; j < n; ++j) result.sequence.push_back(m.pile(0, j)[0]);
        return result;
    } catch (const RejectError& err) {
        MultisetResult result;
        result.accepted = false;
        result.reason = err.reason;
        return result;
    }
}

} // namespace cardzk
