#include "cardzk/engine.hpp"

#include <algorithm>
#include <numeric>

namespace cardzk {

const char* reason_token(Reason r) {
    switch (r) {
        case Reason::None: return "none";
        case Reason::CutMarkerInvalid: return "cut-marker-invalid";
        case Reason::CutAnchorInvalid: return "cut-anchor-invalid";
        case Reason::ZeroAtChosen: return "zero-at-chosen";
        case Reason::NonzeroBefore: return "nonzero-before";
        case Reason::UnexpectedValue: return "unexpected-value";
        case Reason::MultisetMismatch: return "multiset-mismatch";
        case Reason::NoStoneAtFirstPick: return "no-stone-at-first-pick";
        case Reason::LostCurrentMarker: return "lost-current-marker";
        case Reason::ForbiddenDirection: return "forbidden-direction";
        case Reason::FirstOnPathMismatch: return "first-on-path-mismatch";
    }
    return "none";
}

Reason reason_from_token(const std::string& token) {
    for (Reason r : {Reason::None, Reason::CutMarkerInvalid, Reason::CutAnchorInvalid,
                     Reason::ZeroAtChosen, Reason::NonzeroBefore, Reason::UnexpectedValue,
                     Reason::MultisetMismatch, Reason::NoStoneAtFirstPick,
                     Reason::LostCurrentMarker, Reason::ForbiddenDirection,
                     Reason::FirstOnPathMismatch}) {
        if (token == reason_token(r)) return r;
    }
    throw std::invalid_argument("unknown reject reason: " + token);
}

Engine::Engine(int max_value) : max_value_(max_value) {
    if (max_value < 0) throw std::invalid_argument("Engine: max_value must be >= 0");
}

Card Engine::make_card(int value) {
    if (value < 0 || value > max_value_)
        throw std::invalid_argument("Engine: card value outside declared alphabet");
    ++cards_created_;
    return Card{next_id_++, value, Face::Down};
}

CardMatrix Engine::new_matrix(int rows, int cols, std::vector<Pile> piles) {
    return CardMatrix(rows, cols, std::move(piles));
}

void Engine::require_shuffleable(const CardMatrix& m) const {
    for (int r = 0; r < m.rows(); ++r)
        if (!m.row_uniform(r))
            throw std::logic_error("shuffle: piles in a row have unequal lengths");
}

void Engine::rotate_left(CardMatrix& m, int offset) {
    const int cols = m.cols();
    if (cols <= 1 || offset % cols == 0) return;
    const int r0 = ((offset % cols) + cols) % cols;
    std::vector<std::vector<Pile>> columns;
    columns.reserve(cols);
    for (int c = 0; c < cols; ++c) columns.push_back(m.take_column(c));
    for (int c = 0; c < cols; ++c) {
        auto& src = columns[(c + r0) % cols];
        for (int r = 0; r < m.rows(); ++r) m.pile(r, c) = std::move(src[r]);
    }
}

void Engine::pile_shifting_shuffle(CardMatrix& m, RandomSource& rng) {
    turn_all_down(m);
    require_shuffleable(m);
    const int offset = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m.cols())));
    rotate_left(m, offset);
    transcript_.events.push_back(ShuffleEvent{ShuffleKind::Cyclic, m.rows(), m.cols()});
}

void Engine::pile_scramble_shuffle(CardMatrix& m, RandomSource& rng) {
    turn_all_down(m);
    require_shuffleable(m);
    const int cols = m.cols();
    std::vector<int> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = cols - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::vector<Pile>> columns;
    columns.reserve(cols);
    for (int c = 0; c < cols; ++c) columns.push_back(m.take_column(c));
    for (int c = 0; c < cols; ++c) {
        auto& src = columns[perm[c]];
        for (int r = 0; r < m.rows(); ++r) m.pile(r, c) = std::move(src[r]);
    }
    transcript_.events.push_back(ShuffleEvent{ShuffleKind::Permutation, m.rows(), m.cols()});
}

int Engine::reveal(CardMatrix& m, int row, int col, int depth) {
    Card& card = m.card_at(row, col, depth);
    card.face = Face::Up;
    transcript_.events.push_back(RevealEvent{row, col, depth, card.value});
    return card.value;
}

Card Engine::replace_card(CardMatrix& m, int row, int col, Card replacement, Visibility vis) {
    Pile& p = m.pile(row, col);
    if (p.empty()) throw std::out_of_range("replace_card: empty pile");
    Card old = p.front();
    replacement.face = Face::Down;
    p.front() = replacement;
    const int recorded = vis == Visibility::PublicValue ? replacement.value : 0;
    transcript_.events.push_back(PlaceEvent{row, col, vis, recorded});
    return old;
}

void Engine::place_card(CardMatrix& m, int row, int col, Card card, Visibility vis) {
    card.face = Face::Down;
    Pile& p = m.pile(row, col);
    p.insert(p.begin(), card);
    const int recorded = vis == Visibility::PublicValue ? card.value : 0;
    transcript_.events.push_back(PlaceEvent{row, col, vis, recorded});
}

Card Engine::take_card(CardMatrix& m, int row, int col) {
    Pile& p = m.pile(row, col);
    if (p.empty()) throw std::out_of_range("take_card: empty pile");
    Card c = p.front();
    p.erase(p.begin());
    return c;
}

void Engine::put_card(CardMatrix& m, int row, int col, Card card) {
    card.face = Face::Down;
    Pile& p = m.pile(row, col);
    p.insert(p.begin(), card);
}

void Engine::public_cyclic_shift(CardMatrix& m, int marker_col) {
    if (marker_col < 0 || marker_col >= m.cols())
        throw std::out_of_range("public_cyclic_shift: column out of range");
    rotate_left(m, marker_col);
    transcript_.events.push_back(PublicShiftEvent{marker_col});
}

void Engine::public_reorder_columns(CardMatrix& m, const std::vector<int>& order) {
    const int cols = m.cols();
    if (order.size() != static_cast<std::size_t>(cols))
        throw std::invalid_argument("public_reorder_columns: bad permutation size");
    std::vector<bool> seen(cols, false);
    for (int c : order) {
        if (c < 0 || c >= cols || seen[c])
            throw std::invalid_argument("public_reorder_columns: not a permutation");
        seen[c] = true;
    }
    std::vector<std::vector<Pile>> columns;
    columns.reserve(cols);
    for (int c = 0; c < cols; ++c) columns.push_back(m.take_column(c));
    for (int c = 0; c < cols; ++c) {
        auto& src = columns[order[c]];
        for (int r = 0; r < m.rows(); ++r) m.pile(r, c) = std::move(src[r]);
    }
}

void Engine::turn_all_down(CardMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            for (Card& card : m.pile(r, c)) card.face = Face::Down;
}

void Engine::append_verdict(bool accept, Reason reason) {
    transcript_.events.push_back(VerdictEvent{accept, accept ? Reason::None : reason});
}

} // namespace cardzk
