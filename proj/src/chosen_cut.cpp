#include "cardzk/chosen_cut.hpp"

#include <stdexcept>

namespace cardzk {

ChosenCut::ChosenCut(Engine& engine, CardMatrix m) : engine_(&engine), m_(std::move(m)) {}

ChosenCut::ChosenCut(Engine& engine, std::vector<Pile> sequence, int secret_pos,
                     RandomSource& rng)
    : engine_(&engine) {
    const int n = static_cast<int>(sequence.size());
    if (n < 1) throw std::invalid_argument("chosen cut: empty sequence");
    if (secret_pos < 0 || secret_pos >= n)
        throw std::out_of_range("chosen cut: secret position out of range");

    std::vector<Pile> piles = std::move(sequence);
    piles.reserve(static_cast<std::size_t>(3) * n);
    for (int c = 0; c < n; ++c)
        piles.push_back(Pile{engine.make_card(c == secret_pos ? 1 : 0)});
    for (int c = 0; c < n; ++c)
        piles.push_back(Pile{engine.make_card(c == 0 ? 1 : 0)});
    m_ = engine.new_matrix(3, n, std::move(piles));
    begin(rng);
}

ChosenCut ChosenCut::from_matrix(Engine& engine, CardMatrix m, RandomSource& rng) {
    if (m.rows() != 3) throw std::invalid_argument("chosen cut: matrix must have 3 rows");
    ChosenCut cut(engine, std::move(m));
    cut.begin(rng);
    return cut;
}

void ChosenCut::begin(RandomSource& rng) {
    engine_->pile_shifting_shuffle(m_, rng);
    int ones = 0;
    int marker_col = -1;
    for (int c = 0; c < m_.cols(); ++c) {
        if (engine_->reveal(m_, 1, c) == 1) {
            ++ones;
            marker_col = c;
        }
    }
    if (ones != 1) throw RejectError{Reason::CutMarkerInvalid};
    chosen_col_ = marker_col;
    open_ = true;
}

int ChosenCut::relative(int offset) const {
    if (!open_) throw std::logic_error("chosen cut: session closed");
    const int n = m_.cols();
    return static_cast<int>((((static_cast<long long>(chosen_col_) + offset) % n) + n) % n);
}

std::vector<Pile> ChosenCut::end(RandomSource& rng) {
    if (!open_) throw std::logic_error("chosen cut: session closed");
    engine_->pile_shifting_shuffle(m_, rng);
    int ones = 0;
    int anchor_col = -1;
    for (int c = 0; c < m_.cols(); ++c) {
        if (engine_->reveal(m_, 2, c) == 1) {
            ++ones;
            anchor_col = c;
        }
    }
    if (ones != 1) throw RejectError{Reason::CutAnchorInvalid};
    engine_->public_cyclic_shift(m_, anchor_col);
    open_ = false;

    std::vector<Pile> out;
    out.reserve(m_.cols());
    for (int c = 0; c < m_.cols(); ++c) out.push_back(std::move(m_.pile(0, c)));
    return out;
}

} // namespace cardzk
