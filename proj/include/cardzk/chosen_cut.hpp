#pragma once

#include <vector>

#include "cardzk/engine.hpp"

namespace cardzk {

// Verifier rejection, thrown inside protocol code and converted to an
// outcome at each protocol's public boundary.
struct RejectError {
    Reason reason;
};

// The chosen cut: the prover selects a position in a face-down sequence
// without revealing which one, uses the card there, and the sequence is
// afterwards restored to its original order.
//
// Layout is a 3-row matrix over the sequence: row 0 the sequence itself,
// row 1 a marker row with a single 1 at the prover's secret position, row 2
// an anchor row with a 1 at column 0. One cyclic shuffle and a full reveal
// of the marker row fix the chosen column publicly while the position within
// the original order stays hidden; a second shuffle, the anchor reveal and a
// public shift undo everything.
//
// Sequence entries may be piles (stacks of cards) as long as they all have
// the same height.
class ChosenCut {
public:
    ChosenCut(Engine& engine, std::vector<Pile> sequence, int secret_pos, RandomSource& rng);

    // Begin from an externally assembled 3-row matrix. Exists so tests can
    // exercise the marker-row sanity check with malformed inputs.
    static ChosenCut from_matrix(Engine& engine, CardMatrix m, RandomSource& rng);

    int cols() const { return m_.cols(); }
    int chosen_col() const { return chosen_col_; }
    bool open() const { return open_; }
    CardMatrix& matrix() { return m_; }

    // Column of the card at the given cyclic offset from the chosen one,
    // in the sequence's preserved cyclic order. offset 0 is the chosen card.
    int relative(int offset) const;

    // Reverts the matrix to its original column order and returns the
    // sequence piles. The cut is closed afterwards.
    std::vector<Pile> end(RandomSource& rng);

private:
    ChosenCut(Engine& engine, CardMatrix m);
    void begin(RandomSource& rng);

    Engine* engine_;
    CardMatrix m_;
    int chosen_col_ = -1;
    bool open_ = false;
};

} // namespace cardzk
