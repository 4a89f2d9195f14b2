#pragma once

#include <cstdint>

#include "cardzk/cards.hpp"
#include "cardzk/rng.hpp"
#include "cardzk/transcript.hpp"

namespace cardzk {

// One engine per protocol run. The engine mints cards (assigning hidden
// identities), executes shuffles and reveals on card matrices, and appends
// the public consequences to the run's transcript. All hidden information
// (face-down values, shuffle offsets, permutations) stays out of the
// transcript by construction.
//
// The matrices themselves are plain values owned by the caller; the engine
// is the actor that touches them, so every observable action funnels
// through one place.
class Engine {
public:
    // max_value bounds the card alphabet for the whole session; minting a
    // card outside 0..max_value throws.
    explicit Engine(int max_value);

    Card make_card(int value);

    // Builds a matrix from rows*cols piles (row-major). Requires row-uniform
    // pile lengths. Emits no events: laying out cards that are already on
    // the table is not an observable protocol action.
    CardMatrix new_matrix(int rows, int cols, std::vector<Pile> piles);

    // Uniformly random cyclic shift of the columns. Any face-up cards are
    // turned down first (that flip is part of the shuffle, not a separate
    // event). The drawn offset is not recorded anywhere.
    void pile_shifting_shuffle(CardMatrix& m, RandomSource& rng);

    // Uniformly random permutation of the columns; same face discipline.
    void pile_scramble_shuffle(CardMatrix& m, RandomSource& rng);

    // Turn the addressed card face up and record what it shows.
    int reveal(CardMatrix& m, int row, int col, int depth = 0);

    // Swap the top card of a pile for a new one (installed face down).
    // Returns the old card. With Visibility::PublicValue the transcript
    // records the new card's value; Hidden records only that a swap happened.
    Card replace_card(CardMatrix& m, int row, int col, Card replacement, Visibility vis);

    // Push a card on top of a pile, recording the placement.
    void place_card(CardMatrix& m, int row, int col, Card card, Visibility vis);

    // Silent bookkeeping moves: physically relocating face-down cards
    // between publicly known positions reveals nothing, and no transcript
    // record exists for it. take_card pops the top card; put_card pushes.
    Card take_card(CardMatrix& m, int row, int col);
    void put_card(CardMatrix& m, int row, int col, Card card);

    // Rotate columns left so that marker_col becomes column 0. The offset is
    // public (it was just read off a revealed card) and is recorded.
    void public_cyclic_shift(CardMatrix& m, int marker_col);

    // Reorder columns by a permutation derived from revealed public values:
    // new column j takes old column order[j]. Silent — the reordering is
    // fully determined by information already in the transcript.
    void public_reorder_columns(CardMatrix& m, const std::vector<int>& order);

    void turn_all_down(CardMatrix& m);

    void append_verdict(bool accept, Reason reason = Reason::None);

    const Transcript& transcript() const { return transcript_; }
    Transcript take_transcript() { return std::move(transcript_); }

    std::uint64_t cards_created() const { return cards_created_; }
    int max_value() const { return max_value_; }

private:
    void require_shuffleable(const CardMatrix& m) const;
    static void rotate_left(CardMatrix& m, int offset);

    int max_value_;
    std::uint64_t next_id_ = 1;
    std::uint64_t cards_created_ = 0;
    Transcript transcript_;
};

} // namespace cardzk
