#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cardzk/chosen_cut.hpp"
#include "cardzk/engine.hpp"

namespace cardzk {

// Result of a full proof run: the verdict, the verifier's view, and the
// bookkeeping the audits need (card/shuffle budgets, id layouts for
// restoration checks). initial/final layouts list card ids in grid order;
// final_layout is empty when the run rejected.
struct ProtocolResult {
    bool accepted = false;
    Reason reason = Reason::None;
    std::string detail;
    Transcript transcript;
    std::uint64_t cards_created = 0;
    int grid_cards = 0;
    std::vector<std::uint64_t> initial_layout;
    std::vector<std::uint64_t> final_layout;
};

struct FnzOptions {
    // When set, the revealed term must equal this value.
    std::optional<int> expected;
    // When set, the revealed term is publicly swapped for this card.
    std::optional<Card> replacement;
};

struct FnzResult {
    bool accepted = false;
    Reason reason = Reason::None;
    // Value shown for the claimed term, when the run got that far.
    std::optional<int> revealed;
    // The input sequence back in original order (with the replacement at the
    // claimed position, if one was given). Only populated on accept.
    std::vector<Card> sequence;
};

// Shows that the term at claim_pos is the first nonzero term of the
// sequence, revealing its value but not its position: n-1 public 0-pads are
// appended on the left, a chosen cut selects the claimed term, and the n-1
// cyclic predecessors are revealed (all must be 0) followed by the term
// itself (must be nonzero). Uses exactly 2 shuffles.
FnzResult first_non_zero(Engine& engine, std::vector<Card> sequence, int claim_pos,
                         const FnzOptions& options, RandomSource& rng);

struct MultisetResult {
    bool accepted = false;
    Reason reason = Reason::None;
    std::vector<Card> sequence; // restored order; populated on accept
};

// Shows that the sequence's hidden values form exactly the required
// multiset, without revealing their order, and restores the original order:
// index cards 1..n are paired under the sequence, the columns are scrambled,
// row 0 is revealed and checked, the columns are scrambled again, and the
// revealed index row drives a public reorder. Uses exactly 2 shuffles.
MultisetResult verify_multiset(Engine& engine, std::vector<Card> sequence,
                               std::vector<int> required, RandomSource& rng);

} // namespace cardzk
