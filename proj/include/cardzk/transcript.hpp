#pragma once

#include <string>
#include <variant>
#include <vector>

namespace cardzk {

// The transcript is the verifier's complete view of a run: every shuffle,
// reveal, placement and public shift, in order, plus the final verdict.
// Nothing secret is ever recorded — shuffle events carry no offset or
// permutation, hidden placements carry no value.

enum class ShuffleKind { Cyclic, Permutation };
enum class Visibility { PublicValue, Hidden };

// Why a verifier rejected. Serialized tokens are stable (they appear in
// transcript files); see reason_token / reason_from_token.
enum class Reason {
    None,
    CutMarkerInvalid,   // chosen cut: marker row did not show exactly one 1
    CutAnchorInvalid,   // chosen cut: anchor row did not show exactly one 1
    ZeroAtChosen,       // first-nonzero: claimed term revealed as 0
    NonzeroBefore,      // first-nonzero: a predecessor revealed nonzero
    UnexpectedValue,    // first-nonzero: claimed term != announced value
    MultisetMismatch,   // uniqueness check: revealed values != required multiset
    NoStoneAtFirstPick,
    LostCurrentMarker,
    ForbiddenDirection,
    FirstOnPathMismatch,
};

const char* reason_token(Reason r);
Reason reason_from_token(const std::string& token);

struct ShuffleEvent {
    ShuffleKind kind;
    int rows;
    int cols;
    bool operator==(const ShuffleEvent&) const = default;
};

struct RevealEvent {
    int row;
    int col;
    int depth;
    int value;
    bool operator==(const RevealEvent&) const = default;
};

struct PlaceEvent {
    int row;
    int col;
    Visibility vis;
    int value; // meaningful only when vis == PublicValue
    bool operator==(const PlaceEvent&) const = default;
};

struct PublicShiftEvent {
    int offset;
    bool operator==(const PublicShiftEvent&) const = default;
};

struct VerdictEvent {
    bool accept;
    Reason reason; // Reason::None when accepting
    bool operator==(const VerdictEvent&) const = default;
};

using TranscriptEvent =
    std::variant<ShuffleEvent, RevealEvent, PlaceEvent, PublicShiftEvent, VerdictEvent>;

struct Transcript {
    std::vector<TranscriptEvent> events;

    int shuffle_count() const {
        int n = 0;
        for (const auto& e : events)
            if (std::holds_alternative<ShuffleEvent>(e)) ++n;
        return n;
    }
};

} // namespace cardzk
