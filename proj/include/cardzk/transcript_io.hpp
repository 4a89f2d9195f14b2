#pragma once

#include <string>

#include "cardzk/puzzle_io.hpp"
#include "cardzk/transcript.hpp"

namespace cardzk {

// Canonical line form of one event, without trailing newline:
//   SHUFFLE kind=cyclic rows=3 cols=9
//   SHUFFLE kind=scramble rows=2 cols=5
//   REVEAL r=1 c=4 d=0 v=1
//   PLACE r=0 c=2 vis=public v=2
//   PLACE r=0 c=2 vis=hidden
//   SHIFT off=3
//   VERDICT accept
//   VERDICT reject reason=multiset-mismatch
std::string event_to_line(const TranscriptEvent& event);

// Whole-transcript text: one line per event, each newline-terminated.
std::string transcript_to_text(const Transcript& t);

// Strict inverses; throw ParseError naming the offending line.
TranscriptEvent parse_event_line(const std::string& line, int line_number);
Transcript parse_transcript_text(const std::string& text);

// Outcome of replaying a transcript against public puzzle data.
struct SchemaCheck {
    bool ok = true;
    int line = 0; // 1-based line of the first violation when !ok
    std::string message;
};

// Checks that a transcript is a legal accepting view of the puzzle's
// protocol, using nothing but the puzzle: event ordering, shuffle shapes,
// marker-row well-formedness, cut-relative reveal positions, revealed values
// implied by public data (multiset contents, clue letters, stone layout) and
// the closing shifts.  The first deviation is reported with its line number.
SchemaCheck validate_transcript(const PuzzleFile& puzzle, const Transcript& t);

} // namespace cardzk
