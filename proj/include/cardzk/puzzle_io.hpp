#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cardzk/abc.hpp"
#include "cardzk/goishi.hpp"

namespace cardzk {

// Raised on malformed puzzle or transcript text; line numbers are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class PuzzleKind { Abc, Goishi };

// One parsed puzzle file: either an end-view grid with clues plus an optional
// solution block, or a stone board plus an optional pick order.  Letters live
// as chars A.. in files and as integers 1..k here; blanks are '.' / 0.
struct PuzzleFile {
    PuzzleKind kind;
    AbcPuzzle abc;
    std::optional<AbcSolution> abc_solution;
    GoishiPuzzle goishi;
    std::optional<GoishiSolution> goishi_picks;

    bool has_witness() const {
        return kind == PuzzleKind::Abc ? abc_solution.has_value()
                                       : goishi_picks.has_value();
    }
};

PuzzleFile parse_puzzle_text(const std::string& text);
std::string puzzle_to_text(const PuzzleFile& file);

// Solution blocks alone, in the same syntax the files use.
std::string abc_grid_to_text(const AbcSolution& s, int k);
std::string goishi_picks_to_text(const GoishiSolution& s);

} // namespace cardzk
