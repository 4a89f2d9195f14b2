#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cardzk {

enum class Face { Down, Up };

// A physical card: a number on the front, an indistinguishable back. The id
// is an engine-internal token identity used by tests to check that shuffles
// and cuts restore the original order; it never appears in a transcript.
struct Card {
    std::uint64_t id = 0;
    int value = 0;
    Face face = Face::Down;
};

// A pile of cards, index 0 = top.
using Pile = std::vector<Card>;

// rows x cols grid of piles: the shared table protocols shuffle and reveal
// on. Shuffles act on whole columns, so piles in the same row must hold the
// same number of cards whenever a shuffle runs; between shuffles the piles
// may grow or shrink as cards are moved around.
class CardMatrix {
public:
    CardMatrix() = default;

    CardMatrix(int rows, int cols, std::vector<Pile> piles)
        : rows_(rows), cols_(cols), cells_(std::move(piles)) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("CardMatrix: dimensions must be positive");
        if (cells_.size() != static_cast<std::size_t>(rows) * cols)
            throw std::invalid_argument("CardMatrix: pile count does not match dimensions");
        for (int r = 0; r < rows; ++r) {
            const std::size_t len = pile(r, 0).size();
            for (int c = 1; c < cols; ++c)
                if (pile(r, c).size() != len)
                    throw std::invalid_argument("CardMatrix: row has piles of unequal length");
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Pile& pile(int row, int col) {
        check_cell(row, col);
        return cells_[static_cast<std::size_t>(row) * cols_ + col];
    }
    const Pile& pile(int row, int col) const {
        check_cell(row, col);
        return cells_[static_cast<std::size_t>(row) * cols_ + col];
    }

    // Card at (row, col, depth); depth counts from the top of the pile.
    Card& card_at(int row, int col, int depth) {
        Pile& p = pile(row, col);
        if (depth < 0 || static_cast<std::size_t>(depth) >= p.size())
            throw std::out_of_range("CardMatrix: depth out of range");
        return p[static_cast<std::size_t>(depth)];
    }

    bool row_uniform(int row) const {
        const std::size_t len = pile(row, 0).size();
        for (int c = 1; c < cols_; ++c)
            if (pile(row, c).size() != len) return false;
        return true;
    }

    // Extract a column (all piles top to bottom by row).
    std::vector<Pile> take_column(int col) {
        std::vector<Pile> out;
        out.reserve(rows_);
        for (int r = 0; r < rows_; ++r) out.push_back(std::move(pile(r, col)));
        return out;
    }

private:
    void check_cell(int row, int col) const {
        if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
            throw std::out_of_range("CardMatrix: cell address out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Pile> cells_;
};

} // namespace cardzk
