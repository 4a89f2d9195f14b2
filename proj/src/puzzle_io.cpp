#include "cardzk/puzzle_io.hpp"

#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cardzk {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// Logical lines: 1-based numbering over the raw text, blank lines dropped.
std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::istringstream split(raw);
        std::vector<std::string> tokens;
        std::string token;
        while (split >> token) tokens.push_back(std::move(token));
        if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    }
    return lines;
}

int parse_int(const std::string& token, int line, const char* what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + " is not a number: " + token);
    }
    if (used != token.size())
        throw ParseError(line, std::string(what) + " is not a number: " + token);
    return value;
}

// "." or a letter within the first k alphabet letters.
int parse_letter(const std::string& token, int k, int line) {
    if (token == ".") return 0;
    if (token.size() == 1 && token[0] >= 'A' && token[0] < 'A' + k)
        return token[0] - 'A' + 1;
    throw ParseError(line, "expected '.' or a letter A.." +
                               std::string(1, static_cast<char>('A' + k - 1)) +
                               ", got: " + token);
}

char letter_char(int v) { return static_cast<char>('A' + v - 1); }

std::vector<int> parse_letter_row(const Line& line, std::size_t from, int n, int k) {
    if (static_cast<int>(line.tokens.size() - from) != n)
        throw ParseError(line.number,
                         "expected " + std::to_string(n) + " tokens, got " +
                             std::to_string(line.tokens.size() - from));
    std::vector<int> row;
    row.reserve(n);
    for (std::size_t i = from; i < line.tokens.size(); ++i)
        row.push_back(parse_letter(line.tokens[i], k, line.number));
    return row;
}

PuzzleFile parse_abc(const std::vector<Line>& lines) {
    const Line& header = lines[0];
    if (header.tokens.size() != 3)
        throw ParseError(header.number, "header must read: abc <n> <k>");
    PuzzleFile file;
    file.kind = PuzzleKind::Abc;
    file.abc.n = parse_int(header.tokens[1], header.number, "grid size");
    file.abc.k = parse_int(header.tokens[2], header.number, "letter count");
    if (file.abc.n < 1)
        throw ParseError(header.number, "grid size must be positive");
    if (file.abc.k < 1 || file.abc.k > file.abc.n)
        throw ParseError(header.number, "letter count must lie in 1..n");
    if (file.abc.k > 26)
        throw ParseError(header.number, "letter count beyond Z is not expressible");

    const int n = file.abc.n;
    const char* names[4] = {"top:", "bottom:", "left:", "right:"};
    std::vector<int>* sides[4] = {&file.abc.top, &file.abc.bottom, &file.abc.left,
                                  &file.abc.right};
    std::size_t at = 1;
    for (int s = 0; s < 4; ++s, ++at) {
        if (at >= lines.size())
            throw ParseError(lines.back().number + 1,
                             std::string("missing clue line ") + names[s]);
        const Line& line = lines[at];
        if (line.tokens[0] != names[s])
            throw ParseError(line.number,
                             std::string("expected clue line ") + names[s]);
        *sides[s] = parse_letter_row(line, 1, n, file.abc.k);
    }

    if (at < lines.size() && lines[at].tokens[0] == "solution:") {
        if (lines[at].tokens.size() != 1)
            throw ParseError(lines[at].number, "solution: takes no tokens");
        ++at;
        AbcSolution sol;
        for (int r = 0; r < n; ++r, ++at) {
            if (at >= lines.size())
                throw ParseError(lines.back().number + 1,
                                 "solution block ends before row " + std::to_string(r));
            sol.grid.push_back(parse_letter_row(lines[at], 0, n, file.abc.k));
        }
        file.abc_solution = std::move(sol);
    }
    if (at < lines.size())
        throw ParseError(lines[at].number, "unexpected content after the puzzle");
    return file;
}

PuzzleFile parse_goishi(const std::vector<Line>& lines) {
    const Line& header = lines[0];
    if (header.tokens.size() != 2)
        throw ParseError(header.number, "header must read: goishi <n>");
    PuzzleFile file;
    file.kind = PuzzleKind::Goishi;
    file.goishi.n = parse_int(header.tokens[1], header.number, "grid size");
    if (file.goishi.n < 1)
        throw ParseError(header.number, "grid size must be positive");

    const int n = file.goishi.n;
    std::size_t at = 1;
    for (int r = 0; r < n; ++r, ++at) {
        if (at >= lines.size())
            throw ParseError(lines.back().number + 1,
                             "board ends before row " + std::to_string(r));
        const Line& line = lines[at];
        if (line.tokens.size() != 1 || static_cast<int>(line.tokens[0].size()) != n)
            throw ParseError(line.number, "board row must be exactly " +
                                              std::to_string(n) + " cells");
        for (int c = 0; c < n; ++c) {
            const char cell = line.tokens[0][c];
            if (cell == 'o')
                file.goishi.stones.push_back({r, c});
            else if (cell != '.')
                throw ParseError(line.number,
                                 std::string("board cells are '.' or 'o', got: ") +
                                     cell);
        }
    }
    if (file.goishi.stones.empty())
        throw ParseError(header.number, "board holds no stones");

    if (at < lines.size() && lines[at].tokens[0] == "picks:") {
        const Line& line = lines[at];
        GoishiSolution sol;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const std::string& token = line.tokens[i];
            const std::size_t comma = token.find(',');
            if (comma == std::string::npos)
                throw ParseError(line.number, "picks are r,c pairs, got: " + token);
            const int r = parse_int(token.substr(0, comma), line.number, "pick row");
            const int c = parse_int(token.substr(comma + 1), line.number, "pick column");
            if (r < 0 || r >= n || c < 0 || c >= n)
                throw ParseError(line.number, "pick outside the grid: " + token);
            sol.picks.push_back({r, c});
        }
        // The picks block is a witness: it must name every stone exactly once.
        std::set<std::pair<int, int>> stones(file.goishi.stones.begin(),
                                             file.goishi.stones.end());
        std::set<std::pair<int, int>> seen;
        for (const auto& pk : sol.picks) {
            if (!stones.count(pk))
                throw ParseError(line.number,
                                 "pick " + std::to_string(pk.first) + "," +
                                     std::to_string(pk.second) + " is not a stone");
            if (!seen.insert(pk).second)
                throw ParseError(line.number,
                                 "pick " + std::to_string(pk.first) + "," +
                                     std::to_string(pk.second) + " repeats");
        }
        if (sol.picks.size() != file.goishi.stones.size())
            throw ParseError(line.number, "picks must name every stone exactly once");
        file.goishi_picks = std::move(sol);
        ++at;
    }
    if (at < lines.size())
        throw ParseError(lines[at].number, "unexpected content after the puzzle");
    return file;
}

} // namespace

PuzzleFile parse_puzzle_text(const std::string& text) {
    std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty puzzle file");
    const std::string& tag = lines[0].tokens[0];
    if (tag == "abc") return parse_abc(lines);
    if (tag == "goishi") return parse_goishi(lines);
    throw ParseError(lines[0].number, "unknown puzzle header: " + tag);
}

std::string abc_grid_to_text(const AbcSolution& s, int k) {
    std::ostringstream os;
    for (const auto& row : s.grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ' ';
            if (row[c] == 0)
                os << '.';
            else if (row[c] <= k && k <= 26)
                os << letter_char(row[c]);
            else
                throw std::invalid_argument("grid letter outside the alphabet");
        }
        os << '\n';
    }
    return os.str();
}

std::string goishi_picks_to_text(const GoishiSolution& s) {
    std::ostringstream os;
    os << "picks:";
    for (const auto& [r, c] : s.picks) os << ' ' << r << ',' << c;
    os << '\n';
    return os.str();
}

std::string puzzle_to_text(const PuzzleFile& file) {
    std::ostringstream os;
    if (file.kind == PuzzleKind::Abc) {
        const AbcPuzzle& p = file.abc;
        os << "abc " << p.n << ' ' << p.k << '\n';
        const char* names[4] = {"top:", "bottom:", "left:", "right:"};
        const std::vector<int>* sides[4] = {&p.top, &p.bottom, &p.left, &p.right};
        for (int s = 0; s < 4; ++s) {
            os << names[s];
            for (int v : *sides[s])
                os << ' ' << (v == 0 ? std::string(1, '.')
                                     : std::string(1, letter_char(v)));
            os << '\n';
        }
        if (file.abc_solution) {
            os << "solution:\n";
            os << abc_grid_to_text(*file.abc_solution, p.k);
        }
    } else {
        const GoishiPuzzle& p = file.goishi;
        os << "goishi " << p.n << '\n';
        std::set<std::pair<int, int>> stones(p.stones.begin(), p.stones.end());
        for (int r = 0; r < p.n; ++r) {
            for (int c = 0; c < p.n; ++c) os << (stones.count({r, c}) ? 'o' : '.');
            os << '\n';
        }
        if (file.goishi_picks) os << goishi_picks_to_text(*file.goishi_picks);
    }
    return os.str();
}

} // namespace cardzk
