#include "cardzk/transcript_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace cardzk {

namespace {

const char* kind_token(ShuffleKind kind) {
    return kind == ShuffleKind::Cyclic ? "cyclic" : "scramble";
}

int strict_int(const std::string& text, int line, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw ParseError(line, what + " is not a number: " + text);
    }
    if (used != text.size())
        throw ParseError(line, what + " is not a number: " + text);
    return value;
}

// "key=value" accessor over one line's tokens.
std::string kv(const std::vector<std::string>& tokens, std::size_t index,
               const char* key, int line) {
    const std::string prefix = std::string(key) + "=";
    if (index >= tokens.size())
        throw ParseError(line, "missing field " + prefix + "...");
    if (tokens[index].rfind(prefix, 0) != 0)
        throw ParseError(line, "expected " + prefix + "..., got: " + tokens[index]);
    return tokens[index].substr(prefix.size());
}

int kv_int(const std::vector<std::string>& tokens, std::size_t index,
           const char* key, int line) {
    return strict_int(kv(tokens, index, key, line), line, std::string("field ") + key);
}

void expect_width(const std::vector<std::string>& tokens, std::size_t width,
                  int line) {
    if (tokens.size() != width)
        throw ParseError(line, "record has " + std::to_string(tokens.size()) +
                                   " tokens where " + std::to_string(width) +
                                   " belong");
}

} // namespace

std::string event_to_line(const TranscriptEvent& event) {
    std::ostringstream os;
    if (const auto* sh = std::get_if<ShuffleEvent>(&event)) {
        os << "SHUFFLE kind=" << kind_token(sh->kind) << " rows=" << sh->rows
           << " cols=" << sh->cols;
    } else if (const auto* rv = std::get_if<RevealEvent>(&event)) {
        os << "REVEAL r=" << rv->row << " c=" << rv->col << " d=" << rv->depth
           << " v=" << rv->value;
    } else if (const auto* pl = std::get_if<PlaceEvent>(&event)) {
        os << "PLACE r=" << pl->row << " c=" << pl->col;
        if (pl->vis == Visibility::PublicValue)
            os << " vis=public v=" << pl->value;
        else
            os << " vis=hidden";
    } else if (const auto* sf = std::get_if<PublicShiftEvent>(&event)) {
        os << "SHIFT off=" << sf->offset;
    } else if (const auto* vd = std::get_if<VerdictEvent>(&event)) {
        os << "VERDICT " << (vd->accept ? "accept" : "reject");
        if (!vd->accept) os << " reason=" << reason_token(vd->reason);
    }
    return os.str();
}

std::string transcript_to_text(const Transcript& t) {
    std::string out;
    for (const auto& event : t.events) {
        out += event_to_line(event);
        out += '\n';
    }
    return out;
}

TranscriptEvent parse_event_line(const std::string& line, int line_number) {
    std::istringstream split(line);
    std::vector<std::string> tokens;
    std::string token;
    while (split >> token) tokens.push_back(std::move(token));
    if (tokens.empty()) throw ParseError(line_number, "empty transcript record");

    const std::string& tag = tokens[0];
    if (tag == "SHUFFLE") {
        expect_width(tokens, 4, line_number);
        const std::string kind = kv(tokens, 1, "kind", line_number);
        ShuffleEvent out{};
        if (kind == "cyclic")
            out.kind = ShuffleKind::Cyclic;
        else if (kind == "scramble")
            out.kind = ShuffleKind::Permutation;
        else
            throw ParseError(line_number, "unknown shuffle kind: " + kind);
        out.rows = kv_int(tokens, 2, "rows", line_number);
        out.cols = kv_int(tokens, 3, "cols", line_number);
        return out;
    }
    if (tag == "REVEAL") {
        expect_width(tokens, 5, line_number);
        RevealEvent out{};
        out.row = kv_int(tokens, 1, "r", line_number);
        out.col = kv_int(tokens, 2, "c", line_number);
        out.depth = kv_int(tokens, 3, "d", line_number);
        out.value = kv_int(tokens, 4, "v", line_number);
        return out;
    }
    if (tag == "PLACE") {
        if (tokens.size() != 4 && tokens.size() != 5)
            throw ParseError(line_number, "placement records carry 4 or 5 tokens");
        PlaceEvent out{};
        out.row = kv_int(tokens, 1, "r", line_number);
        out.col = kv_int(tokens, 2, "c", line_number);
        const std::string vis = kv(tokens, 3, "vis", line_number);
        if (vis == "public") {
            expect_width(tokens, 5, line_number);
            out.vis = Visibility::PublicValue;
            out.value = kv_int(tokens, 4, "v", line_number);
        } else if (vis == "hidden") {
            expect_width(tokens, 4, line_number);
            out.vis = Visibility::Hidden;
            out.value = 0;
        } else {
            throw ParseError(line_number, "visibility is public or hidden, got: " + vis);
        }
        return out;
    }
    if (tag == "SHIFT") {
        expect_width(tokens, 2, line_number);
        return PublicShiftEvent{kv_int(tokens, 1, "off", line_number)};
    }
    if (tag == "VERDICT") {
        if (tokens.size() < 2)
            throw ParseError(line_number, "verdict records carry accept or reject");
        VerdictEvent out{};
        if (tokens[1] == "accept") {
            expect_width(tokens, 2, line_number);
            out.accept = true;
            out.reason = Reason::None;
        } else if (tokens[1] == "reject") {
            expect_width(tokens, 3, line_number);
            out.accept = false;
            const std::string reason = kv(tokens, 2, "reason", line_number);
            try {
                out.reason = reason_from_token(reason);
            } catch (const std::exception&) {
                throw ParseError(line_number, "unknown reject reason: " + reason);
            }
        } else {
            throw ParseError(line_number, "verdict is accept or reject, got: " + tokens[1]);
        }
        return out;
    }
    throw ParseError(line_number, "unknown record tag: " + tag);
}

Transcript parse_transcript_text(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.find_first_not_of(" \t") == std::string::npos) continue;
        t.events.push_back(parse_event_line(raw, number));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Schema replay: walk the transcript against the exact event skeleton the
// honest protocol emits for this puzzle, deriving cut positions from the
// marker reveals in the transcript itself.

namespace {

struct SchemaError {
    int line;
    std::string message;
};

class Walker {
public:
    explicit Walker(const Transcript& t) : events_(t.events) {}

    // 1-based line of the event consumed last.
    int here() const { return static_cast<int>(pos_); }

    [[noreturn]] void bail(const std::string& message) const {
        throw SchemaError{here(), message};
    }

    template <typename T>
    const T& take(const char* what) {
        if (pos_ >= events_.size())
            throw SchemaError{static_cast<int>(events_.size()) + 1,
                              std::string("transcript ends where ") + what +
                                  " was expected"};
        const TranscriptEvent& event = events_[pos_++];
        const T* typed = std::get_if<T>(&event);
        if (!typed) bail(std::string("expected ") + what + " here");
        return *typed;
    }

    void shuffle(ShuffleKind kind, int rows, int cols) {
        const auto& s = take<ShuffleEvent>("a shuffle");
        if (s.kind != kind)
            bail(std::string("shuffle kind must be ") + kind_token(kind));
        if (s.rows != rows || s.cols != cols)
            bail("shuffle shape must be " + std::to_string(rows) + "x" +
                 std::to_string(cols));
    }

    int reveal_at(int row, int col) {
        const auto& r = take<RevealEvent>("a reveal");
        if (r.row != row || r.col != col || r.depth != 0)
            bail("reveal belongs at row " + std::to_string(row) + ", column " +
                 std::to_string(col) + ", top card");
        return r.value;
    }

    void reveal_exact(int row, int col, int value, const char* why) {
        const int v = reveal_at(row, col);
        if (v != value)
            bail(std::string(why) + ": revealed " + std::to_string(v) +
                 " where " + std::to_string(value) + " belongs");
    }

    // Full row of 0/1 reveals, columns ascending; returns the single 1's column.
    int marker_row(int row, int cols) {
        int one = -1;
        for (int c = 0; c < cols; ++c) {
            const int v = reveal_at(row, c);
            if (v == 1) {
                if (one != -1) bail("marker row shows a second 1");
                one = c;
            } else if (v != 0) {
                bail("marker row holds a value other than 0 or 1");
            }
        }
        if (one == -1) bail("marker row shows no 1");
        return one;
    }

    void place_public(int row, int col, int value) {
        const auto& p = take<PlaceEvent>("a public placement");
        if (p.row != row || p.col != col)
            bail("placement belongs at row " + std::to_string(row) + ", column " +
                 std::to_string(col));
        if (p.vis != Visibility::PublicValue)
            bail("placement must show its value");
        if (p.value != value)
            bail("placed value must be " + std::to_string(value));
    }

    void place_hidden(int row, int col) {
        const auto& p = take<PlaceEvent>("a hidden placement");
        if (p.row != row || p.col != col)
            bail("placement belongs at row " + std::to_string(row) + ", column " +
                 std::to_string(col));
        if (p.vis != Visibility::Hidden) bail("placement must be hidden");
    }

    void shift(int offset) {
        const auto& s = take<PublicShiftEvent>("the closing shift");
        if (s.offset != offset)
            bail("closing shift must undo the revealed anchor, offset " +
                 std::to_string(offset));
    }

    void verdict_accept() {
        const auto& v = take<VerdictEvent>("the verdict");
        if (!v.accept) bail("view does not end in an accepting verdict");
    }

    void done() {
        if (pos_ != events_.size())
            throw SchemaError{static_cast<int>(pos_) + 1,
                              "content after the verdict"};
    }

private:
    const std::vector<TranscriptEvent>& events_;
    std::size_t pos_ = 0;
};

// Opening half of a cut: cyclic shuffle then the full marker row.
int cut_open(Walker& w, int cols) {
    w.shuffle(ShuffleKind::Cyclic, 3, cols);
    return w.marker_row(1, cols);
}

// Closing half: cyclic shuffle, anchor row, and the shift undoing it.
void cut_close(Walker& w, int cols) {
    w.shuffle(ShuffleKind::Cyclic, 3, cols);
    const int anchor = w.marker_row(2, cols);
    w.shift(anchor);
}

// One uniqueness check: two scrambles, value row then index row.
void multiset_block(Walker& w, int n, const std::vector<int>& required_sorted) {
    w.shuffle(ShuffleKind::Permutation, 2, n);
    std::vector<int> values;
    values.reserve(n);
    for (int c = 0; c < n; ++c) values.push_back(w.reveal_at(0, c));
    std::sort(values.begin(), values.end());
    if (values != required_sorted)
        w.bail("revealed line is not the required letter multiset");

    w.shuffle(ShuffleKind::Permutation, 2, n);
    std::vector<int> index;
    index.reserve(n);
    for (int c = 0; c < n; ++c) index.push_back(w.reveal_at(1, c));
    std::sort(index.begin(), index.end());
    for (int c = 0; c < n; ++c)
        if (index[c] != c + 1) w.bail("index row is not a permutation of 1..n");
}

// One first-nonzero check over a sequence of the given length: all terms
// before the chosen one must show 0 and the chosen one the expected value.
void fnz_block(Walker& w, int length, int expected_value, bool replaced_public) {
    const int width = 2 * length - 1;
    const int chosen = cut_open(w, width);
    for (int off = -(length - 1); off <= -1; ++off)
        w.reveal_exact(0, (chosen + off + width) % width, 0,
                       "terms before the claimed first nonzero must be 0");
    w.reveal_exact(0, chosen, expected_value,
                   "the claimed term must match the announced value");
    if (replaced_public) w.place_public(0, chosen, kPicked);
    cut_close(w, width);
}

void walk_abc(Walker& w, const AbcPuzzle& p) {
    const int n = p.n;
    std::vector<int> required;
    for (int v = 1; v <= p.k; ++v) required.push_back(v);
    for (int i = 0; i < n - p.k; ++i) required.push_back(0);
    std::sort(required.begin(), required.end());

    for (int r = 0; r < n; ++r) multiset_block(w, n, required);
    for (int c = 0; c < n; ++c) multiset_block(w, n, required);

    for (int j = 0; j < n; ++j)
        if (p.top[j] != 0) fnz_block(w, n, p.top[j], false);
    for (int j = 0; j < n; ++j)
        if (p.bottom[j] != 0) fnz_block(w, n, p.bottom[j], false);
    for (int i = 0; i < n; ++i)
        if (p.left[i] != 0) fnz_block(w, n, p.left[i], false);
    for (int i = 0; i < n; ++i)
        if (p.right[i] != 0) fnz_block(w, n, p.right[i], false);

    w.verdict_accept();
    w.done();
}

void walk_goishi(Walker& w, const GoishiPuzzle& p) {
    const int n = p.n;
    const int side = 3 * n - 2;
    const int cells = side * side;
    const int m = static_cast<int>(p.stones.size());
    const std::set<std::pair<int, int>> stones(p.stones.begin(), p.stones.end());

    // Public setup: border dummies and the stone layout.
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const bool inner = r >= n - 1 && r <= 2 * n - 2 && c >= n - 1 &&
                               c <= 2 * n - 2;
            int v = kDummy;
            if (inner)
                v = stones.count({r - (n - 1), c - (n - 1)}) ? kStone : kEmpty;
            w.place_public(r, c, v);
        }

    // First pick: show a stone and mark it picked.
    {
        const int g = cut_open(w, cells);
        w.reveal_exact(0, g, kStone, "the first pick must uncover a stone");
        w.place_public(0, g, kPicked);
        cut_close(w, cells);
    }

    // Later picks: return to the picked marker, travel, pick the next stone.
    for (int pick = 2; pick <= m; ++pick) {
        const int g = cut_open(w, cells);
        w.reveal_exact(0, g, kPicked, "the cut must return to the picked marker");
        w.place_public(0, g, kEmpty);

        for (int d = 0; d < 4; ++d) {
            if (pick == 2)
                w.place_public(0, d, kEmpty);
            else
                w.place_hidden(0, d);
        }

        const int direction = cut_open(w, 4);
        if (pick >= 3)
            w.reveal_exact(0, direction, kEmpty,
                           "travel along the forbidden direction");

        fnz_block(w, n - 1, kStone, true);

        for (int d = 0; d < 4; ++d) w.place_hidden(0, d);
        cut_close(w, 4);
        cut_close(w, cells);
    }

    w.verdict_accept();
    w.done();
}

} // namespace

SchemaCheck validate_transcript(const PuzzleFile& puzzle, const Transcript& t) {
    Walker walker(t);
    try {
        if (puzzle.kind == PuzzleKind::Abc)
            walk_abc(walker, puzzle.abc);
        else
            walk_goishi(walker, puzzle.goishi);
    } catch (const SchemaError& e) {
        return SchemaCheck{false, e.line, e.message};
    }
    return SchemaCheck{true, 0, ""};
}

} // namespace cardzk
