#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "streamwave/params.hpp"

namespace streamwave {

// Shape of a periodic-state response matrix: two rows (units), two tone
// intervals, and per-interval slots whose meaning depends on the kind.
enum class MatrixKind { sm, sc, lm, mixed };

enum class Percept { integration, segregation, bistability };

inline const char* to_string(Percept p) {
    switch (p) {
        case Percept::integration: return "integration";
        case Percept::segregation: return "segregation";
        default: return "bistability";
    }
}

inline const char* to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::sm: return "sm";
        case MatrixKind::sc: return "sc";
        case MatrixKind::lm: return "lm";
        default: return "mixed";
    }
}

// Binary response pattern over one period (two tone intervals).
// Slot meanings: sm {x,y}; sc {x,y,z}; lm {x,y,w}; mixed {x,y,z,w}.
// x/y/z mark activity at successive landmarks of the interval; w marks an
// inhibition press lasting into the second interval after this one and is
// shared by both rows. Unused slots hold -1.
struct StateMatrix {
    MatrixKind kind = MatrixKind::sm;
    std::array<std::array<std::array<signed char, 4>, 2>, 2> e{};

    static int slot_count(MatrixKind k) {
        switch (k) {
            case MatrixKind::sm: return 2;
            case MatrixKind::sc: return 3;
            case MatrixKind::lm: return 3;
            default: return 4;
        }
    }
    int slots() const { return slot_count(kind); }

    // w is a press-duration marker, not a response; it never counts here.
    int response_slots() const {
        switch (kind) {
            case MatrixKind::sm: return 2;
            case MatrixKind::sc: return 3;
            case MatrixKind::lm: return 2;
            default: return 3;
        }
    }

    bool has_w() const { return kind == MatrixKind::lm || kind == MatrixKind::mixed; }
    int w_slot() const { return kind == MatrixKind::lm ? 2 : 3; }

    bool responds(int row, int interval) const {
        for (int s = 0; s < response_slots(); ++s)
            if (e[row][interval][s] == 1) return true;
        return false;
    }

    int w(int interval) const { return has_w() ? e[0][interval][w_slot()] : 0; }

    std::string row_string(int row) const {
        std::string out;
        for (int i = 0; i < 2; ++i)
            for (int s = 0; s < slots(); ++s) out += char('0' + e[row][i][s]);
        return out;
    }
    std::string to_string() const { return row_string(0) + "|" + row_string(1); }

    bool operator==(const StateMatrix& o) const = default;
    bool operator<(const StateMatrix& o) const {
        if (kind != o.kind) return kind < o.kind;
        return e < o.e;
    }
};

inline StateMatrix make_matrix(MatrixKind kind, const std::string& row_A,
                               const std::string& row_B) {
    StateMatrix m;
    m.kind = kind;
    const int ns = m.slots();
    const std::string* rows[2] = {&row_A, &row_B};
    for (int r = 0; r < 2; ++r) {
        if (static_cast<int>(rows[r]->size()) != 2 * ns)
            throw ValidationError("matrix row has wrong length for its kind");
        for (int i = 0; i < 2; ++i)
            for (int s = 0; s < 4; ++s) {
                if (s >= ns) {
                    m.e[r][i][s] = -1;
                    continue;
                }
                const char ch = (*rows[r])[i * ns + s];
                if (ch != '0' && ch != '1') throw ValidationError("matrix entries must be 0/1");
                m.e[r][i][s] = static_cast<signed char>(ch - '0');
            }
    }
    return m;
}

// Row swap combined with interval swap: relabels which unit leads. An
// involution; symmetric states are its fixed points.
inline StateMatrix conjugate(const StateMatrix& m) {
    StateMatrix out;
    out.kind = m.kind;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 2; ++i) out.e[r][i] = m.e[1 - r][1 - i];
    return out;
}

// Percept read off the response pattern: integration when one percept stream
// carries every tone (both units respond twice, or one responds twice while
// the other is silent); bistability when a unit responding to both intervals
// coexists with one responding to exactly one; segregation otherwise.
inline Percept percept(const StateMatrix& m) {
    const int r_A = int(m.responds(0, 0)) + int(m.responds(0, 1));
    const int r_B = int(m.responds(1, 0)) + int(m.responds(1, 1));
    const int hi = std::max(r_A, r_B), lo = std::min(r_A, r_B);
    if (hi == 2 && (lo == 2 || lo == 0)) return Percept::integration;
    if (hi == 2 && lo == 1) return Percept::bistability;
    return Percept::segregation;
}

// Structural well-formedness shared by every kind: slot monotonicity within
// a row-interval (a unit active at a later landmark was active from the
// earlier one onward... x <= y <= z as applicable) and w agreeing across rows.
inline bool well_formed(const StateMatrix& m) {
    const int resp = m.response_slots();
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 2; ++i)
            for (int s = 0; s + 1 < resp; ++s)
                if (m.e[r][i][s] > m.e[r][i][s + 1]) return false;
    if (m.has_w()) {
        const int ws = m.w_slot();
        for (int i = 0; i < 2; ++i)
            if (m.e[0][i][ws] != m.e[1][i][ws]) return false;
    }
    return true;
}

}  // namespace streamwave
