#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "streamwave/statematrix.hpp"

namespace streamwave {

namespace detail {

// Per-interval response patterns {x_A, y_A, x_B, y_B} realizable by the fast
// dynamics: rows monotone (x <= y) and no lone y response when neither unit
// was active at the interval start... if x_A = x_B = 0 then y_A = y_B = 0.
inline const std::vector<std::array<int, 4>>& xy_interval_patterns() {
    static const std::vector<std::array<int, 4>> v = {
        {1, 1, 1, 1}, {1, 1, 0, 1}, {0, 1, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0},
    };
    return v;
}

// Rows for three-landmark patterns: monotone x <= y <= z.
inline const std::vector<std::array<int, 3>>& xyz_rows() {
    static const std::vector<std::array<int, 3>> v = {
        {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    return v;
}

inline signed char sc8(int v) { return static_cast<signed char>(v); }

inline int min_entry(const StateMatrix& m, int nslots) {
    int mn = 1;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 2; ++i)
            for (int s = 0; s < nslots; ++s) mn = std::min(mn, int(m.e[r][i][s]));
    return mn;
}

}  // namespace detail

// Filters below implement the published realizability constraints for each
// matrix family; enumeration is exhaustive over well-formed candidates.

inline bool sm_constraints(const StateMatrix& m) {
    auto x = [&](int r, int i) { return int(m.e[r][i][0]); };
    auto y = [&](int r, int i) { return int(m.e[r][i][1]); };
    const int mn = detail::min_entry(m, 2);
    // 0: without standing inhibition a unit answers its own tone, so the
    // fully silent pattern is unrealizable
    bool silent = true;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 2; ++i)
            if (y(r, i) == 1) silent = false;
    if (silent) return false;
    // 1: simultaneous sustained responses in opposite intervals carry equal onsets
    if (y(0, 0) == 1 && y(1, 1) == 1 && x(0, 0) != x(1, 1)) return false;
    if (y(0, 1) == 1 && y(1, 0) == 1 && x(0, 1) != x(1, 0)) return false;
    // 2: a unit with unchanged partner activity cannot gain an onset later
    if (y(1, 0) == y(1, 1) && !(x(0, 0) >= x(0, 1))) return false;
    if (y(0, 0) == y(0, 1) && !(x(1, 1) >= x(1, 0))) return false;
    // 3: an off-interval onset only exists when everything else responds
    if (y(0, 1) == 1 && !(x(1, 0) <= mn)) return false;
    if (y(1, 0) == 1 && !(x(0, 1) <= mn)) return false;
    // 4: equal sustained patterns order the onsets toward the driven unit
    if (y(0, 1) == y(1, 1) && y(0, 0) == y(1, 0) &&
        !(x(0, 0) >= x(1, 0) && x(1, 1) >= x(0, 1)))
        return false;
    return true;
}

inline bool sc_constraints(const StateMatrix& m) {
    auto x = [&](int r, int i) { return int(m.e[r][i][0]); };
    auto y = [&](int r, int i) { return int(m.e[r][i][1]); };
    auto z = [&](int r, int i) { return int(m.e[r][i][2]); };
    // interval pattern: no response at all when neither unit ends the
    // preceding interval active
    for (int i = 0; i < 2; ++i)
        if (x(0, i) == 0 && x(1, i) == 0 && (y(0, i) == 1 || y(1, i) == 1)) return false;
    const int mn = detail::min_entry(m, 3);
    // 3
    if (z(0, 0) == 1 && z(1, 1) == 1 && x(0, 0) != x(1, 1)) return false;
    if (z(0, 1) == 1 && z(1, 0) == 1 && x(0, 1) != x(1, 0)) return false;
    // 4
    if (z(1, 0) == z(1, 1) && !(x(0, 0) >= x(0, 1))) return false;
    if (z(0, 0) == z(0, 1) && !(x(1, 1) >= x(1, 0))) return false;
    // 5
    if (z(0, 1) == 1 && !(x(1, 0) <= mn)) return false;
    if (z(1, 0) == 1 && !(x(0, 1) <= mn)) return false;
    // 6
    if (z(0, 1) == z(1, 1) && z(0, 0) == z(1, 0) &&
        !(x(0, 0) >= x(1, 0) && x(1, 1) >= x(0, 1)))
        return false;
    // 7: at least one strictly-inside turn-on (else the state is expressible
    // in the two-landmark family)
    bool some_late = false;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 2; ++i)
            if (z(r, i) > y(r, i)) some_late = true;
    if (!some_late) return false;
    // 8: each unit responds somewhere
    if (z(0, 0) == 0 && z(0, 1) == 0) return false;
    if (z(1, 0) == 0 && z(1, 1) == 0) return false;
    // 9
    if (z(0, 0) == 1 && z(1, 0) == 1 && y(0, 1) == y(1, 1) && !(z(1, 1) >= z(0, 1)))
        return false;
    if (z(0, 1) == 1 && z(1, 1) == 1 && y(0, 0) == y(1, 0) && !(z(0, 0) >= z(1, 0)))
        return false;
    // 10
    if (z(0, 1) == 1 && z(1, 0) == 1 && z(1, 1) != 1) return false;
    // 11
    if (z(0, 0) == z(1, 1) && z(1, 0) == z(0, 1) && x(0, 0) == x(1, 1) &&
        y(0, 1) != y(1, 0))
        return false;
    return true;
}

// Constraints for the long-press family in the canonical orientation (first
// interval carries a long press).
inline bool lm_constraints_canonical(const StateMatrix& m) {
    auto x = [&](int r, int i) { return int(m.e[r][i][0]); };
    auto y = [&](int r, int i) { return int(m.e[r][i][1]); };
    auto w = [&](int i) { return int(m.e[0][i][2]); };
    if (w(0) != 1) return false;
    // a long press needs both units sustained through that interval
    for (int i = 0; i < 2; ++i)
        if (w(i) == 1 && !(y(0, i) == 1 && y(1, i) == 1)) return false;
    // 1
    if (!(x(0, 1) <= x(1, 1))) return false;
    // 2: a second long press forces the half-period-shifted symmetry
    if (w(1) == 1 && !(x(0, 1) == x(1, 0) && x(1, 1) == x(0, 0) && y(0, 1) == y(1, 0) &&
                       y(1, 1) == y(0, 0)))
        return false;
    // 3
    if (!(x(0, 1) <= x(1, 0) && x(1, 1) <= x(0, 0))) return false;
    // 4
    if (w(1) == 0 && y(0, 1) == 0 && y(1, 1) == 0 && !(x(0, 0) >= x(1, 0))) return false;
    return true;
}

inline std::vector<StateMatrix> enumerate_valid_matrices(MatrixKind kind) {
    std::set<StateMatrix> out;
    if (kind == MatrixKind::sm) {
        const auto& pats = detail::xy_interval_patterns();
        for (const auto& p1 : pats)
            for (const auto& p2 : pats) {
                StateMatrix m;
                m.kind = MatrixKind::sm;
                const std::array<int, 4>* p[2] = {&p1, &p2};
                for (int i = 0; i < 2; ++i) {
                    m.e[0][i] = {detail::sc8((*p[i])[0]), detail::sc8((*p[i])[1]), -1, -1};
                    m.e[1][i] = {detail::sc8((*p[i])[2]), detail::sc8((*p[i])[3]), -1, -1};
                }
                if (sm_constraints(m)) out.insert(m);
            }
    } else if (kind == MatrixKind::sc) {
        const auto& rows = detail::xyz_rows();
        std::vector<StateMatrix> intervals;  // all valid single-interval fills
        for (const auto& rA : rows)
            for (const auto& rB : rows) {
                StateMatrix half;
                half.e[0][0] = {detail::sc8(rA[0]), detail::sc8(rA[1]), detail::sc8(rA[2]), -1};
                half.e[1][0] = {detail::sc8(rB[0]), detail::sc8(rB[1]), detail::sc8(rB[2]), -1};
                intervals.push_back(half);
            }
        for (const auto& h1 : intervals)
            for (const auto& h2 : intervals) {
                StateMatrix m;
                m.kind = MatrixKind::sc;
                m.e[0][0] = h1.e[0][0];
                m.e[1][0] = h1.e[1][0];
                m.e[0][1] = h2.e[0][0];
                m.e[1][1] = h2.e[1][0];
                if (sc_constraints(m)) out.insert(m);
            }
    } else if (kind == MatrixKind::lm) {
        const auto& pats = detail::xy_interval_patterns();
        std::set<StateMatrix> canonical;
        for (const auto& p1 : pats)
            for (const auto& p2 : pats)
                for (int w1 : {0, 1})
                    for (int w2 : {0, 1}) {
                        StateMatrix m;
                        m.kind = MatrixKind::lm;
                        const std::array<int, 4>* p[2] = {&p1, &p2};
                        const int w[2] = {w1, w2};
                        for (int i = 0; i < 2; ++i) {
                            m.e[0][i] = {detail::sc8((*p[i])[0]), detail::sc8((*p[i])[1]),
                                         detail::sc8(w[i]), -1};
                            m.e[1][i] = {detail::sc8((*p[i])[2]), detail::sc8((*p[i])[3]),
                                         detail::sc8(w[i]), -1};
                        }
                        if (lm_constraints_canonical(m)) canonical.insert(m);
                    }
        for (const auto& m : canonical) {
            out.insert(m);
            out.insert(conjugate(m));
        }
    } else {
        throw std::domain_error("enumeration is defined for the sm, sc and lm families");
    }
    return {out.begin(), out.end()};
}

// Groups a family under conjugation; representatives are the lexicographically
// smaller of each pair.
inline std::vector<std::vector<StateMatrix>> conjugacy_classes(
    const std::vector<StateMatrix>& ms) {
    std::vector<std::vector<StateMatrix>> classes;
    std::set<StateMatrix> seen;
    for (const auto& m : ms) {
        if (seen.count(m)) continue;
        const StateMatrix c = conjugate(m);
        seen.insert(m);
        std::vector<StateMatrix> cls{m};
        if (!(c == m)) {
            seen.insert(c);
            cls.push_back(c);
        }
        classes.push_back(cls);
    }
    return classes;
}

// Membership check used to validate published forms against the same filters.
inline bool in_enumeration(const StateMatrix& m) {
    if (!well_formed(m)) return false;
    switch (m.kind) {
        case MatrixKind::sm: return sm_constraints(m);
        case MatrixKind::sc: return sc_constraints(m);
        case MatrixKind::lm:
            return lm_constraints_canonical(m) || lm_constraints_canonical(conjugate(m));
        default: return false;
    }
}

}  // namespace streamwave
