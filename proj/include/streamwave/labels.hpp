#pragma once

#include <string>
#include <vector>

#include "streamwave/statematrix.hpp"

namespace streamwave {

// Every named 2TR-periodic state. Letter code: I integrated, S segregated,
// A/B alternation/bistable variants, D delayed onsets, Z late-onset-only
// responses, "c" joins the two half-period behaviors of a connect state, a
// trailing L marks long inhibition presses, trailing S a short-delay variant.
enum class StateName {
    // alternation family with short presses
    S, SB, SD, AP, AS, ASD, I, ID, IB,
    // connect family with short presses
    ZcS, ZcAP, ZcAS, ZcI, ScAS, SDcAS, ScSD, APcAS, APcI,
    // long-press family
    IL1, IL2, ASDL1, ASL, SL, IDL1, IDL2, ASDL2, SDL,
    // mixed long/short families
    AScIL, ScASL, ScIL, AScIDL, ScASDL, ScIDL, ScASDL2, ScASDL3, APcIDL,
    ScSDL, APcIL, ScASDL4, ScASL2, ZcIL,
    // short-delay regime labels
    IS, IDS, AScI,
    // zero-tau degenerate limits: representable, never classified
    ScASL2_deg, ZcIL2, ZcSL,
};

struct LabelInfo {
    StateName name{};
    std::string text;
    StateMatrix matrix;        // canonical published form
    Percept perc{};
    bool symmetric = false;    // fixed point of conjugation
    bool degenerate = false;   // exists only in the zero-tau limit
    bool has_short_form = false;
    StateMatrix short_form;    // 2x6 form used in the short-delay regime
};

inline const std::vector<LabelInfo>& label_registry() {
    static const std::vector<LabelInfo> reg = [] {
        std::vector<LabelInfo> v;
        auto add = [&](StateName n, const char* text, MatrixKind k, const char* rA,
                       const char* rB, bool degenerate = false) -> LabelInfo& {
            LabelInfo info;
            info.name = n;
            info.text = text;
            info.matrix = make_matrix(k, rA, rB);
            info.perc = percept(info.matrix);
            info.symmetric = conjugate(info.matrix) == info.matrix;
            info.degenerate = degenerate;
            v.push_back(info);
            return v.back();
        };
        auto short_form = [&](LabelInfo& info, const char* rA, const char* rB) {
            info.has_short_form = true;
            info.short_form = make_matrix(MatrixKind::sc, rA, rB);
        };

        add(StateName::S, "S", MatrixKind::sm, "1100", "0000");
        add(StateName::SB, "SB", MatrixKind::sm, "1100", "1100");
        add(StateName::SD, "SD", MatrixKind::sm, "1100", "0100");
        short_form(add(StateName::AP, "AP", MatrixKind::sm, "1100", "0011"),
                   "111000", "000111");
        short_form(add(StateName::AS, "AS", MatrixKind::sm, "1111", "0011"),
                   "111000", "111111");
        short_form(add(StateName::ASD, "ASD", MatrixKind::sm, "1101", "0011"),
                   "111000", "011111");
        short_form(add(StateName::I, "I", MatrixKind::sm, "1111", "0000"),
                   "111111", "111111");
        short_form(add(StateName::ID, "ID", MatrixKind::sm, "1101", "0111"),
                   "111011", "011111");
        add(StateName::IB, "IB", MatrixKind::sm, "1111", "1111");

        add(StateName::ZcS, "ZcS", MatrixKind::sc, "001000", "001000");
        add(StateName::ZcAP, "ZcAP", MatrixKind::sc, "001000", "000001");
        add(StateName::ZcAS, "ZcAS", MatrixKind::sc, "001001", "000001");
        add(StateName::ZcI, "ZcI", MatrixKind::sc, "001001", "001001");
        add(StateName::ScAS, "ScAS", MatrixKind::sc, "001111", "000001");
        add(StateName::SDcAS, "SDcAS", MatrixKind::sc, "001111", "000011");
        add(StateName::ScSD, "ScSD", MatrixKind::sc, "111000", "001000");
        short_form(add(StateName::APcAS, "APcAS", MatrixKind::sc, "111001", "000111"),
                   "111000", "001111");
        add(StateName::APcI, "APcI", MatrixKind::sc, "111001", "001111");

        add(StateName::IL1, "IL1", MatrixKind::lm, "111111", "111111");
        add(StateName::IL2, "IL2", MatrixKind::lm, "111110", "111110");
        add(StateName::ASDL1, "ASDL1", MatrixKind::lm, "111010", "111110");
        add(StateName::ASL, "ASL", MatrixKind::lm, "111000", "111110");
        add(StateName::SL, "SL", MatrixKind::lm, "111000", "111000");
        add(StateName::IDL1, "IDL1", MatrixKind::lm, "111011", "011111");
        add(StateName::IDL2, "IDL2", MatrixKind::lm, "111010", "011110");
        add(StateName::ASDL2, "ASDL2", MatrixKind::lm, "111000", "011110");
        add(StateName::SDL, "SDL", MatrixKind::lm, "111000", "011000");

        add(StateName::AScIL, "AScIL", MatrixKind::mixed, "11110010", "11111110");
        add(StateName::ScASL, "ScASL", MatrixKind::mixed, "11110000", "11110010");
        add(StateName::ScIL, "ScIL", MatrixKind::mixed, "11110010", "11110010");
        add(StateName::AScIDL, "AScIDL", MatrixKind::mixed, "11110010", "01111110");
        add(StateName::ScASDL, "ScASDL", MatrixKind::mixed, "11110000", "01110010");
        add(StateName::ScIDL, "ScIDL", MatrixKind::mixed, "11110010", "01110010");
        add(StateName::ScASDL2, "ScASDL2", MatrixKind::mixed, "01110000", "11110010");
        add(StateName::ScASDL3, "ScASDL3", MatrixKind::mixed, "11110010", "00110010");
        add(StateName::APcIDL, "APcIDL", MatrixKind::mixed, "11110010", "00111110");
        add(StateName::ScSDL, "ScSDL", MatrixKind::mixed, "11110000", "00110000");
        add(StateName::APcIL, "APcIL", MatrixKind::mixed, "11110011", "00111111");
        add(StateName::ScASDL4, "ScASDL4", MatrixKind::mixed, "00110000", "11110010");
        add(StateName::ScASL2, "ScASL2", MatrixKind::mixed, "00110000", "00110010");
        add(StateName::ZcIL, "ZcIL", MatrixKind::mixed, "00110010", "00110010");

        add(StateName::IS, "IS", MatrixKind::sc, "111111", "111111");
        add(StateName::IDS, "IDS", MatrixKind::sc, "111011", "011111");
        add(StateName::AScI, "AScI", MatrixKind::sc, "111001", "001111");

        add(StateName::ScASL2_deg, "ScASL2-deg", MatrixKind::mixed, "00110000", "00110010",
            true);
        add(StateName::ZcIL2, "ZcIL2", MatrixKind::mixed, "00110011", "00110011", true);
        add(StateName::ZcSL, "ZcSL", MatrixKind::mixed, "00110000", "00110000", true);
        return v;
    }();
    return reg;
}

inline const LabelInfo& label_info(StateName n) {
    for (const auto& info : label_registry())
        if (info.name == n) return info;
    throw std::domain_error("unknown state label");
}

inline const std::string& to_string(StateName n) { return label_info(n).text; }

inline StateName state_from_string(const std::string& s) {
    for (const auto& info : label_registry())
        if (info.text == s) return info.name;
    throw std::domain_error("unknown state label: " + s);
}

inline StateMatrix matrix_form(StateName n) { return label_info(n).matrix; }

// The 2x6 pattern a short-delay state realizes (every unit responding from
// tone onset); falls back to the canonical form for labels without one.
inline StateMatrix short_matrix_form(StateName n) {
    const LabelInfo& info = label_info(n);
    return info.has_short_form ? info.short_form : info.matrix;
}

}  // namespace streamwave
