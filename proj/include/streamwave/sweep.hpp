#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "streamwave/boundaries.hpp"
#include "streamwave/integrator.hpp"
#include "streamwave/io.hpp"

namespace streamwave {

// Percept assigned to one (PR, df) cell from the upward threshold-crossing
// count n = n_A + n_B over the final A-B cycle.
enum class PerceptLabel {
    integration,       // n = 4
    bistability,       // n = 3
    segregation,       // n = 2
    saturated,         // n = 0, mean activity above threshold
    high_alternation,  // n = 2 but both units stay near threshold
    failed,            // integration failed, quiescent, or unexpected count
};

inline const char* to_string(PerceptLabel l) {
    switch (l) {
        case PerceptLabel::integration: return "INT";
        case PerceptLabel::bistability: return "BIS";
        case PerceptLabel::segregation: return "SEG";
        case PerceptLabel::saturated: return "SAT";
        case PerceptLabel::high_alternation: return "AP_H";
        case PerceptLabel::failed: return "FAILED";
    }
    return "FAILED";
}

inline PerceptLabel percept_from_string(std::string_view s) {
    if (s == "INT") return PerceptLabel::integration;
    if (s == "BIS") return PerceptLabel::bistability;
    if (s == "SEG") return PerceptLabel::segregation;
    if (s == "SAT") return PerceptLabel::saturated;
    if (s == "AP_H") return PerceptLabel::high_alternation;
    if (s == "FAILED") return PerceptLabel::failed;
    throw ValidationError("unknown percept label: " + std::string(s));
}

// n=2 splits into SEG vs AP_H: AP_H when both units' minima stay above
// 0.9 theta (both hover near threshold instead of alternating fully off).
inline PerceptLabel percept_from_crossings(int n_A, int n_B, const WindowStats& w,
                                           double theta) {
    if (n_A < 0 || n_B < 0) throw ValidationError("crossing counts must be >= 0");
    const int n = n_A + n_B;
    switch (n) {
        case 4: return PerceptLabel::integration;
        case 3: return PerceptLabel::bistability;
        case 2:
            return (w.min_u_A > 0.9 * theta && w.min_u_B > 0.9 * theta)
                       ? PerceptLabel::high_alternation
                       : PerceptLabel::segregation;
        case 0:
            return w.mean_u > theta ? PerceptLabel::saturated : PerceptLabel::failed;
        default: return PerceptLabel::failed;
    }
}

inline PerceptLabel percept_from_crossings(int n_A, int n_B, double mean_u, double theta) {
    return percept_from_crossings(n_A, n_B, WindowStats{0.0, 0.0, mean_u}, theta);
}

struct SweepCell {
    double pr = 0.0;
    double df = 0.0;
    int n_a = 0;
    int n_b = 0;
    PerceptLabel label = PerceptLabel::failed;
    double residual = 0.0;
    std::string error;  // non-empty when integration failed

    int n() const { return n_a + n_b; }
};

struct SweepSpec {
    ModelParams params{};
    Stimulus stim{};  // TR and df are overridden per cell
    int points = 98;  // grid edge length, same on both axes
    double pr_min = 1.0;
    double pr_max = 40.0;
    double df_min = 0.0;
    double df_max = 1.0;
    NetState history{1.0, 0.0, 1.0, 0.0};
    RunOptions run{};
    unsigned threads = 0;  // 0 -> STREAMWAVE_THREADS or hardware concurrency

    double pr_at(int i) const {
        return points == 1 ? pr_min : pr_min + (pr_max - pr_min) * i / (points - 1);
    }
    double df_at(int j) const {
        return points == 1 ? df_min : df_min + (df_max - df_min) * j / (points - 1);
    }

    void validate() const {
        params.validate();
        if (points < 2) throw ValidationError("sweep needs at least 2 grid points per axis");
        if (!(pr_min > 0.0)) throw ValidationError("pr_min must be positive");
        if (!(pr_max > pr_min)) throw ValidationError("pr_max must exceed pr_min");
        if (!(df_min >= 0.0 && df_max <= 1.0 && df_max > df_min))
            throw ValidationError("df range must satisfy 0 <= df_min < df_max <= 1");
        Stimulus probe = stim;
        probe.TR = 1.0 / pr_max;  // tightest spacing on the grid
        probe.df = df_max;
        probe.validate();
        if (!history.finite()) throw ValidationError("history must be finite");
    }
};

struct SweepGrid {
    SweepSpec spec;
    std::vector<SweepCell> cells;  // row-major, PR fastest: cells[idf * points + ipr]

    const SweepCell& at(int ipr, int idf) const {
        return cells[static_cast<std::size_t>(idf) * spec.points + ipr];
    }
};

namespace detail {

inline SweepCell evaluate_cell(const ModelParams& p, Stimulus stim, double pr, double df,
                               const NetState& history, const RunOptions& ro) {
    SweepCell cell;
    cell.pr = pr;
    cell.df = df;
    stim.TR = 1.0 / pr;
    stim.df = df;
    try {
        const double d = df_to_d(stim.c, df, stim.m);
        const PeriodicRun run = run_to_periodic(p, stim, d, history, ro);
        const double t1 = run.tail.t_end();
        const double t0 = t1 - 2.0 * stim.TR;
        const CrossingCount cc = detect_crossings(run.tail, p.theta, t0, t1);
        const WindowStats ws = window_stats(run.tail, t0, t1);
        cell.n_a = cc.n_A;
        cell.n_b = cc.n_B;
        cell.residual = run.residual;
        cell.label = percept_from_crossings(cc.n_A, cc.n_B, ws, p.theta);
    } catch (const std::exception& e) {
        cell.label = PerceptLabel::failed;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace detail

// Fills the grid cell by cell; each cell is independent, failures are recorded
// in the cell and never abort the sweep. Static chunked partitioning over the
// flat cell list keeps runs deterministic for any worker count.
inline SweepGrid run_sweep(const SweepSpec& spec) {
    spec.validate();
    const int l = spec.points;
    const std::size_t total = static_cast<std::size_t>(l) * l;
    SweepGrid grid;
    grid.spec = spec;
    grid.cells.resize(total);

    auto work = [&grid, &spec, l](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const int ipr = static_cast<int>(i % l);
            const int idf = static_cast<int>(i / l);
            grid.cells[i] = detail::evaluate_cell(spec.params, spec.stim, spec.pr_at(ipr),
                                                  spec.df_at(idf), spec.history, spec.run);
        }
    };

    unsigned workers = spec.threads != 0 ? spec.threads : resolve_thread_count();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(total));
    if (workers <= 1) {
        work(0, total);
    } else {
        const std::size_t chunk = (total + workers - 1) / workers;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned k = 0; k < workers; ++k) {
            const std::size_t lo = k * chunk;
            if (lo >= total) break;
            pool.emplace_back(work, lo, std::min(total, lo + chunk));
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

// ---- CSV -----------------------------------------------------------------

// Leading `# ` comment lines carry the effective configuration; the header row
// and shortest-round-trip number formatting make the output byte-reproducible
// and exactly parseable.
inline std::string emit_csv(const SweepGrid& grid, const std::vector<std::string>& meta = {}) {
    std::string out;
    for (const std::string& line : meta) out += "# " + line + "\n";
    out += "pr_hz,df,n_a,n_b,n,label,residual\n";
    for (const SweepCell& c : grid.cells) {
        out += fmt(c.pr);
        out += ',';
        out += fmt(c.df);
        out += ',';
        out += fmt(c.n_a);
        out += ',';
        out += fmt(c.n_b);
        out += ',';
        out += fmt(c.n());
        out += ',';
        out += to_string(c.label);
        out += ',';
        out += fmt(c.residual);
        out += '\n';
    }
    return out;
}

namespace detail {

inline double parse_double_field(std::string_view s, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(std::string("bad CSV field for ") + what);
    return v;
}

inline int parse_int_field(std::string_view s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(std::string("bad CSV field for ") + what);
    return v;
}

}  // namespace detail

// Inverse of emit_csv (cells only; comments are skipped).
inline std::vector<SweepCell> parse_sweep_csv(std::string_view text) {
    std::vector<SweepCell> cells;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "pr_hz,df,n_a,n_b,n,label,residual")
                throw ValidationError("unexpected CSV header: " + std::string(line));
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t f = 0;
        while (true) {
            std::size_t comma = line.find(',', f);
            if (comma == std::string_view::npos) {
                fields.push_back(line.substr(f));
                break;
            }
            fields.push_back(line.substr(f, comma - f));
            f = comma + 1;
        }
        if (fields.size() != 7) throw ValidationError("expected 7 CSV fields per row");
        SweepCell c;
        c.pr = detail::parse_double_field(fields[0], "pr_hz");
        c.df = detail::parse_double_field(fields[1], "df");
        c.n_a = detail::parse_int_field(fields[2], "n_a");
        c.n_b = detail::parse_int_field(fields[3], "n_b");
        const int n = detail::parse_int_field(fields[4], "n");
        if (n != c.n_a + c.n_b) throw ValidationError("CSV row has n != n_a + n_b");
        c.label = percept_from_string(fields[5]);
        c.residual = detail::parse_double_field(fields[6], "residual");
        cells.push_back(std::move(c));
    }
    if (!header_seen) throw ValidationError("CSV has no header row");
    return cells;
}

// ---- SVG heatmap ---------------------------------------------------------

namespace detail {

inline double nice_step(double range, int target_ticks) {
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (raw <= mult * mag * (1.0 + 1e-12)) return mult * mag;
    return 10.0 * mag;
}

inline int tick_decimals(double step) {
    if (step >= 1.0) return 0;
    if (step >= 0.1) return 1;
    return 2;
}

}  // namespace detail

// Greyscale by crossing count (black n=0, lightest n=4), FAILED cells hatched,
// analytic boundary curves overlaid (coherence blue, fission red); polylines
// break where a curve leaves [0,1] and is clamped.
inline std::string emit_heatmap(const SweepGrid& grid,
                                const std::vector<BoundaryCurve>& overlays = {},
                                const std::vector<std::string>& meta = {}) {
    if (grid.cells.empty()) throw std::domain_error("empty grid");
    const int l = grid.spec.points;
    if (grid.cells.size() != static_cast<std::size_t>(l) * l)
        throw std::domain_error("grid cell count does not match its spec");

    const double plot_w = 560.0, plot_h = 460.0;
    const double ml = 64.0, mr = 18.0, mt = 18.0, mb = 52.0;
    SvgWriter svg(ml + plot_w + mr, mt + plot_h + mb);
    for (const std::string& line : meta) svg.comment(line);
    svg.define_hatch("failhatch", 6.0, "#888888");

    const double pr0 = grid.spec.pr_min, pr1 = grid.spec.pr_max;
    const double df0 = grid.spec.df_min, df1 = grid.spec.df_max;
    auto x_of = [&](double pr) { return ml + (pr - pr0) / (pr1 - pr0) * plot_w; };
    auto y_of = [&](double df) { return mt + (1.0 - (df - df0) / (df1 - df0)) * plot_h; };
    const double cw = l > 1 ? plot_w / (l - 1) : plot_w;
    const double ch = l > 1 ? plot_h / (l - 1) : plot_h;

    for (int idf = 0; idf < l; ++idf) {
        for (int ipr = 0; ipr < l; ++ipr) {
            const SweepCell& c = grid.at(ipr, idf);
            std::string fill;
            if (c.label == PerceptLabel::failed) {
                fill = "url(#failhatch)";
            } else {
                const int n = std::clamp(c.n(), 0, 4);
                const int k = 235 * n / 4;
                fill = "rgb(" + std::to_string(k) + "," + std::to_string(k) + "," +
                       std::to_string(k) + ")";
            }
            svg.rect(x_of(grid.spec.pr_at(ipr)) - cw / 2.0, y_of(grid.spec.df_at(idf)) - ch / 2.0,
                     cw, ch, fill);
        }
    }

    // frame and ticks
    svg.rect(ml, mt, plot_w, plot_h, "none", "#000000", 1.0);
    const double xs = detail::nice_step(pr1 - pr0, 6);
    const int xd = detail::tick_decimals(xs);
    for (double v = std::ceil(pr0 / xs) * xs; v <= pr1 + 1e-9; v += xs) {
        svg.line(x_of(v), mt + plot_h, x_of(v), mt + plot_h + 5.0, "#000000", 1.0);
        svg.text(x_of(v), mt + plot_h + 18.0, fmt_fixed(v, xd), 12.0, "middle");
    }
    const double ys = detail::nice_step(df1 - df0, 5);
    const int yd = detail::tick_decimals(ys);
    for (double v = std::ceil(df0 / ys) * ys; v <= df1 + 1e-9; v += ys) {
        svg.line(ml - 5.0, y_of(v), ml, y_of(v), "#000000", 1.0);
        svg.text(ml - 8.0, y_of(v) + 4.0, fmt_fixed(v, yd), 12.0, "end");
    }
    svg.text(ml + plot_w / 2.0, mt + plot_h + 40.0, "PR (Hz)", 14.0, "middle");
    svg.text(18.0, mt + plot_h / 2.0, "df", 14.0, "middle", -90.0);

    // analytic overlays, broken wherever the curve is clamped out of [0,1]
    auto draw_curve = [&](const BoundaryCurve& bc, BoundaryValue BoundaryPoint::*field,
                          const std::string& color) {
        std::vector<std::pair<double, double>> seg;
        for (const BoundaryPoint& pt : bc.points) {
            const BoundaryValue& v = pt.*field;
            if (v.clamped || pt.pr < pr0 || pt.pr > pr1 || v.df < df0 || v.df > df1) {
                svg.polyline(seg, color, 2.0);
                seg.clear();
                continue;
            }
            seg.emplace_back(x_of(pt.pr), y_of(v.df));
        }
        svg.polyline(seg, color, 2.0);
    };
    for (const BoundaryCurve& bc : overlays) {
        draw_curve(bc, &BoundaryPoint::coherence, "#2050c8");
        draw_curve(bc, &BoundaryPoint::fission, "#c83232");
    }
    return svg.str();
}

}  // namespace streamwave
