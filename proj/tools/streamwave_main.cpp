// Command-line front end: simulate | classify | sweep | boundaries | basin |
// enumerate. Options come from flat flags and/or a JSON config file; explicit
// flags always win. Exit codes: 0 success, 1 numerical/runtime failure,
// 2 configuration error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "streamwave/boundaries.hpp"
#include "streamwave/classifier.hpp"
#include "streamwave/enumerate.hpp"
#include "streamwave/fast_subsystem.hpp"
#include "streamwave/integrator.hpp"
#include "streamwave/io.hpp"
#include "streamwave/sweep.hpp"

using nlohmann::json;
using namespace streamwave;

namespace {

struct CliConfig {
    std::string command;
    // network
    double a = 2.0, b = 2.8, theta = 0.5, tau = 0.025, tau_i = 0.25, D = 0.015;
    std::string gain = "sigmoid";
    double lambda = 30.0;
    bool gain_explicit = false;
    // stimulus
    double TD = 0.022, c = 5.5, df = 0.0, pr = 10.0;
    double tr = 0.0;        // 0 = unset; when set, defines TR instead of --pr
    double d_override = -1.0;  // < 0 = unset; when set, bypasses the df -> d mapping
    int m = 6;
    // solver
    std::string input = "square";
    double input_lambda = 30.0;
    double dt = 0.0;  // 0 = auto: min(tau, D, TD)/20
    double t_end = 0.0;  // 0 = auto: transient * 2TR
    double record_from = 0.0;
    int transient = 30;
    std::vector<double> history{1.0, 0.0, 1.0, 0.0};
    // grids
    int points = 98;
    double pr_min = 1.0, pr_max = 40.0, df_min = 0.0, df_max = 1.0;
    unsigned threads = 0;
    // reduced fast plane
    double s1 = 0.7, s2 = 0.4;
    // misc
    std::string kind = "sm";
    std::string regime = "auto";
    std::string variant = "tone-gap";
    double boundary_band = 0.0;
    std::string out_csv, out_svg, out_json, out_events, out_manifest, config_path;
};

GainKind parse_gain(const std::string& s) {
    if (s == "heaviside") return GainKind::heaviside;
    if (s == "sigmoid") return GainKind::sigmoid;
    throw ValidationError("gain must be 'heaviside' or 'sigmoid'");
}

InputKind parse_input(const std::string& s) {
    if (s == "square") return InputKind::square;
    if (s == "smoothed") return InputKind::smoothed;
    throw ValidationError("input must be 'square' or 'smoothed'");
}

FissionVariant parse_variant(const std::string& s) {
    if (s == "tone-gap") return FissionVariant::tone_gap;
    if (s == "delay-gap") return FissionVariant::delay_gap;
    throw ValidationError("variant must be 'tone-gap' or 'delay-gap'");
}

MatrixKind parse_matrix_kind(const std::string& s) {
    if (s == "sm") return MatrixKind::sm;
    if (s == "sc") return MatrixKind::sc;
    if (s == "lm") return MatrixKind::lm;
    throw ValidationError("kind must be one of 'sm', 'sc', 'lm'");
}

ModelParams model_of(const CliConfig& cfg, const std::string& gain_kind) {
    ModelParams p;
    p.a = cfg.a;
    p.b = cfg.b;
    p.theta = cfg.theta;
    p.tau = cfg.tau;
    p.tau_i = cfg.tau_i;
    p.D = cfg.D;
    p.gain.kind = parse_gain(gain_kind);
    p.gain.lambda = cfg.lambda;
    p.validate();
    return p;
}

Stimulus stim_of(const CliConfig& cfg) {
    Stimulus s;
    s.TD = cfg.TD;
    if (cfg.tr != 0.0) {
        if (!(cfg.tr > 0.0)) throw ValidationError("tr must be positive");
        s.TR = cfg.tr;
    } else {
        if (!(cfg.pr > 0.0)) throw ValidationError("pr must be positive");
        s.TR = 1.0 / cfg.pr;
    }
    s.c = cfg.c;
    s.df = cfg.df;
    s.m = cfg.m;
    s.validate();
    return s;
}

// Weak-tone strength: raw --d override when given, else the df -> d mapping.
double d_of(const CliConfig& cfg, const Stimulus& stim) {
    if (cfg.d_override >= 0.0) return cfg.d_override;
    return df_to_d(stim.c, stim.df, stim.m);
}

NetState history_of(const CliConfig& cfg) {
    if (cfg.history.size() != 4)
        throw ValidationError("history must have exactly 4 entries: u_A u_B s_A s_B");
    NetState h{cfg.history[0], cfg.history[1], cfg.history[2], cfg.history[3]};
    if (!h.finite()) throw ValidationError("history must be finite");
    return h;
}

IntegrateOptions opts_of(const CliConfig& cfg) {
    IntegrateOptions o;
    o.dt = cfg.dt;
    o.input = parse_input(cfg.input);
    o.input_lambda = cfg.input_lambda;
    o.record_from = cfg.record_from;
    return o;
}

json network_config(const CliConfig& cfg, const std::string& gain_kind) {
    json j;
    j["command"] = cfg.command;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["theta"] = cfg.theta;
    j["tau"] = cfg.tau;
    j["tau_i"] = cfg.tau_i;
    j["D"] = cfg.D;
    j["gain"] = gain_kind;
    j["lambda"] = cfg.lambda;
    j["c"] = cfg.c;
    j["TD"] = cfg.TD;
    j["m"] = cfg.m;
    return j;
}

// ---- command runners -----------------------------------------------------

int cmd_simulate(const CliConfig& cfg) {
    const ModelParams p = model_of(cfg, cfg.gain);
    const Stimulus stim = stim_of(cfg);
    const double d = d_of(cfg, stim);
    const NetState hist = history_of(cfg);
    IntegrateOptions opts = opts_of(cfg);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : cfg.transient * 2.0 * stim.TR;

    const Trajectory traj = integrate(p, stim, d, hist, t_end, opts);

    json jc = network_config(cfg, cfg.gain);
    jc["pr"] = 1.0 / stim.TR;
    jc["tr"] = stim.TR;
    jc["df"] = cfg.df;
    jc["d"] = d;
    jc["input"] = cfg.input;
    jc["input_lambda"] = cfg.input_lambda;
    jc["dt"] = traj.dt;
    jc["t_end"] = t_end;
    jc["record_from"] = cfg.record_from;
    jc["history"] = cfg.history;

    const CrossingCount all =
        detect_crossings(traj, p.theta, traj.t_begin(), traj.t_end() + 1e-12);
    const double t1 = traj.t_end();
    const double t0 = t1 - 2.0 * stim.TR;
    json final_window;
    std::string label_str = "n/a";
    if (t0 >= traj.t_begin()) {
        const CrossingCount cc = detect_crossings(traj, p.theta, t0, t1);
        const WindowStats ws = window_stats(traj, t0, t1);
        const PerceptLabel label = percept_from_crossings(cc.n_A, cc.n_B, ws, p.theta);
        label_str = to_string(label);
        final_window = {{"t0", t0},          {"t1", t1},
                        {"n_a", cc.n_A},     {"n_b", cc.n_B},
                        {"n", cc.total()},   {"label", label_str},
                        {"min_u_a", ws.min_u_A}, {"min_u_b", ws.min_u_B},
                        {"mean_u", ws.mean_u}};
        try {
            final_window["residual"] = check_periodicity(traj, 2.0 * stim.TR);
        } catch (const std::domain_error&) {
            // recorded span shorter than two periods: no residual
        }
    }

    if (!cfg.out_csv.empty()) {
        std::string csv = "# config " + jc.dump() + "\n";
        csv += "t,u_a,u_b,s_a,s_b\n";
        for (std::size_t i = 0; i < traj.t.size(); ++i) {
            const NetState& y = traj.y[i];
            csv += fmt(traj.t[i]);
            csv += ',';
            csv += fmt(y.u_A);
            csv += ',';
            csv += fmt(y.u_B);
            csv += ',';
            csv += fmt(y.s_A);
            csv += ',';
            csv += fmt(y.s_B);
            csv += '\n';
        }
        atomic_write_text(cfg.out_csv, csv);
    }
    if (!cfg.out_events.empty()) {
        json ev = json::array();
        for (const CrossingEvent& e : all.events)
            ev.push_back({{"t", e.t},
                          {"unit", e.unit == UnitId::A ? "A" : "B"},
                          {"direction", "up"}});
        json doc = {{"config", jc}, {"events", ev}, {"final_window", final_window}};
        atomic_write_text(cfg.out_events, doc.dump(2) + "\n");
    }
    std::cout << "simulate: t_end=" << fmt(t_end) << " samples=" << traj.t.size()
              << " upward_crossings=" << all.total() << " final_label=" << label_str << "\n";
    return 0;
}

int cmd_classify(const CliConfig& cfg) {
    const ModelParams p = model_of(cfg, cfg.gain);
    const Stimulus stim = stim_of(cfg);
    const double d = d_of(cfg, stim);
    const RegimeFlags fl = validate_params(p, stim);

    bool use_short = false;
    if (cfg.regime == "short") {
        use_short = true;
    } else if (cfg.regime == "long") {
        use_short = false;
    } else if (cfg.regime == "auto") {
        use_short = fl.short_delay;
    } else {
        throw ValidationError("regime must be 'auto', 'short' or 'long'");
    }

    const std::vector<StateName> labels =
        use_short ? classify_short_delay(p, stim, d) : classify_long_delay(p, stim, d);
    const ConditionReport rep = condition_report(p, stim, d);

    json jc = network_config(cfg, cfg.gain);
    jc["pr"] = 1.0 / stim.TR;
    jc["tr"] = stim.TR;
    jc["df"] = cfg.df;
    jc["regime"] = cfg.regime;
    if (cfg.boundary_band > 0.0) jc["boundary_band"] = cfg.boundary_band;

    json jl = json::array();
    for (StateName n : labels) {
        const StateMatrix mform = matrix_form(n);
        json e = {{"label", to_string(n)},
                  {"matrix", mform.to_string()},
                  {"percept", to_string(percept(mform))}};
        if (use_short) e["short_matrix"] = short_matrix_form(n).to_string();
        jl.push_back(e);
    }

    json doc;
    doc["config"] = jc;
    doc["d"] = d;
    doc["mode"] = use_short ? "short-delay" : "long-delay";
    doc["regime_flags"] = {{"u1", fl.u1},
                           {"u2", fl.u2},
                           {"u3", fl.u3},
                           {"short_delay", fl.short_delay},
                           {"sep_ok", fl.sep_ok}};
    doc["labels"] = jl;
    if (!use_short) {
        json pairs = json::array();
        for (const auto& pr_ : multistability_pairs(p, stim, d))
            pairs.push_back({to_string(pr_.first), to_string(pr_.second)});
        doc["coexisting_pairs"] = pairs;
    }
    json cond = json::array();
    for (const ThresholdEntry& t : rep.threshold_entries())
        cond.push_back({{"name", t.name}, {"lhs", t.lhs}, {"rhs", t.rhs}});
    doc["conditions"] = cond;
    if (cfg.boundary_band > 0.0) doc["near_ties"] = rep.near_ties(cfg.boundary_band);

    if (!cfg.out_json.empty()) {
        atomic_write_text(cfg.out_json, doc.dump(2) + "\n");
        std::cout << "classify: " << doc["mode"].get<std::string>() << ", " << jl.size()
                  << " state(s) -> " << cfg.out_json << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}

int cmd_sweep(const CliConfig& cfg) {
    SweepSpec spec;
    spec.params = model_of(cfg, cfg.gain);
    spec.stim.TD = cfg.TD;
    spec.stim.c = cfg.c;
    spec.stim.m = cfg.m;
    spec.points = cfg.points;
    spec.pr_min = cfg.pr_min;
    spec.pr_max = cfg.pr_max;
    spec.df_min = cfg.df_min;
    spec.df_max = cfg.df_max;
    spec.history = history_of(cfg);
    spec.run.sim = opts_of(cfg);
    spec.run.transient_periods = cfg.transient;
    spec.threads = cfg.threads;

    json jc = network_config(cfg, cfg.gain);
    jc["pr_min"] = cfg.pr_min;
    jc["pr_max"] = cfg.pr_max;
    jc["df_min"] = cfg.df_min;
    jc["df_max"] = cfg.df_max;
    jc["points"] = cfg.points;
    jc["input"] = cfg.input;
    jc["input_lambda"] = cfg.input_lambda;
    jc["dt"] = cfg.dt;
    jc["transient"] = cfg.transient;
    jc["history"] = cfg.history;
    jc["variant"] = cfg.variant;

    const auto tic = std::chrono::steady_clock::now();
    const SweepGrid grid = run_sweep(spec);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();

    const std::string config_line = "config " + jc.dump();
    if (!cfg.out_csv.empty()) atomic_write_text(cfg.out_csv, emit_csv(grid, {config_line}));
    if (!cfg.out_svg.empty()) {
        const BoundaryCurve overlay = sample_boundaries(
            spec.params, spec.stim, cfg.pr_min, cfg.pr_max, 241, parse_variant(cfg.variant));
        atomic_write_text(cfg.out_svg, emit_heatmap(grid, {overlay}, {config_line}));
    }

    std::size_t hist[6] = {0, 0, 0, 0, 0, 0};
    json failures = json::array();
    for (const SweepCell& cell : grid.cells) {
        hist[static_cast<int>(cell.label)]++;
        if (!cell.error.empty())
            failures.push_back({{"pr", cell.pr}, {"df", cell.df}, {"error", cell.error}});
    }
    if (!cfg.out_manifest.empty()) {
        json man;
        man["config"] = jc;
        man["wall_time_s"] = wall;
        man["threads"] = spec.threads != 0 ? spec.threads : resolve_thread_count();
        man["cells"] = grid.cells.size();
        man["labels"] = {{"INT", hist[0]}, {"BIS", hist[1]},  {"SEG", hist[2]},
                         {"SAT", hist[3]}, {"AP_H", hist[4]}, {"FAILED", hist[5]}};
        man["failures"] = failures;
        man["determinism"] =
            "fixed-step integration, static work partition, no randomness; "
            "grid content is independent of the worker count";
        atomic_write_text(cfg.out_manifest, man.dump(2) + "\n");
    }
    std::cout << "sweep: " << grid.cells.size() << " cells in " << fmt_fixed(wall, 1)
              << "s  INT=" << hist[0] << " BIS=" << hist[1] << " SEG=" << hist[2]
              << " SAT=" << hist[3] << " AP_H=" << hist[4] << " FAILED=" << hist[5] << "\n";
    return 0;
}

int cmd_boundaries(const CliConfig& cfg) {
    const ModelParams p = model_of(cfg, cfg.gain);
    Stimulus stim;
    stim.TD = cfg.TD;
    stim.c = cfg.c;
    stim.m = cfg.m;
    const FissionVariant variant = parse_variant(cfg.variant);
    const BoundaryCurve curve =
        sample_boundaries(p, stim, cfg.pr_min, cfg.pr_max, cfg.points, variant);

    json jc = network_config(cfg, cfg.gain);
    jc["pr_min"] = cfg.pr_min;
    jc["pr_max"] = cfg.pr_max;
    jc["points"] = cfg.points;
    jc["variant"] = cfg.variant;

    if (!cfg.out_csv.empty()) {
        std::string csv = "# config " + jc.dump() + "\n";
        csv +=
            "pr_hz,df_coh,df_coh_raw,df_coh_clamped,df_fis,df_fis_raw,df_fis_clamped,"
            "df_reentry,df_reentry_raw,df_reentry_clamped\n";
        for (const BoundaryPoint& pt : curve.points) {
            csv += fmt(pt.pr);
            for (const BoundaryValue* v : {&pt.coherence, &pt.fission, &pt.reentry}) {
                csv += ',';
                csv += fmt(v->df);
                csv += ',';
                csv += fmt(v->raw);
                csv += ',';
                csv += v->clamped ? '1' : '0';
            }
            csv += '\n';
        }
        atomic_write_text(cfg.out_csv, csv);
    }

    if (!cfg.out_svg.empty()) {
        const double plot_w = 560.0, plot_h = 460.0;
        const double ml = 64.0, mr = 18.0, mt = 18.0, mb = 52.0;
        SvgWriter svg(ml + plot_w + mr, mt + plot_h + mb);
        svg.comment("config " + jc.dump());
        auto x_of = [&](double pr) {
            return ml + (pr - cfg.pr_min) / (cfg.pr_max - cfg.pr_min) * plot_w;
        };
        auto y_of = [&](double df) { return mt + (1.0 - df) * plot_h; };
        svg.rect(ml, mt, plot_w, plot_h, "none", "#000000", 1.0);
        auto draw = [&](BoundaryValue BoundaryPoint::*field, const std::string& color,
                        const std::string& dash) {
            std::vector<std::pair<double, double>> seg;
            for (const BoundaryPoint& pt : curve.points) {
                const BoundaryValue& v = pt.*field;
                if (v.clamped) {
                    svg.polyline(seg, color, 2.0, dash);
                    seg.clear();
                    continue;
                }
                seg.emplace_back(x_of(pt.pr), y_of(v.df));
            }
            svg.polyline(seg, color, 2.0, dash);
        };
        draw(&BoundaryPoint::coherence, "#2050c8", "");
        draw(&BoundaryPoint::fission, "#c83232", "");
        draw(&BoundaryPoint::reentry, "#1e7d32", "6,4");
        svg.text(ml + plot_w / 2.0, mt + plot_h + 40.0, "PR (Hz)", 14.0, "middle");
        svg.text(18.0, mt + plot_h / 2.0, "df", 14.0, "middle", -90.0);
        atomic_write_text(cfg.out_svg, svg.str());
    }

    std::cout << "boundaries: " << curve.points.size() << " samples over PR ["
              << fmt(cfg.pr_min) << ", " << fmt(cfg.pr_max) << "]\n";
    return 0;
}

int cmd_basin(const CliConfig& cfg) {
    // Step-gain plane unless a smooth gain was requested explicitly.
    const std::string gain_kind = cfg.gain_explicit ? cfg.gain : "heaviside";
    const bool smooth = parse_gain(gain_kind) == GainKind::sigmoid;
    if (!(cfg.points >= 2)) throw ValidationError("points must be >= 2");
    // Range check before rasterizing.
    separatrix(cfg.s1, cfg.s2, cfg.s1);

    json jc;
    jc["command"] = cfg.command;
    jc["s1"] = cfg.s1;
    jc["s2"] = cfg.s2;
    jc["points"] = cfg.points;
    jc["gain"] = gain_kind;
    if (smooth) {
        jc["a"] = cfg.a;
        jc["lambda"] = cfg.lambda;
    }

    const int n = cfg.points;
    std::vector<BasinLabel> labels(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double uA = static_cast<double>(i) / (n - 1);
            const double uB = static_cast<double>(j) / (n - 1);
            labels[static_cast<std::size_t>(j) * n + i] =
                smooth ? sigmoid_basin_oracle(cfg.s1, cfg.s2, cfg.a, cfg.lambda, uA, uB)
                       : basin_label(cfg.s1, cfg.s2, uA, uB);
        }
    }

    if (!cfg.out_csv.empty()) {
        std::string csv = "# config " + jc.dump() + "\n";
        csv += "u_a,u_b,label\n";
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                csv += fmt(static_cast<double>(i) / (n - 1));
                csv += ',';
                csv += fmt(static_cast<double>(j) / (n - 1));
                csv += ',';
                csv += to_string(labels[static_cast<std::size_t>(j) * n + i]);
                csv += '\n';
            }
        }
        atomic_write_text(cfg.out_csv, csv);
    }

    if (!cfg.out_svg.empty()) {
        const double plot = 480.0, ml = 56.0, mb = 48.0, mt = 16.0, mr = 16.0;
        SvgWriter svg(ml + plot + mr, mt + plot + mb);
        svg.comment("config " + jc.dump());
        auto x_of = [&](double u) { return ml + u * plot; };
        auto y_of = [&](double u) { return mt + (1.0 - u) * plot; };
        const double cell = plot / (n - 1);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const BasinLabel l = labels[static_cast<std::size_t>(j) * n + i];
                const char* fill = l == BasinLabel::coactive ? "#4d4d4d"
                                   : l == BasinLabel::quiescent ? "#d9d9d9"
                                                                : "#a56bd1";
                svg.rect(x_of(static_cast<double>(i) / (n - 1)) - cell / 2.0,
                         y_of(static_cast<double>(j) / (n - 1)) - cell / 2.0, cell, cell, fill);
            }
        }
        svg.rect(ml, mt, plot, plot, "none", "#000000", 1.0);
        std::vector<std::pair<double, double>> sep;
        if (smooth) {
            for (const Vec2& v : sigmoid_separatrix(cfg.s1, cfg.s2, cfg.a, cfg.lambda)) {
                if (v.x < 0.0 || v.x > 1.0 || v.y < 0.0 || v.y > 1.0) {
                    svg.polyline(sep, "#000000", 2.0);
                    sep.clear();
                    continue;
                }
                sep.emplace_back(x_of(v.x), y_of(v.y));
            }
        } else {
            for (int i = 0; i <= 512; ++i) {
                const double uA = static_cast<double>(i) / 512;
                const double uB = separatrix(cfg.s1, cfg.s2, uA);
                if (uB < 0.0 || uB > 1.0) {
                    svg.polyline(sep, "#000000", 2.0);
                    sep.clear();
                    continue;
                }
                sep.emplace_back(x_of(uA), y_of(uB));
            }
        }
        svg.polyline(sep, "#000000", 2.0);
        svg.text(ml + plot / 2.0, mt + plot + 36.0, "u_A", 14.0, "middle");
        svg.text(16.0, mt + plot / 2.0, "u_B", 14.0, "middle", -90.0);
        atomic_write_text(cfg.out_svg, svg.str());
    }

    std::size_t co = 0, qu = 0;
    for (BasinLabel l : labels) {
        co += l == BasinLabel::coactive;
        qu += l == BasinLabel::quiescent;
    }
    std::cout << "basin: " << labels.size() << " points, coactive=" << co
              << " quiescent=" << qu << " boundary=" << labels.size() - co - qu << "\n";
    return 0;
}

int cmd_enumerate(const CliConfig& cfg) {
    const MatrixKind kind = parse_matrix_kind(cfg.kind);
    const std::vector<StateMatrix> ms = enumerate_valid_matrices(kind);
    const auto classes = conjugacy_classes(ms);

    json jc = {{"command", cfg.command}, {"kind", cfg.kind}};
    json jm = json::array();
    for (const StateMatrix& m : ms)
        jm.push_back({{"rows", m.to_string()}, {"percept", to_string(percept(m))}});
    json jcl = json::array();
    for (const auto& cls : classes) {
        json one = json::array();
        for (const StateMatrix& m : cls) one.push_back(m.to_string());
        jcl.push_back(one);
    }
    json doc = {{"config", jc},
                {"count", ms.size()},
                {"class_count", classes.size()},
                {"matrices", jm},
                {"classes", jcl}};
    if (!cfg.out_json.empty()) {
        atomic_write_text(cfg.out_json, doc.dump(2) + "\n");
        std::cout << "enumerate " << cfg.kind << ": " << ms.size() << " matrices, "
                  << classes.size() << " classes -> " << cfg.out_json << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}

// ---- config merge --------------------------------------------------------

void merge_json_config(CliConfig& cfg, const CLI::App& app) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw ValidationError("cannot read config file: " + cfg.config_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed JSON config: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config root must be a JSON object");

    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    auto num = [](const json& v, const std::string& key) -> double {
        if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto integer = [](const json& v, const std::string& key) -> long long {
        if (!v.is_number_integer())
            throw ValidationError("config key '" + key + "' must be an integer");
        return v.get<long long>();
    };
    auto str = [](const json& v, const std::string& key) -> std::string {
        if (!v.is_string()) throw ValidationError("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };

    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "command") {
            if (cfg.command.empty()) cfg.command = str(v, k);
        } else if (k == "a") {
            if (!given("--a")) cfg.a = num(v, k);
        } else if (k == "b") {
            if (!given("--b")) cfg.b = num(v, k);
        } else if (k == "c") {
            if (!given("--c")) cfg.c = num(v, k);
        } else if (k == "theta") {
            if (!given("--theta")) cfg.theta = num(v, k);
        } else if (k == "tau") {
            if (!given("--tau")) cfg.tau = num(v, k);
        } else if (k == "tau_i") {
            if (!given("--tau-i")) cfg.tau_i = num(v, k);
        } else if (k == "D" || k == "delay") {
            if (!given("--delay")) cfg.D = num(v, k);
        } else if (k == "TD" || k == "td") {
            if (!given("--td")) cfg.TD = num(v, k);
        } else if (k == "m") {
            if (!given("--m")) cfg.m = static_cast<int>(integer(v, k));
        } else if (k == "gain") {
            if (!given("--gain")) cfg.gain = str(v, k);
            cfg.gain_explicit = true;
        } else if (k == "lambda") {
            if (!given("--lambda")) cfg.lambda = num(v, k);
        } else if (k == "pr") {
            if (j.contains("tr")) throw ValidationError("config must set either 'pr' or 'tr', not both");
            if (!given("--pr") && !given("--tr")) cfg.pr = num(v, k);
        } else if (k == "tr") {
            if (!given("--tr") && !given("--pr")) {
                cfg.tr = num(v, k);
                if (!(cfg.tr > 0.0)) throw ValidationError("config key 'tr' must be positive");
            }
        } else if (k == "d") {
            if (!given("--d")) {
                cfg.d_override = num(v, k);
                if (cfg.d_override < 0.0) throw ValidationError("config key 'd' must be >= 0");
            }
        } else if (k == "df") {
            if (!given("--df")) cfg.df = num(v, k);
        } else if (k == "input") {
            if (!given("--input")) cfg.input = str(v, k);
        } else if (k == "input_lambda") {
            if (!given("--input-lambda")) cfg.input_lambda = num(v, k);
        } else if (k == "dt") {
            if (!given("--dt")) cfg.dt = num(v, k);
        } else if (k == "t_end") {
            if (!given("--t-end")) cfg.t_end = num(v, k);
        } else if (k == "record_from") {
            if (!given("--record-from")) cfg.record_from = num(v, k);
        } else if (k == "transient") {
            if (!given("--transient")) cfg.transient = static_cast<int>(integer(v, k));
        } else if (k == "history") {
            if (!given("--history")) {
                if (!v.is_array()) throw ValidationError("config key 'history' must be an array");
                cfg.history.clear();
                for (const json& x : v) cfg.history.push_back(num(x, k));
            }
        } else if (k == "points") {
            if (!given("--points")) cfg.points = static_cast<int>(integer(v, k));
        } else if (k == "pr_min") {
            if (!given("--pr-min")) cfg.pr_min = num(v, k);
        } else if (k == "pr_max") {
            if (!given("--pr-max")) cfg.pr_max = num(v, k);
        } else if (k == "df_min") {
            if (!given("--df-min")) cfg.df_min = num(v, k);
        } else if (k == "df_max") {
            if (!given("--df-max")) cfg.df_max = num(v, k);
        } else if (k == "threads") {
            if (!given("--threads")) cfg.threads = static_cast<unsigned>(integer(v, k));
        } else if (k == "s1") {
            if (!given("--s1")) cfg.s1 = num(v, k);
        } else if (k == "s2") {
            if (!given("--s2")) cfg.s2 = num(v, k);
        } else if (k == "kind") {
            if (!given("--kind")) cfg.kind = str(v, k);
        } else if (k == "regime") {
            if (!given("--regime")) cfg.regime = str(v, k);
        } else if (k == "variant") {
            if (!given("--variant")) cfg.variant = str(v, k);
        } else if (k == "boundary_band") {
            if (!given("--boundary-band")) cfg.boundary_band = num(v, k);
        } else if (k == "out_csv") {
            if (!given("--out-csv")) cfg.out_csv = str(v, k);
        } else if (k == "out_svg") {
            if (!given("--out-svg")) cfg.out_svg = str(v, k);
        } else if (k == "out_json") {
            if (!given("--out-json")) cfg.out_json = str(v, k);
        } else if (k == "out_events") {
            if (!given("--out-events")) cfg.out_events = str(v, k);
        } else if (k == "out_manifest") {
            if (!given("--out-manifest")) cfg.out_manifest = str(v, k);
        } else {
            throw ValidationError("unknown config key: " + k);
        }
    }
}

int dispatch(const CliConfig& cfg) {
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "boundaries") return cmd_boundaries(cfg);
    if (cfg.command == "basin") return cmd_basin(cfg);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command.empty())
        throw ValidationError(
            "no command given; expected one of simulate, classify, sweep, boundaries, "
            "basin, enumerate");
    throw ValidationError("unknown command '" + cfg.command +
                          "'; expected one of simulate, classify, sweep, boundaries, "
                          "basin, enumerate");
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{
        "Two-unit delayed-inhibition rhythm network: simulation, periodic-state "
        "classification, percept boundaries, and (PR, df) sweep diagrams."};
    app.footer(
        "Environment: STREAMWAVE_THREADS caps sweep parallelism (0 = all cores).\n"
        "Exit codes: 0 success, 1 numerical/runtime failure, 2 configuration error.\n"
        "A JSON config (--config) may provide any long option under its snake_case\n"
        "name (e.g. tau_i, pr_min, out_csv; D/delay and TD/td are both accepted;\n"
        "pr/tr are alternatives, d overrides the df -> d mapping);\n"
        "explicit flags override the file, unknown keys are rejected.");

    app.add_option("command", cfg.command,
                   "simulate | classify | sweep | boundaries | basin | enumerate");
    app.add_option("--config", cfg.config_path, "JSON config file merged under the flags");

    app.add_option("--a", cfg.a, "cross excitation strength")->capture_default_str();
    app.add_option("--b", cfg.b, "cross inhibition strength")->capture_default_str();
    app.add_option("--c", cfg.c, "input strength on a unit's own tone")->capture_default_str();
    app.add_option("--theta", cfg.theta, "activation threshold in (0,1)")->capture_default_str();
    app.add_option("--tau", cfg.tau, "fast activity timescale (s)")->capture_default_str();
    app.add_option("--tau-i", cfg.tau_i, "inhibitory decay timescale (s)")->capture_default_str();
    app.add_option("--delay", cfg.D, "inhibition delay D (s)")->capture_default_str();
    app.add_option("--td", cfg.TD, "tone duration TD (s)")->capture_default_str();
    app.add_option("--m", cfg.m, "exponent of the df -> d mapping")->capture_default_str();
    app.add_option("--gain", cfg.gain, "gain kind (basin defaults to heaviside unless set)")
        ->check(CLI::IsMember({"heaviside", "sigmoid"}))
        ->capture_default_str();
    app.add_option("--lambda", cfg.lambda, "logistic gain slope")->capture_default_str();

    auto* pr_opt = app.add_option("--pr", cfg.pr, "presentation rate (Hz)")->capture_default_str();
    app.add_option("--tr", cfg.tr, "repetition time TR (s), alternative to --pr")
        ->excludes(pr_opt);
    app.add_option("--df", cfg.df, "normalized frequency difference in [0,1]")
        ->capture_default_str();
    app.add_option("--d", cfg.d_override,
                   "raw weak-tone strength d, bypassing the df -> d mapping");

    app.add_option("--input", cfg.input, "input waveform")
        ->check(CLI::IsMember({"square", "smoothed"}))
        ->capture_default_str();
    app.add_option("--input-lambda", cfg.input_lambda, "slope of the smoothed input edges")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "integration step (0 = auto: min(tau, D, TD)/20)")
        ->capture_default_str();
    app.add_option("--t-end", cfg.t_end, "simulated time (0 = auto: transient * 2TR)")
        ->capture_default_str();
    app.add_option("--record-from", cfg.record_from, "discard samples before this time")
        ->capture_default_str();
    app.add_option("--transient", cfg.transient, "transient length in 2TR periods")
        ->capture_default_str();
    app.add_option("--history", cfg.history, "constant history u_A u_B s_A s_B on [-D,0]")
        ->expected(4)
        ->capture_default_str();

    app.add_option("--points", cfg.points, "grid points per axis")->capture_default_str();
    app.add_option("--pr-min", cfg.pr_min, "sweep PR lower bound (Hz)")->capture_default_str();
    app.add_option("--pr-max", cfg.pr_max, "sweep PR upper bound (Hz)")->capture_default_str();
    app.add_option("--df-min", cfg.df_min, "sweep df lower bound")->capture_default_str();
    app.add_option("--df-max", cfg.df_max, "sweep df upper bound")->capture_default_str();
    app.add_option("--threads", cfg.threads, "sweep workers (0 = env/auto)")
        ->capture_default_str();

    app.add_option("--s1", cfg.s1, "u_A switching threshold of the reduced plane")
        ->capture_default_str();
    app.add_option("--s2", cfg.s2, "u_B switching threshold of the reduced plane")
        ->capture_default_str();

    app.add_option("--kind", cfg.kind, "matrix family to enumerate")
        ->check(CLI::IsMember({"sm", "sc", "lm"}))
        ->capture_default_str();
    app.add_option("--regime", cfg.regime, "classifier regime selection")
        ->check(CLI::IsMember({"auto", "short", "long"}))
        ->capture_default_str();
    app.add_option("--variant", cfg.variant,
                   "fission-curve decay gap: tone-gap (2TR-TD) or delay-gap (2TR-D)")
        ->check(CLI::IsMember({"tone-gap", "delay-gap"}))
        ->capture_default_str();
    app.add_option("--boundary-band", cfg.boundary_band,
                   "report conditions within this margin of threshold")
        ->capture_default_str();

    app.add_option("--out-csv", cfg.out_csv, "CSV artifact path");
    app.add_option("--out-svg", cfg.out_svg, "SVG artifact path");
    app.add_option("--out-json", cfg.out_json, "JSON artifact path");
    app.add_option("--out-events", cfg.out_events, "threshold-crossing events JSON path");
    app.add_option("--out-manifest", cfg.out_manifest, "sweep run-manifest JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.gain_explicit = app.count("--gain") > 0;

    try {
        if (app.count("--tr") > 0 && !(cfg.tr > 0.0))
            throw ValidationError("tr must be positive");
        if (app.count("--d") > 0 && cfg.d_override < 0.0)
            throw ValidationError("d must be >= 0");
        merge_json_config(cfg, app);
        return dispatch(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const RegimeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
