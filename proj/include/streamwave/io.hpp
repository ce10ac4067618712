#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "streamwave/params.hpp"

namespace streamwave {

// Shortest round-trip decimal form; identical bytes for identical doubles, so
// emitted artifacts are reproducible across runs and thread counts.
inline std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }

inline std::string fmt_fixed(double v, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

// Writes to a sibling temp file then renames, so readers never observe a
// partially written artifact and a crash leaves the old file intact.
inline void atomic_write_text(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Worker count for parallel sweeps. STREAMWAVE_THREADS overrides; 0 or unset
// means one worker per hardware thread.
inline unsigned resolve_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("STREAMWAVE_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    unsigned long long parsed = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), parsed);
    if (ec != std::errc{} || *ptr != '\0')
        throw ValidationError("STREAMWAVE_THREADS must be a non-negative integer");
    if (parsed == 0) return hw;
    if (parsed > 4096) throw ValidationError("STREAMWAVE_THREADS is unreasonably large");
    return static_cast<unsigned>(parsed);
}

// ---- minimal SVG 1.1 document builder ------------------------------------

class SvgWriter {
public:
    SvgWriter(double width, double height) : w_(width), h_(height) {
        body_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"";
        body_ += fmt_fixed(w_, 2);
        body_ += "\" height=\"";
        body_ += fmt_fixed(h_, 2);
        body_ += "\" viewBox=\"0 0 " + fmt_fixed(w_, 2) + " " + fmt_fixed(h_, 2) + "\">\n";
    }

    // XML comments must not contain "--"; break any run of dashes.
    void comment(std::string_view text) {
        std::string safe;
        safe.reserve(text.size());
        char prev = '\0';
        for (char ch : text) {
            if (ch == '-' && prev == '-') safe += ' ';
            safe += ch;
            prev = ch;
        }
        body_ += "<!-- " + safe + " -->\n";
    }

    // Diagonal-hatch pattern usable as fill=\"url(#id)\".
    void define_hatch(const std::string& id, double spacing, const std::string& color) {
        body_ += "<defs><pattern id=\"" + id + "\" width=\"" + fmt_fixed(spacing, 2) +
                 "\" height=\"" + fmt_fixed(spacing, 2) +
                 "\" patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">" +
                 "<rect width=\"" + fmt_fixed(spacing, 2) + "\" height=\"" +
                 fmt_fixed(spacing, 2) + "\" fill=\"white\"/>" + "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" +
                 fmt_fixed(spacing, 2) + "\" stroke=\"" + color +
                 "\" stroke-width=\"1\"/></pattern></defs>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "", double stroke_width = 0.0) {
        body_ += "<rect x=\"" + fmt_fixed(x, 2) + "\" y=\"" + fmt_fixed(y, 2) + "\" width=\"" +
                 fmt_fixed(w, 2) + "\" height=\"" + fmt_fixed(h, 2) + "\" fill=\"" + fill + "\"";
        if (!stroke.empty())
            body_ += " stroke=\"" + stroke + "\" stroke-width=\"" + fmt_fixed(stroke_width, 2) + "\"";
        body_ += "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width) {
        body_ += "<line x1=\"" + fmt_fixed(x1, 2) + "\" y1=\"" + fmt_fixed(y1, 2) + "\" x2=\"" +
                 fmt_fixed(x2, 2) + "\" y2=\"" + fmt_fixed(y2, 2) + "\" stroke=\"" + stroke +
                 "\" stroke-width=\"" + fmt_fixed(width, 2) + "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width, const std::string& dash = "") {
        if (pts.size() < 2) return;
        body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
                 fmt_fixed(width, 2) + "\"";
        if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
        body_ += " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ += ' ';
            body_ += fmt_fixed(pts[i].first, 2) + "," + fmt_fixed(pts[i].second, 2);
        }
        body_ += "\"/>\n";
    }

    void text(double x, double y, const std::string& s, double size,
              const std::string& anchor = "start", double rotate_deg = 0.0) {
        body_ += "<text x=\"" + fmt_fixed(x, 2) + "\" y=\"" + fmt_fixed(y, 2) +
                 "\" font-family=\"sans-serif\" font-size=\"" + fmt_fixed(size, 2) +
                 "\" text-anchor=\"" + anchor + "\"";
        if (rotate_deg != 0.0)
            body_ += " transform=\"rotate(" + fmt_fixed(rotate_deg, 2) + " " + fmt_fixed(x, 2) +
                     " " + fmt_fixed(y, 2) + ")\"";
        body_ += ">" + escape(s) + "</text>\n";
    }

    std::string str() const { return body_ + "</svg>\n"; }

    double width() const { return w_; }
    double height() const { return h_; }

private:
    static std::string escape(const std::string& s) {
        std::string out;
        out.reserve(s.size());
        for (char ch : s) {
            switch (ch) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                default: out += ch;
            }
        }
        return out;
    }

    double w_, h_;
    std::string body_;
};

}  // namespace streamwave
