#include "sipsim/plots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "sipsim/report.hpp"

namespace sipsim {

namespace {

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round-number tick step giving roughly `target` ticks over `span`.
double nice_step(double span, int target) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

std::string tick_label(double v, double step) {
    if (std::abs(v) < step * 1e-9) v = 0.0;
    if (step >= 1.0 && std::abs(step - std::round(step)) < 1e-9) return fmt::format("{:.0f}", v);
    const int decimals = std::clamp(static_cast<int>(std::ceil(-std::log10(step))) + 1, 1, 6);
    return fmt::format("{:.{}f}", v, decimals);
}

class Svg {
public:
    Svg(double width, double height) : width_(width), height_(height) {}

    void text(double x, double y, std::string_view s, std::string_view anchor = "middle", int size = 12,
              std::string_view extra = "") {
        body_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"{}\" text-anchor=\"{}\"{}>{}</text>\n", x, y,
                             size, anchor, extra, escape(s));
    }
    void line(double x1, double y1, double x2, double y2, std::string_view style) {
        body_ += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" style=\"{}\"/>\n", x1, y1, x2,
                             y2, style);
    }
    void rect(double x, double y, double w, double h, std::string_view style) {
        body_ += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" style=\"{}\"/>\n", x, y,
                             std::max(w, 0.0), std::max(h, 0.0), style);
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view style) {
        if (pts.size() < 2) return;
        std::string p;
        for (const auto& [x, y] : pts) p += fmt::format("{:.2f},{:.2f} ", x, y);
        p.pop_back();
        body_ += fmt::format("<polyline points=\"{}\" style=\"{}\"/>\n", p, style);
    }
    void raw(std::string_view s) { body_ += s; }

    std::string str(std::string_view title) const {
        return fmt::format(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
            "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\">\n"
            "<title>{2}</title>\n"
            "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{1:.0f}\" style=\"fill:white\"/>\n"
            "{3}</svg>\n",
            width_, height_, escape(title), body_);
    }

private:
    double width_;
    double height_;
    std::string body_;
};

// A plot area mapping data coordinates onto a pixel rectangle.
struct Frame {
    double left, top, width, height;
    double x0, x1, y0, y1;

    double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }

    void axes(Svg& svg, std::string_view xlabel, std::string_view ylabel, bool yticks = true) const {
        svg.rect(left, top, width, height, "fill:none;stroke:black;stroke-width:1");
        const double xs = nice_step(x1 - x0, 8);
        for (double x = std::ceil(x0 / xs) * xs; x <= x1 + xs * 1e-9; x += xs) {
            svg.line(px(x), top + height, px(x), top + height + 4, "stroke:black");
            svg.text(px(x), top + height + 16, tick_label(x, xs), "middle", 10);
        }
        if (yticks) {
            const double ys = nice_step(y1 - y0, 5);
            for (double y = std::ceil(y0 / ys) * ys; y <= y1 + ys * 1e-9; y += ys) {
                svg.line(left - 4, py(y), left, py(y), "stroke:black");
                svg.line(left, py(y), left + width, py(y), "stroke:#dddddd");
                svg.text(left - 6, py(y) + 3, tick_label(y, ys), "end", 10);
            }
        }
        svg.text(left + width / 2, top + height + 32, xlabel, "middle", 11);
        if (!ylabel.empty()) {
            const double x = left - 42;
            const double y = top + height / 2;
            svg.text(x, y, ylabel, "middle", 11, fmt::format(" transform=\"rotate(-90 {:.2f} {:.2f})\"", x, y));
        }
    }
};

std::pair<double, double> padded_range(double lo, double hi) {
    if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

std::string access_timeline_svg(const CoverageReport& coverage, const std::string& title) {
    Svg svg(900, 300);
    svg.text(450, 24, title, "middle", 15);
    const double h0 = coverage.horizon.start.t_s / 3600.0;
    const double h1 = coverage.horizon.end.t_s / 3600.0;

    // Step trace: 1 while any provider is visible, 0 during an outage.
    Frame f{90, 50, 780, 180, h0, h1, -0.15, 1.15};
    svg.rect(f.left, f.top, f.width, f.height, "fill:#f7f7f7");
    for (const auto& iv : coverage.outages) {
        svg.rect(f.px(iv.start.t_s / 3600.0), f.py(1.0), f.px(iv.end.t_s / 3600.0) - f.px(iv.start.t_s / 3600.0),
                 f.py(0.0) - f.py(1.0), "fill:#d62728;fill-opacity:0.35");
    }
    for (const auto& iv : coverage.coverage) {
        svg.rect(f.px(iv.start.t_s / 3600.0), f.py(1.0), f.px(iv.end.t_s / 3600.0) - f.px(iv.start.t_s / 3600.0),
                 f.py(0.0) - f.py(1.0), "fill:#2ca02c;fill-opacity:0.55");
    }
    std::vector<std::pair<double, double>> step;
    double level = 0.0;
    step.emplace_back(f.px(h0), f.py(0.0));
    for (const auto& iv : coverage.coverage) {
        step.emplace_back(f.px(iv.start.t_s / 3600.0), f.py(level));
        step.emplace_back(f.px(iv.start.t_s / 3600.0), f.py(level = 1.0));
        step.emplace_back(f.px(iv.end.t_s / 3600.0), f.py(level));
        step.emplace_back(f.px(iv.end.t_s / 3600.0), f.py(level = 0.0));
    }
    step.emplace_back(f.px(h1), f.py(level));
    svg.polyline(step, "fill:none;stroke:black;stroke-width:1");
    f.axes(svg, "time [h]", "", false);
    svg.text(f.left - 8, f.py(1.0) + 4, "access", "end", 11);
    svg.text(f.left - 8, f.py(0.0) + 4, "outage", "end", 11);
    svg.text(450, 285,
             fmt::format("coverage {:.2f} % ({:.2f} s), {} access and {} outage intervals", coverage.total_pct,
                         coverage.total_access_s, coverage.coverage.size(), coverage.outages.size()),
             "middle", 11);
    return svg.str(title);
}

std::string ecdf_svg(const EcdfResult& ecdf, const std::string& title) {
    Svg svg(700, 460);
    svg.text(350, 24, title, "middle", 15);
    double xmax = ecdf.threshold_s;
    for (const auto& p : ecdf.points) xmax = std::max(xmax, p.duration_s);
    xmax = xmax > 0.0 ? xmax * 1.05 : 1.0;
    Frame f{80, 50, 580, 340, 0.0, xmax, 0.0, 1.0};
    f.axes(svg, "longest single access per satellite [s]", "cumulative probability");

    std::vector<std::pair<double, double>> pts;
    double prob = 0.0;
    pts.emplace_back(f.px(0.0), f.py(0.0));
    for (const auto& p : ecdf.points) {
        pts.emplace_back(f.px(p.duration_s), f.py(prob));
        pts.emplace_back(f.px(p.duration_s), f.py(prob = p.probability));
    }
    pts.emplace_back(f.px(xmax), f.py(prob));
    svg.polyline(pts, "fill:none;stroke:#1f77b4;stroke-width:1.5");
    svg.line(f.px(ecdf.threshold_s), f.top, f.px(ecdf.threshold_s), f.top + f.height,
             "stroke:#d62728;stroke-dasharray:4,3");
    svg.text(f.px(ecdf.threshold_s) + 4, f.top + 14, fmt::format("{:.0f} s", ecdf.threshold_s), "start", 10);
    svg.text(350, 445,
             fmt::format("{} of {} satellites below {:.0f} s ({:.2f} %)", ecdf.useless_count, ecdf.counted_satellites,
                         ecdf.threshold_s, ecdf.useless_fraction * 100.0),
             "middle", 11);
    return svg.str(title);
}

std::string link_panels_svg(std::span<const LinkSample> series, const std::string& title) {
    Svg svg(1200, 620);
    svg.text(600, 24, title, "middle", 15);

    double t0 = 0.0, t1 = 1.0;
    if (!series.empty()) {
        t0 = series.front().t.t_s / 3600.0;
        t1 = std::max(series.back().t.t_s / 3600.0, t0 + 1e-6);
    }

    struct Panel {
        const char* label;
        double (*get)(const LinkSample&);
    };
    const Panel dl[] = {
        {"range [km]", [](const LinkSample& s) { return s.slant_range_km; }},
        {"Es/N0 [dB]", [](const LinkSample& s) { return s.esn0_dl_db; }},
        {"rate [Mbps]", [](const LinkSample& s) { return s.rate_dl_bps / 1e6; }},
    };
    const Panel ul[] = {
        {"range [km]", [](const LinkSample& s) { return s.slant_range_km; }},
        {"Es/N0 [dB]", [](const LinkSample& s) { return s.esn0_ul_db; }},
        {"rate [Mbps]", [](const LinkSample& s) { return s.rate_ul_bps / 1e6; }},
    };

    auto draw_row = [&](std::span<const Panel> panels, double top, std::string_view name) {
        svg.text(20, top + 110, name, "middle", 13,
                 fmt::format(" transform=\"rotate(-90 20 {:.2f})\" font-weight=\"bold\"", top + 110));
        for (std::size_t col = 0; col < panels.size(); ++col) {
            const Panel& p = panels[col];
            std::optional<double> lo, hi;
            for (const auto& s : series) {
                if (!s.serving_sat) continue;
                const double v = p.get(s);
                lo = lo ? std::min(*lo, v) : v;
                hi = hi ? std::max(*hi, v) : v;
            }
            const auto [y0, y1] = lo ? padded_range(*lo, *hi) : std::pair{0.0, 1.0};
            Frame f{100 + 380.0 * col, top, 300, 210, t0, t1, y0, y1};
            f.axes(svg, "time [h]", p.label);
            // Unserved samples break the trace.
            std::vector<std::pair<double, double>> run;
            for (const auto& s : series) {
                if (!s.serving_sat) {
                    svg.polyline(run, "fill:none;stroke:#1f77b4;stroke-width:1");
                    run.clear();
                    continue;
                }
                run.emplace_back(f.px(s.t.t_s / 3600.0), f.py(p.get(s)));
            }
            svg.polyline(run, "fill:none;stroke:#1f77b4;stroke-width:1");
        }
    };
    draw_row(dl, 50, "downlink");
    draw_row(ul, 340, "uplink");
    return svg.str(title);
}

std::vector<std::filesystem::path> emit_plots(ReportBundle& bundle, const std::filesystem::path& out_dir) {
    std::vector<std::filesystem::path> written;
    const Scenario& s = bundle.scenario.scenario;
    const std::string subject =
        fmt::format("{} / {} ({:g} km)", s.constellation.constellation.name, s.mission.name, s.mission.altitude_km);
    auto emit = [&](const char* name, const std::string& svg) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        const auto path = out_dir / name;
        write_text_file(path, svg);
        written.push_back(path);
    };
    if (bundle.coverage) {
        emit("access_timeline.svg", access_timeline_svg(*bundle.coverage, "Access and outage intervals, " + subject));
    }
    if (bundle.ecdf) {
        emit("ecdf.svg", ecdf_svg(*bundle.ecdf, "Longest single access per satellite, " + subject));
    }
    if (bundle.link_series) {
        if (bundle.link && bundle.link->served_samples > 0) {
            emit("link_panels.svg", link_panels_svg(*bundle.link_series, "Link budget over time, " + subject));
        } else {
            bundle.warnings.push_back("link_panels.svg skipped: no served link samples");
        }
    }
    return written;
}

}  // namespace sipsim
