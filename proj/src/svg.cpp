#include "falsify/svg.hpp"

#include <cmath>
#include <cstdio>

namespace falsify {

namespace {

constexpr double kMargin = 40.0;
constexpr double kTargetWidth = 600.0;

class Canvas {
public:
    explicit Canvas(const Rect& arena)
        : arena_(arena), scale_(kTargetWidth / (arena.x_max - arena.x_min)) {}

    double x(double wx) const { return kMargin + (wx - arena_.x_min) * scale_; }
    double y(double wy) const { return kMargin + (arena_.y_max - wy) * scale_; }
    double len(double meters) const { return meters * scale_; }
    double width() const { return 2 * kMargin + len(arena_.x_max - arena_.x_min); }
    double height() const { return 2 * kMargin + len(arena_.y_max - arena_.y_min); }

    void line(const char* fmt, auto... args) {
        if constexpr (sizeof...(args) == 0) {
            out_ += fmt;
        } else {
            char buf[512];
            std::snprintf(buf, sizeof buf, fmt, args...);
            out_ += buf;
        }
        out_ += '\n';
    }
    std::string take() { return std::move(out_); }

    void rect(const char* cls, const Rect& r, const char* style) {
        line(R"(<rect class="%s" x="%.3f" y="%.3f" width="%.3f" height="%.3f" %s/>)", cls,
             x(r.x_min), y(r.y_max), len(r.x_max - r.x_min), len(r.y_max - r.y_min), style);
    }
    void dot(const char* cls, Point p, double radius_px, const char* style) {
        line(R"(<circle class="%s" cx="%.3f" cy="%.3f" r="%.3f" %s/>)", cls, x(p.x), y(p.y),
             radius_px, style);
    }

private:
    Rect arena_;
    double scale_;
    std::string out_;
};

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_run_svg(const RunSummary& run, const Scenario& scenario) {
    const Rect& arena = scenario.map.arena;
    Canvas c(arena);

    c.line(R"(<?xml version="1.0" encoding="UTF-8"?>)");
    c.line(R"(<svg xmlns="http://www.w3.org/2000/svg" width="%.0f" height="%.0f" viewBox="0 0 %.0f %.0f">)",
           c.width(), c.height() + 20, c.width(), c.height() + 20);
    c.line(R"(<rect x="0" y="0" width="100%" height="100%" fill="white"/>)");
    c.line(R"(<text x="%.1f" y="20" font-family="sans-serif" font-size="14">%s, run %zu, seed %llu: %s</text>)",
           kMargin, xml_escape(scenario.name).c_str(), run.run, static_cast<unsigned long long>(run.seed),
           run.counterexample ? "counterexample found" : "no counterexample found");
    c.rect("arena", arena, R"(fill="none" stroke="black" stroke-width="1.5")");

    c.line(R"(<g id="visited" fill="gray" fill-opacity="0.35">)");
    for (const auto& e : run.result.visited_log) {
        c.dot("visited", {e.position[0], e.position[1]}, 1.2, "");
    }
    c.line("</g>");

    for (const auto& r : scenario.map.obstacles) {
        c.rect("obstacle", r, R"(fill="red" fill-opacity="0.8" stroke="darkred")");
    }

    if (run.counterexample) {
        const Counterexample& cx = *run.counterexample;
        const Point start{cx.state.x, cx.state.y};
        const Point succ{cx.successor.x, cx.successor.y};
        c.dot("rover-body", start, c.len(scenario.rover.radius),
              R"(fill="none" stroke="green" stroke-dasharray="3,2")");
        c.line(R"(<line class="heading" x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="green"/>)",
               c.x(start.x), c.y(start.y),
               c.x(start.x + scenario.rover.radius * std::cos(cx.state.theta)),
               c.y(start.y + scenario.rover.radius * std::sin(cx.state.theta)));
        c.dot("initial", start, 4.0, R"(fill="green")");
        c.dot("target", cx.state.target(), 4.0, R"(fill="black")");
        c.dot("counterexample-successor", succ, 5.0,
              R"(fill="none" stroke="blue" stroke-width="2")");
    }

    const double bar_y = c.height() + 5;
    c.line(R"(<line class="scale-bar" x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="black" stroke-width="2"/>)",
           kMargin, bar_y, kMargin + c.len(1.0), bar_y);
    c.line(R"(<text x="%.3f" y="%.3f" font-family="sans-serif" font-size="12">1 m</text>)",
           kMargin + c.len(1.0) + 6, bar_y + 4);
    c.line("</svg>");
    return c.take();
}

}  // namespace falsify
