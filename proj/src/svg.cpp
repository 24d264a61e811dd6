#include "gp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gp::svg {

namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

// fixed two-decimal coordinates keep the output byte-stable and small
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render(const std::vector<Panel>& panels, int width, int panel_height) {
    const int margin_l = 60;
    const int margin_r = 20;
    const int margin_t = 34;
    const int margin_b = 40;
    const int total_h = panel_height * static_cast<int>(panels.size());

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << total_h << "\" viewBox=\"0 0 " << width << " " << total_h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double top = static_cast<double>(panel_height) * static_cast<double>(p);
        const double plot_x = margin_l;
        const double plot_y = top + margin_t;
        const double plot_w = width - margin_l - margin_r;
        const double plot_h = panel_height - margin_t - margin_b;

        Range rx;
        Range ry;
        for (const Series& s : panel.series) {
            for (double v : s.x) rx.include(v);
            for (double v : s.y) ry.include(v);
        }
        for (const Marker& m : panel.markers) rx.include(m.x);
        if (!std::isfinite(rx.lo)) {
            rx.include(0.0);
            rx.include(1.0);
        }
        if (!std::isfinite(ry.lo)) {
            ry.include(0.0);
            ry.include(1.0);
        }
        rx.pad();
        ry.pad();

        auto sx = [&](double v) { return plot_x + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
        auto sy = [&](double v) { return plot_y + plot_h - (v - ry.lo) / (ry.hi - ry.lo) * plot_h; };

        out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        out << "<text x=\"" << fmt(plot_x) << "\" y=\"" << fmt(top + 20)
            << "\" font-size=\"14\">" << escape(panel.title) << "</text>\n";
        // frame + zero line
        out << "<rect x=\"" << fmt(plot_x) << "\" y=\"" << fmt(plot_y) << "\" width=\""
            << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        if (ry.lo < 0.0 && ry.hi > 0.0) {
            out << "<line x1=\"" << fmt(plot_x) << "\" y1=\"" << fmt(sy(0.0)) << "\" x2=\""
                << fmt(plot_x + plot_w) << "\" y2=\"" << fmt(sy(0.0))
                << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
        }
        // axis extremes
        out << "<text x=\"" << fmt(plot_x - 4) << "\" y=\"" << fmt(plot_y + plot_h)
            << "\" text-anchor=\"end\">" << fmt(ry.lo) << "</text>\n";
        out << "<text x=\"" << fmt(plot_x - 4) << "\" y=\"" << fmt(plot_y + 10)
            << "\" text-anchor=\"end\">" << fmt(ry.hi) << "</text>\n";
        out << "<text x=\"" << fmt(plot_x) << "\" y=\"" << fmt(plot_y + plot_h + 16) << "\">"
            << fmt(rx.lo) << "</text>\n";
        out << "<text x=\"" << fmt(plot_x + plot_w) << "\" y=\"" << fmt(plot_y + plot_h + 16)
            << "\" text-anchor=\"end\">" << fmt(rx.hi) << "</text>\n";
        out << "<text x=\"" << fmt(plot_x + plot_w / 2) << "\" y=\""
            << fmt(plot_y + plot_h + 32) << "\" text-anchor=\"middle\">" << escape(panel.x_label)
            << "</text>\n";
        out << "<text x=\"" << fmt(plot_x - 44) << "\" y=\"" << fmt(plot_y + plot_h / 2)
            << "\" transform=\"rotate(-90 " << fmt(plot_x - 44) << " " << fmt(plot_y + plot_h / 2)
            << ")\" text-anchor=\"middle\">" << escape(panel.y_label) << "</text>\n";

        for (const Marker& m : panel.markers) {
            out << "<line x1=\"" << fmt(sx(m.x)) << "\" y1=\"" << fmt(plot_y) << "\" x2=\""
                << fmt(sx(m.x)) << "\" y2=\"" << fmt(plot_y + plot_h) << "\" stroke=\"" << m.color
                << "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
            if (!m.label.empty()) {
                out << "<text x=\"" << fmt(sx(m.x) + 3) << "\" y=\"" << fmt(plot_y + 12)
                    << "\" fill=\"" << m.color << "\">" << escape(m.label) << "</text>\n";
            }
        }
        for (const Series& s : panel.series) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
                << fmt(s.width) << "\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i) out << ' ';
                out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i]));
            }
            out << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gp::svg
