#pragma once

#include <string>
#include <vector>

namespace gp::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    double width = 1.2;
};

struct Marker {
    double x = 0.0;
    std::string label;
    std::string color = "#d62728";
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Marker> markers;  // vertical lines at x
};

// Minimal deterministic line-plot renderer: fixed canvas, no timestamps,
// byte-stable output for identical input.
std::string render(const std::vector<Panel>& panels, int width = 880, int panel_height = 260);

}  // namespace gp::svg
