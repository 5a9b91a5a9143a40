#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rsel/curves.hpp"

namespace rsel {

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << v;
    return ss.str();
}

} // namespace

// mean accuracy line with a +/- one standard deviation band
void write_svg_plot(const std::string& path, const AggregateCurve& aggregate,
                    const std::string& x_label) {
    if (aggregate.grid.empty()) {
        throw std::invalid_argument("write_svg_plot: empty aggregate");
    }
    constexpr double width = 640.0, height = 460.0;
    constexpr double ml = 60.0, mr = 20.0, mt = 20.0, mb = 50.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    const double x_lo = aggregate.grid.front();
    const double x_hi = aggregate.grid.back();
    const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
    const auto sx = [&](double v) { return ml + (v - x_lo) / x_span * plot_w; };
    const auto sy = [&](double v) { return mt + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_h; };

    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // band
    out << "<path d=\"M";
    for (std::size_t i = 0; i < aggregate.grid.size(); ++i) {
        out << (i ? " L" : "") << fmt(sx(aggregate.grid[i])) << ' '
            << fmt(sy(aggregate.mean[i] + aggregate.stddev[i]));
    }
    for (std::size_t r = aggregate.grid.size(); r-- > 0;) {
        out << " L" << fmt(sx(aggregate.grid[r])) << ' '
            << fmt(sy(aggregate.mean[r] - aggregate.stddev[r]));
    }
    out << " Z\" fill=\"#4878cf\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";

    // mean line
    out << "<polyline fill=\"none\" stroke=\"#2f4f9f\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < aggregate.grid.size(); ++i) {
        out << (i ? " " : "") << fmt(sx(aggregate.grid[i])) << ',' << fmt(sy(aggregate.mean[i]));
    }
    out << "\"/>\n";

    // axes
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + plot_h) << "\" x2=\""
        << fmt(ml + plot_w) << "\" y2=\"" << fmt(mt + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(mt + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // y ticks every 0.2 accuracy
    for (int i = 0; i <= 5; ++i) {
        const double v = i * 0.2;
        out << "<line x1=\"" << fmt(ml - 4) << "\" y1=\"" << fmt(sy(v)) << "\" x2=\"" << fmt(ml)
            << "\" y2=\"" << fmt(sy(v)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(sy(v) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    // x ticks at 5 evenly spaced grid values
    for (int i = 0; i <= 4; ++i) {
        const double v = x_lo + x_span * i / 4.0;
        out << "<line x1=\"" << fmt(sx(v)) << "\" y1=\"" << fmt(mt + plot_h) << "\" x2=\""
            << fmt(sx(v)) << "\" y2=\"" << fmt(mt + plot_h + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(sx(v)) << "\" y=\"" << fmt(mt + plot_h + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
    }

    out << "<text x=\"" << fmt(ml + plot_w / 2) << "\" y=\"" << fmt(height - 12)
        << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << fmt(mt + plot_h / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(mt + plot_h / 2) << ")\">test accuracy</text>\n";
    out << "</svg>\n";
}

} // namespace rsel
