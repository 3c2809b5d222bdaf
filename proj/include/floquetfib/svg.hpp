#pragma once

/**
 * @file svg.hpp
 * @brief Minimal hand-written SVG scatter plots of orbits and quotient series.
 *
 * One circle per finite sample, real part on the vertical axis. Samples at
 * infinity have no position and are only counted in the legend.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "floquetfib/numeric.hpp"
#include "floquetfib/solver.hpp"

namespace floquetfib::svg {

struct Sample {
    double n;
    double y;
};

namespace detail {

inline std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

/// Scatter plot of (n, y) with the given axis labels; `omitted` is reported
/// in the legend as the number of samples at infinity.
inline std::string scatter(const std::vector<Sample>& samples, const std::string& title, const std::string& x_label,
                           const std::string& y_label, std::size_t omitted) {
    constexpr double width = 640, height = 400, left = 60, right = 20, top = 40, bottom = 50;
    double xmin = 0, xmax = 1, ymin = -1, ymax = 1;
    if (!samples.empty()) {
        xmin = xmax = samples.front().n;
        ymin = ymax = samples.front().y;
        for (const auto& s : samples) {
            xmin = std::min(xmin, s.n);
            xmax = std::max(xmax, s.n);
            ymin = std::min(ymin, s.y);
            ymax = std::max(ymax, s.y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) {
        ymin -= 1;
        ymax += 1;
    }
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    // axes frame
    out += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(top + ph) + "\" x2=\"" +
           detail::num(left + pw) + "\" y2=\"" + detail::num(top + ph) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(top) + "\" x2=\"" + detail::num(left) +
           "\" y2=\"" + detail::num(top + ph) + "\" stroke=\"black\"/>\n";
    if (ymin < 0 && ymax > 0)
        out += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(py(0)) + "\" x2=\"" +
               detail::num(left + pw) + "\" y2=\"" + detail::num(py(0)) + "\" stroke=\"#bbbbbb\"/>\n";
    out += "<text class=\"x-label\" x=\"" + detail::num(left + pw / 2) + "\" y=\"" + detail::num(height - 12) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + x_label + "</text>\n";
    out += "<text class=\"y-label\" x=\"16\" y=\"" + detail::num(top + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " + detail::num(top + ph / 2) +
           ")\">" + y_label + "</text>\n";
    // tick values at the extremes
    out += "<text x=\"" + detail::num(left - 4) + "\" y=\"" + detail::num(top + 4) +
           "\" text-anchor=\"end\" font-size=\"10\">" + detail::num(ymax) + "</text>\n";
    out += "<text x=\"" + detail::num(left - 4) + "\" y=\"" + detail::num(top + ph) +
           "\" text-anchor=\"end\" font-size=\"10\">" + detail::num(ymin) + "</text>\n";
    out += "<text x=\"" + detail::num(left) + "\" y=\"" + detail::num(top + ph + 14) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + detail::num(xmin) + "</text>\n";
    out += "<text x=\"" + detail::num(left + pw) + "\" y=\"" + detail::num(top + ph + 14) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + detail::num(xmax) + "</text>\n";
    for (const auto& s : samples)
        out += "<circle class=\"sample\" cx=\"" + detail::num(px(s.n)) + "\" cy=\"" + detail::num(py(s.y)) +
               "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    out += "<text class=\"legend\" x=\"" + detail::num(left + pw) + "\" y=\"" + detail::num(top - 6) +
           "\" text-anchor=\"end\" font-size=\"11\">" + std::to_string(samples.size()) + " points; " +
           std::to_string(omitted) + " infinite samples omitted</text>\n";
    out += "</svg>\n";
    return out;
}

/// Points (n, Re x_n).
inline std::string orbit_plot(const std::vector<Scalar>& xs) {
    std::vector<Sample> samples;
    samples.reserve(xs.size());
    for (std::size_t n = 0; n < xs.size(); ++n) samples.push_back({static_cast<double>(n), xs[n].real()});
    return scatter(samples, "orbit", "n", "x_n", 0);
}

/// Points (n, Re x_{n+1}/x_n); infinite quotients are skipped.
inline std::string quotient_plot(const std::vector<ProjectiveScalar>& qs) {
    std::vector<Sample> samples;
    std::size_t omitted = 0;
    for (std::size_t n = 0; n < qs.size(); ++n) {
        if (qs[n].is_infinite()) {
            ++omitted;
            continue;
        }
        samples.push_back({static_cast<double>(n), qs[n].value().real()});
    }
    return scatter(samples, "quotients", "n", "x_{n+1}/x_n", omitted);
}

}  // namespace floquetfib::svg
