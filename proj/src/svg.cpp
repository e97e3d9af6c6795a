#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>

#include "slitsim/csv.hpp"

namespace slitsim::svg {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 540.0;
constexpr double kMargin = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
    return out;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    double clamp01(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range span(const std::vector<double>& v) {
    Range r;
    if (v.empty()) return r;
    r.lo = *std::min_element(v.begin(), v.end());
    r.hi = *std::max_element(v.begin(), v.end());
    if (r.lo == r.hi) {
        r.lo -= 1.0;
        r.hi += 1.0;
    }
    return r;
}

std::string heat_color(double t) {
    // dark blue -> cyan -> yellow ramp
    t = std::clamp(t, 0.0, 1.0);
    const auto channel = [](double x) {
        return static_cast<int>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
    };
    const int r = channel(t < 0.5 ? 0.1 * t : 2.2 * (t - 0.5));
    const int g = channel(t < 0.5 ? 1.6 * t : 0.8 + 0.4 * (t - 0.5));
    const int b = channel(t < 0.5 ? 0.4 + 1.2 * t : 1.0 - 1.8 * (t - 0.5));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void line_plot(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::vector<double>& x,
               const std::vector<Series>& series) {
    std::ofstream out = open(path);
    const Range xr = span(x);
    std::vector<double> all;
    for (const Series& s : series) all.insert(all.end(), s.y.begin(), s.y.end());
    const Range yr = span(all);

    const double pw = kWidth - 2 * kMargin;
    const double ph = kHeight - 2 * kMargin;
    auto px = [&](double v) { return kMargin + pw * xr.clamp01(v); };
    auto py = [&](double v) { return kHeight - kMargin - ph * yr.clamp01(v); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"11\">" << format_double(xr.lo) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xr.hi) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(yr.lo) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(yr.hi) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i)
            out << px(x[i]) << ',' << py(series[s].y[i]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 16 + 14 * s
            << "\" font-size=\"11\" fill=\"" << color << "\">" << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
    out.flush();
    if (!out)
        throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
}

void heat_map(const std::filesystem::path& path, const std::string& title,
              const std::vector<double>& axis1, const std::vector<double>& axis2,
              const std::vector<std::vector<double>>& values) {
    std::ofstream out = open(path);
    std::vector<double> all;
    for (const auto& row : values) all.insert(all.end(), row.begin(), row.end());
    const Range vr = span(all);

    const double pw = kWidth - 2 * kMargin;
    const double ph = kHeight - 2 * kMargin;
    const double cw = pw / static_cast<double>(std::max<std::size_t>(axis2.size(), 1));
    const double ch = ph / static_cast<double>(std::max<std::size_t>(axis1.size(), 1));

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            // rows are drawn top-down in axis1 order
            out << "<rect x=\"" << kMargin + cw * static_cast<double>(j) << "\" y=\""
                << kMargin + ch * static_cast<double>(i) << "\" width=\"" << cw + 0.5
                << "\" height=\"" << ch + 0.5 << "\" fill=\"" << heat_color(vr.clamp01(values[i][j]))
                << "\"/>\n";
        }
    }
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "</svg>\n";
    out.flush();
    if (!out)
        throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
}

}  // namespace slitsim::svg
