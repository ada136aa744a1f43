#include "ridgetail/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ridgetail {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_number failed");
    return std::string(buf, ptr);
}

std::string format_number(long x) { return std::to_string(x); }
std::string format_number(int x) { return std::to_string(x); }

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

void write_keyvalue(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    auto out = open_out(path);
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
}

void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& x_label,
                    const std::string& y_label, bool log_x, bool log_y) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("write_svg_plot: mismatched or empty data");
    std::vector<double> px(xs), py(ys);
    auto apply_log = [](std::vector<double>& v) {
        for (double& x : v) {
            if (!(x > 0.0)) throw std::domain_error("write_svg_plot: log axis needs positive data");
            x = std::log10(x);
        }
    };
    if (log_x) apply_log(px);
    if (log_y) apply_log(py);

    double x_lo = px[0], x_hi = px[0], y_lo = py[0], y_hi = py[0];
    for (double x : px) { x_lo = std::min(x_lo, x); x_hi = std::max(x_hi, x); }
    for (double y : py) { y_lo = std::min(y_lo, y); y_hi = std::max(y_hi, y); }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;

    const double w = 640.0, h = 480.0, margin = 60.0;
    auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (w - 2 * margin); };
    auto sy = [&](double y) { return h - margin - (y - y_lo) / (y_hi - y_lo) * (h - 2 * margin); };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">"
        << (log_x ? "log10 " + x_label : x_label) << "</text>\n";
    out << "<text x=\"15\" y=\"" << h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " << h / 2 << ")\">"
        << (log_y ? "log10 " + y_label : y_label) << "</text>\n";
    out << "<text x=\"" << margin << "\" y=\"" << h - margin + 20 << "\" font-size=\"10\">"
        << format_number(log_x ? std::pow(10.0, x_lo) : x_lo) << "</text>\n";
    out << "<text x=\"" << w - margin << "\" y=\"" << h - margin + 20
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_number(log_x ? std::pow(10.0, x_hi) : x_hi) << "</text>\n";
    out << "<text x=\"" << margin - 5 << "\" y=\"" << h - margin
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_number(log_y ? std::pow(10.0, y_lo) : y_lo) << "</text>\n";
    out << "<text x=\"" << margin - 5 << "\" y=\"" << margin
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_number(log_y ? std::pow(10.0, y_hi) : y_hi) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < px.size(); ++i)
        out << format_number(sx(px[i])) << ',' << format_number(sy(py[i])) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < px.size(); ++i)
        out << "<circle cx=\"" << format_number(sx(px[i])) << "\" cy=\""
            << format_number(sy(py[i])) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    out << "</svg>\n";
}

}  // namespace ridgetail
