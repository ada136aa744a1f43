#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ridgetail {

// Locale-independent shortest round-trip formatting; CSV outputs built from
// it are byte-identical across runs and thread counts.
std::string format_number(double x);
std::string format_number(long x);
std::string format_number(int x);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// key = value lines, written in the given order
void write_keyvalue(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

// Minimal polyline plot; log-scaled axes take log10 of the data first.
void write_svg_plot(const std::string& path, const std::vector<double>& x,
                    const std::vector<double>& y, const std::string& x_label,
                    const std::string& y_label, bool log_x = false, bool log_y = false);

}  // namespace ridgetail
