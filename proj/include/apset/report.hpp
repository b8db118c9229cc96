#pragma once

/// @file report.hpp
/// @brief Small helpers shared by the reporting paths: real numbers at full
///        round-trip precision and a deliberately minimal CSV writer.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace apset {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Comma-joined rows, no quoting (fields here are numbers and identifiers
/// that never contain commas).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

} // namespace apset
