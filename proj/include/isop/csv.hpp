#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "isop/common.hpp"

namespace isop {

/// Stable shortest-roundtrip formatting; output bytes depend only on the
/// value, which keeps CSV files reproducible across runs.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// CSV table with '#'-prefixed provenance header lines.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_string() const {
        std::string out;
        for (const auto& c : comments) out += "# " + c + "\n";
        for (std::size_t j = 0; j < header.size(); ++j) {
            out += header[j];
            out += (j + 1 < header.size()) ? ',' : '\n';
        }
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                out += format_double(row[j]);
                out += (j + 1 < row.size()) ? ',' : '\n';
            }
        }
        return out;
    }
};

/// Atomic write: stage into a temp file and rename, so partial results are
/// never visible at the target path.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("write_file_atomic: cannot open " + tmp.string());
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw Error("write_file_atomic: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace isop
