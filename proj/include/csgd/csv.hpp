#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "csgd/errors.hpp"

namespace csgd {

/// CSV writer with a fixed header. Doubles serialize with 17 significant
/// digits so files are byte-stable and round-trip exactly.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path, std::ios::binary), cols_(columns.size()) {
        if (!out_) throw ConfigError("cannot open for writing: " + path);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != cols_)
            throw ConfigError("CsvWriter: wrong cell count for row");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t cols_;
};

} // namespace csgd
