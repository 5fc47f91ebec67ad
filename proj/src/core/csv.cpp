#include "core/csv.hpp"

#include "core/types.hpp"

#include <cstdio>
#include <stdexcept>

namespace contactmech {

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), n_columns_(columns.size()) {
    if (!out_)
        throw IoError("cannot open output file: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != n_columns_)
        throw std::invalid_argument("csv row width does not match header: " + path_);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << format_full(values[i]);
    }
    out_ << '\n';
    if (!out_)
        throw IoError("write failed: " + path_);
}

} // namespace contactmech
