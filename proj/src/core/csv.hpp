#ifndef CONTACTMECH_CORE_CSV_HPP
#define CONTACTMECH_CORE_CSV_HPP

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace contactmech {

/// Full double precision (17 significant digits), locale independent, so
/// repeated runs produce byte-identical files.
std::string format_full(double value);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    void row(std::span<const double> values);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t n_columns_;
};

} // namespace contactmech

#endif
