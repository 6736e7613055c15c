#ifndef VKRAMER_REPORT_HPP
#define VKRAMER_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "vkramer/hilbert.hpp"

namespace vkramer {

/// Shortest decimal form that round-trips a double (printf %.17g width cap).
std::string format_double(double x);

/// One output table: a header row plus string cells. Serialized to CSV or a
/// JSON array of row objects.
struct ReportTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_csv() const;
    std::string to_json() const;
};

std::string cell(double x);
std::string cell(Complex z); // "re+imi" textual form
std::string cell(long long n);
std::string cell(bool b);

/// Writes content to path through a temporary sibling file and an atomic
/// rename, so partially written reports are never observed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace vkramer

#endif
