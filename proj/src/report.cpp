#include "vkramer/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace vkramer {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void ReportTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw std::logic_error("ReportTable: row width does not match the header");
    rows.push_back(std::move(cells));
}

std::string ReportTable::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c)
        out += (c ? "," : "") + header[c];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + row[c];
        out += "\n";
    }
    return out;
}

namespace {

bool looks_numeric(const std::string& s) {
    if (s.empty())
        return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string ReportTable::to_json() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        for (std::size_t c = 0; c < header.size(); ++c) {
            out += (c ? "," : "") + json_escape(header[c]) + ":";
            const std::string& v = rows[r][c];
            if (v == "true" || v == "false" || looks_numeric(v))
                out += v;
            else
                out += json_escape(v);
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

std::string cell(double x) { return format_double(x); }

std::string cell(Complex z) {
    return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

std::string cell(long long n) { return std::to_string(n); }

std::string cell(bool b) { return b ? "true" : "false"; }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace vkramer
