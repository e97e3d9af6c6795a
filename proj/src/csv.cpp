#include "slitsim/csv.hpp"

#include <charconv>
#include <system_error>

namespace slitsim {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvFile::CsvFile(const std::filesystem::path& path, const std::string& schema)
    : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::system_error(errno, std::generic_category(),
                                       "cannot open " + path.string());
    out_ << "# schema " << schema << "\n";
}

void CsvFile::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ << ',';
        out_ << names[i];
    }
    out_ << '\n';
}

void CsvFile::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

void CsvFile::close() {
    out_.flush();
    if (!out_) throw std::system_error(errno, std::generic_category(),
                                       "write failed for " + path_.string());
    out_.close();
}

}  // namespace slitsim
