#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace slitsim {

// 17 significant digits, locale-independent; round-trips double exactly.
std::string format_double(double value);

// Numeric CSV with LF line endings and a leading `# schema ...` comment so
// files are self-describing; headers are pinned by golden tests.
class CsvFile {
  public:
    CsvFile(const std::filesystem::path& path, const std::string& schema);
    void header(const std::vector<std::string>& names);
    void row(std::span<const double> values);
    void close();

  private:
    std::ofstream out_;
    std::filesystem::path path_;
};

}  // namespace slitsim
