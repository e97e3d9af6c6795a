#pragma once

#include <filesystem>
#include <string>
#include <vector>

// Minimal vector-graphics emission; decoration over the CSV outputs, nothing
// reads these back.
namespace slitsim::svg {

struct Series {
    std::string name;
    std::vector<double> y;
};

void line_plot(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::vector<double>& x,
               const std::vector<Series>& series);

void heat_map(const std::filesystem::path& path, const std::string& title,
              const std::vector<double>& axis1, const std::vector<double>& axis2,
              const std::vector<std::vector<double>>& values);

}  // namespace slitsim::svg
