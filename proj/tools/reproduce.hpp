#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace chaylab {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

const std::vector<std::string>& figure_ids();

// Writes the data behind one figure or table into `dir` and returns
// the assertions evaluated on it.
std::vector<Check> reproduce(const std::string& id, const std::filesystem::path& dir);

} // namespace chaylab
