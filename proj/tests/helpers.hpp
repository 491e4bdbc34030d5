#pragma once

#include <txplace/grid.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

inline txplace::GridByte free_grid(int h, int w) {
    return txplace::GridByte::Zero(h, w);
}

inline txplace::BuildingMap free_map(int h, int w, std::string id = "m") {
    return {free_grid(h, w), std::move(id)};
}

/// Empty scratch directory under the test working directory.
inline std::filesystem::path fresh_dir(const std::string& name) {
    std::filesystem::path p = std::filesystem::current_path() / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline std::string file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

/// Relative path -> content for every regular file under root.
inline std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            out[std::filesystem::relative(entry.path(), root).string()] = file_bytes(entry.path());
    return out;
}
