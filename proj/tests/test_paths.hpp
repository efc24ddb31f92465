#pragma once

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testing_paths {

inline std::filesystem::path test_data_dir() {
#ifdef UNIGINI_TEST_DATA_DIR
    return UNIGINI_TEST_DATA_DIR;
#else
    return "tests/data";
#endif
}

inline std::filesystem::path shipped_data_dir() {
#ifdef UNIGINI_DATA_DIR
    return UNIGINI_DATA_DIR;
#else
    return "data";
#endif
}

inline std::filesystem::path countries_csv() { return shipped_data_dir() / "countries.csv"; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Scratch directory for outputs; unique per process.
inline std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("unigini_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

inline std::string cli_binary() {
    if (const char* env = std::getenv("UNIGINI_BIN")) return env;
#ifdef UNIGINI_BIN_FALLBACK
    return UNIGINI_BIN_FALLBACK;
#else
    return "unigini";
#endif
}

}  // namespace testing_paths
