#ifndef LAXCOV_TEST_SUPPORT_HPP
#define LAXCOV_TEST_SUPPORT_HPP

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace test_support {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Run a shell command, fold stderr into the captured text, and report the
// exit code. Used by the tests that exercise the installed binary.
inline RunResult run_command(const std::string& cmd) {
    RunResult r;
    std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

inline std::string temp_path(const std::string& name) {
    return std::string("/tmp/laxcov_test_") + name;
}

} // namespace test_support

#endif
