#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus_path(const std::string& name) {
    return std::string(BITBLAST_CORPUS_DIR) + "/" + name;
}

inline std::string corpus_source(const std::string& name) {
    return read_file(corpus_path(name));
}

// The LFSR corpus program with a chosen keystream length.
inline std::string lfsr_source(int len) {
    std::string src = corpus_source("lfsr.bit");
    const std::string needle = "int len = 128;";
    auto pos = src.find(needle);
    if (pos == std::string::npos) throw std::runtime_error("lfsr.bit: len constant not found");
    src.replace(pos, needle.size(), "int len = " + std::to_string(len) + ";");
    return src;
}

inline std::string a51_source(int len) {
    std::string src = corpus_source("a51.bit");
    const std::string needle = "int len = 128;";
    auto pos = src.find(needle);
    if (pos == std::string::npos) throw std::runtime_error("a51.bit: len constant not found");
    src.replace(pos, needle.size(), "int len = " + std::to_string(len) + ";");
    return src;
}

} // namespace testutil
