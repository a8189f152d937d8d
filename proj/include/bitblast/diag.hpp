#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bitblast {

struct SourceLoc {
    int line = 0;   // 1-based, 0 = unknown
    int column = 0; // 1-based
};

// Compile-time diagnostic. Rendered as "file:line:col: severity: message",
// one line per diagnostic, so downstream tools can parse the stream.
class CompileError : public std::runtime_error {
public:
    CompileError(std::string file, SourceLoc loc, std::string message)
        : std::runtime_error(render(file, loc, message)),
          file_(std::move(file)),
          loc_(loc),
          message_(std::move(message)) {}

    const std::string& file() const { return file_; }
    SourceLoc loc() const { return loc_; }
    const std::string& message() const { return message_; }

    static std::string render(const std::string& file, SourceLoc loc,
                              const std::string& message) {
        return file + ":" + std::to_string(loc.line) + ":" +
               std::to_string(loc.column) + ": error: " + message;
    }

private:
    std::string file_;
    SourceLoc loc_;
    std::string message_;
};

// Resource exhaustion (unroll budget, solver decision cap). Kept distinct
// from CompileError so the CLI can map it to its own exit code.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace bitblast
