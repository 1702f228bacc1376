#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace floop {

uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

std::string read_file(const std::string& path);  // throws Error on failure
void write_file(const std::string& path, std::string_view content);

struct LineProcessResult {
    bool spawned = false;      // process started and produced output
    std::string output;        // first output line
    int exit_status = -1;
};

// Runs `command` through /bin/sh, writes `input_line` (plus newline) to its
// stdin, reads one line from its stdout and waits for exit.
LineProcessResult run_line_process(const std::string& command, const std::string& input_line);

}  // namespace floop
