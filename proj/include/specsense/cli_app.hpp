// Command-line front end: scenario runs, table reproductions, signal export,
// and bank description dumps. Kept as a library entry point so the whole
// surface is testable in-process.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsense/config.hpp"

namespace specsense {

struct RunManifest {
    std::string command;
    std::string config_path;   // "default" when no file was given
    std::string scenario;      // preset name or file path
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> files; // every emitted file, manifest written last

    std::string to_json() const;
};

// exit codes: 0 success, 2 usage, 3 config, 4 runtime
int cli_main(int argc, const char* const* argv);

// key=value bank configuration file (all keys optional)
BankConfig config_from_text(const std::string& text);
BankConfig load_config(const std::string& path);

// write-temp-then-rename
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace specsense
