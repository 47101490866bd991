#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace g46 {

/// Exit codes: 0 verified / success, 1 check failed or certificate
/// inconclusive, 2 usage or format error.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

enum class Command { expand, scan, witness, faber, irreducible };
enum class OutputFormat { json, csv, text };

struct RunConfig {
    Command command = Command::expand;
    int weight = 0;
    int k_max = 0;
    std::string method = "auto";
    std::optional<OutputFormat> format;  // unset: per-command default
    std::optional<std::filesystem::path> cache_path;
    int jobs = 1;
    std::string form;
    std::optional<std::filesystem::path> combo_file;
    std::optional<std::filesystem::path> poly_file;
    std::optional<std::filesystem::path> out_file;
    std::string checks = "all";
    bool force = false;
    bool verify = false;
    int progress_every = 50;
};

/// Resolves the cache path: --cache, else $G46_CACHE, else none.
std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::filesystem::path>& flag);

/// Parses argv and runs the command, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g46
