#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uskolem/arith/prime_table.hpp"

namespace uss::cli {

enum class OutputFormat { Json, Csv, Text };

/// Run configuration. Values come from an optional JSON file and are then
/// overridden by command-line flags.
struct Config {
    std::optional<std::uint64_t> sieve_limit;  ///< empty: sized for the command
    std::string cache_path;                    ///< empty: no cache
    std::uint64_t scan_cap = std::uint64_t{1} << 26;
    std::uint64_t exact_cap = 2'000'000;
    int probable_prime_rounds = 40;
    unsigned threads = 1;
    OutputFormat output_format = OutputFormat::Text;
    std::uint64_t seed = 1;

    /// Reads the keys sieve_limit, cache_path, scan_cap, exact_cap,
    /// probable_prime_rounds, threads, output_format and seed.
    /// DomainError on unreadable files, unknown keys or invalid values.
    static Config from_json_file(const std::string& path);
    /// DomainError unless every cap is positive.
    void validate() const;
};

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2, kResource = 3 };

/// Loads the cache at config.cache_path when its version and limit match,
/// otherwise builds the table and tries to persist it. Problems with the
/// cache file are reported on `warn` and never fatal.
std::shared_ptr<const arith::PrimeTable> load_or_build_cache(const std::string& cache_path, std::uint64_t limit,
                                                             std::ostream& warn);

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uss::cli
