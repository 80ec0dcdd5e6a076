#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oscillab {

/// One experiment's output: a fixed-column CSV table plus a JSON summary.
/// Rows are byte-identical across runs for identical (config, seed); the
/// timestamp lives only in the JSON metadata, never in a row.
struct ExperimentReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string config_hash; // FNV-1a of the canonical config text
    std::string timestamp;   // ISO-8601 UTC

    /// Parameters that deviate from the source-material defaults (delta0,
    /// rho, precision caps, calibrated altitudes) so results are honestly
    /// labeled.
    std::vector<std::pair<std::string, std::string>> deviations;

    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Summary scalars in insertion order; the stored string is a JSON
    /// literal (already quoted if it is text).
    std::vector<std::pair<std::string, std::string>> summary;

    void add_row(std::vector<std::string> cells);
    void add_summary(const std::string& key, const std::string& text);
    void add_summary(const std::string& key, const char* text);
    void add_summary(const std::string& key, double value);
    void add_summary(const std::string& key, long value);
    void add_summary(const std::string& key, bool value);

    /// JSON literal of the summary entry, or nullptr.
    const std::string* find_summary(const std::string& key) const;
};

/// Shortest round-trip decimal form of a double ("0.1", not "0.100000...").
std::string format_double(double value);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// RFC 4180-ish: cells containing comma, quote or newline get quoted.
std::string csv_text(const ExperimentReport& rep);

/// Metadata + summary (not the rows; those are the CSV's job).
std::string json_text(const ExperimentReport& rep);

/// Writes <out_dir>/<experiment>.csv and .json, creating out_dir if needed.
/// Returns the two paths written.
std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& out_dir);

} // namespace oscillab
