#include "oscillab/report.hpp"

#include "json.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace oscillab {

void ExperimentReport::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw std::logic_error("report row width does not match the column set");
    rows.push_back(std::move(cells));
}

void ExperimentReport::add_summary(const std::string& key, const std::string& text) {
    summary.emplace_back(key, nlohmann::json(text).dump());
}

void ExperimentReport::add_summary(const std::string& key, const char* text) {
    add_summary(key, std::string(text));
}

void ExperimentReport::add_summary(const std::string& key, double value) {
    summary.emplace_back(key, format_double(value));
}

void ExperimentReport::add_summary(const std::string& key, long value) {
    summary.emplace_back(key, std::to_string(value));
}

void ExperimentReport::add_summary(const std::string& key, bool value) {
    summary.emplace_back(key, value ? "true" : "false");
}

const std::string* ExperimentReport::find_summary(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return &v;
    return nullptr;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    return std::string(buf, 16);
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string csv_text(const ExperimentReport& rep) {
    std::string out;
    for (std::size_t i = 0; i < rep.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(rep.columns[i]);
    }
    out += '\n';
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string json_text(const ExperimentReport& rep) {
    nlohmann::ordered_json j;
    j["experiment"] = rep.experiment;
    j["seed"] = rep.seed;
    j["config_hash"] = rep.config_hash;
    j["timestamp"] = rep.timestamp;
    nlohmann::ordered_json dev = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rep.deviations) dev[k] = v;
    j["deviations"] = dev;
    j["row_count"] = rep.rows.size();
    nlohmann::ordered_json sum = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rep.summary) sum[k] = nlohmann::ordered_json::parse(v);
    j["summary"] = sum;
    return j.dump(2) + "\n";
}

std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = (fs::path(out_dir) / rep.experiment).string();
    std::vector<std::string> written;
    for (const auto& [ext, text] :
         {std::pair{std::string(".csv"), csv_text(rep)}, {std::string(".json"), json_text(rep)}}) {
        const std::string path = base + ext;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        out << text;
        written.push_back(path);
    }
    return written;
}

} // namespace oscillab
