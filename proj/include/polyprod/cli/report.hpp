#pragma once

// ExperimentReport and its JSON / CSV emission.
//
// JSON keys keep insertion order, so a given report always serializes to the
// same bytes. Integers with |v| > 2^53 are written as decimal strings.

#include <polyprod/bigint.hpp>
#include <polyprod/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

namespace polyprod::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

enum class Format { json, csv };

/// Flat rows for CSV output: one row per primary record of the command.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
    std::string schema_version = kSchemaVersion;
    std::string command;
    Json parameters = Json::object();
    std::string timestamp;
    std::optional<Json> results;  // absent on failure
    std::optional<Json> error;    // {kind, message}
    std::vector<std::string> warnings;
    Table table;
};

inline constexpr i64 kJsonSafeInteger = i64{1} << 53;

inline Json json_int(const BigInt& v) {
    if (fits_i64(v)) {
        const i64 x = to_i64(v);
        if (x <= kJsonSafeInteger && x >= -kJsonSafeInteger) return x;
    }
    return v.get_str();
}

inline Json json_int(u64 v) {
    if (v <= static_cast<u64>(kJsonSafeInteger)) return v;
    return std::to_string(v);
}

inline Json json_int(i64 v) {
    if (v <= kJsonSafeInteger && v >= -kJsonSafeInteger) return v;
    return std::to_string(v);
}

template <class T>
Json json_or_null(const std::optional<T>& v) {
    if (!v) return nullptr;
    return *v;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline Json to_json(const ExperimentReport& r) {
    Json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    j["parameters"] = r.parameters;
    j["timestamp"] = r.timestamp;
    if (r.results) j["results"] = *r.results;
    if (r.error) j["error"] = *r.error;
    j["warnings"] = r.warnings;
    return j;
}

inline ExperimentReport report_from_json(const Json& j) {
    static const std::vector<std::string> kKeys = {"schema_version", "command", "parameters", "timestamp",
                                                   "results",        "error",   "warnings"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            fail(ErrorKind::invalid_argument, "unknown report key '" + key + "'");
    }
    ExperimentReport r;
    r.schema_version = j.at("schema_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.timestamp = j.at("timestamp").get<std::string>();
    if (j.contains("results")) r.results = j.at("results");
    if (j.contains("error")) r.error = j.at("error");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string to_csv(const Table& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cells[i]);
        }
        out += "\r\n";
    };
    line(t.columns);
    for (const auto& row : t.rows) line(row);
    return out;
}

inline std::string emit(const ExperimentReport& r, Format format) {
    if (format == Format::csv && r.results) return to_csv(r.table);
    return to_json(r).dump(2) + "\n";
}

/// Cell text for a JSON scalar.
inline std::string cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace polyprod::cli
