#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairgen/errors.hpp"

namespace pairgen::io {

using json = nlohmann::json;

inline std::string fmt(double v, const char* spec = "%.12e") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot write '" + path.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot write '" + path.string() + "'");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot read '" + path.string() + "'");
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return s;
}

/// RFC 4180 CSV accumulation: CRLF line ends, '.' decimal separator.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) body_ += ',';
            body_ += header[i];
        }
        body_ += "\r\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += "\r\n";
    }

    const std::string& str() const { return body_; }

private:
    std::string body_;
};

/// Checks a document against the subset of JSON Schema the shipped schemas
/// use: type, required, properties, items, additionalProperties.
inline void validate_schema(const json& doc, const json& schema, const std::string& where = "$") {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                        (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
                        (t == "number" && (doc.is_number() || doc.is_number_integer())) ||
                        (t == "integer" && doc.is_number_integer());
        if (!ok)
            throw NumericalError("schema violation at " + where + ": expected " + t + ", got " +
                                 std::string(doc.type_name()));
    }
    if (schema.contains("required")) {
        for (const auto& k : schema["required"]) {
            if (!doc.contains(k.get<std::string>()))
                throw NumericalError("schema violation at " + where + ": missing key '" +
                                     k.get<std::string>() + "'");
        }
    }
    if (schema.contains("properties") && doc.is_object()) {
        const bool extra_ok = !schema.contains("additionalProperties") ||
                              schema["additionalProperties"].get<bool>();
        for (const auto& [key, value] : doc.items()) {
            auto it = schema["properties"].find(key);
            if (it != schema["properties"].end()) {
                validate_schema(value, *it, where + "." + key);
            } else if (!extra_ok) {
                throw NumericalError("schema violation at " + where + ": unexpected key '" + key + "'");
            }
        }
    }
    if (schema.contains("items") && doc.is_array()) {
        size_t i = 0;
        for (const auto& v : doc) validate_schema(v, schema["items"], where + "[" + std::to_string(i++) + "]");
    }
}

} // namespace pairgen::io
