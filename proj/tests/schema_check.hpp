#pragma once

// Minimal JSON Schema validator covering the keywords used by
// docs/schema/report.schema.json. Unknown keywords are an error so the
// schema cannot silently outgrow the checker.

#include <json.hpp>

#include <fstream>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>

namespace schema_check {

using Json = nlohmann::ordered_json;

class Validator {
  public:
    explicit Validator(Json root) : root_(std::move(root)) {}

    static Validator from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open schema " + path);
        return Validator(Json::parse(in));
    }

    /// Empty string when valid, else a description of the first violation.
    std::string validate(const Json& doc) const { return check(root_, doc, "$"); }

  private:
    Json root_;

    const Json& resolve(const std::string& ref) const {
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    static bool has_type(const Json& v, const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        throw std::runtime_error("unknown type " + t);
    }

    std::string check(const Json& s, const Json& v, const std::string& at) const {
        static const std::set<std::string> kIgnored = {"$schema", "$id", "title", "description", "$defs"};
        for (const auto& [key, rule] : s.items()) {
            if (kIgnored.count(key) || key == "then") continue;
            std::string err;
            if (key == "$ref") {
                err = check(resolve(rule.get<std::string>()), v, at);
            } else if (key == "type") {
                bool ok = false;
                if (rule.is_array()) {
                    for (const auto& t : rule) ok = ok || has_type(v, t.get<std::string>());
                } else {
                    ok = has_type(v, rule.get<std::string>());
                }
                if (!ok) err = at + ": expected type " + rule.dump();
            } else if (key == "enum") {
                bool ok = false;
                for (const auto& e : rule) ok = ok || e == v;
                if (!ok) err = at + ": value not in enum";
            } else if (key == "const") {
                if (rule != v) err = at + ": expected " + rule.dump();
            } else if (key == "pattern") {
                if (v.is_string() && !std::regex_search(v.get<std::string>(), std::regex(rule.get<std::string>())))
                    err = at + ": pattern mismatch";
            } else if (key == "required") {
                if (v.is_object()) {
                    for (const auto& r : rule) {
                        if (!v.contains(r.get<std::string>())) err = at + ": missing " + r.get<std::string>();
                    }
                }
            } else if (key == "properties") {
                if (v.is_object()) {
                    for (const auto& [name, sub] : rule.items()) {
                        if (v.contains(name) && err.empty()) err = check(sub, v.at(name), at + "." + name);
                    }
                }
            } else if (key == "additionalProperties") {
                if (v.is_object() && rule.is_boolean() && !rule.get<bool>()) {
                    const Json props = s.value("properties", Json::object());
                    for (const auto& [name, _] : v.items()) {
                        if (!props.contains(name)) err = at + ": unexpected property " + name;
                    }
                } else if (!rule.is_boolean()) {
                    throw std::runtime_error("additionalProperties must be boolean here");
                }
            } else if (key == "items") {
                if (v.is_array()) {
                    for (std::size_t i = 0; i < v.size() && err.empty(); ++i)
                        err = check(rule, v[i], at + "[" + std::to_string(i) + "]");
                }
            } else if (key == "prefixItems") {
                if (v.is_array()) {
                    for (std::size_t i = 0; i < rule.size() && i < v.size() && err.empty(); ++i)
                        err = check(rule[i], v[i], at + "[" + std::to_string(i) + "]");
                }
            } else if (key == "minItems") {
                if (v.is_array() && v.size() < rule.get<std::size_t>()) err = at + ": too few items";
            } else if (key == "maxItems") {
                if (v.is_array() && v.size() > rule.get<std::size_t>()) err = at + ": too many items";
            } else if (key == "anyOf" || key == "oneOf") {
                std::size_t hits = 0;
                for (const auto& sub : rule) hits += check(sub, v, at).empty();
                if (key == "anyOf" ? hits == 0 : hits != 1) err = at + ": " + key + " matched " + std::to_string(hits);
            } else if (key == "allOf") {
                for (const auto& sub : rule) {
                    if (err.empty()) err = check(sub, v, at);
                }
            } else if (key == "if") {
                if (check(rule, v, at).empty() && s.contains("then")) err = check(s.at("then"), v, at);
            } else {
                throw std::runtime_error("unsupported schema keyword " + key);
            }
            if (!err.empty()) return err;
        }
        return {};
    }
};

}  // namespace schema_check
