#pragma once

// Minimal TOML reader/writer for the flat configuration schema: bare keys,
// strings, integers, floats, booleans and single-line (possibly nested)
// arrays. No table headers, no dates. The config file format needs nothing
// more, and no TOML library ships with this toolchain.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "o2osim/core/error.hpp"
#include "o2osim/core/hash.hpp"

namespace o2o {

struct TomlValue {
    enum class Kind { String, Integer, Float, Boolean, Array };

    Kind kind = Kind::Integer;
    std::string str;
    long long integer = 0;
    double real = 0.0;
    bool boolean = false;
    std::vector<TomlValue> items;

    double as_number() const {
        if (kind == Kind::Integer) return static_cast<double>(integer);
        if (kind == Kind::Float) return real;
        throw ConfigError("expected a number");
    }
};

using TomlTable = std::map<std::string, TomlValue>;

namespace toml_detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline ConfigError err(int line, const std::string& what) {
    return ConfigError("config line " + std::to_string(line) + ": " + what);
}

inline TomlValue parse_value(const std::string& s, std::size_t& i, int line);

inline TomlValue parse_string(const std::string& s, std::size_t& i, int line) {
    TomlValue v;
    v.kind = TomlValue::Kind::String;
    ++i; // opening quote
    while (i < s.size() && s[i] != '"') {
        char c = s[i];
        if (c == '\\') {
            ++i;
            if (i >= s.size()) throw err(line, "dangling escape");
            switch (s[i]) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case 'r': c = '\r'; break;
                case '"': c = '"'; break;
                case '\\': c = '\\'; break;
                default: throw err(line, "unsupported escape");
            }
        }
        v.str.push_back(c);
        ++i;
    }
    if (i >= s.size()) throw err(line, "unterminated string");
    ++i; // closing quote
    return v;
}

inline TomlValue parse_array(const std::string& s, std::size_t& i, int line) {
    TomlValue v;
    v.kind = TomlValue::Kind::Array;
    ++i; // '['
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
        ++i;
        return v;
    }
    for (;;) {
        v.items.push_back(parse_value(s, i, line));
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            skip_ws(s, i);
            continue;
        }
        if (i < s.size() && s[i] == ']') {
            ++i;
            return v;
        }
        throw err(line, "expected ',' or ']' in array");
    }
}

inline TomlValue parse_scalar(const std::string& s, std::size_t& i, int line) {
    std::size_t start = i;
    while (i < s.size() && s[i] != ',' && s[i] != ']' && s[i] != '#' &&
           s[i] != ' ' && s[i] != '\t') {
        ++i;
    }
    std::string tok = s.substr(start, i - start);
    if (tok.empty()) throw err(line, "missing value");

    TomlValue v;
    if (tok == "true" || tok == "false") {
        v.kind = TomlValue::Kind::Boolean;
        v.boolean = (tok == "true");
        return v;
    }
    bool looks_float = tok.find_first_of(".eE") != std::string::npos;
    if (!looks_float) {
        long long iv = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (res.ec == std::errc() && res.ptr == tok.data() + tok.size()) {
            v.kind = TomlValue::Kind::Integer;
            v.integer = iv;
            return v;
        }
    }
    double dv = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
    if (res.ec == std::errc() && res.ptr == tok.data() + tok.size()) {
        v.kind = TomlValue::Kind::Float;
        v.real = dv;
        return v;
    }
    throw err(line, "cannot parse value '" + tok + "'");
}

inline TomlValue parse_value(const std::string& s, std::size_t& i, int line) {
    skip_ws(s, i);
    if (i >= s.size()) throw err(line, "missing value");
    if (s[i] == '"') return parse_string(s, i, line);
    if (s[i] == '[') return parse_array(s, i, line);
    return parse_scalar(s, i, line);
}

} // namespace toml_detail

inline TomlTable parse_toml(const std::string& text) {
    using namespace toml_detail;
    TomlTable table;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t i = 0;
        skip_ws(raw, i);
        if (i >= raw.size() || raw[i] == '#' || raw[i] == '\r') continue;
        if (raw[i] == '[') {
            throw err(line_no, "table headers are not supported; use flat keys");
        }
        std::size_t key_start = i;
        while (i < raw.size() &&
               (std::isalnum(static_cast<unsigned char>(raw[i])) ||
                raw[i] == '_' || raw[i] == '-')) {
            ++i;
        }
        std::string key = raw.substr(key_start, i - key_start);
        if (key.empty()) throw err(line_no, "expected a key");
        skip_ws(raw, i);
        if (i >= raw.size() || raw[i] != '=') {
            throw err(line_no, "expected '=' after key '" + key + "'");
        }
        ++i;
        TomlValue value = parse_value(raw, i, line_no);
        skip_ws(raw, i);
        if (i < raw.size() && raw[i] != '#' && raw[i] != '\r') {
            throw err(line_no, "trailing characters after value");
        }
        if (table.count(key)) throw err(line_no, "duplicate key '" + key + "'");
        table.emplace(std::move(key), std::move(value));
    }
    return table;
}

inline TomlTable parse_toml_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

inline std::string toml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

// TOML requires floats to carry a '.' or exponent.
inline std::string toml_float(double v) {
    std::string s = fmt_double(v);
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("ni") == std::string::npos) {
        s += ".0";
    }
    return s;
}

} // namespace o2o
