#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace msbrst
{

enum class status { pass, fail, warn, info };

inline const char *to_string(status s)
{
    switch (s) {
        case status::pass:
            return "pass";
        case status::fail:
            return "fail";
        case status::warn:
            return "warn";
        case status::info:
            return "info";
    }
    return "?";
}

struct check_record {
    std::string name;
    status result = status::pass;
    std::string detail;
    std::string witness;
};

// Ordered list of named check outcomes. Only `fail` records make the report fail.
struct ValidationReport {
    std::vector<check_record> records;

    void add(std::string name, status s, std::string detail = {}, std::string witness = {})
    {
        records.push_back({std::move(name), s, std::move(detail), std::move(witness)});
    }
    void add_check(std::string name, bool ok, std::string detail = {}, std::string witness = {})
    {
        add(std::move(name), ok ? status::pass : status::fail, std::move(detail), std::move(witness));
    }
    void merge(const ValidationReport &o)
    {
        records.insert(records.end(), o.records.begin(), o.records.end());
    }
    bool ok() const
    {
        return std::none_of(records.begin(), records.end(),
                            [](const check_record &r) { return r.result == status::fail; });
    }
    const check_record *find(const std::string &name) const
    {
        for (const auto &r : records) {
            if (r.name == name) {
                return &r;
            }
        }
        return nullptr;
    }
};

// Quotes a value for the key=value record grammar: backslash and double quote are escaped.
inline std::string quote_value(const std::string &v)
{
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace msbrst
