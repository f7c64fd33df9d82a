#pragma once

#include <msbrst/action.hpp>
#include <msbrst/errors.hpp>
#include <msbrst/model.hpp>
#include <msbrst/parse.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace msbrst
{

// Sectioned plain text; '#' starts a comment. Grammar in README.md.
//   [space]       coords = <names>   n = <int>   [N = <int>]
//   [omega]       one expression per line, lines are summed
//   [theta]       optional, same as omega
//   [liealgebra]  labels = <names>   C <a> <b> <c> = <rat>   (C^a_{bc}; labels or 1-based indices)
//   [action]      <label> = <vector field>
//   [generators]  <label> = <form>
//   [truncation]  dmax = <int>   lmax = <int>
//   [seed]        seed = <int>
namespace detail
{

struct line_ref {
    std::string text;
    std::size_t line;
    std::size_t offset; // 0-based column of text within the source line
};

inline std::string trim(const std::string &s, std::size_t *lead = nullptr)
{
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    std::size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    if (lead) {
        *lead = b;
    }
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_ws(const std::string &s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

inline bool is_identifier(const std::string &s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

// "key = value" split; value keeps its source column.
struct key_value {
    std::string key;
    std::string value;
    std::size_t value_col; // 1-based
};

inline key_value split_kv(const line_ref &l)
{
    const auto eq = l.text.find('=');
    if (eq == std::string::npos) {
        throw parse_error("expected 'key = value'", l.line, l.offset + 1);
    }
    std::size_t lead = 0;
    const std::string key = trim(l.text.substr(0, eq));
    const std::string value = trim(l.text.substr(eq + 1), &lead);
    return {key, value, l.offset + eq + 1 + lead + 1};
}

inline int parse_int(const std::string &s, std::size_t line, std::size_t col)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw parse_error("expected an integer, found '" + s + "'", line, col);
    }
}

} // namespace detail

inline MultisymplecticModel parse_model(std::istream &in, const std::string &name = "model")
{
    using namespace detail;
    std::map<std::string, std::vector<line_ref>> sections;
    std::map<std::string, std::size_t> section_line;
    std::string current;
    std::string raw;
    std::size_t lineno = 0;
    const std::set<std::string> known{"space", "omega", "theta", "liealgebra", "action", "generators", "truncation",
                                      "seed"};
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        std::size_t lead = 0;
        const std::string t = trim(raw, &lead);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw parse_error("unterminated section header", lineno, lead + 1);
            }
            current = trim(t.substr(1, t.size() - 2));
            if (!known.count(current)) {
                throw parse_error("unknown section [" + current + "]", lineno, lead + 1);
            }
            if (section_line.count(current)) {
                throw parse_error("duplicate section [" + current + "]", lineno, lead + 1);
            }
            section_line[current] = lineno;
            sections[current];
            continue;
        }
        if (current.empty()) {
            throw parse_error("content before the first section", lineno, lead + 1);
        }
        sections[current].push_back({t, lineno, lead});
    }

    MultisymplecticModel m;
    m.name = name;
    if (!sections.count("space")) {
        throw parse_error("missing [space] section", lineno, 1);
    }
    std::optional<int> declared_n;
    for (const auto &l : sections["space"]) {
        const auto kv = split_kv(l);
        if (kv.key == "coords") {
            m.coords = split_ws(kv.value);
            std::set<std::string> seen;
            for (const auto &c : m.coords) {
                if (!is_identifier(c) || c[0] == 'd') {
                    throw parse_error("coordinate names are identifiers not starting with 'd': '" + c + "'", l.line,
                                      kv.value_col);
                }
                if (!seen.insert(c).second) {
                    throw parse_error("duplicate coordinate '" + c + "'", l.line, kv.value_col);
                }
            }
        } else if (kv.key == "n") {
            m.n = parse_int(kv.value, l.line, kv.value_col);
        } else if (kv.key == "N") {
            declared_n = parse_int(kv.value, l.line, kv.value_col);
        } else {
            throw parse_error("unknown key '" + kv.key + "' in [space]", l.line, l.offset + 1);
        }
    }
    if (m.coords.empty()) {
        throw parse_error("[space] needs coords", section_line["space"], 1);
    }
    if (declared_n && static_cast<std::size_t>(*declared_n) != m.coords.size()) {
        throw parse_error("N does not match the number of coordinates", section_line["space"], 1);
    }
    if (m.n < 1 || static_cast<std::size_t>(m.n) + 1 > m.coords.size()) {
        throw parse_error("n must satisfy 1 <= n <= N-1", section_line["space"], 1);
    }
    const std::size_t N = m.coords.size();

    auto sum_lines = [&](const std::string &sec, int degree) {
        PolyForm f(N, degree);
        for (const auto &l : sections[sec]) {
            f += parse_form(l.text, m.coords, degree, l.line, l.offset + 1);
        }
        return f;
    };
    if (!sections.count("omega")) {
        throw parse_error("missing [omega] section", lineno, 1);
    }
    m.omega = sum_lines("omega", m.n + 1);
    if (sections.count("theta")) {
        m.theta = sum_lines("theta", m.n);
    }

    std::map<std::string, int> label_index;
    std::vector<std::pair<line_ref, key_value>> constants;
    for (const auto &l : sections["liealgebra"]) {
        if (l.text.rfind("C ", 0) == 0 || l.text.rfind("C\t", 0) == 0) {
            constants.emplace_back(l, split_kv(l));
            continue;
        }
        const auto kv = split_kv(l);
        if (kv.key == "labels") {
            m.algebra.labels = split_ws(kv.value);
            for (std::size_t i = 0; i < m.algebra.labels.size(); ++i) {
                if (!is_identifier(m.algebra.labels[i])) {
                    throw parse_error("bad label '" + m.algebra.labels[i] + "'", l.line, kv.value_col);
                }
                label_index[m.algebra.labels[i]] = static_cast<int>(i);
            }
        } else if (kv.key == "dim") {
            const int d = parse_int(kv.value, l.line, kv.value_col);
            if (m.algebra.labels.empty()) {
                for (int i = 0; i < d; ++i) {
                    m.algebra.labels.push_back("e" + std::to_string(i + 1));
                    label_index[m.algebra.labels.back()] = i;
                }
            } else if (d != m.algebra.dim()) {
                throw parse_error("dim does not match labels", l.line, kv.value_col);
            }
        } else {
            throw parse_error("unknown key '" + kv.key + "' in [liealgebra]", l.line, l.offset + 1);
        }
    }
    for (const auto &[l, kv] : constants) {
        const auto parts = split_ws(kv.key);
        if (parts.size() != 4) {
            throw parse_error("expected 'C a b c = value'", l.line, l.offset + 1);
        }
        int idx[3];
        for (int k = 0; k < 3; ++k) {
            const std::string &p = parts[static_cast<std::size_t>(k) + 1];
            auto it = label_index.find(p);
            if (it != label_index.end()) {
                idx[k] = it->second;
            } else {
                const int v = parse_int(p, l.line, l.offset + 1);
                if (v < 1 || v > m.algebra.dim()) {
                    throw parse_error("structure constant index out of range", l.line, l.offset + 1);
                }
                idx[k] = v - 1;
            }
        }
        try {
            m.algebra.set(idx[0], idx[1], idx[2], parse_rat(kv.value));
        } catch (const std::exception &e) {
            throw parse_error(e.what(), l.line, kv.value_col);
        }
    }

    m.action.assign(static_cast<std::size_t>(m.algebra.dim()), PolyMultivector(N, 1));
    std::vector<char> given(m.action.size(), 0);
    for (const auto &l : sections["action"]) {
        const auto kv = split_kv(l);
        auto it = label_index.find(kv.key);
        if (it == label_index.end()) {
            throw parse_error("unknown Lie algebra label '" + kv.key + "'", l.line, l.offset + 1);
        }
        m.action[static_cast<std::size_t>(it->second)] = parse_multivector(kv.value, m.coords, 1, l.line, kv.value_col);
        given[static_cast<std::size_t>(it->second)] = 1;
    }
    for (std::size_t a = 0; a < given.size(); ++a) {
        if (!given[a]) {
            throw parse_error("no action field for '" + m.algebra.labels[a] + "'",
                              section_line.count("action") ? section_line["action"] : lineno, 1);
        }
    }

    std::set<std::string> glabels;
    for (const auto &l : sections["generators"]) {
        const auto kv = split_kv(l);
        if (!is_identifier(kv.key) || !glabels.insert(kv.key).second) {
            throw parse_error("generator labels must be distinct identifiers", l.line, l.offset + 1);
        }
        m.generators.push_back({kv.key, parse_form(kv.value, m.coords, std::nullopt, l.line, kv.value_col)});
    }

    for (const auto &l : sections["truncation"]) {
        const auto kv = split_kv(l);
        if (kv.key == "dmax") {
            m.dmax = parse_int(kv.value, l.line, kv.value_col);
        } else if (kv.key == "lmax") {
            m.lmax = parse_int(kv.value, l.line, kv.value_col);
        } else {
            throw parse_error("unknown key '" + kv.key + "' in [truncation]", l.line, l.offset + 1);
        }
    }
    for (const auto &l : sections["seed"]) {
        const auto kv = split_kv(l);
        if (kv.key != "seed") {
            throw parse_error("unknown key '" + kv.key + "' in [seed]", l.line, l.offset + 1);
        }
        try {
            m.seed = std::stoull(kv.value);
        } catch (const std::exception &) {
            throw parse_error("bad seed", l.line, kv.value_col);
        }
    }
    return m;
}

// Structural validation; throws validation_error naming the first failing check.
inline void validate_model(const MultisymplecticModel &m)
{
    for (const auto &rep : {check_multisymplectic(m), check_action(m)}) {
        for (const auto &r : rep.records) {
            if (r.result == status::fail) {
                throw validation_error(r.name, r.detail + (r.witness.empty() ? "" : ": " + r.witness));
            }
        }
    }
}

// A bundled model name ("volume_r3") or a path.
inline std::filesystem::path resolve_model_path(const std::string &spec)
{
    namespace fs = std::filesystem;
    if (fs::exists(spec)) {
        return spec;
    }
#ifdef MSBRST_MODEL_DIR
    for (const std::string &cand : {spec, spec + ".model"}) {
        const fs::path p = fs::path(MSBRST_MODEL_DIR) / cand;
        if (fs::exists(p)) {
            return p;
        }
    }
#endif
    throw error("model file not found: " + spec);
}

inline MultisymplecticModel load_model(const std::string &spec)
{
    const auto path = resolve_model_path(spec);
    std::ifstream in(path);
    if (!in) {
        throw error("cannot open " + path.string());
    }
    MultisymplecticModel m = parse_model(in, path.stem().string());
    validate_model(m);
    return m;
}

} // namespace msbrst
