#pragma once

#include <msbrst/calculus.hpp>
#include <msbrst/errors.hpp>
#include <msbrst/multilinear.hpp>
#include <msbrst/poly.hpp>
#include <msbrst/rational.hpp>

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msbrst
{

// Expression grammar shared by forms and multivectors:
//   expr    := [sign] term { sign term }
//   term    := product [ basis ] | basis
//   product := factor { '*' factor }
//   factor  := INT [ '/' INT ] | coord [ '^' INT ]
//   basis   := elem { '^' elem }      elem := 'd' coord (forms) | 'd/d' coord (multivectors)
// Whitespace separates the coefficient from the basis. Coordinate names never start with 'd'.
namespace detail
{

class expr_parser
{
public:
    expr_parser(std::string_view text, const std::vector<std::string> &names, bool multivector, std::size_t line,
                std::size_t column)
        : m_text(text), m_names(names), m_mv(multivector), m_line(line), m_col0(column)
    {
    }

    struct term {
        Rat coeff;
        Monomial mono;
        IndexTuple basis;
    };

    std::vector<term> parse()
    {
        std::vector<term> out;
        skip_ws();
        if (at_end()) {
            fail("empty expression");
        }
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = (get() == '-');
            skip_ws();
        }
        out.push_back(parse_term(neg));
        while (true) {
            skip_ws();
            if (at_end()) {
                break;
            }
            const char c = peek();
            if (c != '+' && c != '-') {
                fail(std::string("expected '+' or '-', found '") + c + "'");
            }
            get();
            skip_ws();
            out.push_back(parse_term(c == '-'));
        }
        return out;
    }

private:
    term parse_term(bool neg)
    {
        term t{Rat(neg ? -1 : 1), Monomial(m_names.size(), 0), {}};
        if (at_basis()) {
            t.basis = parse_basis();
            return t;
        }
        parse_factor(t);
        while (true) {
            skip_ws();
            if (!at_end() && peek() == '*') {
                get();
                skip_ws();
                parse_factor(t);
                continue;
            }
            break;
        }
        if (at_basis()) {
            t.basis = parse_basis();
        }
        return t;
    }

    void parse_factor(term &t)
    {
        if (at_end()) {
            fail("expected a number or coordinate");
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t start = m_pos;
            read_digits();
            if (!at_end() && peek() == '/') {
                get();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
                    fail("expected denominator");
                }
                read_digits();
            }
            const std::string_view lit = m_text.substr(start, m_pos - start);
            try {
                t.coeff *= parse_rat(lit);
            } catch (const std::exception &e) {
                fail(e.what(), start);
            }
            return;
        }
        const std::size_t start = m_pos;
        const std::string id = read_ident();
        if (id.empty()) {
            fail(std::string("unexpected character '") + peek() + "'");
        }
        const int i = coord_index(id);
        if (i < 0) {
            fail("unknown coordinate '" + id + "'", start);
        }
        std::uint32_t e = 1;
        if (!at_end() && peek() == '^') {
            get();
            const std::size_t es = m_pos;
            read_digits();
            if (es == m_pos) {
                fail("expected integer exponent");
            }
            e = static_cast<std::uint32_t>(std::stoul(std::string(m_text.substr(es, m_pos - es))));
        }
        t.mono[static_cast<std::size_t>(i)] += e;
    }

    bool at_basis()
    {
        skip_ws();
        if (at_end() || peek() != 'd') {
            return false;
        }
        if (m_mv) {
            return m_text.substr(m_pos, 3) == "d/d";
        }
        return true;
    }

    IndexTuple parse_basis()
    {
        IndexTuple idx;
        while (true) {
            const std::size_t start = m_pos;
            if (m_mv) {
                if (m_text.substr(m_pos, 3) != "d/d") {
                    fail("expected basis symbol d/d<coord>");
                }
                m_pos += 3;
            } else {
                if (at_end() || peek() != 'd') {
                    fail("expected basis symbol d<coord>");
                }
                get();
            }
            const std::string id = read_ident();
            const int i = coord_index(id);
            if (i < 0) {
                fail("unknown basis symbol", start);
            }
            idx.push_back(i);
            if (!at_end() && peek() == '^') {
                get();
                continue;
            }
            break;
        }
        return idx;
    }

    int coord_index(const std::string &id) const
    {
        for (std::size_t i = 0; i < m_names.size(); ++i) {
            if (m_names[i] == id) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

    std::string read_ident()
    {
        const std::size_t start = m_pos;
        if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                ++m_pos;
            }
        }
        return std::string(m_text.substr(start, m_pos - start));
    }
    void read_digits()
    {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return m_text[m_pos];
    }
    char get()
    {
        return m_text[m_pos++];
    }
    [[noreturn]] void fail(const std::string &msg) const
    {
        fail(msg, m_pos);
    }
    [[noreturn]] void fail(const std::string &msg, std::size_t pos) const
    {
        throw parse_error(msg, m_line, m_col0 + pos);
    }

    std::string_view m_text;
    const std::vector<std::string> &m_names;
    bool m_mv;
    std::size_t m_line;
    std::size_t m_col0;
    std::size_t m_pos = 0;
};

template <typename Tag>
Multilinear<Tag> assemble(const std::vector<expr_parser::term> &terms, std::size_t n, std::optional<int> degree,
                          std::size_t line, std::size_t column)
{
    std::optional<int> k = degree;
    for (const auto &t : terms) {
        if (is_zero(t.coeff)) {
            continue;
        }
        const int tk = static_cast<int>(t.basis.size());
        if (degree && *degree != tk) {
            throw parse_error("expected degree " + std::to_string(*degree) + ", got " + std::to_string(tk), line,
                              column);
        }
        if (k && *k != tk) {
            throw parse_error("terms of mixed degree", line, column);
        }
        k = tk;
    }
    if (k && static_cast<std::size_t>(*k) > n) {
        throw parse_error("degree exceeds dimension", line, column);
    }
    Multilinear<Tag> r(n, k.value_or(0));
    for (const auto &t : terms) {
        if (is_zero(t.coeff)) {
            continue;
        }
        r += Multilinear<Tag>::basis(n, t.basis, Poly::monomial(t.mono, t.coeff));
    }
    return r;
}

} // namespace detail

// line/column locate the expression inside its source file (1-based) for error messages.
inline PolyForm parse_form(std::string_view text, const std::vector<std::string> &names,
                           std::optional<int> degree = std::nullopt, std::size_t line = 1, std::size_t column = 1)
{
    detail::expr_parser p(text, names, false, line, column);
    return detail::assemble<form_tag>(p.parse(), names.size(), degree, line, column);
}

inline PolyMultivector parse_multivector(std::string_view text, const std::vector<std::string> &names,
                                         std::optional<int> degree = std::nullopt, std::size_t line = 1,
                                         std::size_t column = 1)
{
    detail::expr_parser p(text, names, true, line, column);
    return detail::assemble<multivector_tag>(p.parse(), names.size(), degree, line, column);
}

} // namespace msbrst
