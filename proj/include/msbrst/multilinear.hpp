#pragma once

#include <msbrst/errors.hpp>
#include <msbrst/poly.hpp>
#include <msbrst/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msbrst
{

// Strictly increasing coordinate indices.
using IndexTuple = std::vector<int>;

// Sorts idx in place; returns the permutation sign, or 0 if an index repeats.
inline int sort_with_sign(IndexTuple &idx)
{
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) {
                return 0;
            }
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    return sign;
}

// All strictly increasing k-subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexTuple> index_tuples(int n, int k)
{
    std::vector<IndexTuple> out;
    if (k < 0 || k > n) {
        return out;
    }
    IndexTuple t(static_cast<std::size_t>(k));
    auto rec = [&](auto &&self, int pos, int start) -> void {
        if (pos == k) {
            out.push_back(t);
            return;
        }
        for (int i = start; i <= n - (k - pos); ++i) {
            t[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

struct form_tag {
};
struct multivector_tag {
};

// Homogeneous element of Lambda^k with polynomial coefficients on R^N.
// Invariants: every key has length k and is strictly increasing; no zero coefficient polynomial is stored.
template <typename Tag>
class Multilinear
{
public:
    using container = std::map<IndexTuple, Poly>;

    Multilinear() = default;
    Multilinear(std::size_t dim, int degree) : m_dim(dim), m_degree(degree)
    {
        if (degree < 0 || static_cast<std::size_t>(degree) > dim) {
            throw degree_error("degree " + std::to_string(degree) + " out of range for dimension "
                               + std::to_string(dim));
        }
    }

    static Multilinear scalar(const Poly &p)
    {
        Multilinear r(p.nvars(), 0);
        r.add(IndexTuple{}, p);
        return r;
    }

    // Basis element with coefficient c; idx need not be sorted.
    static Multilinear basis(std::size_t dim, IndexTuple idx, const Poly &c)
    {
        Multilinear r(dim, static_cast<int>(idx.size()));
        const int s = sort_with_sign(idx);
        if (s != 0) {
            r.add(idx, s == 1 ? c : -c);
        }
        return r;
    }

    std::size_t dim() const
    {
        return m_dim;
    }
    int degree() const
    {
        return m_degree;
    }
    const container &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }

    // idx must be sorted, of length degree().
    void add(const IndexTuple &idx, const Poly &c)
    {
        if (c.is_zero()) {
            return;
        }
        if (static_cast<int>(idx.size()) != m_degree) {
            throw degree_error("term of wrong degree");
        }
        auto it = m_terms.find(idx);
        if (it == m_terms.end()) {
            m_terms.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    Multilinear &operator+=(const Multilinear &o)
    {
        check(o);
        for (const auto &[k, c] : o.m_terms) {
            add(k, c);
        }
        return *this;
    }
    Multilinear &operator-=(const Multilinear &o)
    {
        check(o);
        for (const auto &[k, c] : o.m_terms) {
            add(k, -c);
        }
        return *this;
    }
    Multilinear &operator*=(const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            m_terms.clear();
        } else {
            for (auto &[k, v] : m_terms) {
                v *= c;
            }
        }
        return *this;
    }
    friend Multilinear operator+(Multilinear a, const Multilinear &b)
    {
        return a += b;
    }
    friend Multilinear operator-(Multilinear a, const Multilinear &b)
    {
        return a -= b;
    }
    friend Multilinear operator-(Multilinear a)
    {
        return a *= Rat(-1);
    }
    friend Multilinear operator*(Multilinear a, const Rat &c)
    {
        return a *= c;
    }
    friend Multilinear operator*(const Rat &c, Multilinear a)
    {
        return a *= c;
    }
    // Multiplication by a polynomial function.
    friend Multilinear operator*(const Poly &f, const Multilinear &a)
    {
        Multilinear r(a.m_dim, a.m_degree);
        for (const auto &[k, c] : a.m_terms) {
            r.add(k, f * c);
        }
        return r;
    }
    friend bool operator==(const Multilinear &a, const Multilinear &b)
    {
        if (a.is_zero() && b.is_zero()) {
            return a.m_dim == b.m_dim;
        }
        return a.m_dim == b.m_dim && a.m_degree == b.m_degree && a.m_terms == b.m_terms;
    }

    // Largest coefficient degree (0 if zero).
    std::uint32_t coefficient_degree() const
    {
        std::uint32_t d = 0;
        for (const auto &[k, c] : m_terms) {
            d = std::max(d, c.degree());
        }
        return d;
    }

    // Scaling weight = coefficient degree + form degree, if all terms share it.
    std::optional<int> weight() const
    {
        std::optional<int> w;
        for (const auto &[k, c] : m_terms) {
            if (!c.is_homogeneous()) {
                return std::nullopt;
            }
            const int wk = static_cast<int>(c.degree()) + m_degree;
            if (w && *w != wk) {
                return std::nullopt;
            }
            w = wk;
        }
        return w;
    }

    bool is_constant() const
    {
        for (const auto &[k, c] : m_terms) {
            if (c.degree() > 0) {
                return false;
            }
        }
        return true;
    }

    // Coefficients of the basis elements at a rational point.
    std::map<IndexTuple, Rat> eval(const std::vector<Rat> &point) const
    {
        std::map<IndexTuple, Rat> out;
        for (const auto &[k, c] : m_terms) {
            Rat v = c.eval(point);
            if (!msbrst::is_zero(v)) {
                out.emplace(k, v);
            }
        }
        return out;
    }

private:
    // A zero operand adopts the degree of the other one.
    void check(const Multilinear &o)
    {
        if (o.m_dim != m_dim) {
            throw dimension_mismatch("operands live on different ambient dimensions");
        }
        if (o.m_degree == m_degree || o.is_zero()) {
            return;
        }
        if (!is_zero()) {
            throw degree_error("adding elements of different degree");
        }
        m_degree = o.m_degree;
    }

    std::size_t m_dim = 0;
    int m_degree = 0;
    container m_terms;
};

using PolyForm = Multilinear<form_tag>;
using PolyMultivector = Multilinear<multivector_tag>;

namespace detail
{

inline std::string render_terms(const std::map<IndexTuple, Poly> &terms, const std::vector<std::string> &names,
                                const std::string &prefix)
{
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[idx, poly] : terms) {
        std::string basis;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (j) {
                basis += '^';
            }
            basis += prefix + names.at(static_cast<std::size_t>(idx[j]));
        }
        for (const auto &[m, c] : poly.terms()) {
            const bool neg = sgn(c) < 0;
            const Rat a = abs(c);
            std::string mono = render_monomial(m, names);
            std::string body;
            if (mono.empty()) {
                body = (basis.empty() || !is_one(a)) ? to_string(a) : std::string();
            } else {
                body = is_one(a) ? mono : to_string(a) + "*" + mono;
            }
            if (!basis.empty()) {
                body = body.empty() ? basis : body + " " + basis;
            }
            if (first) {
                out += neg ? "-" + body : body;
            } else {
                out += neg ? " - " + body : " + " + body;
            }
            first = false;
        }
    }
    return out;
}

} // namespace detail

// Canonical text: terms by ascending index tuple, then grlex monomial; e.g. "-1/2*z dy + 1/2*y dz".
inline std::string render(const PolyForm &a, const std::vector<std::string> &names)
{
    return detail::render_terms(a.terms(), names, "d");
}

// Multivectors use "d/dx" basis symbols, e.g. "-x d/dy + d/dx^d/dz".
inline std::string render(const PolyMultivector &a, const std::vector<std::string> &names)
{
    return detail::render_terms(a.terms(), names, "d/d");
}

inline std::string render(const Poly &p, const std::vector<std::string> &names)
{
    return render(PolyForm::scalar(p), names);
}

} // namespace msbrst
