#pragma once

#include <msbrst/errors.hpp>
#include <msbrst/rational.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace msbrst
{

// Exponent vector of length N.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Monomial &m)
{
    return std::accumulate(m.begin(), m.end(), std::uint32_t(0));
}

// Graded-lex: lower total degree first, then the first variable dominates (x^2 < x*y < y^2 as rendered).
struct grlex_less {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const auto da = total_degree(a);
        const auto db = total_degree(b);
        if (da != db) {
            return da < db;
        }
        return b < a;
    }
};

class Poly
{
public:
    using container = std::map<Monomial, Rat, grlex_less>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : m_n(nvars) {}

    static Poly constant(std::size_t nvars, const Rat &c)
    {
        Poly p(nvars);
        if (!msbrst::is_zero(c)) {
            p.m_terms.emplace(Monomial(nvars, 0), c);
        }
        return p;
    }

    static Poly variable(std::size_t nvars, std::size_t i)
    {
        Poly p(nvars);
        Monomial m(nvars, 0);
        m.at(i) = 1;
        p.m_terms.emplace(std::move(m), Rat(1));
        return p;
    }

    static Poly monomial(const Monomial &m, const Rat &c)
    {
        Poly p(m.size());
        if (!msbrst::is_zero(c)) {
            p.m_terms.emplace(m, c);
        }
        return p;
    }

    std::size_t nvars() const
    {
        return m_n;
    }
    const container &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }

    void add_term(const Monomial &m, const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            return;
        }
        auto it = m_terms.find(m);
        if (it == m_terms.end()) {
            m_terms.emplace(m, c);
        } else {
            it->second += c;
            if (msbrst::is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    Poly &operator+=(const Poly &o)
    {
        check(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        check(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }
    Poly &operator*=(const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            m_terms.clear();
        } else {
            for (auto &[m, v] : m_terms) {
                v *= c;
            }
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly &b)
    {
        return a += b;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        return a -= b;
    }
    friend Poly operator-(Poly a)
    {
        return a *= Rat(-1);
    }
    friend Poly operator*(Poly a, const Rat &c)
    {
        return a *= c;
    }
    friend Poly operator*(const Rat &c, Poly a)
    {
        return a *= c;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        a.check(b);
        Poly r(a.m_n);
        Monomial m(a.m_n);
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                for (std::size_t i = 0; i < a.m_n; ++i) {
                    m[i] = ma[i] + mb[i];
                }
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.m_n == b.m_n && a.m_terms == b.m_terms;
    }

    Poly diff(std::size_t i) const
    {
        Poly r(m_n);
        for (const auto &[m, c] : m_terms) {
            if (m.at(i) == 0) {
                continue;
            }
            Monomial d = m;
            d[i] -= 1;
            r.add_term(d, c * m[i]);
        }
        return r;
    }

    // Largest total degree; 0 for the zero polynomial.
    std::uint32_t degree() const
    {
        return m_terms.empty() ? 0 : total_degree(m_terms.rbegin()->first);
    }
    std::uint32_t low_degree() const
    {
        return m_terms.empty() ? 0 : total_degree(m_terms.begin()->first);
    }
    bool is_homogeneous() const
    {
        return m_terms.empty() || degree() == low_degree();
    }

    Rat eval(const std::vector<Rat> &point) const
    {
        if (point.size() != m_n) {
            throw dimension_mismatch("evaluation point has wrong dimension");
        }
        Rat acc(0);
        for (const auto &[m, c] : m_terms) {
            Rat t = c;
            for (std::size_t i = 0; i < m_n; ++i) {
                for (std::uint32_t e = 0; e < m[i]; ++e) {
                    t *= point[i];
                }
            }
            acc += t;
        }
        return acc;
    }

private:
    void check(const Poly &o) const
    {
        if (o.m_n != m_n) {
            throw dimension_mismatch("polynomials over different variable sets");
        }
    }

    std::size_t m_n = 0;
    container m_terms;
};

// All monomials of total degree exactly d in n variables, in grlex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint32_t d)
{
    std::vector<Monomial> out;
    Monomial m(n, 0);
    // Enumerate compositions with the first variable dominating (matches grlex_less).
    auto rec = [&](auto &&self, std::size_t i, std::uint32_t left) -> void {
        if (n == 0) {
            if (left == 0) {
                out.push_back(m);
            }
            return;
        }
        if (i + 1 == n) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (std::uint32_t e = left + 1; e-- > 0;) {
            m[i] = e;
            self(self, i + 1, left - e);
        }
        m[i] = 0;
    };
    rec(rec, 0, d);
    return out;
}

inline std::string render_monomial(const Monomial &m, const std::vector<std::string> &names)
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += '*';
        }
        s += names.at(i);
        if (m[i] > 1) {
            s += '^' + std::to_string(m[i]);
        }
    }
    return s;
}

} // namespace msbrst
