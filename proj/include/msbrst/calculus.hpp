#pragma once

#include <msbrst/errors.hpp>
#include <msbrst/multilinear.hpp>
#include <msbrst/poly.hpp>
#include <msbrst/rational.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace msbrst
{

namespace detail
{

template <typename Tag>
Multilinear<Tag> exterior_product(const Multilinear<Tag> &a, const Multilinear<Tag> &b)
{
    if (a.dim() != b.dim()) {
        throw dimension_mismatch("wedge of elements on different ambient dimensions");
    }
    const int k = a.degree() + b.degree();
    if (static_cast<std::size_t>(k) > a.dim()) {
        return Multilinear<Tag>(a.dim(), 0);
    }
    Multilinear<Tag> r(a.dim(), k);
    for (const auto &[i, f] : a.terms()) {
        for (const auto &[j, g] : b.terms()) {
            IndexTuple idx = i;
            idx.insert(idx.end(), j.begin(), j.end());
            const int s = sort_with_sign(idx);
            if (s != 0) {
                Poly fg = f * g;
                r.add(idx, s == 1 ? fg : -fg);
            }
        }
    }
    return r;
}

} // namespace detail

inline PolyForm wedge(const PolyForm &a, const PolyForm &b)
{
    return detail::exterior_product(a, b);
}

inline PolyMultivector wedge(const PolyMultivector &a, const PolyMultivector &b)
{
    return detail::exterior_product(a, b);
}

inline PolyForm ext_d(const PolyForm &a)
{
    const std::size_t n = a.dim();
    if (static_cast<std::size_t>(a.degree()) >= n) {
        return PolyForm(n, static_cast<int>(n));
    }
    PolyForm r(n, a.degree() + 1);
    for (const auto &[idx, f] : a.terms()) {
        for (std::size_t i = 0; i < n; ++i) {
            Poly df = f.diff(i);
            if (df.is_zero()) {
                continue;
            }
            IndexTuple k{static_cast<int>(i)};
            k.insert(k.end(), idx.begin(), idx.end());
            const int s = sort_with_sign(k);
            if (s != 0) {
                r.add(k, s == 1 ? df : -df);
            }
        }
    }
    return r;
}

// i_{d/dx_i}: removing index i from position l carries (-1)^l.
inline PolyForm contract_coordinate(int i, const PolyForm &a)
{
    if (a.degree() == 0) {
        throw degree_error("contraction into a 0-form");
    }
    PolyForm r(a.dim(), a.degree() - 1);
    for (const auto &[idx, f] : a.terms()) {
        for (std::size_t l = 0; l < idx.size(); ++l) {
            if (idx[l] == i) {
                IndexTuple k = idx;
                k.erase(k.begin() + static_cast<long>(l));
                r.add(k, l % 2 == 0 ? f : -f);
                break;
            }
        }
    }
    return r;
}

// i_{X1^...^Xk} = i_{Xk} o ... o i_{X1}: the first vector is contracted first.
inline PolyForm contract(const PolyMultivector &x, const PolyForm &a)
{
    if (x.dim() != a.dim()) {
        throw dimension_mismatch("contraction across different ambient dimensions");
    }
    if (x.degree() > a.degree()) {
        throw degree_error("multivector degree " + std::to_string(x.degree()) + " exceeds form degree "
                           + std::to_string(a.degree()));
    }
    PolyForm r(a.dim(), a.degree() - x.degree());
    for (const auto &[j, g] : x.terms()) {
        PolyForm t = a;
        for (int idx : j) {
            t = contract_coordinate(idx, t);
            if (t.is_zero()) {
                break;
            }
        }
        r += g * t;
    }
    return r;
}

// Contraction that is zero, not an error, when the multivector outranks the form.
inline PolyForm contract_or_zero(const PolyMultivector &x, const PolyForm &a)
{
    if (x.degree() > a.degree()) {
        return PolyForm(a.dim(), 0);
    }
    return contract(x, a);
}

inline PolyForm lie_derivative(const PolyMultivector &x, const PolyForm &a)
{
    if (x.degree() != 1) {
        throw degree_error("Lie derivative needs a vector field");
    }
    PolyForm r = a.degree() > 0 ? ext_d(contract(x, a)) : PolyForm(a.dim(), a.degree());
    if (static_cast<std::size_t>(a.degree()) < a.dim()) {
        r += contract(x, ext_d(a));
    }
    return r;
}

// Radial homotopy: c x^m dx^I  ->  sum_l (-1)^l c/(|m|+k) x^m x_{I_l} dx^{I without I_l}.
inline PolyForm radial_homotopy(const PolyForm &a)
{
    const std::size_t n = a.dim();
    const int k = a.degree();
    if (k == 0) {
        throw degree_error("primitive of a 0-form");
    }
    PolyForm r(n, k - 1);
    for (const auto &[idx, f] : a.terms()) {
        for (const auto &[m, c] : f.terms()) {
            const Rat w(static_cast<long>(total_degree(m)) + k);
            for (std::size_t l = 0; l < idx.size(); ++l) {
                Monomial mm = m;
                mm[static_cast<std::size_t>(idx[l])] += 1;
                IndexTuple rest = idx;
                rest.erase(rest.begin() + static_cast<long>(l));
                const Rat coeff = (l % 2 == 0 ? c : Rat(-c)) / w;
                r.add(rest, Poly::monomial(mm, coeff));
            }
        }
    }
    return r;
}

inline PolyForm poincare_primitive(const PolyForm &a)
{
    if (a.degree() < 1) {
        throw degree_error("primitive requires degree >= 1");
    }
    if (!ext_d(a).is_zero()) {
        throw not_closed("form is not closed");
    }
    return radial_homotopy(a);
}

// Jacobi-Lie bracket [X,Y] = XY - YX of vector fields.
inline PolyMultivector lie_bracket(const PolyMultivector &x, const PolyMultivector &y)
{
    if (x.degree() != 1 || y.degree() != 1) {
        throw degree_error("vector field bracket needs degree-1 arguments");
    }
    const std::size_t n = x.dim();
    PolyMultivector r(n, 1);
    for (const auto &[i, xi] : x.terms()) {
        for (const auto &[j, yj] : y.terms()) {
            r.add(j, xi * yj.diff(static_cast<std::size_t>(i[0])));
            r.add(i, -(yj * xi.diff(static_cast<std::size_t>(j[0]))));
        }
    }
    return r;
}

inline PolyForm coordinate_differential(std::size_t n, int i)
{
    return PolyForm::basis(n, {i}, Poly::constant(n, Rat(1)));
}

inline PolyMultivector coordinate_field(std::size_t n, int i)
{
    return PolyMultivector::basis(n, {i}, Poly::constant(n, Rat(1)));
}

} // namespace msbrst
