#pragma once

#include <msbrst/calculus.hpp>
#include <msbrst/errors.hpp>
#include <msbrst/linalg.hpp>
#include <msbrst/model.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>

namespace msbrst
{

enum class pair_origin { from_form, from_multivector };

// Invariant: contract(X, Omega) = d F, with |X| = n - |F|.
struct HamiltonianPair {
    PolyForm F;
    PolyMultivector X;
    pair_origin origin = pair_origin::from_form;

    int degree() const
    {
        return F.degree();
    }
};

inline bool is_valid_pair(const MultisymplecticModel &m, const HamiltonianPair &h)
{
    return h.X.degree() == m.n - h.F.degree() && contract(h.X, m.omega) == ext_d(h.F);
}

// Linear combination of pairs of one degree is again a pair.
inline HamiltonianPair combine(const std::vector<std::pair<Rat, const HamiltonianPair *>> &parts, std::size_t dim,
                               int n, int p)
{
    HamiltonianPair r{PolyForm(dim, p), PolyMultivector(dim, n - p), pair_origin::from_form};
    for (const auto &[c, h] : parts) {
        r.F += c * h->F;
        r.X += c * h->X;
    }
    return r;
}

inline HamiltonianPair hamiltonian_pair_from_form(const MultisymplecticModel &m, const PolyForm &F)
{
    const int p = F.degree();
    if (p < 0 || p > m.n - 1) {
        throw degree_error("Hamiltonian forms have degree 0..n-1, got " + std::to_string(p));
    }
    const std::size_t N = m.dim();
    const int k = m.n - p;
    const PolyForm dF = ext_d(F);
    HamiltonianPair out{F, PolyMultivector(N, k), pair_origin::from_form};
    if (dF.is_zero()) {
        return out;
    }

    // Coefficient degrees to try: those of dF when Omega is constant, else all up to deg dF.
    std::set<std::uint32_t> degrees;
    if (m.omega.is_constant()) {
        for (const auto &[idx, f] : dF.terms()) {
            for (const auto &[mono, c] : f.terms()) {
                degrees.insert(total_degree(mono));
            }
        }
    } else {
        for (std::uint32_t d = 0; d <= dF.coefficient_degree(); ++d) {
            degrees.insert(d);
        }
    }

    std::map<std::pair<IndexTuple, Monomial>, std::size_t> row_of;
    auto row = [&](const IndexTuple &idx, const Monomial &mono) {
        auto [it, fresh] = row_of.emplace(std::make_pair(idx, mono), row_of.size());
        return it->second;
    };
    SparseMatrix A;
    std::vector<std::pair<IndexTuple, Monomial>> unknowns;
    for (const auto &J : index_tuples(static_cast<int>(N), k)) {
        const PolyForm base = contract(PolyMultivector::basis(N, J, Poly::constant(N, Rat(1))), m.omega);
        for (std::uint32_t d : degrees) {
            for (const auto &mono : monomials_of_degree(N, d)) {
                SparseVec col;
                for (const auto &[idx, f] : base.terms()) {
                    for (const auto &[fm, c] : f.terms()) {
                        Monomial prod = fm;
                        for (std::size_t i = 0; i < N; ++i) {
                            prod[i] += mono[i];
                        }
                        col[row(idx, prod)] += c;
                    }
                }
                A.cols.push_back(std::move(col));
                unknowns.emplace_back(J, mono);
            }
        }
    }
    SparseVec rhs;
    for (const auto &[idx, f] : dF.terms()) {
        for (const auto &[mono, c] : f.terms()) {
            rhs[row(idx, mono)] = c;
        }
    }
    A.rows = row_of.size();
    const auto sol = solve_canonical(A, rhs);
    if (!sol) {
        throw not_hamiltonian("d(" + render(F, m.coords) + ") = " + render(dF, m.coords)
                              + " is outside the image of the contraction map");
    }
    for (const auto &[j, c] : *sol) {
        const auto &[J, mono] = unknowns[j];
        out.X.add(J, Poly::monomial(mono, c));
    }
    return out;
}

inline HamiltonianPair hamiltonian_form_from_multivector(const MultisymplecticModel &m, const PolyMultivector &X)
{
    if (X.degree() < 1 || X.degree() > m.n) {
        throw degree_error("Hamiltonian multivectors have degree 1..n");
    }
    const PolyForm a = contract(X, m.omega);
    if (!ext_d(a).is_zero()) {
        throw not_closed("i_X Omega = " + render(a, m.coords) + " is not closed");
    }
    return HamiltonianPair{radial_homotopy(a), X, pair_origin::from_multivector};
}

// {F,G} = (-1)^{n-p} i_{X_F} dG
inline PolyForm bracket(const MultisymplecticModel &m, const HamiltonianPair &a, const HamiltonianPair &b)
{
    PolyForm r = contract_or_zero(a.X, ext_d(b.F));
    if ((m.n - a.degree()) % 2 != 0) {
        r *= Rat(-1);
    }
    return r;
}

// Grading g_F = n - 1 - |F|.
inline int grading(int n, int form_degree)
{
    return n - 1 - form_degree;
}

} // namespace msbrst
