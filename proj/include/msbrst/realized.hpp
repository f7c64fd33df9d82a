#pragma once

#include <msbrst/calculus.hpp>
#include <msbrst/hamiltonian.hpp>
#include <msbrst/model.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace msbrst
{

// G ^ X: contraction against a is G ^ (i_X a).
struct FormValuedTerm {
    PolyForm coeff;
    PolyMultivector field;
};

struct FormValuedMultivector {
    std::vector<FormValuedTerm> terms;
};

inline PolyForm contract(const FormValuedMultivector &x, const PolyForm &a)
{
    PolyForm r(a.dim(), 0);
    for (const auto &t : x.terms) {
        r += wedge(t.coeff, contract_or_zero(t.field, a));
    }
    return r;
}

// Coefficient times an ordered wedge of Hamiltonian pairs.
struct PairWord {
    Rat coeff;
    std::vector<HamiltonianPair> letters;

    int form_degree() const
    {
        int r = 0;
        for (const auto &l : letters) {
            r += l.degree();
        }
        return r;
    }
};

// Sum of pair words; the concrete (non-quotiented) carrier of Leibniz-bracket computations.
using RealizedObservable = std::vector<PairWord>;

inline PolyForm realize(const std::vector<HamiltonianPair> &letters, std::size_t dim)
{
    PolyForm r = PolyForm::scalar(Poly::constant(dim, Rat(1)));
    for (const auto &l : letters) {
        r = wedge(r, l.F);
    }
    return r;
}

inline PolyForm realize(const RealizedObservable &a, std::size_t dim)
{
    PolyForm r(dim, 0);
    for (const auto &w : a) {
        r += w.coeff * realize(w.letters, dim);
    }
    return r;
}

inline RealizedObservable single(const HamiltonianPair &h)
{
    return {PairWord{Rat(1), {h}}};
}

inline RealizedObservable wedge(const RealizedObservable &a, const RealizedObservable &b)
{
    RealizedObservable r;
    for (const auto &x : a) {
        for (const auto &y : b) {
            PairWord w{x.coeff * y.coeff, x.letters};
            w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
            r.push_back(std::move(w));
        }
    }
    return r;
}

// Sign of letter i in the form-valued multivector of P1 ^ ... ^ Pk:
// (-1)^{sum_{j<i} p_j + (p_i + 1) sum_{j>i} p_j}. For k = 2 this is the pairwise rule.
inline int letter_sign(const std::vector<HamiltonianPair> &letters, std::size_t i)
{
    long before = 0;
    long after = 0;
    for (std::size_t j = 0; j < letters.size(); ++j) {
        if (j < i) {
            before += letters[j].degree();
        } else if (j > i) {
            after += letters[j].degree();
        }
    }
    return parity_sign(before + (letters[i].degree() + 1) * after);
}

inline std::vector<HamiltonianPair> without(const std::vector<HamiltonianPair> &letters, std::size_t i)
{
    std::vector<HamiltonianPair> r;
    for (std::size_t j = 0; j < letters.size(); ++j) {
        if (j != i) {
            r.push_back(letters[j]);
        }
    }
    return r;
}

// sum_i eps_i (word without letter i) (x) X_i, scaled by the word coefficient.
inline FormValuedMultivector form_valued_multivector(const PairWord &w, std::size_t dim)
{
    FormValuedMultivector r;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const Rat c = w.coeff * letter_sign(w.letters, i);
        r.terms.push_back({c * realize(without(w.letters, i), dim), w.letters[i].X});
    }
    return r;
}

// Leibniz bracket {A, B} = (-1)^{n-r} X_A -| dB, realized as a form. Only the realization of B matters.
inline PolyForm leibniz_bracket_form(const MultisymplecticModel &m, const RealizedObservable &a, const PolyForm &b)
{
    const PolyForm db = ext_d(b);
    PolyForm r(m.dim(), 0);
    for (const auto &w : a) {
        PolyForm t = contract(form_valued_multivector(w, m.dim()), db);
        if ((m.n - w.form_degree()) % 2 != 0) {
            t *= Rat(-1);
        }
        r += t;
    }
    return r;
}

// Same bracket kept as pair words: letter i is replaced by a new letter solved from i_{X_i} dB.
// Throws not_hamiltonian if a new letter has no Hamiltonian multivector.
inline RealizedObservable leibniz_bracket_words(const MultisymplecticModel &m, const RealizedObservable &a,
                                                const PolyForm &b)
{
    const PolyForm db = ext_d(b);
    RealizedObservable r;
    for (const auto &w : a) {
        const int sign_n = parity_sign(m.n - w.form_degree());
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            PolyForm f = contract_or_zero(w.letters[i].X, db);
            if (f.is_zero()) {
                continue;
            }
            PairWord nw{w.coeff * sign_n * letter_sign(w.letters, i), without(w.letters, i)};
            nw.letters.push_back(hamiltonian_pair_from_form(m, f));
            r.push_back(std::move(nw));
        }
    }
    return r;
}

inline int form_degree(const RealizedObservable &a)
{
    return a.empty() ? 0 : a.front().form_degree();
}

} // namespace msbrst
