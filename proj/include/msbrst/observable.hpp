#pragma once

#include <msbrst/errors.hpp>
#include <msbrst/hamiltonian.hpp>
#include <msbrst/linalg.hpp>
#include <msbrst/model.hpp>
#include <msbrst/realized.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msbrst
{

// Generator of the formal algebra: a pool form with its multivector.
struct Letter {
    std::string label;
    HamiltonianPair pair;
    int weight = 0; // coefficient degree + form degree, >= 1
    int form_degree = 0;
};

// Sorted letter indices. Odd-degree letters appear at most once.
using Word = std::vector<int>;

// Formal graded-commutative polynomial in the letters.
struct Observable {
    std::map<Word, Rat> terms;

    bool is_zero() const
    {
        return terms.empty();
    }
    void add(const Word &w, const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            return;
        }
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (msbrst::is_zero(it->second)) {
                terms.erase(it);
            }
        }
    }
    Observable &operator+=(const Observable &o)
    {
        for (const auto &[w, c] : o.terms) {
            add(w, c);
        }
        return *this;
    }
    Observable &operator-=(const Observable &o)
    {
        for (const auto &[w, c] : o.terms) {
            add(w, -c);
        }
        return *this;
    }
    Observable &operator*=(const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            terms.clear();
        } else {
            for (auto &[w, v] : terms) {
                v *= c;
            }
        }
        return *this;
    }
    friend Observable operator+(Observable a, const Observable &b)
    {
        return a += b;
    }
    friend Observable operator-(Observable a, const Observable &b)
    {
        return a -= b;
    }
    friend Observable operator*(const Rat &c, Observable a)
    {
        return a *= c;
    }
    friend bool operator==(const Observable &a, const Observable &b)
    {
        return a.terms == b.terms;
    }

    static Observable scalar(const Rat &c)
    {
        Observable o;
        o.add(Word{}, c);
        return o;
    }
    static Observable letter(int i)
    {
        Observable o;
        o.add(Word{i}, Rat(1));
        return o;
    }
};

// The formal algebra over a model's generator pool, with realization and re-expression.
// Caches are filled lazily; instances are not shared between threads.
class ObservableAlgebra
{
public:
    ObservableAlgebra(const MultisymplecticModel &m, std::vector<Letter> letters)
        : m_model(&m), m_letters(std::move(letters))
    {
    }

    const MultisymplecticModel &model() const
    {
        return *m_model;
    }
    const std::vector<Letter> &letters() const
    {
        return m_letters;
    }
    int parity(int letter) const
    {
        return m_letters.at(static_cast<std::size_t>(letter)).form_degree % 2;
    }

    int word_weight(const Word &w) const
    {
        int s = 0;
        for (int i : w) {
            s += m_letters[static_cast<std::size_t>(i)].weight;
        }
        return s;
    }
    int word_form_degree(const Word &w) const
    {
        int s = 0;
        for (int i : w) {
            s += m_letters[static_cast<std::size_t>(i)].form_degree;
        }
        return s;
    }
    int word_parity(const Word &w) const
    {
        return word_form_degree(w) % 2;
    }

    // Product of words with the graded-commutative sign; 0 if an odd letter repeats.
    std::pair<int, Word> multiply_words(const Word &a, const Word &b) const
    {
        int sign = 1;
        for (int y : b) {
            if (parity(y) == 0) {
                continue;
            }
            for (int x : a) {
                if (x == y) {
                    return {0, {}};
                }
                if (x > y && parity(x) == 1) {
                    sign = -sign;
                }
            }
        }
        Word r;
        r.reserve(a.size() + b.size());
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
        return {sign, r};
    }

    Observable multiply(const Observable &a, const Observable &b) const
    {
        Observable r;
        for (const auto &[wa, ca] : a.terms) {
            for (const auto &[wb, cb] : b.terms) {
                auto [s, w] = multiply_words(wa, wb);
                if (s != 0) {
                    r.add(w, Rat(s * ca * cb));
                }
            }
        }
        return r;
    }

    const PolyForm &realize_word(const Word &w) const
    {
        auto it = m_word_cache.find(w);
        if (it != m_word_cache.end()) {
            return it->second;
        }
        PolyForm r = PolyForm::scalar(Poly::constant(m_model->dim(), Rat(1)));
        for (int i : w) {
            r = msbrst::wedge(r, m_letters[static_cast<std::size_t>(i)].pair.F);
        }
        return m_word_cache.emplace(w, std::move(r)).first->second;
    }

    PolyForm realize(const Observable &a) const
    {
        PolyForm r(m_model->dim(), 0);
        for (const auto &[w, c] : a.terms) {
            r += c * realize_word(w);
        }
        return r;
    }

    RealizedObservable realized_words(const Observable &a) const
    {
        RealizedObservable r;
        for (const auto &[w, c] : a.terms) {
            PairWord pw{c, {}};
            for (int i : w) {
                pw.letters.push_back(m_letters[static_cast<std::size_t>(i)].pair);
            }
            r.push_back(std::move(pw));
        }
        return r;
    }

    // All words of the given weight (no length cap), sorted by length then lexicographically.
    const std::vector<Word> &words_of_weight(int weight) const
    {
        auto it = m_weight_cache.find(weight);
        if (it != m_weight_cache.end()) {
            return it->second;
        }
        std::vector<Word> out;
        if (weight >= 0) {
            Word cur;
            auto rec = [&](auto &&self, int start, int left) -> void {
                if (left == 0) {
                    out.push_back(cur);
                    return;
                }
                for (int i = start; i < static_cast<int>(m_letters.size()); ++i) {
                    const int wi = m_letters[static_cast<std::size_t>(i)].weight;
                    if (wi > left) {
                        continue;
                    }
                    cur.push_back(i);
                    self(self, parity(i) == 1 ? i + 1 : i, left - wi);
                    cur.pop_back();
                }
            };
            rec(rec, 0, weight);
        }
        std::stable_sort(out.begin(), out.end(), [](const Word &a, const Word &b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return m_weight_cache.emplace(weight, std::move(out)).first->second;
    }

    // Formal preimage of B: exact when mod_closed is false, else solved through d.
    // Weight-0 parts are constants and always matched exactly.
    std::optional<Observable> express(const PolyForm &b, bool mod_closed) const
    {
        Observable out;
        if (b.is_zero()) {
            return out;
        }
        std::map<int, PolyForm> parts;
        for (const auto &[idx, f] : b.terms()) {
            for (const auto &[mono, c] : f.terms()) {
                const int w = static_cast<int>(total_degree(mono)) + b.degree();
                auto [it, fresh] = parts.try_emplace(w, PolyForm(b.dim(), b.degree()));
                it->second.add(idx, Poly::monomial(mono, c));
            }
        }
        for (const auto &[w, part] : parts) {
            if (w == 0) {
                out.add(Word{}, part.terms().begin()->second.terms().begin()->second);
                continue;
            }
            const bool via_d = mod_closed;
            std::vector<const Word *> cols;
            for (const auto &wd : words_of_weight(w)) {
                if (word_form_degree(wd) == part.degree()) {
                    cols.push_back(&wd);
                }
            }
            std::map<std::pair<IndexTuple, Monomial>, std::size_t> row_of;
            auto flatten = [&](const PolyForm &f) {
                SparseVec v;
                for (const auto &[idx, poly] : f.terms()) {
                    for (const auto &[mono, c] : poly.terms()) {
                        auto [it, fresh] = row_of.emplace(std::make_pair(idx, mono), row_of.size());
                        v.emplace(it->second, c);
                    }
                }
                return v;
            };
            SparseMatrix A;
            for (const Word *wd : cols) {
                const PolyForm &rw = realize_word(*wd);
                A.cols.push_back(flatten(via_d ? ext_d(rw) : rw));
            }
            const SparseVec rhs = flatten(via_d ? ext_d(part) : part);
            A.rows = row_of.size();
            const auto sol = solve_canonical(A, rhs);
            if (!sol) {
                return std::nullopt;
            }
            for (const auto &[j, c] : *sol) {
                out.add(*cols[j], c);
            }
        }
        return out;
    }

    std::string render(const Observable &a) const
    {
        if (a.is_zero()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[w, c] : a.terms) {
            const bool neg = sgn(c) < 0;
            const Rat mag = abs(c);
            std::string body;
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (j) {
                    body += '^';
                }
                body += m_letters[static_cast<std::size_t>(w[j])].label;
            }
            if (body.empty()) {
                body = to_string(mag);
            } else if (!is_one(mag)) {
                body = to_string(mag) + "*" + body;
            }
            out += first ? (neg ? "-" + body : body) : (neg ? " - " + body : " + " + body);
            first = false;
        }
        return out;
    }

    std::string render_word(const Word &w) const
    {
        Observable o;
        o.add(w, Rat(1));
        return render(o);
    }

private:
    const MultisymplecticModel *m_model;
    std::vector<Letter> m_letters;
    mutable std::map<Word, PolyForm> m_word_cache;
    mutable std::map<int, std::vector<Word>> m_weight_cache;
};

// Letters from the model's generator pool. Throws validation_error if a generator is not a
// weight-homogeneous Hamiltonian form, or if the pool is dependent modulo closed forms.
inline std::vector<Letter> build_letters(const MultisymplecticModel &m)
{
    std::vector<Letter> out;
    for (const auto &g : m.generators) {
        const auto w = g.form.weight();
        if (g.form.is_zero() || !w || *w < 1) {
            throw validation_error("generator_weight", "generator '" + g.label + "' is not weight-homogeneous");
        }
        HamiltonianPair h;
        try {
            h = hamiltonian_pair_from_form(m, g.form);
        } catch (const error &e) {
            throw validation_error("generator_hamiltonian", "generator '" + g.label + "': " + e.what());
        }
        out.push_back(Letter{g.label, std::move(h), *w, g.form.degree()});
    }
    // Independence of d(letters) within each (weight, degree) class.
    std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < out.size(); ++i) {
        groups[{out[i].weight, out[i].form_degree}].push_back(i);
    }
    for (const auto &[key, idx] : groups) {
        std::map<std::pair<IndexTuple, Monomial>, std::size_t> row_of;
        EchelonBasis e;
        for (std::size_t i : idx) {
            SparseVec v;
            const PolyForm d = ext_d(out[i].pair.F);
            for (const auto &[t, poly] : d.terms()) {
                for (const auto &[mono, c] : poly.terms()) {
                    auto [it, fresh] = row_of.emplace(std::make_pair(t, mono), row_of.size());
                    v.emplace(it->second, c);
                }
            }
            if (!e.insert(v)) {
                throw validation_error("pool_independence",
                                       "generator '" + out[i].label + "' is dependent modulo closed forms");
            }
        }
    }
    return out;
}

} // namespace msbrst
