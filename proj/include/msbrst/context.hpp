#pragma once

#include <msbrst/action.hpp>
#include <msbrst/errors.hpp>
#include <msbrst/model.hpp>
#include <msbrst/observable.hpp>

#include <memory>
#include <string>
#include <vector>

namespace msbrst
{

// Everything the complexes need from a model: the formal algebra, the formal currents delta_a
// and the derivations rho_a on letters. rho_a(l) is {l, delta_a} re-expressed modulo closed forms.
class ModelContext
{
public:
    explicit ModelContext(const MultisymplecticModel &m)
        : m_model(std::make_unique<MultisymplecticModel>(m)), m_alg(*m_model, build_letters(*m_model))
    {
        const int g = m_model->algebra.dim();
        m_currents = noether_currents(*m_model);
        for (int a = 0; a < g; ++a) {
            const auto &cur = m_currents[static_cast<std::size_t>(a)];
            const auto f = m_alg.express(cur.F, false);
            const std::string label = m_model->algebra.labels[static_cast<std::size_t>(a)];
            if (!f) {
                throw validation_error("currents_in_pool", "current of " + label + " = " + render(cur.F, m_model->coords)
                                                               + " is not a polynomial in the generators");
            }
            int w = m_model->n; // zero current: any weight works, n keeps ghosts at weight 1
            bool first = true;
            for (const auto &[word, c] : f->terms) {
                const int ww = m_alg.word_weight(word);
                if (first) {
                    w = ww;
                    first = false;
                } else if (ww != w) {
                    throw validation_error("current_weight", "current of " + label + " mixes weights");
                }
            }
            m_delta.push_back(*f);
            m_delta_weight.push_back(w);
        }
        for (int a = 0; a < g; ++a) {
            std::vector<Observable> row;
            for (std::size_t l = 0; l < m_alg.letters().size(); ++l) {
                const auto &letter = m_alg.letters()[l];
                const PolyForm b = bracket(*m_model, letter.pair, m_currents[static_cast<std::size_t>(a)]);
                const auto f = m_alg.express(b, true);
                if (!f) {
                    throw validation_error("pool_closure", "{" + letter.label + ", delta_"
                                                               + m_model->algebra.labels[static_cast<std::size_t>(a)]
                                                               + "} = " + render(b, m_model->coords)
                                                               + " is not expressible in the generators");
                }
                row.push_back(*f);
            }
            m_rho_letter.push_back(std::move(row));
        }
    }

    const MultisymplecticModel &model() const
    {
        return *m_model;
    }
    const ObservableAlgebra &algebra() const
    {
        return m_alg;
    }
    int n() const
    {
        return m_model->n;
    }
    int gdim() const
    {
        return m_model->algebra.dim();
    }
    const std::vector<HamiltonianPair> &currents() const
    {
        return m_currents;
    }
    const Observable &delta(int a) const
    {
        return m_delta.at(static_cast<std::size_t>(a));
    }
    // Weight of delta_a, which is also the weight of the Koszul generator w_a.
    int delta_weight(int a) const
    {
        return m_delta_weight.at(static_cast<std::size_t>(a));
    }
    // Weight of the ghost alpha^a; rho_a lowers weight by this amount.
    int ghost_weight(int a) const
    {
        return m_model->n + 1 - delta_weight(a);
    }
    const Observable &rho_letter(int a, int letter) const
    {
        return m_rho_letter.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(letter));
    }
    Rat structure(int a, int b, int c) const
    {
        return m_model->algebra.c(a, b, c);
    }

    // Even derivation extending rho_a from letters.
    Observable rho(int a, const Observable &x) const
    {
        Observable out;
        for (const auto &[w, c] : x.terms) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                Word pre(w.begin(), w.begin() + static_cast<long>(i));
                Word suf(w.begin() + static_cast<long>(i) + 1, w.end());
                Observable t = m_alg.multiply(Observable::scalar(c), word_obs(pre));
                t = m_alg.multiply(t, rho_letter(a, w[i]));
                t = m_alg.multiply(t, word_obs(suf));
                out += t;
            }
        }
        return out;
    }

private:
    static Observable word_obs(const Word &w)
    {
        Observable o;
        o.add(w, Rat(1));
        return o;
    }

    std::unique_ptr<MultisymplecticModel> m_model;
    ObservableAlgebra m_alg;
    std::vector<HamiltonianPair> m_currents;
    std::vector<Observable> m_delta;
    std::vector<int> m_delta_weight;
    std::vector<std::vector<Observable>> m_rho_letter;
};

} // namespace msbrst
