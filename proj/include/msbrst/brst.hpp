#pragma once

#include <msbrst/identities.hpp>
#include <msbrst/koszul.hpp>

#include <functional>
#include <string>
#include <vector>

namespace msbrst
{

namespace detail
{

// rho_a on x (x) w, ghosts carried along untouched. Even derivation: no signs.
inline BicomplexElement rho_terms(const ModelContext &ctx, int a, const BicomplexElement &e)
{
    const int n = ctx.n();
    const int g = ctx.gdim();
    BicomplexElement out;
    for (const auto &[k, c] : e.terms) {
        Observable x;
        x.add(k.x, c);
        for (const auto &[word, v] : ctx.rho(a, x).terms) {
            out.add({word, k.w, k.mu}, v);
        }
        // {w_b, w_a} = C^d_{ba} w_d at each position.
        for (std::size_t j = 0; j < k.w.size(); ++j) {
            for (int d = 0; d < g; ++d) {
                const Rat &cd = ctx.structure(d, k.w[j], a);
                if (msbrst::is_zero(cd)) {
                    continue;
                }
                Word w = k.w;
                w[j] = d;
                const int s = normalize_w(w, n);
                if (s != 0) {
                    out.add({k.x, w, k.mu}, Rat(s * c * cd));
                }
            }
        }
    }
    return out;
}

} // namespace detail

// Right action of xi_a on elements of zero ghost degree.
inline BicomplexElement rho_apply(const ModelContext &ctx, int a, const BicomplexElement &e)
{
    for (const auto &[k, c] : e.terms) {
        if (!k.mu.empty()) {
            throw degree_error("the module action is defined on ghost degree 0 only");
        }
    }
    return detail::rho_terms(ctx, a, e);
}

// Maurer-Cartan differential on ghost words: left odd derivation, d alpha^a = 1/2 C^a_{bc} alpha^b alpha^c.
inline std::vector<std::pair<Rat, Word>> maurer_cartan(const ModelContext &ctx, const Word &mu)
{
    std::vector<std::pair<Rat, Word>> out;
    const int g = ctx.gdim();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (int b = 0; b < g; ++b) {
            for (int c = b + 1; c < g; ++c) {
                const Rat &coef = ctx.structure(mu[i], b, c);
                if (msbrst::is_zero(coef)) {
                    continue;
                }
                Word nm(mu.begin(), mu.begin() + static_cast<long>(i));
                nm.push_back(b);
                nm.push_back(c);
                nm.insert(nm.end(), mu.begin() + static_cast<long>(i) + 1, mu.end());
                int s = normalize_mu(nm);
                if (s == 0) {
                    continue;
                }
                s *= parity_sign(static_cast<long>(i));
                out.emplace_back(Rat(s * coef), nm);
            }
        }
    }
    return out;
}

// Chevalley-Eilenberg differential: x w (x) d(mu) + sum_a [x w]rho_a (x) alpha^a mu.
// With sign_variant set, the second sum carries an extra (-1)^{deg mu}; kept to exhibit that it is not nilpotent.
inline BicomplexElement ce_d(const ModelContext &ctx, const BicomplexElement &e, bool sign_variant = false)
{
    BicomplexElement out;
    for (const auto &[k, c] : e.terms) {
        for (const auto &[coef, nm] : maurer_cartan(ctx, k.mu)) {
            out.add({k.x, k.w, nm}, c * coef);
        }
        const BicomplexElement base = BicomplexElement::single({k.x, k.w, {}}, c);
        for (int a = 0; a < ctx.gdim(); ++a) {
            Word nm{a};
            nm.insert(nm.end(), k.mu.begin(), k.mu.end());
            int s = normalize_mu(nm);
            if (s == 0) {
                continue;
            }
            if (sign_variant) {
                s *= parity_sign(static_cast<long>(k.mu.size()));
            }
            for (const auto &[tk, v] : detail::rho_terms(ctx, a, base).terms) {
                out.add({tk.x, tk.w, nm}, Rat(s * v));
            }
        }
    }
    return out;
}

// D = ce_d + (-1)^p koszul_d, p the ghost degree of the term acted on.
inline BicomplexElement total_d(const ModelContext &ctx, const BicomplexElement &e)
{
    BicomplexElement out = ce_d(ctx, e);
    for (const auto &[k, c] : e.terms) {
        const Rat s = k.mu.size() % 2 == 0 ? Rat(c) : Rat(-c);
        out += koszul_d(ctx, BicomplexElement::single(k, s));
    }
    return out;
}

inline int ghost_number(const BiKey &k)
{
    return static_cast<int>(k.mu.size()) - static_cast<int>(k.w.size());
}

// All truncation basis elements of a weight-d piece, every (|w|, |mu|).
inline std::vector<BiKey> full_piece(const ModelContext &ctx, int d)
{
    std::vector<BiKey> out;
    const int rmax = max_w_length(ctx, d);
    for (int r = 0; r <= rmax; ++r) {
        for (int s = 0; s <= ctx.gdim(); ++s) {
            const auto b = piece_basis(ctx, d, r, s);
            out.insert(out.end(), b.begin(), b.end());
        }
    }
    return out;
}

// Applies `check` to every basis element of weights 0..dmax; records the first failure.
inline check_record check_on_basis(const ModelContext &ctx, int dmax, const std::string &name, const std::string &what,
                                   const std::function<bool(const BicomplexElement &)> &check)
{
    std::size_t count = 0;
    std::string bad;
    for (int d = 0; d <= dmax; ++d) {
        for (const auto &k : full_piece(ctx, d)) {
            ++count;
            if (bad.empty() && !check(BicomplexElement::single(k))) {
                bad = "weight " + std::to_string(d) + ": x = " + ctx.algebra().render_word(k.x) + ", |w| = "
                      + std::to_string(k.w.size()) + ", |mu| = " + std::to_string(k.mu.size());
            }
        }
    }
    return {name, bad.empty() ? status::pass : status::fail, what + " on " + std::to_string(count) + " basis elements",
            bad};
}

// Right-order homomorphism on ghost-degree-0 elements:
// (x)rho_a rho_b - (x)rho_b rho_a = C^c_{ab} (x)rho_c, where (x)rho_a rho_b = rho_b(rho_a(x)).
// With left_order the composition is reversed (negative control).
inline bool rho_homomorphism_holds(const ModelContext &ctx, const BicomplexElement &x, bool left_order = false)
{
    const int g = ctx.gdim();
    for (int a = 0; a < g; ++a) {
        const auto xa = rho_apply(ctx, a, x);
        for (int b = a + 1; b < g; ++b) {
            const auto xb = rho_apply(ctx, b, x);
            BicomplexElement lhs = rho_apply(ctx, b, xa) - rho_apply(ctx, a, xb);
            if (left_order) {
                lhs = Rat(-1) * lhs;
            }
            for (int c = 0; c < g; ++c) {
                const Rat &coef = ctx.structure(c, a, b);
                if (!msbrst::is_zero(coef)) {
                    lhs -= coef * rho_apply(ctx, c, x);
                }
            }
            if (!lhs.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

// Homomorphism property over every ghost-degree-0 basis element with |mu| = 0.
inline ValidationReport check_rho_homomorphism(const ModelContext &ctx, int dmax)
{
    ValidationReport rep;
    std::size_t count = 0;
    std::string bad;
    std::string left_bad;
    for (int d = 0; d <= dmax; ++d) {
        for (int r = 0; r <= max_w_length(ctx, d); ++r) {
            for (const auto &k : piece_basis(ctx, d, r, 0)) {
                ++count;
                const auto e = BicomplexElement::single(k);
                if (bad.empty() && !rho_homomorphism_holds(ctx, e)) {
                    bad = "weight " + std::to_string(d) + ": " + ctx.algebra().render_word(k.x);
                }
                if (left_bad.empty() && !rho_homomorphism_holds(ctx, e, true)) {
                    left_bad = "weight " + std::to_string(d) + ": " + ctx.algebra().render_word(k.x);
                }
            }
        }
    }
    rep.add_check("rho_homomorphism", bad.empty(), "right-order commutator on " + std::to_string(count) + " elements",
                  bad);
    rep.add("rho_left_order_control", status::info,
            left_bad.empty() ? "left order also holds (abelian or trivially acting)" : "left order breaks",
            left_bad);
    return rep;
}

// {E, {G, H}} and {{E, G}, H} - {{E, H}, G} for (n-1)-forms G, H; throws degree_error otherwise.
inline std::pair<PolyForm, PolyForm> adjoint_bracket_sides(const MultisymplecticModel &m, const RealizedObservable &e,
                                                          const HamiltonianPair &g, const HamiltonianPair &h)
{
    if (g.degree() != m.n - 1 || h.degree() != m.n - 1) {
        throw degree_error("the adjoint bracket identity is specific to (n-1)-forms");
    }
    const PolyForm lhs = leibniz_bracket_form(m, e, bracket(m, g, h));
    PolyForm rhs = leibniz_bracket_form(m, leibniz_bracket_words(m, e, g.F), h.F);
    rhs -= leibniz_bracket_form(m, leibniz_bracket_words(m, e, h.F), g.F);
    return {lhs, rhs};
}

inline ValidationReport check_adjoint_bracket_identity(const MultisymplecticModel &m,
                                                       const std::vector<Letter> &letters, int samples,
                                                       std::uint64_t seed)
{
    ValidationReport rep;
    PoolSampler s(m, letters, seed);
    if (!s.has_degree(m.n - 1)) {
        rep.add("adjoint_bracket_identity", status::warn, "no (n-1)-form generators in the pool");
        return rep;
    }
    int passed = 0;
    std::string witness;
    for (int i = 0; i < samples; ++i) {
        const auto e = s.word(m.lmax);
        const auto g = s.letter(m.n - 1);
        const auto h = s.letter(m.n - 1);
        bool ok = true;
        try {
            if (form_degree(e) <= static_cast<int>(m.dim())) {
                const auto [lhs, rhs] = adjoint_bracket_sides(m, e, g, h);
                ok = ext_d(lhs - rhs).is_zero();
            }
        } catch (const error &ex) {
            ok = false;
            witness = witness.empty() ? std::string("exception: ") + ex.what() : witness;
        }
        if (ok) {
            ++passed;
        } else if (witness.empty()) {
            witness = "sample " + std::to_string(i) + ": " + detail::show(m, e);
        }
    }
    rep.add_check("adjoint_bracket_identity", passed == samples,
                  std::to_string(passed) + "/" + std::to_string(samples) + " samples", witness);
    return rep;
}

// Nilpotency and commutation over every truncation basis element.
inline ValidationReport check_brst_differentials(const ModelContext &ctx, int dmax)
{
    ValidationReport rep;
    rep.records.push_back(check_on_basis(ctx, dmax, "ce_nilpotent", "d^2 = 0", [&](const BicomplexElement &e) {
        return ce_d(ctx, ce_d(ctx, e)).is_zero();
    }));
    rep.records.push_back(check_on_basis(ctx, dmax, "ce_koszul_commute", "d koszul_d = koszul_d d",
                                         [&](const BicomplexElement &e) {
                                             return ce_d(ctx, koszul_d(ctx, e)) == koszul_d(ctx, ce_d(ctx, e));
                                         }));
    rep.records.push_back(check_on_basis(ctx, dmax, "rho_koszul_commute", "rho_a koszul_d = koszul_d rho_a",
                                         [&](const BicomplexElement &e) {
                                             if (!e.terms.begin()->first.mu.empty()) {
                                                 return true;
                                             }
                                             for (int a = 0; a < ctx.gdim(); ++a) {
                                                 if (!(rho_apply(ctx, a, koszul_d(ctx, e))
                                                       == koszul_d(ctx, rho_apply(ctx, a, e)))) {
                                                     return false;
                                                 }
                                             }
                                             return true;
                                         }));
    rep.records.push_back(check_on_basis(ctx, dmax, "total_nilpotent", "D^2 = 0", [&](const BicomplexElement &e) {
        return total_d(ctx, total_d(ctx, e)).is_zero();
    }));
    // Formal form of the commutation: rho_a(delta_b) = C^d_{ba} delta_d.
    std::string bad;
    for (int a = 0; a < ctx.gdim() && bad.empty(); ++a) {
        for (int b = 0; b < ctx.gdim() && bad.empty(); ++b) {
            Observable diff = ctx.rho(a, ctx.delta(b));
            for (int d = 0; d < ctx.gdim(); ++d) {
                Observable t = ctx.delta(d);
                t *= ctx.structure(d, b, a);
                diff -= t;
            }
            if (!diff.is_zero()) {
                const auto &l = ctx.model().algebra.labels;
                bad = "rho_" + l[static_cast<std::size_t>(a)] + "(delta_" + l[static_cast<std::size_t>(b)]
                      + ") defect " + ctx.algebra().render(diff);
            }
        }
    }
    rep.add_check("current_equivariance", bad.empty(), "rho_a(delta_b) = C^d_{ba} delta_d formally", bad);
    return rep;
}

// Ghost-number-k basis of the weight-d piece.
inline std::vector<BiKey> ghost_basis(const ModelContext &ctx, int d, int k)
{
    std::vector<BiKey> out;
    const int rmax = max_w_length(ctx, d);
    for (int s = 0; s <= ctx.gdim(); ++s) {
        const int r = s - k;
        if (r < 0 || r > rmax) {
            continue;
        }
        const auto b = piece_basis(ctx, d, r, s);
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string render_element(const ModelContext &ctx, const BicomplexElement &e)
{
    if (e.is_zero()) {
        return "0";
    }
    const auto &labels = ctx.model().algebra.labels;
    std::string out;
    for (const auto &[k, c] : e.terms) {
        Observable x;
        x.add(k.x, c);
        std::string t = ctx.algebra().render(x);
        if (!k.w.empty()) {
            t += " w(";
            for (std::size_t i = 0; i < k.w.size(); ++i) {
                t += (i ? "," : "") + labels[static_cast<std::size_t>(k.w[i])];
            }
            t += ")";
        }
        if (!k.mu.empty()) {
            t += " a(";
            for (std::size_t i = 0; i < k.mu.size(); ++i) {
                t += (i ? "," : "") + labels[static_cast<std::size_t>(k.mu[i])];
            }
            t += ")";
        }
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

// Total ghost-number-0 cohomology per weight, with a canonical representative basis.
struct BrstH0 {
    DimensionTable table;
    std::map<int, std::vector<BicomplexElement>> basis; // by weight
};

// Invariants of the Koszul H^0 quotient: dim ker(x -> (rho_a x mod I)_a) - dim I_d on A_d.
inline std::size_t invariants_oracle(const ModelContext &ctx, int d)
{
    const auto &alg = ctx.algebra();
    auto ideal = [&](int w, std::map<Word, std::size_t> &index) {
        const auto &basis = alg.words_of_weight(w);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            index.emplace(basis[i], i);
        }
        EchelonBasis span;
        for (int a = 0; a < ctx.gdim(); ++a) {
            const int rest = w - ctx.delta_weight(a);
            if (rest < 0) {
                continue;
            }
            for (const auto &u : alg.words_of_weight(rest)) {
                Observable uo;
                uo.add(u, Rat(1));
                SparseVec v;
                for (const auto &[word, c] : alg.multiply(uo, ctx.delta(a)).terms) {
                    v.emplace(index.at(word), c);
                }
                span.insert(v);
            }
        }
        return span;
    };
    std::map<Word, std::size_t> src_index;
    const EchelonBasis id = ideal(d, src_index);
    const auto &src = alg.words_of_weight(d);
    std::vector<std::map<Word, std::size_t>> tgt_index(static_cast<std::size_t>(ctx.gdim()));
    std::vector<EchelonBasis> tgt_ideal;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (int a = 0; a < ctx.gdim(); ++a) {
        const int w = d - ctx.ghost_weight(a);
        tgt_ideal.push_back(w >= 0 ? ideal(w, tgt_index[static_cast<std::size_t>(a)]) : EchelonBasis{});
        offset.push_back(total);
        total += tgt_index[static_cast<std::size_t>(a)].size();
    }
    SparseMatrix m;
    m.rows = total;
    for (const auto &x : src) {
        SparseVec col;
        Observable xo;
        xo.add(x, Rat(1));
        for (int a = 0; a < ctx.gdim(); ++a) {
            SparseVec v;
            for (const auto &[word, c] : ctx.rho(a, xo).terms) {
                v.emplace(tgt_index[static_cast<std::size_t>(a)].at(word), c);
            }
            for (const auto &[i, c] : tgt_ideal[static_cast<std::size_t>(a)].reduce(v)) {
                col.emplace(offset[static_cast<std::size_t>(a)] + i, c);
            }
        }
        m.cols.push_back(std::move(col));
    }
    return src.size() - rank(m) - id.rank();
}

inline BrstH0 brst_h0(const ModelContext &ctx, int dmax, int lmax)
{
    BrstH0 out;
    out.table.title = "brst_h0";
    auto D = [&](const BicomplexElement &e) { return total_d(ctx, e); };
    for (int d = 0; d <= dmax; ++d) {
        const auto cm = ghost_basis(ctx, d, -1);
        const auto c0 = ghost_basis(ctx, d, 0);
        const auto cp = ghost_basis(ctx, d, 1);
        const PieceMap in = assemble_map(cm, c0, D);
        const PieceMap outm = assemble_map(c0, cp, D);
        DimensionRow row;
        row.weight = d;
        row.degree = 0;
        row.dim = c0.size();
        row.rank_in = rank(in.matrix);
        row.rank_out = rank(outm.matrix);
        row.homology = row.dim - row.rank_in - row.rank_out;
        row.interior = within_length(cm, lmax) && within_length(c0, lmax) && within_length(cp, lmax);
        row.oracle = invariants_oracle(ctx, d);
        out.table.rows.push_back(row);

        EchelonBasis span;
        for (const auto &col : in.matrix.cols) {
            span.insert(col);
        }
        std::vector<BicomplexElement> reps;
        for (const auto &v : kernel_basis(outm.matrix)) {
            if (span.contains(v)) {
                continue;
            }
            span.insert(v);
            BicomplexElement e;
            for (const auto &[i, c] : v) {
                e.add(c0[i], c);
            }
            reps.push_back(std::move(e));
        }
        out.basis[d] = std::move(reps);
    }
    return out;
}

inline ValidationReport check_brst_h0(const BrstH0 &h)
{
    ValidationReport rep;
    std::string bad;
    for (const auto &r : h.table.rows) {
        if (r.interior && r.oracle && *r.oracle != r.homology && bad.empty()) {
            bad = "weight " + std::to_string(r.weight) + ": " + std::to_string(r.homology) + " vs oracle "
                  + std::to_string(*r.oracle);
        }
    }
    rep.add_check("brst_h0_oracle", bad.empty(), "H^0 equals the invariants of the Koszul quotient on interior pieces",
                  bad);
    return rep;
}

} // namespace msbrst
