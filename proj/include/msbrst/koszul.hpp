#pragma once

#include <msbrst/context.hpp>
#include <msbrst/linalg.hpp>
#include <msbrst/multilinear.hpp>
#include <msbrst/report.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msbrst
{

// Term key of x (x) w (x) mu: observable word, Koszul generator word, ghost word.
// w is sorted (a multiset for even n, strictly increasing for odd n); mu is strictly increasing.
struct BiKey {
    Word x;
    Word w;
    Word mu;
    friend auto operator<=>(const BiKey &, const BiKey &) = default;
};

struct BicomplexElement {
    std::map<BiKey, Rat> terms;

    bool is_zero() const
    {
        return terms.empty();
    }
    void add(const BiKey &k, const Rat &c)
    {
        if (msbrst::is_zero(c)) {
            return;
        }
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (msbrst::is_zero(it->second)) {
                terms.erase(it);
            }
        }
    }
    BicomplexElement &operator+=(const BicomplexElement &o)
    {
        for (const auto &[k, c] : o.terms) {
            add(k, c);
        }
        return *this;
    }
    BicomplexElement &operator-=(const BicomplexElement &o)
    {
        for (const auto &[k, c] : o.terms) {
            add(k, -c);
        }
        return *this;
    }
    friend BicomplexElement operator+(BicomplexElement a, const BicomplexElement &b)
    {
        return a += b;
    }
    friend BicomplexElement operator-(BicomplexElement a, const BicomplexElement &b)
    {
        return a -= b;
    }
    friend BicomplexElement operator*(const Rat &c, BicomplexElement a)
    {
        if (msbrst::is_zero(c)) {
            a.terms.clear();
        }
        for (auto &[k, v] : a.terms) {
            v *= c;
        }
        return a;
    }
    friend bool operator==(const BicomplexElement &a, const BicomplexElement &b)
    {
        return a.terms == b.terms;
    }

    static BicomplexElement single(const BiKey &k, const Rat &c = Rat(1))
    {
        BicomplexElement e;
        e.add(k, c);
        return e;
    }
    // x (x) w (x) 1 for a formal observable x.
    static BicomplexElement from_observable(const Observable &x, const Word &w = {}, const Word &mu = {})
    {
        BicomplexElement e;
        for (const auto &[word, c] : x.terms) {
            e.add({word, w, mu}, c);
        }
        return e;
    }
};

// Sorts a Koszul generator word. Generators have parity n: commuting for even n, anticommuting
// (sign of the sort, 0 on a repeat) for odd n.
inline int normalize_w(Word &w, int n)
{
    if (n % 2 == 0) {
        std::sort(w.begin(), w.end());
        return 1;
    }
    return sort_with_sign(w);
}

// Ghost words are exterior.
inline int normalize_mu(Word &mu)
{
    return sort_with_sign(mu);
}

// Koszul generators with their weights and the bracket table {w_a, w_b} = C^d_{ab} w_d.
struct WBasis {
    int n = 0;
    std::vector<std::string> labels;
    std::vector<int> weights;
};

// Checks that the table is a representation (Jacobi) and that the geometric realizations obey
// d{delta_a, delta_b} = C^d_{ab} d delta_d. Throws validation_error("w_representation") otherwise.
inline WBasis build_w_basis(const ModelContext &ctx)
{
    const auto &m = ctx.model();
    const int g = ctx.gdim();
    WBasis b{ctx.n(), m.algebra.labels, {}};
    for (int a = 0; a < g; ++a) {
        b.weights.push_back(ctx.delta_weight(a));
    }
    for (const auto &r : check_lie_algebra(m.algebra).records) {
        if (r.result == status::fail) {
            throw validation_error("w_representation", r.detail + ": " + r.witness);
        }
    }
    const auto &cur = ctx.currents();
    for (int a = 0; a < g; ++a) {
        for (int c = 0; c < g; ++c) {
            PolyForm lhs = ext_d(bracket(m, cur[static_cast<std::size_t>(a)], cur[static_cast<std::size_t>(c)]));
            for (int d = 0; d < g; ++d) {
                lhs -= m.algebra.c(d, a, c) * ext_d(cur[static_cast<std::size_t>(d)].F);
            }
            if (!lhs.is_zero()) {
                throw validation_error("w_representation", "indices (" + std::to_string(a + 1) + ","
                                                               + std::to_string(c + 1) + "): defect "
                                                               + render(lhs, m.coords));
            }
        }
    }
    return b;
}

inline int w_weight(const ModelContext &ctx, const Word &w)
{
    int s = 0;
    for (int a : w) {
        s += ctx.delta_weight(a);
    }
    return s;
}

inline int mu_weight(const ModelContext &ctx, const Word &mu)
{
    int s = 0;
    for (int a : mu) {
        s += ctx.ghost_weight(a);
    }
    return s;
}

inline int key_weight(const ModelContext &ctx, const BiKey &k)
{
    return ctx.algebra().word_weight(k.x) + w_weight(ctx, k.w) + mu_weight(ctx, k.mu);
}

// Super product: (x u mu) o (B v nu) = (-1)^{|u||B| + |mu|(|B|+|v|)} (xB)(uv)(mu nu), with parities
// |u| = n * length, |mu| = length. Equivalent to the swap sign (-1)^{qp(n-1)^2 + rsn^2} on pure factors.
inline BicomplexElement circ_product(const ModelContext &ctx, const BicomplexElement &a, const BicomplexElement &b)
{
    const int n = ctx.n();
    const auto &alg = ctx.algebra();
    BicomplexElement out;
    for (const auto &[ka, ca] : a.terms) {
        for (const auto &[kb, cb] : b.terms) {
            auto [sx, x] = alg.multiply_words(ka.x, kb.x);
            if (sx == 0) {
                continue;
            }
            Word w = ka.w;
            w.insert(w.end(), kb.w.begin(), kb.w.end());
            const int sw = normalize_w(w, n);
            Word mu = ka.mu;
            mu.insert(mu.end(), kb.mu.begin(), kb.mu.end());
            const int smu = normalize_mu(mu);
            if (sw == 0 || smu == 0) {
                continue;
            }
            const long pu = static_cast<long>(ka.w.size()) * n;
            const long pB = alg.word_parity(kb.x);
            const long pv = static_cast<long>(kb.w.size()) * n;
            const long pmu = static_cast<long>(ka.mu.size());
            const int s = sx * sw * smu * parity_sign(pu * pB + pmu * (pB + pv));
            out.add({x, w, mu}, Rat(s * ca * cb));
        }
    }
    return out;
}

// Koszul differential: replaces generator j of w by delta_{w_j} multiplied onto x, with sign
// (-1)^{(j-1)n} for 1-based j. Annihilates terms with empty w.
inline BicomplexElement koszul_d(const ModelContext &ctx, const BicomplexElement &e)
{
    const int n = ctx.n();
    const auto &alg = ctx.algebra();
    BicomplexElement out;
    for (const auto &[k, c] : e.terms) {
        for (std::size_t j = 0; j < k.w.size(); ++j) {
            const Rat cj = (n % 2 == 1 && j % 2 == 1) ? Rat(-c) : Rat(c);
            Word rest = k.w;
            rest.erase(rest.begin() + static_cast<long>(j));
            Observable x;
            x.add(k.x, cj);
            const Observable prod = alg.multiply(x, ctx.delta(k.w[j]));
            for (const auto &[word, v] : prod.terms) {
                out.add({word, rest, k.mu}, v);
            }
        }
    }
    return out;
}

// Parity fact behind nilpotency of the Koszul differential.
inline bool koszul_parity_fact(long n)
{
    return ((n - 1) * (n - 2) - 1) % 2 != 0;
}

// Exact linear map between two ordered bases.
struct PieceMap {
    std::vector<BiKey> source;
    std::vector<BiKey> target;
    SparseMatrix matrix;
};

template <class F>
PieceMap assemble_map(const std::vector<BiKey> &source, const std::vector<BiKey> &target, F &&apply)
{
    PieceMap pm{source, target, {}};
    std::map<BiKey, std::size_t> index;
    for (std::size_t i = 0; i < target.size(); ++i) {
        index.emplace(target[i], i);
    }
    pm.matrix.rows = target.size();
    for (const auto &k : source) {
        const BicomplexElement img = apply(BicomplexElement::single(k));
        SparseVec col;
        for (const auto &[tk, c] : img.terms) {
            auto it = index.find(tk);
            if (it == index.end()) {
                throw error("differential leaves its target piece");
            }
            col.emplace(it->second, c);
        }
        pm.matrix.cols.push_back(std::move(col));
    }
    return pm;
}

// Generator words over 0..g-1 of a given length and total weight, using the parity-n rule.
inline std::vector<Word> generator_words(const ModelContext &ctx, int length, int weight, bool exterior)
{
    std::vector<Word> out;
    const int g = ctx.gdim();
    Word cur;
    auto rec = [&](auto &&self, int start, int left_len, int left_w) -> void {
        if (left_len == 0) {
            if (left_w == 0) {
                out.push_back(cur);
            }
            return;
        }
        for (int a = start; a < g; ++a) {
            const int wa = exterior ? ctx.ghost_weight(a) : ctx.delta_weight(a);
            if (wa > left_w) {
                continue;
            }
            cur.push_back(a);
            const bool strict = exterior || ctx.n() % 2 == 1;
            self(self, strict ? a + 1 : a, left_len - 1, left_w - wa);
            cur.pop_back();
        }
    };
    rec(rec, 0, length, weight);
    return out;
}

// Basis of the weight-d piece with |w| = r and |mu| = s.
inline std::vector<BiKey> piece_basis(const ModelContext &ctx, int d, int r, int s)
{
    std::vector<BiKey> out;
    if (r < 0 || s < 0 || s > ctx.gdim()) {
        return out;
    }
    for (int wmu = 0; wmu <= d; ++wmu) {
        for (const auto &mu : generator_words(ctx, s, wmu, true)) {
            for (int ww = 0; ww + wmu <= d; ++ww) {
                for (const auto &w : generator_words(ctx, r, ww, false)) {
                    for (const auto &x : ctx.algebra().words_of_weight(d - wmu - ww)) {
                        out.push_back({x, w, mu});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Every observable word in the basis respects the word-length truncation.
inline bool within_length(const std::vector<BiKey> &basis, int lmax)
{
    return std::all_of(basis.begin(), basis.end(),
                       [lmax](const BiKey &k) { return static_cast<int>(k.x.size()) <= lmax; });
}

// Largest |w| that can appear in a weight-d piece.
inline int max_w_length(const ModelContext &ctx, int d)
{
    if (ctx.gdim() == 0) {
        return 0;
    }
    int wmin = ctx.delta_weight(0);
    for (int a = 1; a < ctx.gdim(); ++a) {
        wmin = std::min(wmin, ctx.delta_weight(a));
    }
    const int r = d / std::max(1, wmin);
    return ctx.n() % 2 == 1 ? std::min(r, ctx.gdim()) : r;
}

struct DimensionRow {
    int weight = 0;
    int degree = 0;        // Koszul word length, or ghost number
    std::size_t dim = 0;
    std::size_t rank_in = 0;  // rank of the differential into this space
    std::size_t rank_out = 0; // rank of the differential out of this space
    std::size_t homology = 0;
    bool interior = true;
    std::optional<std::size_t> oracle;
};

struct DimensionTable {
    std::string title;
    std::vector<DimensionRow> rows;

    const DimensionRow *find(int weight, int degree) const
    {
        for (const auto &r : rows) {
            if (r.weight == weight && r.degree == degree) {
                return &r;
            }
        }
        return nullptr;
    }
};

// Per weight d: the chain K_{d,R} -> ... -> K_{d,0} of the Koszul differential (no ghosts).
struct KoszulPiece {
    int weight = 0;
    std::vector<std::vector<BiKey>> bases; // index r
    std::vector<PieceMap> maps;            // maps[r] : K_{d,r} -> K_{d,r-1}, r >= 1 (maps[0] empty)
};

struct ComplexAssembly {
    std::vector<KoszulPiece> pieces;
};

inline ComplexAssembly assemble_koszul_complex(const ModelContext &ctx, int dmax)
{
    ComplexAssembly out;
    for (int d = 0; d <= dmax; ++d) {
        KoszulPiece p;
        p.weight = d;
        const int rmax = max_w_length(ctx, d);
        for (int r = 0; r <= rmax + 1; ++r) {
            p.bases.push_back(piece_basis(ctx, d, r, 0));
        }
        p.maps.emplace_back();
        for (int r = 1; r <= rmax + 1; ++r) {
            p.maps.push_back(assemble_map(p.bases[static_cast<std::size_t>(r)],
                                          p.bases[static_cast<std::size_t>(r - 1)],
                                          [&](const BicomplexElement &e) { return koszul_d(ctx, e); }));
        }
        out.pieces.push_back(std::move(p));
    }
    return out;
}

// Independent H^0 count: dim A_d - rank span{u * delta_a : u in A_{d - w(delta_a)}}.
inline std::size_t quotient_span_dimension(const ModelContext &ctx, int d)
{
    const auto &alg = ctx.algebra();
    const auto &basis = alg.words_of_weight(d);
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index.emplace(basis[i], i);
    }
    EchelonBasis span;
    for (int a = 0; a < ctx.gdim(); ++a) {
        const int rest = d - ctx.delta_weight(a);
        if (rest < 0) {
            continue;
        }
        for (const auto &u : alg.words_of_weight(rest)) {
            Observable uo;
            uo.add(u, Rat(1));
            const Observable prod = alg.multiply(uo, ctx.delta(a));
            SparseVec v;
            for (const auto &[w, c] : prod.terms) {
                v.emplace(index.at(w), c);
            }
            span.insert(v);
        }
    }
    return basis.size() - span.rank();
}

inline DimensionTable koszul_homology(const ModelContext &ctx, const ComplexAssembly &asmb, int lmax)
{
    DimensionTable t{"koszul_homology", {}};
    for (const auto &p : asmb.pieces) {
        std::vector<std::size_t> ranks(p.bases.size() + 1, 0); // ranks[r] = rank of K_r -> K_{r-1}
        for (std::size_t r = 1; r < p.maps.size(); ++r) {
            ranks[r] = rank(p.maps[r].matrix);
        }
        for (std::size_t r = 0; r + 1 < p.bases.size(); ++r) {
            DimensionRow row;
            row.weight = p.weight;
            row.degree = static_cast<int>(r);
            row.dim = p.bases[r].size();
            row.rank_out = ranks[r];
            row.rank_in = ranks[r + 1];
            row.homology = row.dim - row.rank_out - row.rank_in;
            row.interior = within_length(p.bases[r], lmax) && within_length(p.bases[r + 1], lmax)
                           && (r == 0 || within_length(p.bases[r - 1], lmax));
            if (r == 0) {
                row.oracle = quotient_span_dimension(ctx, p.weight);
            }
            t.rows.push_back(row);
        }
    }
    return t;
}

// Checks over an assembled Koszul complex: nilpotency on every basis element, rank-nullity,
// H^0 against the quotient-span oracle, vanishing of higher homology on interior pieces.
inline ValidationReport check_koszul(const ModelContext &ctx, const ComplexAssembly &asmb, const DimensionTable &t)
{
    ValidationReport rep;
    std::size_t checked = 0;
    std::string bad;
    for (const auto &p : asmb.pieces) {
        for (std::size_t r = 2; r < p.maps.size(); ++r) {
            if (!is_zero_matrix(multiply(p.maps[r - 1].matrix, p.maps[r].matrix))) {
                bad = "weight " + std::to_string(p.weight) + ", degree " + std::to_string(r);
            }
        }
        for (const auto &basis : p.bases) {
            for (const auto &k : basis) {
                if (!koszul_d(ctx, koszul_d(ctx, BicomplexElement::single(k))).is_zero() && bad.empty()) {
                    bad = "basis element " + ctx.algebra().render_word(k.x);
                }
                ++checked;
            }
        }
    }
    rep.add_check("koszul_nilpotent", bad.empty(), std::to_string(checked) + " basis elements", bad);
    std::string h0bad;
    std::string hpbad;
    bool degenerate = false;
    for (const auto &r : t.rows) {
        if (r.degree == 0 && r.oracle && *r.oracle != r.homology && h0bad.empty()) {
            h0bad = "weight " + std::to_string(r.weight) + ": " + std::to_string(r.homology) + " vs oracle "
                    + std::to_string(*r.oracle);
        }
        if (r.degree > 0 && r.interior && r.homology != 0 && hpbad.empty()) {
            hpbad = "weight " + std::to_string(r.weight) + ", degree " + std::to_string(r.degree) + ": "
                    + std::to_string(r.homology);
        }
    }
    for (int a = 0; a < ctx.gdim(); ++a) {
        degenerate = degenerate || ctx.delta(a).is_zero();
    }
    rep.add_check("koszul_h0_oracle", h0bad.empty(), "H^0 equals the quotient-span dimension per weight", h0bad);
    rep.add_check("koszul_higher_vanish", hpbad.empty(), "H^{p>0} = 0 on interior pieces",
                  hpbad + (degenerate ? " (a current is zero: the regularity hypothesis fails)" : ""));
    return rep;
}

} // namespace msbrst
