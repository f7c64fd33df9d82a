#pragma once

#include <msbrst/rational.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace msbrst
{

// Sparse vector over Q: index -> nonzero coefficient.
using SparseVec = std::map<std::size_t, Rat>;

inline void axpy(SparseVec &y, const Rat &a, const SparseVec &x)
{
    if (is_zero(a)) {
        return;
    }
    for (const auto &[i, c] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            y.emplace(i, a * c);
        } else {
            it->second += a * c;
            if (is_zero(it->second)) {
                y.erase(it);
            }
        }
    }
}

inline void prune(SparseVec &v)
{
    std::erase_if(v, [](const auto &kv) { return is_zero(kv.second); });
}

// Column-major sparse matrix.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<SparseVec> cols;

    std::size_t ncols() const
    {
        return cols.size();
    }
};

// Set of row vectors kept in reduced row echelon form, keyed by pivot (leftmost nonzero index).
// Every stored row has 1 at its pivot and 0 at every other pivot.
class EchelonBasis
{
public:
    // Canonical remainder of v modulo the span.
    SparseVec reduce(SparseVec v) const
    {
        prune(v);
        std::vector<std::pair<const SparseVec *, Rat>> hits;
        for (const auto &[i, c] : v) {
            auto it = m_rows.find(i);
            if (it != m_rows.end()) {
                hits.emplace_back(&it->second, c);
            }
        }
        for (const auto &[row, c] : hits) {
            axpy(v, -c, *row);
        }
        return v;
    }

    // Returns true iff v was independent of the current span.
    bool insert(const SparseVec &v)
    {
        SparseVec r = reduce(v);
        if (r.empty()) {
            return false;
        }
        const std::size_t p = r.begin()->first;
        const Rat inv = 1 / r.begin()->second;
        for (auto &[i, c] : r) {
            c *= inv;
        }
        for (auto &[q, row] : m_rows) {
            auto it = row.find(p);
            if (it != row.end()) {
                const Rat c = it->second;
                axpy(row, -c, r);
            }
        }
        m_rows.emplace(p, std::move(r));
        return true;
    }

    bool contains(const SparseVec &v) const
    {
        return reduce(v).empty();
    }

    std::size_t rank() const
    {
        return m_rows.size();
    }

    const std::map<std::size_t, SparseVec> &rows() const
    {
        return m_rows;
    }

private:
    std::map<std::size_t, SparseVec> m_rows;
};

inline std::size_t rank(const SparseMatrix &m)
{
    EchelonBasis e;
    for (const auto &c : m.cols) {
        e.insert(c);
    }
    return e.rank();
}

// Rows of m as sparse vectors over column indices.
inline std::vector<SparseVec> transpose_rows(const SparseMatrix &m)
{
    std::vector<SparseVec> rows(m.rows);
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
        for (const auto &[i, c] : m.cols[j]) {
            rows[i].emplace(j, c);
        }
    }
    return rows;
}

// Canonical solution of m x = b: reduced row echelon form with leftmost pivots, free variables zero.
// Empty optional when the system is inconsistent.
inline std::optional<SparseVec> solve_canonical(const SparseMatrix &m, const SparseVec &b)
{
    const std::size_t nc = m.ncols();
    auto rows = transpose_rows(m);
    for (const auto &[i, c] : b) {
        if (i >= rows.size()) {
            return std::nullopt;
        }
        rows[i].emplace(nc, c);
    }
    EchelonBasis e;
    for (const auto &r : rows) {
        e.insert(r);
    }
    SparseVec x;
    for (const auto &[p, row] : e.rows()) {
        if (p == nc) {
            return std::nullopt;
        }
        auto it = row.find(nc);
        if (it != row.end()) {
            x.emplace(p, it->second);
        }
    }
    return x;
}

// Basis of the null space, one vector per free column in increasing order.
inline std::vector<SparseVec> kernel_basis(const SparseMatrix &m)
{
    const std::size_t nc = m.ncols();
    EchelonBasis e;
    for (const auto &r : transpose_rows(m)) {
        e.insert(r);
    }
    std::vector<char> pivot(nc, 0);
    for (const auto &[p, row] : e.rows()) {
        pivot[p] = 1;
    }
    std::vector<SparseVec> out;
    for (std::size_t f = 0; f < nc; ++f) {
        if (pivot[f]) {
            continue;
        }
        SparseVec v;
        v.emplace(f, Rat(1));
        for (const auto &[p, row] : e.rows()) {
            auto it = row.find(f);
            if (it != row.end()) {
                v.emplace(p, -it->second);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline SparseVec mat_vec(const SparseMatrix &m, const SparseVec &x)
{
    SparseVec y;
    for (const auto &[j, c] : x) {
        axpy(y, c, m.cols.at(j));
    }
    return y;
}

// Product a*b as column-major (a: k x m, b: m x n).
inline SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b)
{
    SparseMatrix out;
    out.rows = a.rows;
    out.cols.reserve(b.cols.size());
    for (const auto &c : b.cols) {
        out.cols.push_back(mat_vec(a, c));
    }
    return out;
}

inline bool is_zero_matrix(const SparseMatrix &m)
{
    for (const auto &c : m.cols) {
        if (!c.empty()) {
            return false;
        }
    }
    return true;
}

} // namespace msbrst
