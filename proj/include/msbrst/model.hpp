#pragma once

#include <msbrst/calculus.hpp>
#include <msbrst/lie_algebra.hpp>
#include <msbrst/linalg.hpp>
#include <msbrst/multilinear.hpp>
#include <msbrst/report.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace msbrst
{

struct GeneratorSpec {
    std::string label;
    PolyForm form;
};

// Coordinate model (R^N, Omega) with a Lie algebra action and a Hamiltonian generator pool.
struct MultisymplecticModel {
    std::string name;
    std::vector<std::string> coords;
    int n = 1; // Omega has degree n+1
    PolyForm omega;
    std::optional<PolyForm> theta;
    LieAlgebraSpec algebra;
    std::vector<PolyMultivector> action; // xi_M per basis element
    std::vector<GeneratorSpec> generators;
    int dmax = 4;
    int lmax = 3;
    std::uint64_t seed = 1;

    std::size_t dim() const
    {
        return coords.size();
    }
};

// Fixed rational probe points for nondegeneracy of non-constant Omega (origin first).
inline std::vector<std::vector<Rat>> probe_points(std::size_t n)
{
    std::vector<std::vector<Rat>> pts(5, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const long k = static_cast<long>(i) + 1;
        pts[0][i] = 0;
        pts[1][i] = 1;
        pts[2][i] = k;
        pts[3][i] = (i % 2 == 0) ? -k : k;
        pts[4][i] = make_rat((i % 2 == 0) ? 1 : -1, k + 1);
    }
    return pts;
}

// Matrix of v -> i_v Omega at a point; columns indexed by coordinate vectors.
inline SparseMatrix contraction_matrix(const PolyForm &omega, const std::vector<Rat> &point)
{
    const std::size_t n = omega.dim();
    const auto rows = index_tuples(static_cast<int>(n), omega.degree() - 1);
    std::map<IndexTuple, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        row_of.emplace(rows[r], r);
    }
    SparseMatrix m;
    m.rows = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec col;
        for (const auto &[idx, v] : contract_coordinate(static_cast<int>(i), omega).eval(point)) {
            col.emplace(row_of.at(idx), v);
        }
        m.cols.push_back(std::move(col));
    }
    return m;
}

inline ValidationReport check_multisymplectic(const MultisymplecticModel &m)
{
    ValidationReport rep;
    const std::size_t n = m.dim();
    rep.add_check("omega_degree", m.omega.degree() == m.n + 1 && m.omega.dim() == n,
                  "Omega has degree n+1 = " + std::to_string(m.n + 1));
    const PolyForm dO = ext_d(m.omega);
    rep.add_check("closedness", dO.is_zero(), "d Omega = 0", dO.is_zero() ? "" : "d Omega = " + render(dO, m.coords));

    const bool constant = m.omega.is_constant();
    const auto pts = probe_points(n);
    std::string witness;
    for (std::size_t k = 0; k < (constant ? 1 : pts.size()) && witness.empty(); ++k) {
        if (m.omega.degree() < 1) {
            witness = "Omega has degree 0";
            break;
        }
        const SparseMatrix cm = contraction_matrix(m.omega, pts[k]);
        if (rank(cm) < n) {
            const auto ker = kernel_basis(cm);
            PolyMultivector v(n, 1);
            for (const auto &[i, c] : ker.front()) {
                v.add({static_cast<int>(i)}, Poly::constant(n, c));
            }
            witness = "kernel vector " + render(v, m.coords) + " at probe " + std::to_string(k);
        }
    }
    if (!witness.empty()) {
        rep.add("nondegeneracy", status::fail, "v -> i_v Omega has a kernel", witness);
    } else if (constant) {
        rep.add("nondegeneracy", status::pass, "constant Omega: injective contraction, exact certificate");
    } else {
        rep.add("nondegeneracy", status::warn, "non-constant Omega: injective at origin and probe points only");
    }
    if (m.theta) {
        const bool ok = (-ext_d(*m.theta)) == m.omega;
        rep.add_check("potential", ok, "Omega = -d Theta");
    }
    return rep;
}

} // namespace msbrst
