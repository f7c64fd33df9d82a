#pragma once

#include <msbrst/calculus.hpp>
#include <msbrst/hamiltonian.hpp>
#include <msbrst/lie_algebra.hpp>
#include <msbrst/model.hpp>
#include <msbrst/report.hpp>

#include <string>
#include <vector>

namespace msbrst
{

// delta(xi_a) = radial primitive of i_{xi_M} Omega, paired with xi_M.
inline HamiltonianPair noether_current(const MultisymplecticModel &m, int a)
{
    const PolyMultivector &xi = m.action.at(static_cast<std::size_t>(a));
    return hamiltonian_form_from_multivector(m, xi);
}

inline std::vector<HamiltonianPair> noether_currents(const MultisymplecticModel &m)
{
    std::vector<HamiltonianPair> out;
    for (int a = 0; a < m.algebra.dim(); ++a) {
        out.push_back(noether_current(m, a));
    }
    return out;
}

enum class cocycle_class { zero, exact, closed_non_exact, not_closed };

inline const char *to_string(cocycle_class c)
{
    switch (c) {
        case cocycle_class::zero:
            return "zero";
        case cocycle_class::exact:
            return "exact";
        case cocycle_class::closed_non_exact:
            return "closed_non_exact";
        case cocycle_class::not_closed:
            return "not_closed";
    }
    return "?";
}

struct CocycleResult {
    PolyForm value;
    cocycle_class kind = cocycle_class::zero;
    std::optional<PolyForm> primitive; // set iff kind == exact
};

// c(a,b) = {delta_a, delta_b} - sum_d C^d_{ab} delta_d.
inline CocycleResult cocycle(const MultisymplecticModel &m, const std::vector<HamiltonianPair> &currents, int a, int b)
{
    PolyForm c = bracket(m, currents.at(static_cast<std::size_t>(a)), currents.at(static_cast<std::size_t>(b)));
    for (int d = 0; d < m.algebra.dim(); ++d) {
        c -= m.algebra.c(d, a, b) * currents[static_cast<std::size_t>(d)].F;
    }
    CocycleResult r{c, cocycle_class::zero, std::nullopt};
    if (c.is_zero()) {
        return r;
    }
    if (c.degree() < static_cast<int>(m.dim()) && !ext_d(c).is_zero()) {
        r.kind = cocycle_class::not_closed;
    } else if (c.degree() == 0) {
        // Nonzero constants are closed but not exact.
        r.kind = cocycle_class::closed_non_exact;
    } else {
        r.kind = cocycle_class::exact;
        r.primitive = radial_homotopy(c);
    }
    return r;
}

inline ValidationReport check_action(const MultisymplecticModel &m)
{
    ValidationReport rep = check_lie_algebra(m.algebra);
    const int g = m.algebra.dim();
    rep.add_check("action_arity", static_cast<int>(m.action.size()) == g, "one vector field per basis element");
    if (static_cast<int>(m.action.size()) != g) {
        return rep;
    }
    bool invariant = true;
    for (int a = 0; a < g; ++a) {
        const PolyForm l = lie_derivative(m.action[static_cast<std::size_t>(a)], m.omega);
        const std::string label = m.algebra.labels[static_cast<std::size_t>(a)];
        rep.add_check("action_invariance[" + label + "]", l.is_zero(), "L_xi Omega = 0",
                      l.is_zero() ? "" : "L_xi Omega = " + render(l, m.coords));
        invariant = invariant && l.is_zero();
    }
    // Vector-field bracket convention: -[X,Y] with [X,Y] = XY - YX (see README).
    std::string hom_bad;
    for (int a = 0; a < g && hom_bad.empty(); ++a) {
        for (int b = a + 1; b < g && hom_bad.empty(); ++b) {
            PolyMultivector lhs = -lie_bracket(m.action[static_cast<std::size_t>(a)], m.action[static_cast<std::size_t>(b)]);
            for (int d = 0; d < g; ++d) {
                lhs -= m.algebra.c(d, a, b) * m.action[static_cast<std::size_t>(d)];
            }
            if (!lhs.is_zero()) {
                hom_bad = "(" + m.algebra.labels[static_cast<std::size_t>(a)] + ","
                          + m.algebra.labels[static_cast<std::size_t>(b)] + "): defect " + render(lhs, m.coords);
            }
        }
    }
    rep.add_check("action_homomorphism", hom_bad.empty(), "-[xi_aM, xi_bM] = C^d_{ab} xi_dM", hom_bad);
    if (!invariant) {
        return rep;
    }
    std::vector<HamiltonianPair> cur;
    try {
        cur = noether_currents(m);
    } catch (const error &e) {
        rep.add("noether_currents", status::fail, "currents exist", e.what());
        return rep;
    }
    bool ok = true;
    for (const auto &h : cur) {
        ok = ok && is_valid_pair(m, h);
    }
    rep.add_check("noether_currents", ok, "i_xi Omega = d delta(xi) for every generator");
    std::string cbad;
    for (int a = 0; a < g && cbad.empty(); ++a) {
        for (int b = a + 1; b < g && cbad.empty(); ++b) {
            const auto c = cocycle(m, cur, a, b);
            if (c.kind == cocycle_class::closed_non_exact || c.kind == cocycle_class::not_closed) {
                cbad = "c(" + m.algebra.labels[static_cast<std::size_t>(a)] + ","
                       + m.algebra.labels[static_cast<std::size_t>(b)] + ") = " + render(c.value, m.coords) + " ("
                       + to_string(c.kind) + "; central extension out of scope)";
            }
        }
    }
    rep.add_check("current_homomorphism", cbad.empty(), "delta([xi,zeta]) = {delta xi, delta zeta} modulo exact forms",
                  cbad);
    return rep;
}

} // namespace msbrst
