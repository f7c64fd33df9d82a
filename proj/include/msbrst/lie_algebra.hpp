#pragma once

#include <msbrst/rational.hpp>
#include <msbrst/report.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace msbrst
{

// Structure constants C^a_{bc}, stored sparsely exactly as given (no antisymmetric completion).
struct LieAlgebraSpec {
    std::vector<std::string> labels;
    std::map<std::array<int, 3>, Rat> constants;

    int dim() const
    {
        return static_cast<int>(labels.size());
    }

    Rat c(int a, int b, int cc) const
    {
        auto it = constants.find({a, b, cc});
        return it == constants.end() ? Rat(0) : it->second;
    }

    void set(int a, int b, int cc, const Rat &v)
    {
        if (is_zero(v)) {
            constants.erase({a, b, cc});
        } else {
            constants[{a, b, cc}] = v;
        }
    }

    bool is_abelian() const
    {
        return constants.empty();
    }

    static LieAlgebraSpec abelian(std::vector<std::string> labels)
    {
        return LieAlgebraSpec{std::move(labels), {}};
    }

    // C^c_{ab} = eps_{abc}
    static LieAlgebraSpec so3()
    {
        LieAlgebraSpec g{{"e1", "e2", "e3"}, {}};
        const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
        for (const auto &t : cyc) {
            g.set(t[2], t[0], t[1], Rat(1));
            g.set(t[2], t[1], t[0], Rat(-1));
        }
        return g;
    }
};

inline ValidationReport check_lie_algebra(const LieAlgebraSpec &g)
{
    ValidationReport rep;
    const int d = g.dim();
    std::string bad;
    for (int a = 0; a < d && bad.empty(); ++a) {
        for (int b = 0; b < d && bad.empty(); ++b) {
            for (int c = b; c < d && bad.empty(); ++c) {
                if (g.c(a, b, c) != -g.c(a, c, b)) {
                    bad = "C^" + std::to_string(a + 1) + "_{" + std::to_string(b + 1) + std::to_string(c + 1) + "}";
                }
            }
        }
    }
    rep.add_check("lie_antisymmetry", bad.empty(), "C^a_{bc} = -C^a_{cb}", bad);

    // sum_d C^d_{ab} C^e_{dc} + cyclic(a,b,c) = 0
    std::string jbad;
    for (int a = 0; a < d && jbad.empty(); ++a) {
        for (int b = 0; b < d && jbad.empty(); ++b) {
            for (int c = 0; c < d && jbad.empty(); ++c) {
                for (int e = 0; e < d && jbad.empty(); ++e) {
                    Rat s(0);
                    for (int m = 0; m < d; ++m) {
                        s += g.c(m, a, b) * g.c(e, m, c) + g.c(m, b, c) * g.c(e, m, a) + g.c(m, c, a) * g.c(e, m, b);
                    }
                    if (!is_zero(s)) {
                        jbad = "(a,b,c,e) = (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ","
                               + std::to_string(c + 1) + "," + std::to_string(e + 1) + ")";
                    }
                }
            }
        }
    }
    rep.add_check("lie_jacobi", jbad.empty(), "structure constants satisfy Jacobi", jbad);
    return rep;
}

} // namespace msbrst
