// Acceptance run over the bundled models: one pass/fail line per criterion, exit 0 iff all pass.

#include <msbrst/run.hpp>

#include <cstdio>
#include <iostream>
#include <random>

using namespace msbrst;

namespace
{

const std::vector<std::string> bundled{"symplectic_r2", "symplectic_r4", "affine_r4", "volume_r3",
                                       "volume_r3_t1",  "volume_r3_t3",  "dw2"};

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string &why)
    {
        if (!cond && ok) {
            ok = false;
            note = why;
        }
    }
};

bool passes(const ValidationReport &rep, const std::string &name)
{
    const auto *r = rep.find(name);
    return r && r->result == status::pass;
}

std::string first_failure(const ValidationReport &rep)
{
    for (const auto &r : rep.records) {
        if (r.result == status::fail) {
            return r.name + (r.witness.empty() ? "" : ": " + r.witness);
        }
    }
    return "missing record";
}

Outcome bracket_algebra()
{
    Outcome o;
    std::size_t checks = 0;
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const auto letters = build_letters(m);
        for (const auto &[kind, kname] : identity_kinds()) {
            const auto rep = check_algebra_identities(m, letters, kind, 100, m.seed);
            o.require(rep.ok(), name + " " + first_failure(rep));
            ++checks;
        }
    }
    o.note = o.ok ? std::to_string(checks) + " identity suites x 100 samples on " + std::to_string(bundled.size())
                        + " models"
                  : o.note;
    return o;
}

// Derivation sign rule d(v o u) = d(v) o u + (-1)^{|w(v)| n} v o d(u), u a generator word.
bool sign_rule_holds(const ModelContext &ctx, int samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const int d = static_cast<int>(rng() % 4);
        const auto b = piece_basis(ctx, d, static_cast<int>(rng() % 3), 0);
        if (b.empty()) {
            continue;
        }
        const BiKey kv = b[rng() % b.size()];
        Word uw;
        for (int j = 0, len = 1 + static_cast<int>(rng() % 2); j < len; ++j) {
            uw.push_back(static_cast<int>(rng() % static_cast<unsigned>(ctx.gdim())));
        }
        if (normalize_w(uw, ctx.n()) == 0) {
            continue;
        }
        const auto v = BicomplexElement::single(kv);
        const auto u = BicomplexElement::single({{}, uw, {}});
        const Rat s(parity_sign(static_cast<long>(kv.w.size()) * ctx.n()));
        if (koszul_d(ctx, circ_product(ctx, v, u))
            != circ_product(ctx, koszul_d(ctx, v), u) + s * circ_product(ctx, v, koszul_d(ctx, u))) {
            return false;
        }
    }
    return true;
}

Outcome koszul_suite()
{
    Outcome o;
    std::size_t elements = 0;
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const ModelContext ctx(m);
        const auto asmb = assemble_koszul_complex(ctx, m.dmax);
        const auto rep = check_koszul(ctx, asmb, koszul_homology(ctx, asmb, m.lmax));
        o.require(passes(rep, "koszul_nilpotent"), name + " " + first_failure(rep));
        o.require(sign_rule_holds(ctx, 200, m.seed), name + " derivation sign rule");
        for (const auto &p : asmb.pieces) {
            for (const auto &b : p.bases) {
                elements += b.size();
            }
        }
    }
    for (long n = 1; n <= 16; ++n) {
        o.require(koszul_parity_fact(n), "parity fact at n=" + std::to_string(n));
    }
    if (o.ok) {
        o.note = "nilpotent on " + std::to_string(elements) + " basis elements, sign rule sampled, parity n=1..16";
    }
    return o;
}

Outcome koszul_homology_dimensions()
{
    Outcome o;
    {
        const auto m = load_model("symplectic_r4");
        const ModelContext ctx(m);
        const auto asmb = assemble_koszul_complex(ctx, m.dmax);
        const auto t = koszul_homology(ctx, asmb, m.lmax);
        for (int d = 0; d <= 3; ++d) {
            const auto want = static_cast<std::size_t>((d + 2) * (d + 1) / 2);
            const auto *r = t.find(d, 0);
            o.require(r && r->homology == want, "symplectic_r4 H^0 at weight " + std::to_string(d));
        }
        o.require(passes(check_koszul(ctx, asmb, t), "koszul_higher_vanish"), "symplectic_r4 higher homology");
    }
    for (const auto *name : {"volume_r3", "dw2"}) {
        const auto m = load_model(name);
        const ModelContext ctx(m);
        const auto asmb = assemble_koszul_complex(ctx, m.dmax);
        const auto rep = check_koszul(ctx, asmb, koszul_homology(ctx, asmb, m.lmax));
        o.require(passes(rep, "koszul_higher_vanish"), std::string(name) + " higher homology");
        o.require(passes(rep, "koszul_h0_oracle"), std::string(name) + " " + first_failure(rep));
    }
    if (o.ok) {
        o.note = "symplectic_r4 H^0 = 1,3,6,10; higher homology vanishes on interior pieces; quotient oracle matches";
    }
    return o;
}

Outcome module_structure()
{
    Outcome o;
    std::string broken_on;
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const ModelContext ctx(m);
        const auto rep = check_rho_homomorphism(ctx, m.dmax);
        o.require(passes(rep, "rho_homomorphism"), name + " " + first_failure(rep));
        const auto adj = check_adjoint_bracket_identity(m, build_letters(m), 50, m.seed);
        o.require(adj.ok(), name + " " + first_failure(adj));
        const auto *ctl = rep.find("rho_left_order_control");
        if (ctl && ctl->detail == "left order breaks" && broken_on.empty()) {
            broken_on = name + " (" + ctl->witness + ")";
        }
    }
    o.require(!broken_on.empty(), "left-order control never breaks");
    if (o.ok) {
        o.note = "homomorphism exact on every piece, adjoint identity on 50 samples, left order breaks on " + broken_on;
    }
    return o;
}

Outcome brst_suite()
{
    Outcome o;
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const ModelContext ctx(m);
        const auto rep = check_brst_differentials(ctx, m.dmax);
        for (const auto *c : {"ce_nilpotent", "ce_koszul_commute", "total_nilpotent"}) {
            o.require(passes(rep, c), name + " " + first_failure(rep));
        }
    }
    if (o.ok) {
        o.note = "d^2 = 0, [d, koszul_d] = 0, D^2 = 0 on every truncation basis element";
    }
    return o;
}

Outcome brst_cohomology_dimensions()
{
    Outcome o;
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const ModelContext ctx(m);
        const auto h = brst_h0(ctx, m.dmax, m.lmax);
        o.require(check_brst_h0(h).ok(), name + " " + first_failure(check_brst_h0(h)));
        if (name == "symplectic_r4") {
            for (int d = 0; d <= 3; ++d) {
                o.require(h.table.find(d, 0)->homology == static_cast<std::size_t>(d + 1),
                          "symplectic_r4 H^0 at weight " + std::to_string(d));
            }
        }
    }
    if (o.ok) {
        o.note = "H^0 equals the invariants oracle on interior pieces; symplectic_r4 gives 1,2,3,4";
    }
    return o;
}

Outcome cocycle_check()
{
    Outcome o;
    {
        const auto m = load_model("volume_r3");
        const auto c = cocycle(m, noether_currents(m), 0, 1);
        o.require(c.value == parse_form("dz", m.coords), "c(tx,ty) = " + render(c.value, m.coords));
        o.require(c.kind == cocycle_class::exact && c.primitive && *c.primitive == parse_form("z", m.coords),
                  "c(tx,ty) not exact with primitive z");
    }
    for (const auto &name : bundled) {
        const auto m = load_model(name);
        const auto cur = noether_currents(m);
        for (int a = 0; a < m.algebra.dim(); ++a) {
            for (int b = 0; b < m.algebra.dim(); ++b) {
                const auto c = cocycle(m, cur, a, b).value;
                o.require(c.degree() >= static_cast<int>(m.dim()) || ext_d(c).is_zero(), name + " cocycle not closed");
            }
        }
    }
    if (o.ok) {
        o.note = "volume_r3 c(tx,ty) = dz, exact with primitive z; closed in every model";
    }
    return o;
}

#ifdef MSBRST_CLI_PATH
std::string capture(const std::string &cmd)
{
    std::string out;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return out;
    }
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) {
        out.append(buf, k);
    }
    pclose(p);
    return out;
}
#endif

Outcome determinism()
{
    Outcome o;
    for (const auto &name : bundled) {
#ifdef MSBRST_CLI_PATH
        for (const auto *fmt : {"table", "records"}) {
            const std::string cmd = std::string("'") + MSBRST_CLI_PATH + "' full-report --model " + name + " --format " + fmt;
            const auto a = capture(cmd);
            o.require(!a.empty() && a == capture(cmd), name + " " + fmt + " output differs");
        }
#else
        const auto m = load_model(name);
        o.require(render_records(run("full-report", m)) == render_records(run("full-report", m)), name);
#endif
    }
    if (o.ok) {
        o.note = "two full-report runs byte-identical on every bundled model";
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"bracket algebra suite", bracket_algebra},
        {"koszul suite", koszul_suite},
        {"koszul homology check", koszul_homology_dimensions},
        {"module structure suite", module_structure},
        {"brst suite", brst_suite},
        {"brst cohomology check", brst_cohomology_dimensions},
        {"cocycle check", cocycle_check},
        {"determinism", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.ok;
        std::cout << "criterion " << i + 1 << " " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.note << "\n";
    }
    return all ? 0 : 1;
}
