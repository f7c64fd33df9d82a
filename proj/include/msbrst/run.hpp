#pragma once

#include <msbrst/brst.hpp>
#include <msbrst/identities.hpp>
#include <msbrst/koszul.hpp>
#include <msbrst/model_file.hpp>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace msbrst
{

struct RunOptions {
    int samples = 100;
    std::optional<int> dmax;
    std::optional<int> lmax;
    std::optional<std::uint64_t> seed;
};

// One command's output: named checks plus dimension tables. No timings, so the stream is reproducible.
struct RunSection {
    std::string command;
    ValidationReport checks;
    std::vector<DimensionTable> tables;
};

struct RunReport {
    std::string model;
    std::string command;
    int samples = 0;
    int dmax = 0;
    int lmax = 0;
    std::uint64_t seed = 0;
    std::vector<RunSection> sections;

    bool ok() const
    {
        for (const auto &s : sections) {
            if (!s.checks.ok()) {
                return false;
            }
        }
        return true;
    }
    std::size_t count(status st) const
    {
        std::size_t k = 0;
        for (const auto &s : sections) {
            for (const auto &r : s.checks.records) {
                k += r.result == st ? 1 : 0;
            }
        }
        return k;
    }
    const check_record *find(const std::string &name) const
    {
        for (const auto &s : sections) {
            if (const auto *r = s.checks.find(name)) {
                return r;
            }
        }
        return nullptr;
    }
};

inline const std::vector<std::string> &run_commands()
{
    static const std::vector<std::string> c{"check-model", "verify-identities", "koszul-homology", "brst-cohomology",
                                            "full-report"};
    return c;
}

namespace detail
{

inline std::string join(const std::vector<std::string> &v, const std::string &sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? sep : "") + v[i];
    }
    return out;
}

inline RunSection run_check_model(const MultisymplecticModel &m)
{
    RunSection s{"check-model", {}, {}};
    s.checks.add("model", status::info,
                 "n=" + std::to_string(m.n) + " dim=" + std::to_string(m.dim())
                     + " g=" + std::to_string(m.algebra.dim()) + " generators=" + std::to_string(m.generators.size()),
                 join(m.coords, " "));
    s.checks.merge(check_multisymplectic(m));
    if (!s.checks.ok()) {
        return s; // currents need a valid form
    }
    s.checks.merge(check_action(m));
    if (!s.checks.ok()) {
        return s;
    }
    const auto cur = noether_currents(m);
    for (int a = 0; a < m.algebra.dim(); ++a) {
        s.checks.add("current[" + m.algebra.labels[static_cast<std::size_t>(a)] + "]", status::info,
                     render(cur[static_cast<std::size_t>(a)].F, m.coords));
    }
    for (int a = 0; a < m.algebra.dim(); ++a) {
        for (int b = a + 1; b < m.algebra.dim(); ++b) {
            const auto c = cocycle(m, cur, a, b);
            std::string detail = std::string(to_string(c.kind));
            if (!c.value.is_zero()) {
                detail += " c=" + render(c.value, m.coords);
            }
            if (c.primitive) {
                detail += " primitive=" + render(*c.primitive, m.coords);
            }
            const bool ok = c.kind == cocycle_class::zero || c.kind == cocycle_class::exact;
            s.checks.add_check("cocycle[" + m.algebra.labels[static_cast<std::size_t>(a)] + ","
                                   + m.algebra.labels[static_cast<std::size_t>(b)] + "]",
                               ok, detail);
        }
    }
    try {
        const ModelContext ctx(m);
        s.checks.add_check("currents_in_pool", true, "every current is a polynomial in the generators");
        s.checks.add_check("pool_closure", true, "{generator, current} stays in the pool modulo closed forms");
        build_w_basis(ctx);
        s.checks.add_check("w_representation", true, "structure constants act on the current span");
    } catch (const validation_error &e) {
        s.checks.add_check(e.check, false, "context construction failed", e.what());
    }
    return s;
}

inline RunSection run_identities(const MultisymplecticModel &m, int samples, std::uint64_t seed)
{
    RunSection s{"verify-identities", {}, {}};
    const auto letters = build_letters(m);
    for (const auto &[kind, name] : identity_kinds()) {
        s.checks.merge(check_algebra_identities(m, letters, kind, samples, seed));
    }
    s.checks.merge(check_adjoint_bracket_identity(m, letters, samples, seed));
    s.checks.merge(probe_loday_word_first(m, letters, samples, seed));
    return s;
}

inline RunSection run_koszul(const ModelContext &ctx, int dmax, int lmax)
{
    RunSection s{"koszul-homology", {}, {}};
    const auto asmb = assemble_koszul_complex(ctx, dmax);
    auto t = koszul_homology(ctx, asmb, lmax);
    s.checks.merge(check_koszul(ctx, asmb, t));
    bool parity = true;
    for (long n = 1; n <= 16; ++n) {
        parity = parity && koszul_parity_fact(n);
    }
    s.checks.add_check("koszul_parity_fact", parity, "(n-1)(n-2)-1 odd for n=1..16");
    s.tables.push_back(std::move(t));
    return s;
}

inline RunSection run_brst(const ModelContext &ctx, int dmax, int lmax)
{
    RunSection s{"brst-cohomology", {}, {}};
    s.checks.merge(check_rho_homomorphism(ctx, dmax));
    s.checks.merge(check_brst_differentials(ctx, dmax));
    auto h = brst_h0(ctx, dmax, lmax);
    s.checks.merge(check_brst_h0(h));
    for (const auto &[d, reps] : h.basis) {
        std::vector<std::string> r;
        for (const auto &e : reps) {
            r.push_back(render_element(ctx, e));
        }
        s.checks.add("brst_h0_basis[" + std::to_string(d) + "]", status::info, std::to_string(reps.size()) + " classes",
                     join(r, "; "));
    }
    s.tables.push_back(std::move(h.table));
    return s;
}

} // namespace detail

// Runs a command. Only check-model accepts an unvalidated model. Throws error on unknown command or bad truncation.
inline RunReport run(const std::string &command, const MultisymplecticModel &m, const RunOptions &opt = {})
{
    bool known = false;
    for (const auto &c : run_commands()) {
        known = known || c == command;
    }
    if (!known) {
        throw error("unknown command '" + command + "'");
    }
    RunReport rep;
    rep.model = m.name;
    rep.command = command;
    rep.samples = opt.samples;
    rep.dmax = opt.dmax.value_or(m.dmax);
    rep.lmax = opt.lmax.value_or(m.lmax);
    rep.seed = opt.seed.value_or(m.seed);
    if (rep.dmax < 0) {
        throw error("truncation too small: dmax must be >= 0");
    }
    if (rep.lmax < 1) {
        throw error("truncation too small: lmax must be >= 1");
    }
    if (rep.samples < 1) {
        throw error("samples must be >= 1");
    }
    const bool all = command == "full-report";
    if (all || command == "check-model") {
        rep.sections.push_back(detail::run_check_model(m));
        if (!rep.ok()) {
            return rep; // later sections assume a valid model
        }
    } else {
        validate_model(m);
    }
    if (all || command == "verify-identities") {
        rep.sections.push_back(detail::run_identities(m, rep.samples, rep.seed));
    }
    if (all || command == "koszul-homology" || command == "brst-cohomology") {
        std::optional<ModelContext> ctx;
        try {
            ctx.emplace(m);
        } catch (const validation_error &e) {
            RunSection s{command, {}, {}};
            s.checks.add_check(e.check, false, "context construction failed", e.what());
            rep.sections.push_back(std::move(s));
            return rep;
        }
        if (all || command == "koszul-homology") {
            rep.sections.push_back(detail::run_koszul(*ctx, rep.dmax, rep.lmax));
        }
        if (all || command == "brst-cohomology") {
            rep.sections.push_back(detail::run_brst(*ctx, rep.dmax, rep.lmax));
        }
    }
    return rep;
}

// Records grammar, one record per line:
//   record=<run|check|piece|summary> key=value ...
// Values are bare tokens ([A-Za-z0-9_.+-]) or double-quoted with \" \\ \n escapes.
inline std::string render_records(const RunReport &r)
{
    std::ostringstream o;
    o << "record=run model=" << quote_value(r.model) << " command=" << r.command << " samples=" << r.samples
      << " dmax=" << r.dmax << " lmax=" << r.lmax << " seed=" << r.seed << "\n";
    for (const auto &s : r.sections) {
        for (const auto &c : s.checks.records) {
            o << "record=check section=" << s.command << " name=" << quote_value(c.name)
              << " status=" << to_string(c.result) << " detail=" << quote_value(c.detail)
              << " witness=" << quote_value(c.witness) << "\n";
        }
        for (const auto &t : s.tables) {
            for (const auto &row : t.rows) {
                o << "record=piece section=" << s.command << " table=" << t.title << " weight=" << row.weight
                  << " degree=" << row.degree << " dim=" << row.dim << " rank_in=" << row.rank_in
                  << " rank_out=" << row.rank_out << " homology=" << row.homology
                  << " interior=" << (row.interior ? "true" : "false")
                  << " oracle=" << (row.oracle ? std::to_string(*row.oracle) : std::string("none")) << "\n";
            }
        }
    }
    o << "record=summary pass=" << r.count(status::pass) << " fail=" << r.count(status::fail)
      << " warn=" << r.count(status::warn) << " info=" << r.count(status::info) << "\n";
    return o.str();
}

inline std::string render_table(const RunReport &r)
{
    std::ostringstream o;
    o << "model " << r.model << "  command " << r.command << "  samples " << r.samples << "  dmax " << r.dmax
      << "  lmax " << r.lmax << "  seed " << r.seed << "\n";
    for (const auto &s : r.sections) {
        o << "\n[" << s.command << "]\n";
        std::size_t w = 0;
        for (const auto &c : s.checks.records) {
            w = std::max(w, c.name.size());
        }
        for (const auto &c : s.checks.records) {
            o << "  " << std::left << std::setw(5) << to_string(c.result) << " " << std::setw(static_cast<int>(w))
              << c.name << "  " << c.detail;
            if (!c.witness.empty()) {
                o << "  | " << c.witness;
            }
            o << "\n";
        }
        for (const auto &t : s.tables) {
            o << "\n  " << t.title << "\n";
            o << "  " << std::right << std::setw(6) << "weight" << std::setw(7) << "degree" << std::setw(7) << "dim"
              << std::setw(8) << "rank_in" << std::setw(9) << "rank_out" << std::setw(9) << "homology"
              << std::setw(9) << "interior" << std::setw(7) << "oracle" << "\n";
            for (const auto &row : t.rows) {
                o << "  " << std::setw(6) << row.weight << std::setw(7) << row.degree << std::setw(7) << row.dim
                  << std::setw(8) << row.rank_in << std::setw(9) << row.rank_out << std::setw(9) << row.homology
                  << std::setw(9) << (row.interior ? "yes" : "no") << std::setw(7)
                  << (row.oracle ? std::to_string(*row.oracle) : std::string("-")) << "\n";
            }
            o << std::left;
        }
    }
    o << "\nsummary: " << r.count(status::pass) << " pass, " << r.count(status::fail) << " fail, "
      << r.count(status::warn) << " warn, " << r.count(status::info) << " info\n";
    return o.str();
}

} // namespace msbrst
