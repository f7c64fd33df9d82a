#include <msbrst/run.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace msbrst;

namespace
{

std::vector<std::size_t> h0(const RunReport &r, const std::string &title, int upto)
{
    std::vector<std::size_t> out;
    for (const auto &s : r.sections) {
        for (const auto &t : s.tables) {
            if (t.title != title) {
                continue;
            }
            for (int d = 0; d <= upto; ++d) {
                out.push_back(t.find(d, 0)->homology);
            }
        }
    }
    return out;
}

} // namespace

TEST(Cli, BundledModelsLoad)
{
    const auto s4 = load_model("symplectic_r4");
    EXPECT_EQ(s4.n, 1);
    EXPECT_EQ(s4.algebra.dim(), 1);
    for (const auto *name : {"volume_r3_t1", "volume_r3", "volume_r3_t3"}) {
        const auto v = load_model(name);
        EXPECT_EQ(v.n, 2);
        EXPECT_GE(v.algebra.dim(), 1);
        EXPECT_LE(v.algebra.dim(), 3);
    }
}

TEST(Cli, VerifyIdentitiesOnSymplecticR4Passes)
{
    const auto r = run("verify-identities", load_model("symplectic_r4"));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.find("graded_jacobi")->detail, "100/100 samples");
}

TEST(Cli, KoszulHomologyOnSymplecticR4)
{
    RunOptions o;
    o.dmax = 4;
    const auto r = run("koszul-homology", load_model("symplectic_r4"), o);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(h0(r, "koszul_homology", 3), (std::vector<std::size_t>{1, 3, 6, 10}));
}

TEST(Cli, BrstCohomologyOnSymplecticR4)
{
    RunOptions o;
    o.dmax = 4;
    const auto r = run("brst-cohomology", load_model("symplectic_r4"), o);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(h0(r, "brst_h0", 3), (std::vector<std::size_t>{1, 2, 3, 4}));
}

TEST(Cli, CheckModelReportsCocycle)
{
    const auto r = run("check-model", load_model("volume_r3"));
    const auto *c = r.find("cocycle[tx,ty]");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->result, status::pass);
    EXPECT_EQ(c->detail, "exact c=dz primitive=z");
}

TEST(Cli, UnknownCommandAndSmallTruncationAreErrors)
{
    const auto m = load_model("symplectic_r2");
    EXPECT_THROW(run("reduce", m), error);
    RunOptions o;
    o.lmax = 0;
    EXPECT_THROW(run("koszul-homology", m, o), error);
    o.lmax.reset();
    o.dmax = -1;
    EXPECT_THROW(run("brst-cohomology", m, o), error);
}

TEST(Cli, InvalidModelFailsCheckModelAndAbortsOtherCommands)
{
    std::istringstream in("[space]\ncoords = x y z\nn = 1\n[omega]\nz dx^dy\n");
    const auto m = parse_model(in, "bad");
    const auto r = run("check-model", m);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.find("closedness")->result, status::fail);
    const auto full = run("full-report", m);
    EXPECT_EQ(full.sections.size(), 1u);
    try {
        run("verify-identities", m);
        FAIL();
    } catch (const validation_error &e) {
        EXPECT_EQ(e.check, "closedness");
    }
}

TEST(Cli, WrongOmegaDegreeIsLocated)
{
    std::istringstream in("[space]\ncoords = x y z\nn = 2\n[omega]\ndx^dy\n");
    try {
        parse_model(in);
        FAIL();
    } catch (const parse_error &e) {
        EXPECT_EQ(e.line, 5u);
        EXPECT_NE(std::string(e.what()).find("expected degree 3"), std::string::npos);
    }
}

TEST(Cli, RecordsGrammar)
{
    const auto r = run("koszul-homology", load_model("symplectic_r4"));
    const auto text = render_records(r);
    std::istringstream lines(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        ++n;
        EXPECT_EQ(line.rfind("record=", 0), 0u) << line;
    }
    EXPECT_NE(text.find("record=piece section=koszul-homology table=koszul_homology weight=3 degree=0 dim="),
              std::string::npos);
    EXPECT_NE(text.find("record=summary pass="), std::string::npos);
    EXPECT_GT(n, 3u);
    EXPECT_EQ(quote_value("a\"b\\c"), "\"a\\\"b\\\\c\"");
}

TEST(Cli, RenderingIsDeterministic)
{
    const auto m = load_model("affine_r4");
    EXPECT_EQ(render_table(run("full-report", m)), render_table(run("full-report", m)));
    EXPECT_EQ(render_records(run("full-report", m)), render_records(run("full-report", m)));
}
