#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "contractio/cli/commands.hpp"
#include "contractio/cli/dsl.hpp"
#include "support/generators.hpp"

using namespace contractio;
using namespace contractio::cli;

namespace {

QPoly poly(std::initializer_list<long> low_to_high)
{
    std::vector<Rational> c;
    for (long x : low_to_high) c.emplace_back(x);
    return QPoly(std::move(c));
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> corpus_files()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(CONTRACTIO_SOURCE_DIR) / "corpus"))
        if (e.path().extension() == ".grp") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

RunResult run(Command c, const std::string& src, Fault fault = Fault::None, bool strict = false)
{
    Options o;
    o.command = c;
    o.fault = fault;
    o.strict = strict;
    o.samples = 10;
    return run_command(o, src);
}

}  // namespace

TEST(Parse, Examples)
{
    Document d = parse("group G = shift(C2) * companion(p=3, poly=X^2+3)\n");
    ASSERT_EQ(d.groups.size(), 1u);
    EXPECT_EQ(d.groups[0].name, "G");
    EXPECT_EQ(d.groups[0].group.blocks.size(), 2u);
    EXPECT_EQ(d.groups[0].group.to_string(), "shift(C2) * companion(p=3, poly=X^2 + 3)");

    try {
        parse("group H = linear(p=3, matrix=[[1,0],[0,3]])");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("has root of valuation 0"), std::string::npos) << e.what();
        EXPECT_EQ(e.pos.line, 1);
        EXPECT_EQ(e.pos.column, 11);
    }
    try {
        parse("group K = heisenberg(p=5, a=0, b=1)");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(e.detail.find("weight a"), std::string::npos) << e.what();
    }
}

TEST(Parse, SettingsCommentsAndContinuations)
{
    Document d = parse("# header\nset precision = 40   # trailing\nset seed = 12\n\n"
                       "group A = shift(S3) *\n  linear(p=2, matrix=[[2, 0],\n [0, 4]])\n"
                       "group B = heisenberg(p=3, a=1, b=1)");
    EXPECT_EQ(d.precision, 40);
    EXPECT_EQ(d.seed, 12u);
    ASSERT_EQ(d.groups.size(), 2u);
    EXPECT_EQ(d.groups[0].group.blocks.size(), 2u);
    EXPECT_EQ(d.groups[1].pos.line, 8);
    EXPECT_NE(d.find("B"), nullptr);
    EXPECT_EQ(d.find("C"), nullptr);
}

TEST(Parse, Polynomials)
{
    EXPECT_EQ(parse_poly("X^2+3"), poly({3, 0, 1}));
    EXPECT_EQ(parse_poly("X - 3"), poly({-3, 1}));
    EXPECT_EQ(parse_poly("2X - 6"), poly({-6, 2}));
    EXPECT_EQ(parse_poly("-x^3 + x"), poly({0, 1, 0, -1}));
    EXPECT_EQ(parse_poly("X^3 - 1/2*X + 6"), QPoly({Rational(6), Rational(-1, 2), Rational(0), Rational(1)}));
    EXPECT_EQ(parse_poly("X^2 + 3*X + 3"), poly({3, 3, 1}));
    EXPECT_EQ(parse_poly("X + X"), poly({0, 2}));
    EXPECT_THROW(parse_poly("X^"), SyntaxError);
    EXPECT_THROW(parse_poly("+"), SyntaxError);
}

TEST(Parse, Blocks)
{
    auto b = parse_block("shift(table{0,1;1,0})");
    EXPECT_EQ(model::block_to_string(b), "shift(table{0,1;1,0})");
    EXPECT_EQ(model::block_to_string(parse_block("linear(p=3, matrix=[[3, 1/3], [0, 9]])")), "linear(p=3, matrix=[[3,1/3],[0,9]])");
    EXPECT_EQ(model::block_to_string(parse_block("shift(D4)")), "shift(D4)");
    EXPECT_THROW(parse_block("shift(table{0,1;1,1})"), ValidationError);
    EXPECT_THROW(parse_block("linear(p=3, matrix=[[3, 0]])"), ValidationError);
    EXPECT_THROW(parse_block("linear(p=3, matrix=[[3, 1/0]])"), ValidationError);
    EXPECT_THROW(parse_block("linear(p=4, matrix=[[4]])"), ValidationError);
    EXPECT_THROW(parse_block("companion(p=3, poly=X^2 + 1)"), ValidationError);
    EXPECT_THROW(parse_block("shift(Q8)"), SyntaxError);
    EXPECT_THROW(parse_block("linear(p=3, p=3)"), ValidationError);
}

TEST(Parse, SyntaxErrorsCarryPosition)
{
    try {
        parse("group G = shift(C2)\ngroup H = linaer(p=3, matrix=[[3]])");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.pos.line, 2);
        EXPECT_EQ(e.pos.column, 11);
        EXPECT_EQ(e.found, "'linaer'");
        EXPECT_EQ(e.expected.size(), 4u);
    }
    try {
        parse("group G = shift(C2) shift(C3)");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.pos.column, 21);
        EXPECT_NE(std::find(e.expected.begin(), e.expected.end(), "'*'"), e.expected.end());
    }
    try {
        parse("group G = shift(C2)\ngroup G = shift(C3)");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.pos.line, 2);
        EXPECT_EQ(e.pos.column, 7);
    }
    EXPECT_THROW(parse("group G = shift(C2) $"), SyntaxError);
    EXPECT_THROW(parse("set colour = 3"), SyntaxError);
    EXPECT_THROW(parse("set precision = 0"), ValidationError);
}

TEST(RoundTrip, Corpus)
{
    auto files = corpus_files();
    ASSERT_GE(files.size(), 5u);
    for (const auto& f : files) {
        SCOPED_TRACE(f.string());
        Document d = parse(slurp(f));
        std::string once = print(d);
        Document again = parse(once);
        EXPECT_TRUE(same_document(d, again));
        EXPECT_EQ(print(again), once);
    }
}

TEST(RoundTrip, RandomGroups)
{
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        Document d;
        if (trial % 3 == 0) d.precision = testgen::pick(rng, 1, 64);
        if (trial % 4 == 0) d.seed = rng();
        long n = testgen::pick(rng, 1, 4);
        for (long i = 0; i < n; ++i) d.groups.push_back({"G" + std::to_string(i), testgen::random_group(rng, 4, 4), {}});
        std::string text = print(d);
        SCOPED_TRACE(text);
        Document back = parse(text);
        EXPECT_TRUE(same_document(d, back));
        EXPECT_EQ(print(back), text);
    }
}

TEST(Commands, AnalyzeShiftC2)
{
    auto r = run(Command::Analyze, "group F = shift(C2)");
    EXPECT_EQ(r.exit_code, kOk);
    const auto& g = r.report["groups"]["F"];
    EXPECT_EQ(g["delta"], "2");
    EXPECT_EQ(g["series"]["alpha"]["factors"], nlohmann::ordered_json::array({"TorsionSimple(C2)"}));
    EXPECT_EQ(g["series"]["alpha_normal"]["length"], 1);
    EXPECT_EQ(g["classification"]["label"], "TorsionSimple(C2)");
}

TEST(Commands, StructureExample)
{
    auto r = run(Command::Structure, "group G = shift(C2) * shift(C3) * linear(p=3, matrix=[[3]])");
    EXPECT_EQ(r.exit_code, kOk);
    const auto& g = r.report["groups"]["G"];
    EXPECT_EQ(g["t_alpha"], "6");
    ASSERT_EQ(g["divisible"].size(), 1u);
    EXPECT_EQ(g["divisible"][0]["p"], 3);
    EXPECT_EQ(g["divisible"][0]["group"], "linear(p=3, matrix=[[3]])");
    EXPECT_EQ(g["torsion_blocks"], nlohmann::ordered_json::array({0, 1}));
}

TEST(Commands, ClassifyAndText)
{
    auto r = run(Command::Classify, "group R = linear(p=3, matrix=[[0,-3],[1,0]])\ngroup H = heisenberg(p=5, a=1, b=2)");
    EXPECT_EQ(r.exit_code, kOk);
    EXPECT_EQ(r.report["groups"]["R"]["label"], "PadicSimple(3, X^2 + 3)");
    EXPECT_EQ(r.report["groups"]["R"]["companion"], "[[0, -3], [1, 0]]");
    EXPECT_EQ(r.report["groups"]["H"]["simple"], false);
    EXPECT_NE(r.output.find("groups.R.label = PadicSimple(3, X^2 + 3)\n"), std::string::npos);
    EXPECT_NE(r.output.find("summary.exit = 0\n"), std::string::npos);
}

TEST(Commands, StructuredMatchesText)
{
    Options o;
    o.command = Command::Analyze;
    o.samples = 5;
    const char* src = "group G = shift(C2) * companion(p=3, poly=X^2+3)";
    auto text = run_command(o, src);
    o.format = Format::Structured;
    auto json = run_command(o, src);
    EXPECT_EQ(nlohmann::ordered_json::parse(json.output), text.report);
    EXPECT_EQ(render_text(nlohmann::ordered_json::parse(json.output)), text.output);
}

TEST(Commands, SeedSettings)
{
    Options o;
    o.command = Command::Verify;
    o.samples = 5;
    auto a = run_command(o, "group G = shift(S4) * heisenberg(p=2, a=1, b=1)");
    EXPECT_EQ(a.report["seed"], kDefaultSeed);
    auto b = run_command(o, "set seed = 99\ngroup G = shift(S4) * heisenberg(p=2, a=1, b=1)");
    EXPECT_EQ(b.report["seed"], 99);
    o.seed = 5;
    auto c = run_command(o, "set seed = 99\ngroup G = shift(S4)");
    EXPECT_EQ(c.report["seed"], 5);
    EXPECT_EQ(a.exit_code, kOk);
    EXPECT_EQ(run_command(o, "group G = shift(S4)").output, run_command(o, "group G = shift(S4)").output);
}

TEST(ExitCodes, FaultInjection)
{
    // Corrupted matrix: validation.
    auto bad = run(Command::Analyze, "group G = linear(p=3, matrix=[[1,0],[0,3]])");
    EXPECT_EQ(bad.exit_code, kValidation);
    EXPECT_EQ(bad.report["error"]["kind"], "validation");
    EXPECT_EQ(run(Command::Check, "group G = shift(C2) *").exit_code, kValidation);

    // Tampered factor module: property failure.
    auto tampered = run(Command::Verify, "group G = shift(C6)", Fault::TamperModule);
    EXPECT_EQ(tampered.exit_code, kPropertyFailure);
    EXPECT_EQ(tampered.report["groups"]["G"]["properties"]["alpha"]["module_product"], "fail");
    EXPECT_EQ(run(Command::Analyze, "group G = shift(C6)", Fault::TamperModule).exit_code, kPropertyFailure);

    // Non-simple F pushed into the classifier.
    auto forced = run(Command::Classify, "group G = shift(C4)", Fault::ClaimSimple);
    EXPECT_EQ(forced.exit_code, kPropertyFailure);
    EXPECT_EQ(forced.report["groups"]["G"]["simple"], "error");
    EXPECT_EQ(run(Command::Classify, "group G = shift(C4)").exit_code, kOk);

    // Uncertified only matters with --strict.
    const char* quartic = "group Q = companion(p=3, poly=X^4 + 9)";
    EXPECT_EQ(run(Command::Classify, quartic).exit_code, kOk);
    EXPECT_EQ(run(Command::Classify, quartic, Fault::None, true).exit_code, kUncertified);
    EXPECT_EQ(run(Command::Analyze, quartic, Fault::None, true).exit_code, kUncertified);

    // Validation outranks everything.
    EXPECT_EQ(run(Command::Classify, "group Q = companion(p=3, poly=X^4 + 9)\ngroup Q = shift(C2)", Fault::None, true).exit_code,
              kValidation);

    // Unsupported repeated non-linear factor.
    auto nsf = run(Command::Analyze, "group N = linear(p=3, matrix=[[0,-3,0,0],[1,0,0,0],[0,0,0,-3],[0,0,1,0]])");
    EXPECT_EQ(nsf.exit_code, kValidation);
    EXPECT_NE(nsf.report["groups"]["N"]["error"].get<std::string>().find("unsupported"), std::string::npos);
}

TEST(Commands, CorpusVerifies)
{
    for (const auto& f : corpus_files()) {
        SCOPED_TRACE(f.string());
        Options o;
        o.command = Command::Verify;
        o.seed = 7;
        o.samples = 20;
        auto r = run_command(o, slurp(f));
        EXPECT_EQ(r.exit_code, kOk) << r.output;
        EXPECT_EQ(r.report["summary"]["failures"], 0);
    }
}
