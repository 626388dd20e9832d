#include <gtest/gtest.h>

#include <random>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using testing_support::lines_of;
using testing_support::run_cli;
using testing_support::TempDir;
using testing_support::tokens_of;

namespace {

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& l : lines_of(text))
        if (l.rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST(CliTable, SixHasElevenRowsAndTheClassSizes) {
    const auto r = run_cli({"table", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 3u + 11u);
    auto sizes = tokens_of(lines[2]);
    EXPECT_EQ(sizes, (std::vector<std::string>{"size", "1", "15", "45", "15", "40", "120", "40", "90", "90", "144", "120"}));
    EXPECT_EQ(tokens_of(lines[1]).at(1), "()");
    EXPECT_EQ(tokens_of(lines[1]).back(), "(123456)");
}

TEST(CliTable, TwoHasTwoRows) {
    const auto r = run_cli({"table", "2"});
    ASSERT_EQ(r.code, 0);
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(tokens_of(lines[3]), (std::vector<std::string>{"(2)", "1", "1"}));
    EXPECT_EQ(tokens_of(lines[4]), (std::vector<std::string>{"(1,1)", "1", "-1"}));
}

TEST(CliTable, RangeErrors) {
    const auto zero = run_cli({"table", "0"});
    EXPECT_EQ(zero.code, 1);
    EXPECT_NE(zero.err.find("Usage"), std::string::npos) << zero.err;
    EXPECT_EQ(run_cli({"table", "9"}).code, 1);
    EXPECT_EQ(run_cli({"table", "9", "--nmax", "9"}).code, 0);
    EXPECT_EQ(run_cli({"table"}).code, 1);
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"bogus"}).code, 1);
}

TEST(CliSelfcheck, SmallCasesPass) {
    const auto two = run_cli({"selfcheck", "2", "2"});
    EXPECT_EQ(two.code, 0);
    EXPECT_NE(two.out.find("selfcheck PASSED"), std::string::npos);
    EXPECT_EQ(count_lines_starting(two.out, "FAIL"), 0u);

    const auto three = run_cli({"selfcheck", "3", "3"});
    ASSERT_EQ(three.code, 0);
    EXPECT_NE(three.out.find("dim I=10"), std::string::npos);
    EXPECT_NE(three.out.find("dim I=16"), std::string::npos);
    EXPECT_NE(three.out.find("dim I=1"), std::string::npos);
    EXPECT_NE(three.out.find("total dimension 27"), std::string::npos);
}

TEST(CliSelfcheck, ExteriorFourthPowerReportedVanishing) {
    const auto r = run_cli({"selfcheck", "4", "3"});
    ASSERT_EQ(r.code, 0);
    bool found = false;
    for (const auto& l : lines_of(r.out))
        if (l.find("(1,1,1,1)") != std::string::npos && l.find("vanishing") != std::string::npos) found = true;
    EXPECT_TRUE(found) << r.out;
    EXPECT_EQ(count_lines_starting(r.out, "FAIL"), 0u);
}

TEST(CliSelfcheck, ResourceReport) {
    const auto r = run_cli({"selfcheck", "10", "3"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("required"), std::string::npos);
    EXPECT_NE(r.err.find("available: 4096"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"selfcheck", "8", "3", "--budget", "1"}).code, 3);
}

TEST(CliTransform, IdenticalVariablesSingleAmplitude) {
    TempDir dir;
    std::mt19937_64 rng(1);
    const auto x = oracle::random_series(20, 1, 3, rng);
    const auto files = testing_support::write_series(dir, x.select(std::vector<int>{0, 0, 0}));
    std::vector<std::string> args{"transform", "--format", "struct"};
    for (const auto& f : files) args.push_back(f.string());
    const auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto d = schur::io::parse_document(r.out);
    ASSERT_EQ(d.partitions.front(), "(3)");
    const auto& amps = d.entries.front().amplitudes;
    EXPECT_GT(amps[0], 0.0);
    EXPECT_LE(amps[1], 1e-12 * d.tensor_norm);
    EXPECT_LE(amps[2], 1e-12 * d.tensor_norm);
}

TEST(CliTransform, ConstantDataGivesZeroAmplitudes) {
    TempDir dir;
    const auto a = dir.write("a.txt", "1 2\n1 2\n1 2\n");
    const auto b = dir.write("b.txt", "5 5\n5 5\n5 5\n");
    const auto r = run_cli({"transform", "--format", "struct", a.string(), b.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto d = schur::io::parse_document(r.out);
    for (double v : d.entries.front().amplitudes) EXPECT_EQ(v, 0.0);
}

TEST(CliTransform, ManifestRefsNormalizeAndOutFile) {
    TempDir dir;
    std::mt19937_64 rng(2);
    const auto s = oracle::random_series(8, 2, 2, rng);
    const auto manifest = testing_support::write_manifest(dir, testing_support::write_series(dir, s), "m.txt");
    const auto refs = dir.write("refs.txt", "0 0\n1 -1\n");
    const auto out = dir / "result.json";
    const auto r = run_cli({"transform", "--manifest", manifest.string(), "--refs", refs.string(), "--normalize",
                            "--format", "struct", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    const auto d = schur::io::parse_document(text);
    EXPECT_FALSE(d.central);
    EXPECT_TRUE(d.normalize);
    const schur::ReferencePoints rp{{0, 0}, {1, -1}};
    const auto want = schur::schur_transform(schur::sample_covariance_tensor(s, rp, true));
    EXPECT_LE(oracle::max_abs_diff(d.entries.front().amplitudes, want.amplitudes), 1e-12);
}

TEST(CliTransform, InputErrorsAreLocated) {
    TempDir dir;
    const auto good = dir.write("good.txt", "1 2 3\n4 5 6\n");
    const auto bad = dir.write("bad.txt", "1 2 3\n4 5 6 7\n");
    const auto r = run_cli({"transform", good.string(), bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.txt:2"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"transform"}).code, 2);
    EXPECT_EQ(run_cli({"transform", (dir / "absent.txt").string()}).code, 2);
    EXPECT_EQ(run_cli({"transform", "--format", "xml", good.string(), good.string()}).code, 1);
}

TEST(CliContent, RowCountsPerPartition) {
    TempDir dir;
    std::mt19937_64 rng(3);
    const auto manifest = testing_support::write_manifest(
        dir, testing_support::write_series(dir, oracle::random_series(10, 6, 2, rng)), "m.txt");
    auto rows_per_partition = [&](const std::string& n, const std::string& mode) {
        const auto r = run_cli({"content", "--manifest", manifest.string(), "-n", n, "--mode", mode, "--format", "plot-csv"});
        EXPECT_EQ(r.code, 0) << r.err;
        return count_lines_starting(r.out, "\"(" + n + ")\"");
    };
    EXPECT_EQ(rows_per_partition("3", "all"), 20u);
    EXPECT_EQ(rows_per_partition("3", "seq"), 4u);
    EXPECT_EQ(rows_per_partition("4", "seq"), 3u);
    EXPECT_EQ(run_cli({"content", "--manifest", manifest.string(), "-n", "7"}).code, 2);
    EXPECT_EQ(run_cli({"content", "--manifest", manifest.string(), "-n", "3", "--mode", "odd"}).code, 1);
}

TEST(CliContent, TableSummary) {
    TempDir dir;
    std::mt19937_64 rng(4);
    const auto manifest = testing_support::write_manifest(
        dir, testing_support::write_series(dir, oracle::random_series(10, 4, 2, rng)), "m.txt");
    const auto r = run_cli({"content", "--manifest", manifest.string(), "-n", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("subsets=6"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("max residual"), std::string::npos);
}

namespace {

struct ClassifyFiles {
    std::filesystem::path a, b, candidate;
};

ClassifyFiles write_classify_fixture(const TempDir& dir, std::mt19937_64& rng, int samples = 20) {
    const auto base = oracle::random_series(samples, 1, 2, rng);
    std::normal_distribution<double> noise(0.0, 1e-3);
    auto noisy = [&](int copies) {
        auto s = base.select(std::vector<int>(static_cast<std::size_t>(copies), 0));
        for (int j = 0; j < samples; ++j)
            for (int i = 0; i < copies; ++i)
                for (int a = 0; a < 2; ++a) s.at(j, i, a) += noise(rng);
        return s;
    };
    ClassifyFiles f;
    f.a = testing_support::write_manifest(dir, testing_support::write_series(dir, noisy(4), "a"), "a.txt");
    f.b = testing_support::write_manifest(dir, testing_support::write_series(dir, oracle::random_series(samples, 4, 2, rng, 2.0), "b"),
                                          "b.txt");
    f.candidate = testing_support::write_series(dir, noisy(1), "cand").front();
    return f;
}

}  // namespace

TEST(CliClassify, PicksTheMatchingClass) {
    TempDir dir;
    std::mt19937_64 rng(5);
    const auto f = write_classify_fixture(dir, rng);
    for (const std::string metric : {"l1", "l2"}) {
        const auto r = run_cli({"classify", "--class", "A=" + f.a.string(), "--class", "B=" + f.b.string(),
                                "--candidate", f.candidate.string(), "-n", "3", "--metric", metric});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.out.find("chosen A\n"), std::string::npos) << r.out;
    }
    const auto single = run_cli({"classify", "--class", "B=" + f.b.string(), "--candidate", f.candidate.string(),
                                 "-n", "2", "--format", "struct"});
    ASSERT_EQ(single.code, 0) << single.err;
    const auto j = nlohmann::json::parse(single.out);
    EXPECT_EQ(j.at("label"), "B");
    EXPECT_EQ(j.at("scores").size(), 1u);
}

TEST(CliClassify, Errors) {
    TempDir dir;
    std::mt19937_64 rng(6);
    const auto f = write_classify_fixture(dir, rng);
    const auto shortc = testing_support::write_series(dir, oracle::random_series(7, 1, 2, rng), "short").front();
    EXPECT_EQ(run_cli({"classify", "--class", "A=" + f.a.string(), "--candidate", shortc.string(), "-n", "2"}).code, 2);
    EXPECT_EQ(run_cli({"classify", "--class", "A" + f.a.string(), "--candidate", f.candidate.string(), "-n", "2"}).code, 2);
    EXPECT_EQ(run_cli({"classify", "--candidate", f.candidate.string(), "-n", "2"}).code, 1);
}

TEST(CliCache, SaveAndReload) {
    TempDir dir;
    const auto cache = (dir / "cache").string();
    std::filesystem::create_directories(cache);
    const auto first = run_cli({"selfcheck", "3", "2", "--cache", cache});
    ASSERT_EQ(first.code, 0) << first.err;
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(cache)) ++files;
    EXPECT_EQ(files, 3u);
    const auto second = run_cli({"selfcheck", "3", "2", "--cache", cache});
    EXPECT_EQ(second.code, 0);
    EXPECT_EQ(second.out, first.out);
}

TEST(CliCache, CorruptCacheIsRejected) {
    TempDir dir;
    const auto cache = dir / "cache";
    std::filesystem::create_directories(cache);
    ASSERT_EQ(run_cli({"selfcheck", "2", "2", "--cache", cache.string()}).code, 0);
    const auto victim = cache / "projector_n2_k2_2.txt";
    ASSERT_TRUE(std::filesystem::exists(victim));
    {
        std::ifstream in(victim);
        std::string header;
        std::getline(in, header);
        std::ofstream(victim) << header << "\n0 0 2\n";
    }
    const auto r = run_cli({"selfcheck", "2", "2", "--cache", cache.string()});
    EXPECT_NE(r.code, 0);
    EXPECT_FALSE(r.err.empty());
}
