#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "table_rows.hpp"
#include "test_support.hpp"

using namespace eit;
using namespace eit::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write_corpus(const fs::path& root, std::size_t n) {
  std::mt19937_64 rng(n);
  for (std::size_t i = 0; i < n; ++i) {
    write_image(root / ("k" + std::to_string(i % 2)) / ("f" + std::to_string(i) + ".png"),
                random_image(rng, 30, 26, 3), OutputFormat::kPng);
  }
}

std::vector<std::string> with_io(std::vector<std::string> args, const fs::path& in, const fs::path& out) {
  args.insert(args.end(), {"--seed", "7", "--in", in.string(), "--out", out.string(), "--workers", "2"});
  return args;
}

}  // namespace

TEST_CASE("every published table row maps to one valid transform invocation") {
  const auto rows = table_rows();
  CHECK(rows.size() == 27);
  for (const auto& row : rows) {
    const auto args = with_io(row_args(row), "in", "out");
    CAPTURE(row.kind);
    JobConfig cfg;
    REQUIRE_NOTHROW(cfg = cli::build_job(args));
    const auto& spec = std::get<TransformSpec>(cfg.operation);
    CHECK(kind_name(spec.kind) == row.kind);
    CHECK(spec.p == row.p);
    if (row.grid) CHECK(spec.grid_size == static_cast<std::size_t>(*row.grid));
    if (row.segments) CHECK(spec.n_segments == static_cast<std::size_t>(*row.segments));
    CHECK(spec.swap);
    CHECK_NOTHROW(spec.validate());
  }
}

TEST_CASE("build_job flag handling") {
  SUBCASE("missing p names the parameter and kind") {
    try {
      cli::build_job(with_io({"transform", "--kind", "full-random-shuffle"}, "i", "o"));
      FAIL("expected CliError");
    } catch (const cli::CliError& e) {
      CHECK(std::string(e.what()) == "missing required parameter --p for kind full-random-shuffle");
    }
  }

  SUBCASE("missing seed") {
    CHECK_THROWS_WITH_AS(cli::build_job({"transform", "--kind", "color-flatten", "--in", "i", "--out", "o"}),
                         "missing required parameter --seed", cli::CliError);
  }

  SUBCASE("no-swap") {
    const auto cfg = cli::build_job(with_io({"transform", "--kind", "grid-shuffle", "--grid", "56", "--no-swap"},
                                            "i", "o"));
    CHECK_FALSE(std::get<TransformSpec>(cfg.operation).swap);
  }

  SUBCASE("corrupt") {
    const auto cfg = cli::build_job(with_io({"corrupt", "--noise", "gaussian", "--severity", "3"}, "i", "o"));
    CHECK(std::get<GaussianNoiseSpec>(cfg.operation).severity == Severity(3));
    CHECK_THROWS_WITH_AS(cli::build_job(with_io({"corrupt", "--noise", "gaussian", "--severity", "9"}, "i", "o")),
                         "invalid --severity 9 (expected 1..5)", cli::CliError);
  }

  SUBCASE("config file, with flags taking precedence") {
    TempDir tmp("cfg");
    const auto path = tmp.path() / "job.json";
    std::ofstream(path) << R"({"input_root":"a","output_root":"b","master_seed":5,"workers":3,)"
                           R"("spec":{"kind":"within-grid-shuffle","grid":14,"p":0.5},"format":"bmp"})";
    ::unsetenv("EIT_WORKERS");
    auto cfg = cli::build_job({"transform", "--config", path.string(), "--grid", "56"});
    CHECK(cfg.input_root == "a");
    CHECK(cfg.master_seed == 5);
    CHECK(cfg.workers == 3);
    CHECK(cfg.format == OutputFormat::kBmp);
    CHECK(std::get<TransformSpec>(cfg.operation).grid_size == 56u);
    CHECK(std::get<TransformSpec>(cfg.operation).p == 0.5);

    ::setenv("EIT_WORKERS", "6", 1);
    cfg = cli::build_job({"transform", "--config", path.string()});
    CHECK(cfg.workers == 6);
    cfg = cli::build_job({"transform", "--config", path.string(), "--workers", "2"});
    CHECK(cfg.workers == 2);
    ::unsetenv("EIT_WORKERS");
  }
}

TEST_CASE("exit codes") {
  TempDir in("cli-in"), out("cli-out");
  write_corpus(in.path(), 6);

  SUBCASE("success, then inspect passes") {
    auto r = run_cli(with_io({"transform", "--kind", "grid-shuffle", "--grid", "14"}, in.path(), out.path()));
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out.find("processed 6 images, 0 failed") != std::string::npos);
    r = run_cli({"inspect", "--manifest", (out.path() / "manifest.jsonl").string()});
    CHECK(r.code == cli::kSuccess);
    r = run_cli({"inspect", "--manifest", (out.path() / "manifest.jsonl").string(), "--dump-segments"});
    CHECK(r.code == cli::kSuccess);
  }

  SUBCASE("tampered output -> verification failure") {
    REQUIRE(run_cli(with_io({"transform", "--kind", "full-random-shuffle", "--p", "1"}, in.path(), out.path()))
                .code == cli::kSuccess);
    const auto victim = out.path() / "k1" / "f3.png";
    auto img = read_image(victim);
    img.data()[10] ^= 0x80;
    write_image(victim, img, OutputFormat::kPng);
    const auto r = run_cli({"inspect", "--manifest", (out.path() / "manifest.jsonl").string()});
    CHECK(r.code == cli::kVerificationFailure);
    CHECK(r.out.find("FAIL k1/f3.png") != std::string::npos);
    CHECK(r.out.find("6 records, 1 failed") != std::string::npos);
  }

  SUBCASE("undecodable input -> partial failure") {
    std::ofstream(in.path() / "k0" / "bad.png") << "nope";
    const auto r = run_cli(with_io({"corrupt", "--noise", "gaussian", "--severity", "1"}, in.path(), out.path()));
    CHECK(r.code == cli::kPartialFailure);
    CHECK(r.out.find("error k0/bad.png") != std::string::npos);
  }

  SUBCASE("config errors") {
    CHECK(run_cli(with_io({"transform", "--kind", "full-random-shuffle"}, in.path(), out.path())).code ==
          cli::kConfigError);
    CHECK(run_cli(with_io({"transform", "--kind", "shuffle-everything"}, in.path(), out.path())).code ==
          cli::kConfigError);
    CHECK(run_cli(with_io({"corrupt", "--noise", "gaussian", "--severity", "9"}, in.path(), out.path())).code ==
          cli::kConfigError);
    CHECK(run_cli(with_io({"transform", "--kind", "color-flatten"}, in.path() / "nowhere", out.path())).code ==
          cli::kConfigError);
    CHECK(run_cli({"inspect", "--manifest", (out.path() / "missing.jsonl").string()}).code == cli::kConfigError);
    CHECK(run_cli({}).code == cli::kConfigError);
    CHECK(run_cli({"transform", "--bogus"}).code == cli::kConfigError);
  }

  SUBCASE("split") {
    auto r = run_cli({"split", "--counts", "4,1,1", "--seed", "3", "--in", in.path().string(), "--out",
                      out.path().string()});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out == "train 4, val 1, test 1\n");
    std::ifstream train(out.path() / "train.txt");
    std::string line;
    int lines = 0;
    while (std::getline(train, line)) ++lines;
    CHECK(lines == 4);

    r = run_cli({"split", "--counts", "4,1,2", "--seed", "3", "--in", in.path().string(), "--out",
                 out.path().string()});
    CHECK(r.code == cli::kConfigError);
    CHECK(r.err.find('7') != std::string::npos);
    CHECK(r.err.find('6') != std::string::npos);

    r = run_cli({"split", "--ratios", "0.5,0.5,0", "--stratify", "--seed", "3", "--in", in.path().string(),
                 "--out", out.path().string()});
    CHECK(r.code == cli::kSuccess);
  }
}
