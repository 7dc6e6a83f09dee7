#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "eit/random.hpp"

namespace eit::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string kind;
  double p = 0.0;
  std::size_t grid = 0;
  std::size_t segments = 0;
  bool swap = true;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
  std::size_t workers = 0;
  std::string glob;
  std::string format;
  std::string config;

  std::string noise;
  int severity = 0;

  std::string counts;
  std::string ratios;
  bool stratify = false;

  std::string manifest;
  bool dump_segments = false;
};

struct App {
  CLI::App app{"Extreme image transformation engine", "eit"};
  Options o;
  CLI::App* transform = nullptr;
  CLI::App* corrupt = nullptr;
  CLI::App* split = nullptr;
  CLI::App* inspect = nullptr;

  App() {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    transform = app.add_subcommand("transform", "Apply one transform to every image in a folder");
    transform->add_option("--kind", o.kind, "Transform kind (kebab-case)");
    transform->add_option("--p", o.p, "Pixel shuffle probability in [0, 1]");
    transform->add_option("--grid", o.grid, "Tile edge in pixels");
    transform->add_option("--segments", o.segments, "Number of superpixels");
    transform->add_flag("--swap,!--no-swap", o.swap, "Enable tile/segment permutation (default on)");
    add_job_options(*transform);

    corrupt = app.add_subcommand("corrupt", "Apply gaussian-noise corruption to every image in a folder");
    corrupt->add_option("--noise", o.noise, "Corruption family (gaussian)");
    corrupt->add_option("--severity", o.severity, "Severity 1..5");
    add_job_options(*corrupt);

    split = app.add_subcommand("split", "Partition a corpus into train/val/test key lists");
    split->add_option("--counts", o.counts, "Exact sizes: TRAIN,VAL,TEST");
    split->add_option("--ratios", o.ratios, "Fractions: TRAIN,VAL,TEST");
    split->add_option("--seed", o.seed, "Shuffle seed (required)");
    split->add_option("--in", o.in, "Corpus root");
    split->add_option("--out", o.out, "Directory receiving train.txt, val.txt, test.txt");
    split->add_option("--glob", o.glob, "File-name patterns, ';'-separated");
    split->add_flag("--stratify", o.stratify, "Split each class directory separately (ratios only)");

    inspect = app.add_subcommand("inspect", "Verify a job's outputs against its manifest");
    inspect->add_option("--manifest", o.manifest, "Path to manifest.jsonl");
    inspect->add_flag("--dump-segments", o.dump_segments, "Write superpixel label images next to outputs");
  }

  void add_job_options(CLI::App& sub) {
    sub.add_option("--seed", o.seed, "Master seed (required)");
    sub.add_option("--in", o.in, "Input root");
    sub.add_option("--out", o.out, "Output root");
    sub.add_option("--workers", o.workers, "Worker threads (default: EIT_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub.add_option("--glob", o.glob, "File-name patterns, ';'-separated");
    sub.add_option("--format", o.format, "Output encoding: png or bmp");
    sub.add_option("--config", o.config, "JSON job config; flags take precedence");
  }

  void parse(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"eit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
};

bool given(const CLI::App& sub, const char* name) { return sub.count(name) > 0; }

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CliError("bad config " + path + ": " + e.what());
  }
}

std::size_t default_workers() {
  if (const char* env = std::getenv("EIT_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw CliError("EIT_WORKERS must be a positive integer");
    return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string valid_kinds() {
  std::string s;
  for (const auto& k : kinds()) s += (s.empty() ? "" : ", ") + k;
  return s;
}

JobConfig job_from(const App& a, const CLI::App& sub, bool is_transform) {
  const Options& o = a.o;
  nlohmann::json config = nlohmann::json::object();
  if (given(sub, "--config")) config = load_config(o.config);

  JobConfig cfg;
  if (given(sub, "--in")) {
    cfg.input_root = o.in;
  } else if (config.contains("input_root")) {
    cfg.input_root = config["input_root"].get<std::string>();
  } else {
    throw CliError("missing required parameter --in");
  }
  if (given(sub, "--out")) {
    cfg.output_root = o.out;
  } else if (config.contains("output_root")) {
    cfg.output_root = config["output_root"].get<std::string>();
  } else {
    throw CliError("missing required parameter --out");
  }
  if (given(sub, "--seed")) {
    cfg.master_seed = o.seed;
  } else if (config.contains("master_seed")) {
    cfg.master_seed = config["master_seed"].get<std::uint64_t>();
  } else {
    throw CliError("missing required parameter --seed");
  }
  if (given(sub, "--workers")) {
    cfg.workers = o.workers;
  } else if (std::getenv("EIT_WORKERS") == nullptr && config.contains("workers")) {
    cfg.workers = config["workers"].get<std::size_t>();
  } else {
    cfg.workers = default_workers();
  }
  if (given(sub, "--glob")) {
    cfg.image_glob = o.glob;
  } else if (config.contains("image_glob")) {
    cfg.image_glob = config["image_glob"].get<std::string>();
  }
  const std::string format = given(sub, "--format")   ? o.format
                             : config.contains("format") ? config["format"].get<std::string>()
                                                         : std::string("png");
  const auto fmt = parse_format(format);
  if (!fmt) throw CliError("unknown --format '" + format + "' (expected png or bmp)");
  cfg.format = *fmt;

  nlohmann::json spec = config.contains("spec") ? config["spec"] : nlohmann::json::object();
  if (is_transform) {
    if (spec.contains("kind") && spec["kind"] == "gaussian-noise") spec = nlohmann::json::object();
    if (given(sub, "--kind")) spec["kind"] = o.kind;
    if (!spec.contains("kind")) throw CliError("missing required parameter --kind");
    if (!spec["kind"].is_string() || !parse_kind(spec["kind"].get<std::string>())) {
      throw CliError("unknown --kind '" + (spec["kind"].is_string() ? spec["kind"].get<std::string>()
                                                                     : spec["kind"].dump()) +
                     "' (expected one of: " + valid_kinds() + ")");
    }
    if (given(sub, "--p")) spec["p"] = o.p;
    if (given(sub, "--grid")) spec["grid"] = o.grid;
    if (given(sub, "--segments")) spec["segments"] = o.segments;
    if (given(sub, "--swap") || given(sub, "--no-swap")) spec["swap"] = o.swap;
    try {
      cfg.operation = TransformSpec::from_json(spec);
    } catch (const SpecError& e) {
      const std::string kind = spec["kind"].get<std::string>();
      const std::string what = e.what();
      if (what.find("required") != std::string::npos) {
        throw CliError("missing required parameter --" + e.field() + " for kind " + kind);
      }
      throw CliError("invalid --" + e.field() + ": " + what.substr(e.field().size() + 2));
    }
  } else {
    const std::string noise = given(sub, "--noise") ? o.noise : std::string("gaussian");
    if (!given(sub, "--noise") && !(spec.contains("kind") && spec["kind"] == "gaussian-noise")) {
      throw CliError("missing required parameter --noise");
    }
    if (noise != "gaussian") throw CliError("unsupported --noise '" + noise + "' (expected gaussian)");
    int severity = 0;
    if (given(sub, "--severity")) {
      severity = o.severity;
    } else if (spec.contains("severity") && spec["severity"].is_number_integer()) {
      severity = spec["severity"].get<int>();
    } else {
      throw CliError("missing required parameter --severity");
    }
    if (severity < 1 || severity > 5) {
      throw CliError("invalid --severity " + std::to_string(severity) + " (expected 1..5)");
    }
    cfg.operation = GaussianNoiseSpec{Severity(severity)};
  }
  return cfg;
}

SplitRequest split_from(const App& a) {
  const Options& o = a.o;
  const CLI::App& sub = *a.split;
  SplitRequest req;
  if (!given(sub, "--in")) throw CliError("missing required parameter --in");
  if (!given(sub, "--out")) throw CliError("missing required parameter --out");
  if (!given(sub, "--seed")) throw CliError("missing required parameter --seed");
  req.input_root = o.in;
  req.output_dir = o.out;
  if (given(sub, "--glob")) req.image_glob = o.glob;
  req.spec.seed = o.seed;
  req.spec.stratify = o.stratify;

  const bool has_counts = given(sub, "--counts");
  const bool has_ratios = given(sub, "--ratios");
  if (has_counts == has_ratios) throw CliError("exactly one of --counts or --ratios is required");
  const auto parts = split_list(has_counts ? o.counts : o.ratios);
  if (parts.size() != 3) throw CliError("expected three comma-separated values");
  try {
    if (has_counts) {
      if (o.stratify) throw CliError("--stratify requires --ratios");
      std::size_t pos = 0;
      SplitCounts c;
      std::size_t* dst[3] = {&c.train, &c.val, &c.test};
      for (std::size_t i = 0; i < 3; ++i) {
        if (!parts[i].empty() && parts[i][0] == '-') throw std::invalid_argument(parts[i]);
        *dst[i] = std::stoull(parts[i], &pos);
        if (pos != parts[i].size()) throw std::invalid_argument(parts[i]);
      }
      req.spec.sizes = c;
    } else {
      std::size_t pos = 0;
      SplitRatios r;
      double* dst[3] = {&r.train, &r.val, &r.test};
      for (std::size_t i = 0; i < 3; ++i) {
        *dst[i] = std::stod(parts[i], &pos);
        if (pos != parts[i].size()) throw std::invalid_argument(parts[i]);
      }
      req.spec.sizes = r;
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception&) {
    throw CliError(std::string("cannot parse ") + (has_counts ? "--counts" : "--ratios") + " '" +
                   (has_counts ? o.counts : o.ratios) + "'");
  }
  return req;
}

int run_job_command(const JobConfig& cfg, std::ostream& out) {
  const Manifest manifest = run_job(cfg);
  const std::size_t failed = manifest.failures();
  out << "processed " << manifest.records.size() << " images, " << failed << " failed; manifest "
      << (cfg.output_root / kManifestFileName).string() << '\n';
  for (const auto& r : manifest.records) {
    if (r.error) out << "  error " << r.image_key << ": " << *r.error << '\n';
  }
  return failed == 0 ? kSuccess : kPartialFailure;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  for (const auto& l : lines) f << l << '\n';
  if (!f) throw JobError("cannot write " + path.string());
}

int run_split(const SplitRequest& req, std::ostream& out) {
  std::error_code ec;
  if (!fs::is_directory(req.input_root, ec)) {
    throw CliError("input root " + req.input_root.string() + " is not a directory");
  }
  auto keys = list_images(req.input_root, req.image_glob);
  if (keys.empty()) throw CliError("no images under " + req.input_root.string());
  SplitResult parts;
  try {
    parts = split_corpus(std::move(keys), req.spec);
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
  fs::create_directories(req.output_dir, ec);
  if (ec) throw JobError("cannot create " + req.output_dir.string() + ": " + ec.message());
  write_lines(req.output_dir / "train.txt", parts.train);
  write_lines(req.output_dir / "val.txt", parts.val);
  write_lines(req.output_dir / "test.txt", parts.test);
  out << "train " << parts.train.size() << ", val " << parts.val.size() << ", test "
      << parts.test.size() << '\n';
  return kSuccess;
}

int run_inspect(const Options& o, std::ostream& out) {
  if (o.manifest.empty()) throw CliError("missing required parameter --manifest");
  const fs::path path = o.manifest;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw CliError("manifest " + path.string() + " not found");
  Manifest manifest;
  try {
    manifest = Manifest::load(path);
  } catch (const std::exception& e) {
    throw CliError(e.what());
  }
  const VerifyReport report = verify_outputs(manifest, path.parent_path());
  for (const auto& rec : report.records) {
    out << (rec.passed ? "PASS " : "FAIL ") << rec.image_key;
    for (const auto& p : rec.problems) out << " | " << p;
    out << '\n';
  }
  if (o.dump_segments) {
    const auto files = dump_segments(manifest, path.parent_path());
    out << "wrote " << files.size() << " segment label images\n";
  }
  out << report.records.size() << " records, " << report.failed() << " failed\n";
  return report.all_passed() ? kSuccess : kVerificationFailure;
}

}  // namespace

JobConfig build_job(const std::vector<std::string>& args) {
  App a;
  try {
    a.parse(args);
  } catch (const CLI::ParseError& e) {
    throw CliError(e.what());
  }
  if (a.transform->parsed()) return job_from(a, *a.transform, true);
  if (a.corrupt->parsed()) return job_from(a, *a.corrupt, false);
  throw CliError("expected the transform or corrupt subcommand");
}

SplitRequest build_split(const std::vector<std::string>& args) {
  App a;
  try {
    a.parse(args);
  } catch (const CLI::ParseError& e) {
    throw CliError(e.what());
  }
  if (!a.split->parsed()) throw CliError("expected the split subcommand");
  return split_from(a);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  App a;
  try {
    a.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << a.app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << a.app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "eit: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (a.transform->parsed()) return run_job_command(job_from(a, *a.transform, true), out);
    if (a.corrupt->parsed()) return run_job_command(job_from(a, *a.corrupt, false), out);
    if (a.split->parsed()) return run_split(split_from(a), out);
    if (a.inspect->parsed()) return run_inspect(a.o, out);
  } catch (const CliError& e) {
    err << "eit: " << e.what() << '\n';
    return kConfigError;
  } catch (const JobError& e) {
    err << "eit: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "eit: " << e.what() << '\n';
    return kConfigError;
  }
  err << "eit: no subcommand given\n";
  return kConfigError;
}

}  // namespace eit::cli
