#include "eit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "eit/random.hpp"
#include "eit/split.hpp"

namespace eit {

namespace fs = std::filesystem;

namespace {

bool match_one(std::string_view pattern, std::string_view name) {
  // Iterative wildcard match with single-star backtracking.
  std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
  auto eq = [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  };
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || (pattern[p] != '*' && eq(pattern[p], name[n])))) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::string replace_extension(const std::string& key, std::string_view ext) {
  const auto slash = key.rfind('/');
  const auto dot = key.rfind('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash + 1);
  return (has_ext ? key.substr(0, dot) : key) + std::string(ext);
}

}  // namespace

void JobConfig::validate() const {
  std::error_code ec;
  if (input_root.empty() || !fs::is_directory(input_root, ec)) {
    throw JobError("input root " + input_root.string() + " is not a directory");
  }
  if (output_root.empty()) throw JobError("output root is empty");
  if (workers == 0) throw JobError("workers must be >= 1");
  if (const auto* spec = std::get_if<TransformSpec>(&operation)) spec->validate();
}

nlohmann::ordered_json JobConfig::to_json() const {
  nlohmann::ordered_json j;
  j["input_root"] = input_root.string();
  j["output_root"] = output_root.string();
  j["spec"] = operation_to_json(operation);
  j["master_seed"] = master_seed;
  j["workers"] = workers;
  j["image_glob"] = image_glob;
  j["format"] = std::string(format_name(format));
  return j;
}

JobConfig JobConfig::from_json(const nlohmann::json& j) {
  JobConfig cfg;
  cfg.input_root = j.at("input_root").get<std::string>();
  cfg.output_root = j.at("output_root").get<std::string>();
  cfg.operation = operation_from_json(j.at("spec"));
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<std::size_t>();
  if (j.contains("image_glob")) cfg.image_glob = j["image_glob"].get<std::string>();
  if (j.contains("format")) {
    const auto f = parse_format(j["format"].get<std::string>());
    if (!f) throw JobError("unknown output format " + j["format"].dump());
    cfg.format = *f;
  }
  return cfg;
}

bool glob_match(std::string_view patterns, std::string_view file_name) {
  while (true) {
    const auto sep = patterns.find(';');
    if (match_one(patterns.substr(0, sep), file_name)) return true;
    if (sep == std::string_view::npos) return false;
    patterns.remove_prefix(sep + 1);
  }
}

std::vector<std::string> list_images(const fs::path& root, std::string_view glob) {
  std::vector<std::string> keys;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw JobError("cannot list " + root.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    if (!glob_match(glob, entry.path().filename().string())) continue;
    keys.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<std::string> output_paths(const std::vector<std::string>& keys, OutputFormat format) {
  const auto ext = format_extension(format);
  std::map<std::string, std::size_t> uses;
  std::vector<std::string> out;
  out.reserve(keys.size());
  for (const auto& k : keys) ++uses[replace_extension(k, ext)];
  for (const auto& k : keys) {
    auto candidate = replace_extension(k, ext);
    out.push_back(uses[candidate] > 1 ? k + std::string(ext) : std::move(candidate));
  }
  return out;
}

ManifestRecord process_image(const JobConfig& cfg, const std::string& key,
                             const std::string& output_rel) {
  ManifestRecord rec;
  rec.image_key = key;
  rec.class_label = class_of_key(key);
  rec.input_path = (cfg.input_root / fs::path(key)).lexically_normal().generic_string();
  rec.spec = operation_to_json(cfg.operation);
  rec.seed = derive_image_seed(cfg.master_seed, key);
  rec.output_path = output_rel;

  ImageBuffer out;
  try {
    const ImageBuffer in = read_image(rec.input_path);
    rec.input_digest = content_digest(in);
    out = apply(in, cfg.operation, rec.seed);
  } catch (const ImageDecodeError& e) {
    rec.error = e.what();
    return rec;
  } catch (const std::invalid_argument& e) {
    rec.error = std::string("transform failed: ") + e.what();
    return rec;
  }
  write_image(cfg.output_root / fs::path(output_rel), out, cfg.format);
  rec.output_digest = content_digest(out);
  return rec;
}

Manifest run_job(const JobConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  fs::create_directories(cfg.output_root, ec);
  if (ec || !fs::is_directory(cfg.output_root)) {
    throw JobError("cannot create output root " + cfg.output_root.string() +
                   (ec ? ": " + ec.message() : std::string()));
  }

  const auto keys = list_images(cfg.input_root, cfg.image_glob);
  const auto outputs = output_paths(keys, cfg.format);
  Manifest manifest;
  manifest.records.resize(keys.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr write_failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= keys.size()) return;
      try {
        manifest.records[i] = process_image(cfg, keys[i], outputs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!write_failure) write_failure = std::current_exception();
        abort.store(true);
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.workers, keys.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (write_failure) {
    try {
      std::rethrow_exception(write_failure);
    } catch (const std::exception& e) {
      throw JobError(std::string("job aborted: ") + e.what());
    }
  }

  try {
    manifest.save(cfg.output_root / kManifestFileName);
    std::ofstream job(cfg.output_root / kJobFileName, std::ios::binary | std::ios::trunc);
    job << cfg.to_json().dump(2) << '\n';
    if (!job) throw JobError("cannot write " + (cfg.output_root / kJobFileName).string());
  } catch (const JobError&) {
    throw;
  } catch (const std::exception& e) {
    throw JobError(e.what());
  }
  return manifest;
}

}  // namespace eit
