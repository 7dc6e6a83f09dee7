#include "eit/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eit {

namespace {

nlohmann::ordered_json optional_hex(const std::optional<std::uint64_t>& v) {
  return v ? nlohmann::ordered_json(to_hex64(*v)) : nlohmann::ordered_json(nullptr);
}

std::optional<std::uint64_t> read_optional_hex(const nlohmann::ordered_json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return std::nullopt;
  return parse_hex64(j.at(field).get<std::string>());
}

}  // namespace

std::string to_hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::uint64_t parse_hex64(std::string_view text) {
  std::uint64_t value = 0;
  if (text.empty() || text.size() > 16) throw std::invalid_argument("bad hex value '" + std::string(text) + "'");
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad hex value '" + std::string(text) + "'");
  }
  return value;
}

nlohmann::ordered_json ManifestRecord::to_json() const {
  nlohmann::ordered_json j;
  j["key"] = image_key;
  j["class"] = class_label;
  j["input"] = input_path;
  j["input_digest"] = optional_hex(input_digest);
  j["spec"] = spec;
  j["seed"] = to_hex64(seed);
  j["output"] = output_path;
  j["output_digest"] = optional_hex(output_digest);
  if (error) j["error"] = *error;
  return j;
}

ManifestRecord ManifestRecord::from_json(const nlohmann::ordered_json& j) {
  ManifestRecord r;
  r.image_key = j.at("key").get<std::string>();
  r.class_label = j.at("class").get<std::string>();
  r.input_path = j.at("input").get<std::string>();
  r.input_digest = read_optional_hex(j, "input_digest");
  r.spec = j.at("spec");
  r.seed = parse_hex64(j.at("seed").get<std::string>());
  r.output_path = j.at("output").get<std::string>();
  r.output_digest = read_optional_hex(j, "output_digest");
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  return r;
}

std::string Manifest::to_jsonl() const {
  std::string out;
  for (const auto& r : records) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

Manifest Manifest::parse_jsonl(std::string_view text) {
  Manifest m;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    try {
      m.records.push_back(
          ManifestRecord::from_json(nlohmann::ordered_json::parse(line.begin(), line.end())));
    } catch (const std::exception& e) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_jsonl(buf.str());
}

void Manifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  const std::string text = to_jsonl();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("short write to manifest " + path.string());
}

std::size_t Manifest::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.error.has_value(); }));
}

}  // namespace eit
