#include "manifest.hpp"

#include "axionkit/config.hpp"
#include "axionkit/error.hpp"
#include "axionkit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace axionkit::app {

std::string file_digest(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw Error("cannot read " + path.string());
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(is), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const RunContext &ctx) {
  auto files = ctx.files;
  std::sort(files.begin(), files.end());
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto &f : files) {
    outputs.push_back({{"file", f}, {"fnv1a64", file_digest(ctx.out / f)}});
  }
  nlohmann::json m = {{"schema_version", io::json_schema_version},
                      {"kind", "manifest"},
                      {"subcommand", ctx.subcommand},
                      {"seed", ctx.cfg.noise.seed},
                      {"build", config::build_info()},
                      {"config", config::to_json(ctx.cfg)},
                      {"summary", ctx.summary},
                      {"outputs", outputs}};
  io::write_json(ctx.out / "manifest.json", m);
}

ReplayReport replay(const std::filesystem::path &manifest, const std::filesystem::path &out) {
  std::ifstream is(manifest);
  if (!is) {
    throw ConfigError("<manifest>", "cannot open " + manifest.string());
  }
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("<manifest>", e.what());
  }
  if (m.value("kind", "") != "manifest" || !m.contains("config") || !m.contains("subcommand")) {
    throw ConfigError("<manifest>", "not an axionkit run manifest");
  }
  RunContext ctx;
  ctx.subcommand = m.at("subcommand").get<std::string>();
  auto config_json = m.at("config");
  config_json["output"]["directory"] = out.string();
  ctx.cfg = config::from_json(config_json);
  execute(ctx);

  ReplayReport report;
  for (const auto &entry : m.at("outputs")) {
    const auto name = entry.at("file").get<std::string>();
    if (std::filesystem::path(name).extension() != ".csv") {
      continue;
    }
    ++report.compared;
    const auto fresh = out / name;
    if (!std::filesystem::exists(fresh) ||
        file_digest(fresh) != entry.at("fnv1a64").get<std::string>()) {
      report.mismatched.push_back(name);
    }
  }
  return report;
}

} // namespace axionkit::app
