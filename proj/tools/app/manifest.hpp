#pragma once

#include "commands.hpp"

#include <filesystem>
#include <string>

namespace axionkit::app {

//! FNV-1a 64 of the file bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path &path);

//! manifest.json: config echo, seed, versions and a digest per artifact.
//! Contains no time stamps, so identical runs give identical manifests.
void write_manifest(const RunContext &ctx);

struct ReplayReport {
  std::size_t compared = 0;
  std::vector<std::string> mismatched;
};

//! Re-run a manifest into `out` and compare every CSV digest.
ReplayReport replay(const std::filesystem::path &manifest, const std::filesystem::path &out);

} // namespace axionkit::app
