#pragma once

#include "axionkit/config.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace axionkit::app {

struct RunContext {
  std::string subcommand;
  config::RunConfig cfg;
  std::filesystem::path out;
  std::vector<std::string> files; //!< written artifacts, relative to `out`
  nlohmann::json summary = nlohmann::json::object();

  std::filesystem::path file(const std::string &name);
};

using Command = std::function<void(RunContext &)>;

struct CommandInfo {
  std::string name;
  std::string description;
  Command run;
};

const std::vector<CommandInfo> &commands();
const CommandInfo *find_command(const std::string &name);

//! Create the output directory, run, write the manifest.
void execute(RunContext &ctx);

} // namespace axionkit::app
