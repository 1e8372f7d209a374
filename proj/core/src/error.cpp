#include "axionkit/error.hpp"

#include <utility>

namespace axionkit {

namespace {
std::string summarize(const std::vector<FieldIssue> &issues) {
  std::string out = "invalid configuration";
  for (const auto &issue : issues) {
    out += "\n  ";
    out += issue.field;
    out += ": ";
    out += issue.message;
  }
  return out;
}
} // namespace

ConfigError::ConfigError(std::vector<FieldIssue> issues)
    : Error(summarize(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string field, std::string message)
    : ConfigError(std::vector<FieldIssue>{{std::move(field), std::move(message)}}) {}

} // namespace axionkit
