#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace arns::cli {

struct Command {
  CLI::App* app;
  std::function<nlohmann::json()> run;
};

/// Adds every subcommand to `app`. Option storage lives in the returned
/// handlers, which must outlive parsing.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace arns::cli
