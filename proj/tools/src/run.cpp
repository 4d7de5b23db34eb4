#include "arns_cli/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "arns/error.hpp"
#include "commands.hpp"
#include "options.hpp"

namespace arns::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Angular-radial LG mode simulation: states, Bell tests, overlaps, holograms",
               "arns"};
  app.set_config("--config", "", "INI file; [subcommand] sections, flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.footer(
      "Lengths are in meters and accept the suffixes m, mm, um, nm (e.g. 750um).\n"
      "Exit status: 0 success, 1 computation error, 2 usage or validation error.");

  auto commands = register_commands(app);
  for (auto& c : commands) c.app->allow_config_extras(CLI::config_extras_mode::error);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      out << c.run().dump() << '\n';
      return kExitOk;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return is_validation_error(e.code()) ? kExitUsage : kExitComputation;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitComputation;
    }
  }
  return kExitUsage;
}

}  // namespace arns::cli
