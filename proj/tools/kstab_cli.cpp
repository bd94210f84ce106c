// kstab: command line front end. JSON goes to stdout, a short text
// summary to stderr (or only the text to stdout with --format text).

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "kstab/commands.hpp"
#include "kstab/report.hpp"

using namespace kstab;

namespace {

std::filesystem::path catalog_dir() {
  if (const char* env = std::getenv("KSTAB_CATALOG_DIR")) return env;
#ifdef KSTAB_CATALOG_DIR
  return KSTAB_CATALOG_DIR;
#else
  return "catalog";
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-stability of spherical varieties from root data and moment polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  CommandSettings s;
  s.catalog_dir = catalog_dir();
  std::string format = "json";
  app.add_option("--net-denominator", s.net_denominator, "Farey denominator bound of the scan direction net");
  app.add_option("--tolerance", s.tolerance, "Soliton residual tolerance");
  app.add_option("--svg", s.svg, "Write an SVG figure (envelope command)");
  app.add_flag("--no-shift", s.no_shift, "Do not move the origin into P before the flux form of L_X");
  app.add_flag("--permissive-colours", s.permissive_colours, "Report invalid colour images instead of failing");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  const std::pair<const char*, const char*> commands[] = {
      {"check-convexity", "Weyl-extension convexity of P+ (exit 1 when not convex)"},
      {"futaki", "Futaki functionals on the test functions"},
      {"extremal", "Extremal field and Theta function"},
      {"stability", "Barycenter verdict and witness scan (exit 0/2/3)"},
      {"degenerate", "Polystable degeneration of a strictly semistable rank 2 input"},
      {"envelope", "Convex envelope, Monge-Ampere check and crease search"},
      {"soliton", "Soliton vector field by damped Newton"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", s.file, "Problem file or catalog name")->required();
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    CommandOutput o = run_command(chosen, s);
    if (format == "text") {
      std::cout << o.text;
    } else {
      std::cout << o.json.dump(2) << "\n";
      std::cerr << o.text;
    }
    return o.code;
  } catch (const Error& e) {
    if (format != "text") std::cout << error_json(e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
