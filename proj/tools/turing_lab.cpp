#include <iostream>

#include "CLI11.hpp"
#include "turing/app.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Cross-diffusion predator-prey lab"};
  turing::AppArgs args;
  cli.add_option("mode", args.mode,
                 "equilibria | dispersion | band | ode | simulate | sweep | lyapunov-check | table")
      ->required();
  cli.add_option("--config", args.config_path, "experiment config file")->required();
  cli.add_option("--set", args.sets, "override, section.key=value (repeatable)");
  std::string out;
  auto* out_opt = cli.add_option("--out", out, "output directory (default: [output] dir)");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : turing::kExitConfig;
  }
  if (*out_opt) args.out_dir = out;
  return turing::run_app(args, std::cout, std::cerr);
}
