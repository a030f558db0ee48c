#include <exception>
#include <functional>
#include <map>

#include "CLI11.hpp"

#include "commands.hpp"

namespace catseye::cli {
namespace {

enum Group : unsigned {
  kGrid = 1u << 0,
  kEll = 1u << 1,
  kNewton = 1u << 2,
  kSweep = 1u << 3,
  kCertifyFlag = 1u << 4,
  kCertifyMode = 1u << 5,
  kSolitary = 1u << 6,
};

void add_options(CLI::App& sub, RunConfig& c, unsigned groups) {
  sub.add_option("--b", c.b, "vorticity magnitude (gamma = b^-3/2)");
  sub.add_option("--s", c.s, "bottom slip of the laminar flow");
  sub.add_option("--gamma", c.gamma, "weak-gravity parameter (instead of --b)");
  sub.add_flag("--diagonal", c.diagonal, "use s = -gamma");
  sub.add_option("--ball", c.ball, "admissible-ball radius for warnings");
  sub.add_option("--modes", c.modes, "number of Sturm-Liouville modes");
  sub.add_option("--out", c.out, "output directory");
  sub.add_option("--config", c.config_path, "JSON file with flat keys mirroring the flags");
  if (groups & kGrid) {
    sub.add_option("--nx", c.nx, "grid columns");
    sub.add_option("--ny", c.ny, "grid row intervals");
    sub.add_option("--y-order", c.y_order, "order of the y stencils (2 or 4)");
    sub.add_flag("--svg", c.svg, "also write an SVG of the structure");
    sub.add_flag("--no-field", c.no_field, "skip field.csv");
  }
  if (groups & kEll) {
    sub.add_option("--ell", c.ell, "energy level of the periodic orbit");
    sub.add_option("--ell-ratio", c.ell_ratio, "energy level as a fraction of L");
    sub.add_option("--ode-tol", c.ode_tol, "orbit integrator tolerance");
  }
  if (groups & kNewton) {
    sub.add_option("--tol", c.tol, "Newton residual tolerance");
    sub.add_option("--max-iter", c.max_iter, "Newton iteration cap");
  }
  if (groups & kSolitary) sub.add_option("--x1-max", c.x1_max, "solitary domain half-width in x1");
  if (groups & kCertifyFlag) sub.add_flag("--certify", c.certify, "exit 5 unless the structure certifies");
  if (groups & kCertifyMode) {
    sub.add_option("--mode", c.mode, "periodic (default) or solitary");
    sub.add_flag("--refine", c.refine, "repeat on a 2x refined grid and compare counts");
  }
  if (groups & kSweep) {
    sub.add_option("--sweep", c.sweep, "swept parameter: eps, b, s or ell-ratio");
    sub.add_option("--values", c.values, "comma-separated values");
    sub.add_option("--range", c.range, "lo:hi:count");
    sub.add_flag("--log", c.log_range, "geometric spacing for --range");
    sub.add_flag("--newton", c.newton, "Newton-validate every row");
    sub.add_option("--threads", c.threads, "worker threads");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Solitary and long-periodic water waves with a cat's-eye vortex", "catseye"};
  app.require_subcommand(1);
  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  std::map<std::string, Command> commands = {
      {"laminar", cmd_laminar}, {"spectrum", cmd_spectrum}, {"solitary", cmd_solitary},
      {"periodic", cmd_periodic}, {"sweep", cmd_sweep}, {"certify", cmd_certify}};
  struct Spec {
    const char* name;
    const char* help;
    unsigned groups;
  };
  const Spec specs[] = {
      {"laminar", "laminar flow, conjugate flow and admissibility", 0},
      {"spectrum", "dispersion root, eigenpairs and reduced coefficients", 0},
      {"solitary", "leading-order solitary wave with diagnostics", kGrid | kSolitary | kCertifyFlag},
      {"periodic", "long-periodic wave, optional Newton validation",
       kGrid | kEll | kNewton | kCertifyFlag},
      {"sweep", "scalar outputs over a parameter sweep", kGrid | kEll | kNewton | kSweep},
      {"certify", "structural certification of a validated wave",
       kGrid | kEll | kNewton | kSolitary | kCertifyMode},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_options(*sub, config, s.groups);
    if (std::string(s.name) == "periodic") sub->add_flag("--newton", config.newton, "solve the full problem");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "catseye: " << e.what() << "\nrun 'catseye --help' for usage\n";
    return kConfig;
  }

  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  try {
    if (config.config_path) overlay_file(config, *config.config_path);
    validate(config);
    return commands.at(config.command)(config, out);
  } catch (const ConfigError& e) {
    err << "catseye " << config.command << ": " << e.what() << "\nrun 'catseye " << config.command
        << " --help' for usage\n";
    return kConfig;
  } catch (const Error& e) {
    err << "catseye: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "catseye " << config.command << ": internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace catseye::cli
