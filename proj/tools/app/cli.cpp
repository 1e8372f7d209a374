#include "app.hpp"
#include "commands.hpp"
#include "manifest.hpp"

#include "axionkit/config.hpp"
#include "axionkit/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

namespace axionkit::app {

namespace {

std::string override_listing() {
  std::ostringstream os;
  os << "\nConfig keys (settable in the JSON file or with --set key=value):\n";
  for (const auto &k : config::keys()) {
    os << "  " << k.key << " <" << k.type << "> = " << k.default_value.dump() << "\n      "
       << k.help << "\n";
  }
  os << "\nExit codes: 0 success, 2 configuration error, 3 numerical or IO failure.\n";
  return os.str();
}

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> preset;
  std::optional<std::string> gains;
};

int report_config_error(const ConfigError &e) {
  std::cerr << "axionkit: " << e.what() << "\n";
  return exit_config;
}

int run_subcommand(const std::string &name, const CommonOptions &opts) {
  RunContext ctx;
  ctx.subcommand = name;
  ctx.cfg = config::load(opts.config_path);
  if (opts.preset) {
    config::apply_override(ctx.cfg, "sensitivity.preset=\"" + *opts.preset + "\"");
  }
  if (opts.gains) {
    config::apply_override(ctx.cfg, "sensitivity.gains=\"" + *opts.gains + "\"");
  }
  for (const auto &s : opts.sets) {
    config::apply_override(ctx.cfg, s);
  }
  if (opts.seed) {
    ctx.cfg.noise.seed = *opts.seed;
  }
  if (opts.out) {
    ctx.cfg.output.directory = *opts.out;
  }
  ctx.cfg.validate();
  execute(ctx);
  std::cout << ctx.summary.dump(2) << "\n";
  for (const auto &f : ctx.files) {
    std::cout << "wrote " << (ctx.out / f).string() << "\n";
  }
  std::cout << "wrote " << (ctx.out / "manifest.json").string() << "\n";
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args) {
  CLI::App app{"axionkit: axion-wind modulation and sensitivity toolkit", "axionkit"};
  app.require_subcommand(1);
  app.footer(override_listing());

  CommonOptions opts;
  std::string selected;
  for (const auto &info : commands()) {
    auto *sub = app.add_subcommand(info.name, info.description);
    sub->add_option("--config", opts.config_path, "strict JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--set", opts.sets, "override one key, e.g. --set noise.white_psd=250")
        ->take_all()
        ->allow_extra_args(false);
    sub->add_option("--seed", opts.seed, "master noise seed (noise.seed)");
    sub->add_option("--out", opts.out, "output directory (output.directory)");
    if (info.name == "sensitivity") {
      sub->add_option("--preset", opts.preset, "current, future or custom (sensitivity.preset)");
      sub->add_option("--gains", opts.gains,
                      "none, all, or matched,three_axis,sqrt_n (sensitivity.gains)");
    }
    sub->footer(override_listing());
    sub->callback([&selected, name = info.name] { selected = name; });
  }

  std::string manifest_path;
  std::string replay_out;
  auto *rp = app.add_subcommand("replay", "re-run a manifest and compare CSV digests");
  rp->add_option("manifest", manifest_path, "manifest.json of an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  rp->add_option("--out", replay_out, "output directory (default: <manifest dir>/replay)");
  rp->callback([&selected] { selected = "replay"; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (selected == "replay") {
      std::filesystem::path out = replay_out;
      if (out.empty()) {
        out = std::filesystem::path(manifest_path).parent_path() / "replay";
      }
      const auto report = replay(manifest_path, out);
      std::cout << "compared " << report.compared << " CSV file(s) in " << out.string() << "\n";
      for (const auto &f : report.mismatched) {
        std::cout << "differs: " << f << "\n";
      }
      if (!report.mismatched.empty()) {
        return exit_numerical;
      }
      std::cout << "all CSV outputs are byte-identical\n";
      return exit_ok;
    }
    return run_subcommand(selected, opts);
  } catch (const ConfigError &e) {
    return report_config_error(e);
  } catch (const InvalidArgument &e) {
    std::cerr << "axionkit: invalid parameters: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericalError &e) {
    std::cerr << "axionkit: numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception &e) {
    std::cerr << "axionkit: " << e.what() << "\n";
    return exit_numerical;
  }
}

int run(int argc, char **argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(args);
}

} // namespace axionkit::app
