// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prufer/prufer.h"

namespace
{

struct Options
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  int threads = 0;
};

int report(prufer_status s)
{
  std::cerr << "prufer: " << prufer_last_error_kind() << ": " << prufer_last_error() << '\n';
  return static_cast<int>(s);
}

int run(const std::string &command, const Options &opt)
{
  prufer_config *cfg = nullptr;
  prufer_status s = prufer_config_load(opt.config.c_str(), &cfg);
  if (s != PRUFER_OK)
    return report(s);
  if (opt.seed)
    prufer_config_set_seed(cfg, *opt.seed);
  const std::string out = !opt.out.empty() ? opt.out : prufer_config_output(cfg);
  const std::string format = !opt.format.empty() ? opt.format : prufer_config_format(cfg);

  prufer_table *table = nullptr;
  s = prufer_run(cfg, command.c_str(), opt.threads, &table);
  const std::string error = prufer_last_error(), kind = prufer_last_error_kind();
  prufer_config_free(cfg);
  if (table)
  {
    const prufer_status w = prufer_table_write(table, out.empty() ? nullptr : out.c_str(), format.c_str());
    prufer_table_free(table);
    if (w != PRUFER_OK)
      return report(w);
  }
  if (s != PRUFER_OK)
  {
    std::cerr << "prufer: " << kind << ": " << error << '\n';
    return static_cast<int>(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Generalized Prufer variables for perturbed Jacobi and CMV recursions"};
  app.set_version_flag("--version", std::string(prufer_version()));
  app.require_subcommand(1);

  Options opt;
  const std::pair<const char *, const char *> commands[] = {
      {"band-scan", "Locate bands of a periodic background"},
      {"trajectory", "Prufer amplitude and phase along a perturbed recursion"},
      {"random-mc", "Monte-Carlo moments of R(n)^4 under random decaying perturbations"},
      {"wvn-scan", "sup R and small-divisor flags for oscillatory perturbations"},
      {"lambda-check", "Periodic-summation operator and summation-by-parts checks"},
      {"dfly-check", "Residual of the two-sided CMV factorization identity"},
      {"validate-spec", "Check a perturbation description against its class conditions"},
  };
  std::string chosen;
  for (const auto &[name, help] : commands)
  {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "Experiment configuration (JSON)")->required();
    sub->add_option("--seed", opt.seed, "Override the configured seed");
    sub->add_option("--out", opt.out, "Output file (default: config output or stdout)");
    sub->add_option("--format", opt.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--threads", opt.threads, "Worker threads (0 = default)")
        ->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(PRUFER_ERR_VALIDATION);
  }
  return run(chosen, opt);
}
