#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfmimo/experiment.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::vector<std::string> schemes;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "flat key=value configuration file");
  cmd->add_option("--out", f.out, "output CSV path");
  cmd->add_option("--scheme", f.schemes, "scheme to run (repeatable)");
  cmd->add_option("--seed", f.seed, "master seed")->each([&f](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--trials", f.trials, "Monte Carlo trials");
}

cfmimo::ExperimentSpec build_spec(const CommonFlags& f, cfmimo::ExperimentKind fallback,
                                  bool force_kind) {
  cfmimo::ExperimentSpec spec;
  if (!f.config.empty()) spec = cfmimo::load_config(f.config);
  if (f.config.empty() || force_kind) spec.kind = fallback;
  if (!f.out.empty()) spec.out = f.out;
  if (!f.schemes.empty()) spec.schemes = f.schemes;
  if (f.seed_set) spec.master_seed = f.seed;
  if (f.trials > 0) spec.trials = f.trials;
  return spec;
}

int run(const cfmimo::ExperimentSpec& spec) {
  for (const auto& path : cfmimo::run_experiment(spec)) std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cell-free massive MIMO pilot design and uplink experiments"};
  app.require_subcommand(1);

  CommonFlags design_f, rates_f, ber_f, acf_f, range_f;
  auto* design = app.add_subcommand("design-pilots", "optimize pilots, emit objective trace");
  add_common(design, design_f);
  auto* rates = app.add_subcommand("rates", "per-user rates across assignment schemes");
  add_common(rates, rates_f);
  auto* ber = app.add_subcommand("ber", "uplink detector bit error rates");
  add_common(ber, ber_f);
  auto* acfc = app.add_subcommand("acf", "averaged autocorrelation sidelobe profiles");
  add_common(acfc, acf_f);
  auto* range = app.add_subcommand("range-profile", "matched-filter range profile");
  add_common(range, range_f);

  CLI11_PARSE(app, argc, argv);

  try {
    using cfmimo::ExperimentKind;
    if (design->parsed()) return run(build_spec(design_f, ExperimentKind::Design, true));
    if (rates->parsed()) {
      // the config may select any of the rate pipelines; plain `rates` maps
      // to the per-user CDF experiment
      cfmimo::ExperimentSpec spec = build_spec(rates_f, ExperimentKind::RatesCdf, false);
      if (spec.kind != ExperimentKind::RatesCdf && spec.kind != ExperimentKind::MedianVsTau &&
          spec.kind != ExperimentKind::MedianVsK)
        spec.kind = ExperimentKind::RatesCdf;
      return run(spec);
    }
    if (ber->parsed()) {
      cfmimo::ExperimentSpec spec = build_spec(ber_f, ExperimentKind::BerSweep, false);
      if (spec.kind != ExperimentKind::BerSweep && spec.kind != ExperimentKind::BerVsRatio)
        spec.kind = ExperimentKind::BerSweep;
      return run(spec);
    }
    if (acfc->parsed()) return run(build_spec(acf_f, ExperimentKind::AcfProfile, true));
    if (range->parsed()) return run(build_spec(range_f, ExperimentKind::RangeProfile, true));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
