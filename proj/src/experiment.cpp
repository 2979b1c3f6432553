#include "cfmimo/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cfmimo/detection.hpp"
#include "cfmimo/metrics.hpp"
#include "cfmimo/parallel.hpp"
#include "cfmimo/pilot_design.hpp"
#include "cfmimo/pilots.hpp"
#include "cfmimo/sensing.hpp"
#include "cfmimo/sysmodel.hpp"

namespace cfmimo {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail_line(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail_line(line, "expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) fail_line(line, "trailing characters in integer '" + v + "'");
    return d;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail_line(line, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const std::uint64_t d = std::stoull(v, &pos);
    if (pos != v.size()) fail_line(line, "trailing characters in integer '" + v + "'");
    return d;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail_line(line, "expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail_line(line, "expected true/false, got '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(item, line));
  if (out.empty()) fail_line(line, "empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& v, int line) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(static_cast<int>(parse_int(item, line)));
  if (out.empty()) fail_line(line, "empty list");
  return out;
}

const std::map<std::string, ExperimentKind> kKinds = {
    {"design", ExperimentKind::Design},
    {"rates_cdf", ExperimentKind::RatesCdf},
    {"median_vs_tau", ExperimentKind::MedianVsTau},
    {"median_vs_K", ExperimentKind::MedianVsK},
    {"ber_sweep", ExperimentKind::BerSweep},
    {"ber_vs_ratio", ExperimentKind::BerVsRatio},
    {"acf_profile", ExperimentKind::AcfProfile},
    {"range_profile", ExperimentKind::RangeProfile},
};

std::string kind_name(ExperimentKind k) {
  for (const auto& [name, kind] : kKinds)
    if (kind == k) return name;
  return "?";
}

std::string format_17g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

void write_rows(const std::string& path, const std::string& schema, const std::string& header,
                const std::vector<std::string>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << "# schema: " << schema << "\n" << header << "\n";
  for (const auto& r : rows) f << r << "\n";
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

void check_schemes(const std::vector<std::string>& requested,
                   const std::set<std::string>& valid) {
  for (const auto& s : requested)
    if (!valid.count(s)) throw std::invalid_argument("unknown scheme: " + s);
}

Eigen::MatrixXd draw_beta(const SystemConfig& cfg, Rng& rng) {
  const NetworkGeometry geo = place_network(cfg, rng);
  Eigen::MatrixXd beta = large_scale_fading(geo, cfg, rng);
  if (cfg.normalize_beta) beta /= beta.mean();
  return beta;
}

OptimizerConfig optimizer_config(const ExperimentSpec& spec) {
  OptimizerConfig oc;
  oc.eps = spec.opt_eps;
  oc.i_max = spec.opt_max_iter;
  return oc;
}

// ---- rates pipelines -------------------------------------------------------

std::vector<std::string> rates_rows(const ExperimentSpec& spec, const SystemConfig& cfg) {
  std::vector<std::string> schemes = spec.schemes;
  if (schemes.empty()) schemes = {"random", "greedy", "tabu", "proposed"};
  check_schemes(schemes, {"random", "greedy", "tabu", "proposed"});
  validate(cfg);
  const OptimizerConfig oc = optimizer_config(spec);
  const double rho = sinr_rho(cfg);
  std::vector<std::vector<std::string>> per_trial(spec.trials);
  parallel_for(static_cast<std::size_t>(spec.trials), [&](std::size_t t) {
    const std::uint64_t seed_t = derive_seed(spec.master_seed, t);
    Rng rng(derive_seed(seed_t, 0));
    const Eigen::MatrixXd beta = draw_beta(cfg, rng);
    const PilotBasis basis = make_basis(cfg.tau, BasisFlavor::RandomUnitary, rng);
    std::vector<std::string>& rows = per_trial[t];
    for (std::size_t si = 0; si < schemes.size(); ++si) {
      // fixed per-scheme stream ids, so a scheme's rows do not depend on
      // which other schemes were requested
      const std::uint64_t sid = schemes[si] == "random"   ? 1
                                : schemes[si] == "greedy" ? 2
                                : schemes[si] == "tabu"   ? 3
                                                          : 4;
      Rng srng(derive_seed(seed_t, sid));
      Eigen::MatrixXcd F;
      if (schemes[si] == "random") {
        F = assign_random(basis, cfg.K, srng).F;
      } else if (schemes[si] == "greedy") {
        F = assign_greedy(basis, beta, cfg).F;
      } else if (schemes[si] == "tabu") {
        F = assign_tabu(basis, beta, cfg).F;
      } else {
        F = optimize_pilots(beta, rho, cfg.tau, oc, std::nullopt, srng).pilots.F;
      }
      const RateReport rep = rates(F, beta, cfg);
      for (int k = 0; k < cfg.K; ++k) {
        rows.push_back(std::to_string(t) + "," + std::to_string(k) + "," + schemes[si] + "," +
                       format_double(rep.rate_bits(k)) + "," + format_double(rep.net_bps(k)));
      }
    }
  });
  std::vector<std::string> rows;
  for (const auto& tr : per_trial) rows.insert(rows.end(), tr.begin(), tr.end());
  return rows;
}

const std::string kRatesHeader = "trial,user,scheme,rate_bits,net_bps";

std::vector<std::string> run_rates_cdf(const ExperimentSpec& spec) {
  write_rows(spec.out, "rates.v1", kRatesHeader, rates_rows(spec, spec.base));
  return {spec.out};
}

std::vector<std::string> run_median_sweep(const ExperimentSpec& spec, bool over_tau) {
  std::vector<std::string> files;
  if (over_tau) {
    for (const int tau : spec.tau_grid) {
      SystemConfig cfg = spec.base;
      cfg.tau = tau;
      const std::string path = with_suffix(spec.out, "_tau" + std::to_string(tau));
      write_rows(path, "rates.v1", kRatesHeader, rates_rows(spec, cfg));
      files.push_back(path);
    }
  } else {
    for (const int K : spec.K_grid) {
      SystemConfig cfg = spec.base;
      cfg.K = K;
      const std::string path = with_suffix(spec.out, "_K" + std::to_string(K));
      write_rows(path, "rates.v1", kRatesHeader, rates_rows(spec, cfg));
      files.push_back(path);
    }
  }
  return files;
}

// ---- detection pipelines ---------------------------------------------------

Scheme scheme_from_name(const std::string& s) {
  if (s == "mr") return Scheme::MR;
  if (s == "lmmse") return Scheme::LMMSE;
  if (s == "ep") return Scheme::EP;
  if (s == "gabp") return Scheme::GaBP;
  throw std::invalid_argument("unknown scheme: " + s);
}

const std::string kBerHeader = "snr_db,scheme,ber,bits_counted";

std::vector<std::string> ber_rows(const ExperimentSpec& spec, const SystemConfig& cfg) {
  std::vector<std::string> schemes = spec.schemes;
  if (schemes.empty()) schemes = {"mr", "lmmse", "ep", "gabp"};
  check_schemes(schemes, {"mr", "lmmse", "ep", "gabp"});
  BerScenario sc;
  sc.sys = cfg;
  sc.perfect_csi = spec.perfect_csi;
  sc.snr_dB = spec.snr_dB_grid;
  sc.min_bits = spec.min_bits;
  sc.symbols_per_drop = spec.symbols_per_drop;
  std::vector<std::vector<BerRecord>> recs;
  for (const auto& s : schemes)
    recs.push_back(ber_experiment(scheme_from_name(s), sc, spec.master_seed));
  std::vector<std::string> rows;
  for (std::size_t pt = 0; pt < sc.snr_dB.size(); ++pt) {
    for (std::size_t si = 0; si < schemes.size(); ++si) {
      const BerRecord& r = recs[si][pt];
      rows.push_back(format_double(r.snr_dB) + "," + schemes[si] + "," + format_double(r.ber) +
                     "," + std::to_string(r.bits_counted));
    }
  }
  return rows;
}

std::vector<std::string> run_ber_sweep(const ExperimentSpec& spec) {
  write_rows(spec.out, "ber.v1", kBerHeader, ber_rows(spec, spec.base));
  return {spec.out};
}

std::vector<std::string> run_ber_vs_ratio(const ExperimentSpec& spec) {
  std::vector<std::string> files;
  for (const double r : spec.ratio_grid) {
    SystemConfig cfg = spec.base;
    cfg.K = std::max(1, static_cast<int>(std::lround(r * cfg.tau)));
    const std::string path = with_suffix(spec.out, "_r" + format_double(r));
    write_rows(path, "ber.v1", kBerHeader, ber_rows(spec, cfg));
    files.push_back(path);
  }
  return files;
}

// ---- pilot design pipeline -------------------------------------------------

std::vector<std::string> run_design(const ExperimentSpec& spec) {
  validate(spec.base);
  const OptimizerConfig oc = optimizer_config(spec);
  const double rho = sinr_rho(spec.base);
  std::vector<std::string> files;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng(derive_seed(spec.master_seed, static_cast<std::uint64_t>(t)));
    const Eigen::MatrixXd beta = draw_beta(spec.base, rng);
    const DesignResult res =
        optimize_pilots(beta, rho, spec.base.tau, oc, std::nullopt, rng);
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < res.trace.size(); ++i)
      rows.push_back(std::to_string(i) + "," + format_double(res.trace[i]));
    const std::string path =
        spec.trials > 1 ? with_suffix(spec.out, "_t" + std::to_string(t)) : spec.out;
    write_rows(path, "design.v1", "iteration,objective_bits", rows);
    files.push_back(path);
  }
  return files;
}

// ---- sensing pipelines -----------------------------------------------------

std::vector<std::string> run_acf_profile(const ExperimentSpec& spec) {
  std::vector<std::string> schemes = spec.schemes;
  if (schemes.empty()) schemes = {"proposed", "random"};
  check_schemes(schemes, {"proposed", "random"});
  validate(spec.base);
  AcfMode mode;
  if (spec.acf_mode == "aperiodic") {
    mode = AcfMode::Aperiodic;
  } else if (spec.acf_mode == "periodic") {
    mode = AcfMode::Periodic;
  } else {
    throw std::invalid_argument("acf_mode must be aperiodic or periodic");
  }
  const OptimizerConfig oc = optimizer_config(spec);
  const double rho = sinr_rho(spec.base);
  std::vector<std::string> rows;
  for (std::size_t si = 0; si < schemes.size(); ++si) {
    const std::uint64_t seed_s =
        derive_seed(spec.master_seed, schemes[si] == "proposed" ? 1000 : 1001);
    std::vector<Eigen::VectorXcd> seqs(spec.n_sequences);
    parallel_for(static_cast<std::size_t>(spec.n_sequences), [&](std::size_t i) {
      Rng rng(derive_seed(seed_s, i));
      const int col = static_cast<int>(i) % spec.base.K;
      if (schemes[si] == "proposed") {
        const Eigen::MatrixXd beta = draw_beta(spec.base, rng);
        const DesignResult res =
            optimize_pilots(beta, rho, spec.base.tau, oc, std::nullopt, rng);
        seqs[i] = time_domain_pilot(res.pilots, col);
      } else {
        const PilotBasis basis = make_basis(spec.base.tau, BasisFlavor::RandomUnitary, rng);
        seqs[i] = time_domain_pilot(assign_random(basis, spec.base.K, rng), col);
      }
    });
    std::size_t next = 0;
    const SidelobeProfile prof = sidelobe_profile_dB(
        [&seqs, &next]() { return seqs[next++]; }, spec.n_sequences, mode);
    for (std::size_t i = 0; i < prof.lags.size(); ++i)
      rows.push_back(std::to_string(prof.lags[i]) + "," + schemes[si] + "," +
                     format_double(prof.level_dB(static_cast<Eigen::Index>(i))));
  }
  write_rows(spec.out, "acf.v1", "lag,scheme,level_db", rows);
  return {spec.out};
}

std::vector<std::string> run_range_profile(const ExperimentSpec& spec) {
  validate(spec.base);
  const OptimizerConfig oc = optimizer_config(spec);
  const double rho = sinr_rho(spec.base);
  std::vector<std::string> files;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng(derive_seed(spec.master_seed, static_cast<std::uint64_t>(t)));
    const Eigen::MatrixXd beta = draw_beta(spec.base, rng);
    const DesignResult res =
        optimize_pilots(beta, rho, spec.base.tau, oc, std::nullopt, rng);
    RangeScene scene;
    scene.pilot = time_domain_pilot(res.pilots, 0);
    scene.snr_dB = spec.target_snr_dB;
    scene.bandwidth_Hz = spec.base.bandwidth_Hz;
    for (const double r : spec.target_ranges_m) scene.targets.push_back({r, {1.0, 0.0}});
    const RangeProfile prof = range_profile(scene, rng);
    std::vector<std::string> rows;
    for (Eigen::Index i = 0; i < prof.range_m.size(); ++i)
      rows.push_back(format_double(prof.range_m(i)) + ",proposed," +
                     format_double(prof.magnitude_dB(i)));
    const std::string path =
        spec.trials > 1 ? with_suffix(spec.out, "_t" + std::to_string(t)) : spec.out;
    write_rows(path, "range.v1", "range_m,scheme,magnitude_db", rows);
    files.push_back(path);
  }
  return files;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ExperimentSpec parse_config(const std::string& text) {
  ExperimentSpec spec;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail_line(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail_line(line, "empty key");
    if (val.empty()) fail_line(line, "empty value for key '" + key + "'");

    if (key == "kind") {
      const auto it = kKinds.find(val);
      if (it == kKinds.end()) fail_line(line, "unknown kind '" + val + "'");
      spec.kind = it->second;
    } else if (key == "trials") {
      spec.trials = static_cast<int>(parse_int(val, line));
    } else if (key == "master_seed") {
      spec.master_seed = parse_u64(val, line);
    } else if (key == "out") {
      spec.out = val;
    } else if (key == "schemes") {
      spec.schemes = split_list(val);
    } else if (key == "L") {
      spec.base.L = static_cast<int>(parse_int(val, line));
    } else if (key == "K") {
      spec.base.K = static_cast<int>(parse_int(val, line));
    } else if (key == "tau") {
      spec.base.tau = static_cast<int>(parse_int(val, line));
    } else if (key == "area_size_m") {
      spec.base.area_size_m = parse_double(val, line);
    } else if (key == "d0_m") {
      spec.base.d0_m = parse_double(val, line);
    } else if (key == "d1_m") {
      spec.base.d1_m = parse_double(val, line);
    } else if (key == "fc_MHz") {
      spec.base.fc_MHz = parse_double(val, line);
    } else if (key == "bandwidth_Hz") {
      spec.base.bandwidth_Hz = parse_double(val, line);
    } else if (key == "noise_figure_dB") {
      spec.base.noise_figure_dB = parse_double(val, line);
    } else if (key == "ap_height_m") {
      spec.base.h_ap_m = parse_double(val, line);
    } else if (key == "ue_height_m") {
      spec.base.h_ue_m = parse_double(val, line);
    } else if (key == "shadow_sigma_dB") {
      spec.base.sigma_sh_dB = parse_double(val, line);
    } else if (key == "pilot_power_W") {
      spec.base.p_pilot_W = parse_double(val, line);
    } else if (key == "uplink_power_W") {
      spec.base.p_uplink_W = parse_double(val, line);
    } else if (key == "coherence_symbols") {
      spec.base.coherence_T = static_cast<int>(parse_int(val, line));
    } else if (key == "eta") {
      spec.base.eta = parse_double(val, line);
    } else if (key == "duplex_factor") {
      spec.base.duplex_factor = parse_double(val, line);
    } else if (key == "pathloss_const_dB") {
      spec.base.pathloss_const_dB = parse_double(val, line);
    } else if (key == "shadowing_everywhere") {
      spec.base.shadowing_everywhere = parse_bool(val, line);
    } else if (key == "normalize_beta") {
      spec.base.normalize_beta = parse_bool(val, line);
    } else if (key == "sinr_power") {
      if (val == "pilot") {
        spec.base.sinr_power = SinrPower::pilot;
      } else if (val == "uplink") {
        spec.base.sinr_power = SinrPower::uplink;
      } else {
        fail_line(line, "sinr_power must be pilot or uplink");
      }
    } else if (key == "snr_db_grid") {
      spec.snr_dB_grid = parse_double_list(val, line);
    } else if (key == "tau_grid") {
      spec.tau_grid = parse_int_list(val, line);
    } else if (key == "K_grid") {
      spec.K_grid = parse_int_list(val, line);
    } else if (key == "ratio_grid") {
      spec.ratio_grid = parse_double_list(val, line);
    } else if (key == "min_bits") {
      spec.min_bits = parse_int(val, line);
    } else if (key == "symbols_per_drop") {
      spec.symbols_per_drop = static_cast<int>(parse_int(val, line));
    } else if (key == "perfect_csi") {
      spec.perfect_csi = parse_bool(val, line);
    } else if (key == "n_sequences") {
      spec.n_sequences = static_cast<int>(parse_int(val, line));
    } else if (key == "acf_mode") {
      if (val != "aperiodic" && val != "periodic")
        fail_line(line, "acf_mode must be aperiodic or periodic");
      spec.acf_mode = val;
    } else if (key == "target_ranges_m") {
      spec.target_ranges_m = parse_double_list(val, line);
    } else if (key == "target_snr_db") {
      spec.target_snr_dB = parse_double(val, line);
    } else if (key == "opt_eps") {
      spec.opt_eps = parse_double(val, line);
    } else if (key == "opt_max_iter") {
      spec.opt_max_iter = static_cast<int>(parse_int(val, line));
    } else {
      fail_line(line, "unknown key '" + key + "'");
    }
  }
  if (spec.trials < 1) throw std::runtime_error("config: trials must be >= 1");
  validate(spec.base);
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentSpec& spec) {
  std::ostringstream o;
  o << "kind = " << kind_name(spec.kind) << "\n";
  o << "trials = " << spec.trials << "\n";
  o << "master_seed = " << spec.master_seed << "\n";
  o << "out = " << spec.out << "\n";
  if (!spec.schemes.empty()) o << "schemes = " << join(spec.schemes) << "\n";
  const SystemConfig& b = spec.base;
  o << "L = " << b.L << "\n";
  o << "K = " << b.K << "\n";
  o << "tau = " << b.tau << "\n";
  o << "area_size_m = " << format_17g(b.area_size_m) << "\n";
  o << "d0_m = " << format_17g(b.d0_m) << "\n";
  o << "d1_m = " << format_17g(b.d1_m) << "\n";
  o << "fc_MHz = " << format_17g(b.fc_MHz) << "\n";
  o << "bandwidth_Hz = " << format_17g(b.bandwidth_Hz) << "\n";
  o << "noise_figure_dB = " << format_17g(b.noise_figure_dB) << "\n";
  o << "ap_height_m = " << format_17g(b.h_ap_m) << "\n";
  o << "ue_height_m = " << format_17g(b.h_ue_m) << "\n";
  o << "shadow_sigma_dB = " << format_17g(b.sigma_sh_dB) << "\n";
  o << "pilot_power_W = " << format_17g(b.p_pilot_W) << "\n";
  o << "uplink_power_W = " << format_17g(b.p_uplink_W) << "\n";
  o << "coherence_symbols = " << b.coherence_T << "\n";
  o << "eta = " << format_17g(b.eta) << "\n";
  o << "duplex_factor = " << format_17g(b.duplex_factor) << "\n";
  if (b.pathloss_const_dB) o << "pathloss_const_dB = " << format_17g(*b.pathloss_const_dB) << "\n";
  o << "shadowing_everywhere = " << (b.shadowing_everywhere ? "true" : "false") << "\n";
  o << "normalize_beta = " << (b.normalize_beta ? "true" : "false") << "\n";
  o << "sinr_power = " << (b.sinr_power == SinrPower::pilot ? "pilot" : "uplink") << "\n";
  auto emit_dlist = [&o](const char* key, const std::vector<double>& v) {
    o << key << " = ";
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << format_17g(v[i]);
    o << "\n";
  };
  auto emit_ilist = [&o](const char* key, const std::vector<int>& v) {
    o << key << " = ";
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << "\n";
  };
  emit_dlist("snr_db_grid", spec.snr_dB_grid);
  emit_ilist("tau_grid", spec.tau_grid);
  emit_ilist("K_grid", spec.K_grid);
  emit_dlist("ratio_grid", spec.ratio_grid);
  o << "min_bits = " << spec.min_bits << "\n";
  o << "symbols_per_drop = " << spec.symbols_per_drop << "\n";
  o << "perfect_csi = " << (spec.perfect_csi ? "true" : "false") << "\n";
  o << "n_sequences = " << spec.n_sequences << "\n";
  o << "acf_mode = " << spec.acf_mode << "\n";
  emit_dlist("target_ranges_m", spec.target_ranges_m);
  o << "target_snr_db = " << format_17g(spec.target_snr_dB) << "\n";
  o << "opt_eps = " << format_17g(spec.opt_eps) << "\n";
  o << "opt_max_iter = " << spec.opt_max_iter << "\n";
  return o.str();
}

std::vector<std::string> run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  switch (spec.kind) {
    case ExperimentKind::Design: return run_design(spec);
    case ExperimentKind::RatesCdf: return run_rates_cdf(spec);
    case ExperimentKind::MedianVsTau: return run_median_sweep(spec, true);
    case ExperimentKind::MedianVsK: return run_median_sweep(spec, false);
    case ExperimentKind::BerSweep: return run_ber_sweep(spec);
    case ExperimentKind::BerVsRatio: return run_ber_vs_ratio(spec);
    case ExperimentKind::AcfProfile: return run_acf_profile(spec);
    case ExperimentKind::RangeProfile: return run_range_profile(spec);
  }
  throw std::logic_error("run_experiment: unhandled kind");
}

}  // namespace cfmimo
