#include "cfmimo/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "cfmimo/metrics.hpp"
#include "cfmimo/parallel.hpp"
#include "cfmimo/pilots.hpp"
#include "cfmimo/sysmodel.hpp"

namespace cfmimo {

Constellation Constellation::qpsk(double energy) {
  Constellation c;
  c.E_S = energy;
  c.c_x = std::sqrt(energy / 2.0);
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1)
      c.points[2 * b0 + b1] = {c.c_x * (1 - 2 * b0), c.c_x * (1 - 2 * b1)};
  return c;
}

Eigen::VectorXcd modulate(const std::vector<int>& bits, const Constellation& c) {
  if (bits.size() % 2 != 0) throw std::invalid_argument("modulate: odd bit count");
  Eigen::VectorXcd x(bits.size() / 2);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = c.points[2 * bits[2 * i] + bits[2 * i + 1]];
  return x;
}

std::vector<int> demodulate(const Eigen::VectorXcd& x) {
  std::vector<int> bits(2 * x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    bits[2 * i] = x(i).real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = x(i).imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

namespace {

DetectionResult finish(Eigen::VectorXcd x_hat, const Constellation& c) {
  DetectionResult r;
  r.bits = demodulate(x_hat);
  r.hard.resize(x_hat.size());
  for (Eigen::Index k = 0; k < x_hat.size(); ++k)
    r.hard(k) = c.points[2 * r.bits[2 * k] + r.bits[2 * k + 1]];
  r.x_hat = std::move(x_hat);
  return r;
}

}  // namespace

DetectionResult mr_combine(const Eigen::MatrixXcd& g_hat, const Eigen::VectorXcd& y,
                           const Eigen::VectorXd& ds, const Constellation& c) {
  const Eigen::VectorXcd stat = ((g_hat.adjoint() * y).array() / ds.array()).matrix();
  return finish(stat, c);
}

DetectionResult lmmse_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                             const Constellation& c) {
  if (ch.noise_var <= 0.0) throw std::invalid_argument("lmmse_detect: noise_var must be > 0");
  const auto K = ch.H.cols();
  const Eigen::MatrixXcd A =
      ch.H.adjoint() * ch.H +
      (ch.noise_var / c.E_S) * Eigen::MatrixXcd::Identity(K, K);
  const Eigen::LLT<Eigen::MatrixXcd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("lmmse_detect: regularized Gram not positive definite");
  return finish(llt.solve(ch.H.adjoint() * y), c);
}

DetectionResult ep_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                          const EpConfig& cfg, const Constellation& c) {
  if (ch.noise_var <= 0.0) throw std::invalid_argument("ep_detect: noise_var must be > 0");
  const auto L = ch.H.rows();
  const auto K = ch.H.cols();
  // whitened observation: noise + per-AP estimation-error power
  Eigen::VectorXd w(L);
  for (Eigen::Index l = 0; l < L; ++l) {
    const double d = ch.est_err_var.size() > 0 ? ch.est_err_var.row(l).sum() : 0.0;
    w(l) = 1.0 / (ch.noise_var + d);
  }
  const Eigen::MatrixXcd A = ch.H.adjoint() * w.asDiagonal() * ch.H;
  const Eigen::VectorXcd b = ch.H.adjoint() * (w.array() * y.array()).matrix();
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(K, 1.0 / c.E_S);
  Eigen::VectorXcd gam = Eigen::VectorXcd::Zero(K);
  Eigen::VectorXcd mu(K);
  for (int t = 0; t < cfg.t_max; ++t) {
    Eigen::MatrixXcd P = A;
    P.diagonal() += lam.cast<std::complex<double>>();
    const Eigen::MatrixXcd Sig = P.inverse();
    mu = Sig * (b + gam);
    if (t == cfg.t_max - 1) break;
    for (Eigen::Index k = 0; k < K; ++k) {
      const double sp = Sig(k, k).real();
      const double qc = 1.0 / sp - lam(k); // cavity precision
      if (qc <= cfg.var_floor) continue;
      const double vc = 1.0 / qc;
      const std::complex<double> mc = vc * (mu(k) / sp - gam(k));
      // per-axis QPSK posterior moments
      const std::complex<double> tm{c.c_x * std::tanh(2.0 * c.c_x * mc.real() / vc),
                                    c.c_x * std::tanh(2.0 * c.c_x * mc.imag() / vc)};
      const double tv = std::max(c.E_S - std::norm(tm), cfg.var_floor);
      const double lam_new = std::max(1.0 / tv - qc, cfg.var_floor);
      const std::complex<double> gam_new = tm / tv - qc * mc;
      lam(k) = cfg.damping * lam_new + (1.0 - cfg.damping) * lam(k);
      gam(k) = cfg.damping * gam_new + (1.0 - cfg.damping) * gam(k);
    }
  }
  return finish(std::move(mu), c);
}

DetectionResult gabp_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                            const GabpConfig& cfg, const Constellation& c) {
  if (ch.noise_var <= 0.0) throw std::invalid_argument("gabp_detect: noise_var must be > 0");
  constexpr double kFloor = 1e-12;
  const auto L = ch.H.rows();
  const auto K = ch.H.cols();
  const Eigen::MatrixXd absH2 = ch.H.cwiseAbs2();
  Eigen::MatrixXcd xh = Eigen::MatrixXcd::Zero(L, K); // soft replicas
  Eigen::MatrixXd vh = Eigen::MatrixXd::Constant(L, K, c.E_S);
  Eigen::MatrixXcd hw(L, K);
  Eigen::MatrixXd pw(L, K);
  for (int it = 0; it < cfg.i_max; ++it) {
    // soft interference cancellation per (AP, user) edge
    const Eigen::VectorXcd S = ch.H.cwiseProduct(xh).rowwise().sum();
    const Eigen::VectorXd V = absH2.cwiseProduct(vh).rowwise().sum();
    const Eigen::MatrixXcd rt =
        y * Eigen::RowVectorXcd::Ones(K) -
        (S * Eigen::RowVectorXcd::Ones(K) - ch.H.cwiseProduct(xh));
    const Eigen::MatrixXd vt =
        ((V * Eigen::RowVectorXd::Ones(K) - absH2.cwiseProduct(vh)).array() + ch.noise_var)
            .max(kFloor)
            .matrix();
    hw = (ch.H.conjugate().array() * rt.array() / vt.array()).matrix();
    pw = (absH2.array() / vt.array()).matrix();
    // extrinsic belief for user k excludes AP l
    const Eigen::RowVectorXcd Mk = hw.colwise().sum();
    const Eigen::RowVectorXd Pk = pw.colwise().sum();
    const Eigen::MatrixXd pext =
        ((Eigen::VectorXd::Ones(L) * Pk - pw).array()).max(kFloor).matrix();
    const Eigen::MatrixXd vbar = pext.cwiseInverse();
    const Eigen::MatrixXcd xbar =
        (vbar.array() * (Eigen::VectorXcd::Ones(L) * Mk - hw).array()).matrix();
    // per-axis tanh denoiser, then damped replica updates; the variance mixes
    // the previous replica's energy
    const Eigen::MatrixXd vh_new =
        (cfg.damping * (c.E_S - xh.array().abs2()) + (1.0 - cfg.damping) * vh.array()).matrix();
    for (Eigen::Index k = 0; k < K; ++k) {
      for (Eigen::Index l = 0; l < L; ++l) {
        const double scale = 2.0 * c.c_x / vbar(l, k);
        const std::complex<double> den{c.c_x * std::tanh(scale * xbar(l, k).real()),
                                       c.c_x * std::tanh(scale * xbar(l, k).imag())};
        xh(l, k) = cfg.damping * den + (1.0 - cfg.damping) * xh(l, k);
      }
    }
    vh = vh_new.cwiseMax(kFloor);
  }
  // consensus across all APs from the final edge messages
  const Eigen::VectorXcd consensus =
      (hw.colwise().sum().transpose().array() / pw.colwise().sum().transpose().array())
          .matrix();
  return finish(consensus, c);
}

DetectionResult map_oracle(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& y,
                           const Constellation& c) {
  const auto K = H.cols();
  double space = 1.0;
  for (Eigen::Index k = 0; k < K; ++k) space *= static_cast<double>(c.points.size());
  if (space > 1e6) throw std::invalid_argument("map_oracle: search space exceeds 1e6");
  std::vector<int> idx(K, 0);
  Eigen::VectorXcd x(K);
  for (Eigen::Index k = 0; k < K; ++k) x(k) = c.points[0];
  Eigen::VectorXcd best_x = x;
  double best = (y - H * x).squaredNorm();
  while (true) {
    Eigen::Index pos = 0;
    while (pos < K) {
      if (++idx[pos] < static_cast<int>(c.points.size())) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == K) break;
    for (Eigen::Index k = 0; k <= pos; ++k) x(k) = c.points[idx[k]];
    const double m = (y - H * x).squaredNorm();
    if (m < best) {
      best = m;
      best_x = x;
    }
  }
  return finish(std::move(best_x), c);
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::MR: return "mr";
    case Scheme::LMMSE: return "lmmse";
    case Scheme::EP: return "ep";
    case Scheme::GaBP: return "gabp";
  }
  return "?";
}

std::vector<BerRecord> ber_experiment(Scheme scheme, const BerScenario& sc,
                                      std::uint64_t master_seed) {
  validate(sc.sys);
  const Constellation c = Constellation::qpsk();
  const int K = sc.sys.K;
  const long long bits_per_drop = 2LL * K * sc.symbols_per_drop;
  const long long n_drops = (sc.min_bits + bits_per_drop - 1) / bits_per_drop;
  std::vector<BerRecord> out;
  for (std::size_t pt = 0; pt < sc.snr_dB.size(); ++pt) {
    const double rho = std::pow(10.0, sc.snr_dB[pt] / 10.0);
    std::vector<long long> errors(static_cast<std::size_t>(n_drops), 0);
    parallel_for(static_cast<std::size_t>(n_drops), [&](std::size_t d) {
      Rng rng(derive_seed(derive_seed(master_seed, pt), d));
      const NetworkGeometry geo = place_network(sc.sys, rng);
      Eigen::MatrixXd beta = large_scale_fading(geo, sc.sys, rng);
      if (sc.sys.normalize_beta) beta /= beta.mean();
      const Eigen::MatrixXcd g = draw_channel(beta, rng);
      const double se = std::sqrt(sc.sys.eta);
      EffectiveChannel ch;
      ch.noise_var = 1.0;
      Eigen::MatrixXcd g_for_mr;
      Eigen::VectorXd ds(K);
      if (sc.perfect_csi) {
        ch.H = std::sqrt(rho) * se * g;
        ch.est_err_var = Eigen::MatrixXd::Zero(beta.rows(), K);
        g_for_mr = g;
        ds = std::sqrt(rho) * se * beta.colwise().sum();
      } else {
        const PilotBasis basis = make_basis(sc.sys.tau, BasisFlavor::RandomUnitary, rng);
        const PilotMatrix pm = assign_random(basis, K, rng);
        const ChannelEstimate est = estimate_channels(g, pm.F, beta, rho, rng);
        ch.H = std::sqrt(rho) * se * est.g_hat;
        ch.est_err_var = rho * sc.sys.eta * est.stats.err_var;
        g_for_mr = est.g_hat;
        ds = std::sqrt(rho) * se * est.stats.gamma.colwise().sum();
      }
      std::vector<int> bits(2 * K);
      long long errs = 0;
      for (int s = 0; s < sc.symbols_per_drop; ++s) {
        for (auto& b : bits) b = static_cast<int>(rng.uniform_index(2));
        const Eigen::VectorXcd x = modulate(bits, c);
        Eigen::VectorXcd y = std::sqrt(rho) * se * (g * x);
        for (Eigen::Index l = 0; l < y.size(); ++l) y(l) += rng.cgaussian();
        DetectionResult r;
        switch (scheme) {
          case Scheme::MR: r = mr_combine(g_for_mr, y, ds, c); break;
          case Scheme::LMMSE: r = lmmse_detect(ch, y, c); break;
          case Scheme::EP: r = ep_detect(ch, y, sc.ep, c); break;
          case Scheme::GaBP: r = gabp_detect(ch, y, sc.gabp, c); break;
        }
        for (std::size_t i = 0; i < bits.size(); ++i)
          if (r.bits[i] != bits[i]) ++errs;
      }
      errors[d] = errs;
    });
    long long total = 0;
    for (const long long e : errors) total += e;
    out.push_back({sc.snr_dB[pt], scheme, static_cast<double>(total) / (n_drops * bits_per_drop),
                   n_drops * bits_per_drop});
  }
  return out;
}

}  // namespace cfmimo
