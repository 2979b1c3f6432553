#include "cfmimo/pilots.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cfmimo {

namespace {

std::vector<int> round_robin(int K, int tau) {
  std::vector<int> a(K);
  for (int k = 0; k < K; ++k) a[k] = k % tau;
  return a;
}

}  // namespace

PilotBasis make_basis(int tau, BasisFlavor flavor, Rng& rng) {
  if (tau < 1) throw std::invalid_argument("make_basis: tau must be >= 1");
  PilotBasis basis;
  basis.flavor = flavor;
  if (flavor == BasisFlavor::Dft) {
    basis.B.resize(tau, tau);
    const double w = 2.0 * std::numbers::pi_v<double> / tau;
    for (int i = 0; i < tau; ++i)
      for (int k = 0; k < tau; ++k)
        basis.B(i, k) = std::polar(1.0, -w * static_cast<double>(i) * k);
    return basis;
  }
  Eigen::MatrixXcd A(tau, tau);
  for (int i = 0; i < tau; ++i)
    for (int k = 0; k < tau; ++k) A(i, k) = rng.cgaussian();
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(tau, tau);
  basis.B = std::sqrt(static_cast<double>(tau)) * Q;
  return basis;
}

PilotMatrix assemble(const PilotBasis& basis, const std::vector<int>& assignment) {
  const auto tau = basis.B.rows();
  PilotMatrix pm;
  pm.kind = PilotKind::OrthonormalAssigned;
  pm.F.resize(tau, static_cast<Eigen::Index>(assignment.size()));
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    if (assignment[k] < 0 || assignment[k] >= tau)
      throw std::invalid_argument("assemble: assignment index out of range");
    pm.F.col(static_cast<Eigen::Index>(k)) = basis.B.col(assignment[k]);
  }
  pm.assignment = assignment;
  return pm;
}

PilotMatrix assign_random(const PilotBasis& basis, int K, Rng& rng) {
  if (K < 1) throw std::invalid_argument("assign_random: K must be >= 1");
  const int tau = static_cast<int>(basis.B.rows());
  std::vector<int> a(K);
  for (int k = 0; k < K; ++k) a[k] = static_cast<int>(rng.uniform_index(tau));
  return assemble(basis, a);
}

Eigen::VectorXd assignment_sinr(const Eigen::MatrixXd& beta, const std::vector<int>& assignment,
                                int tau, double rho) {
  const auto L = beta.rows();
  const auto K = beta.cols();
  if (static_cast<Eigen::Index>(assignment.size()) != K)
    throw std::invalid_argument("assignment_sinr: assignment/beta user mismatch");
  const double t = static_cast<double>(tau);
  // S[l][p] = sum of beta over users on pilot p
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(L, tau);
  for (Eigen::Index k = 0; k < K; ++k) S.col(assignment[k]) += beta.col(k);
  Eigen::MatrixXd gamma(L, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const Eigen::ArrayXd delta = rho * t * t * S.col(assignment[k]).array() + t;
    gamma.col(k) = (t * t * rho * beta.col(k).array().square() / delta).matrix();
  }
  const Eigen::VectorXd Gam = gamma.colwise().sum();
  const Eigen::MatrixXd T = (gamma.array() / beta.array()).matrix().transpose() * beta;
  const Eigen::VectorXd Bl = beta.rowwise().sum();
  Eigen::VectorXd sinr(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    double d1 = 0.0;
    for (Eigen::Index kp = 0; kp < K; ++kp) {
      if (kp != k && assignment[kp] == assignment[k]) d1 += T(k, kp) * T(k, kp) * t * t;
    }
    const double d2 = gamma.col(k).dot(Bl);
    sinr(k) = rho * Gam(k) * Gam(k) / (rho * d1 + rho * d2 + Gam(k));
  }
  return sinr;
}

double assignment_sum_rate(const Eigen::MatrixXd& beta, const std::vector<int>& assignment,
                           int tau, double rho) {
  const Eigen::VectorXd s = assignment_sinr(beta, assignment, tau, rho);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) sum += std::log1p(s(k));
  return sum / std::numbers::ln2_v<double>;
}

PilotMatrix assign_greedy(const PilotBasis& basis, const Eigen::MatrixXd& beta,
                          const SystemConfig& cfg, int n_iter) {
  const int tau = static_cast<int>(basis.B.rows());
  const int K = static_cast<int>(beta.cols());
  const double rho = sinr_rho(cfg);
  if (n_iter < 0) n_iter = K;
  std::vector<int> a = round_robin(K, tau);
  std::vector<int> best = a;
  double best_rate = assignment_sum_rate(beta, a, tau, rho);
  const Eigen::VectorXd user_power = beta.colwise().sum();
  for (int it = 0; it < n_iter; ++it) {
    const Eigen::VectorXd sinr = assignment_sinr(beta, a, tau, rho);
    int worst = 0;
    for (int k = 1; k < K; ++k)
      if (sinr(k) < sinr(worst)) worst = k;
    // co-pilot large-scale power per candidate column
    int arg = 0;
    double low = std::numeric_limits<double>::infinity();
    for (int p = 0; p < tau; ++p) {
      double contamination = 0.0;
      for (int k = 0; k < K; ++k)
        if (k != worst && a[k] == p) contamination += user_power(k);
      if (contamination < low) {
        low = contamination;
        arg = p;
      }
    }
    a[worst] = arg;
    const double rate = assignment_sum_rate(beta, a, tau, rho);
    if (rate > best_rate) {
      best_rate = rate;
      best = a;
    }
  }
  return assemble(basis, best);
}

PilotMatrix assign_tabu(const PilotBasis& basis, const Eigen::MatrixXd& beta,
                        const SystemConfig& cfg, const TabuConfig& tc) {
  const int tau = static_cast<int>(basis.B.rows());
  const int K = static_cast<int>(beta.cols());
  const double rho = sinr_rho(cfg);
  const int tenure = tc.tenure < 0 ? (K + 3) / 4 : tc.tenure;
  const int max_iter = tc.max_iter < 0 ? 100 * K : tc.max_iter;
  const int stall_iter = tc.stall_iter < 0 ? 25 * K : tc.stall_iter;

  std::vector<int> a = round_robin(K, tau);
  double rate = assignment_sum_rate(beta, a, tau, rho);
  std::vector<int> best = a;
  double best_rate = rate;
  // tabu_until[k*tau+p]: first iteration at which moving user k to pilot p is
  // allowed again
  std::vector<int> tabu_until(static_cast<std::size_t>(K) * tau, 0);
  int since_improvement = 0;
  for (int it = 0; it < max_iter && since_improvement < stall_iter; ++it) {
    int mk = -1, mp = -1;
    double mrate = -std::numeric_limits<double>::infinity();
    std::vector<int> cand = a;
    for (int k = 0; k < K; ++k) {
      const int cur = a[k];
      for (int p = 0; p < tau; ++p) {
        if (p == cur) continue;
        cand[k] = p;
        const double r = assignment_sum_rate(beta, cand, tau, rho);
        const bool tabu = it < tabu_until[static_cast<std::size_t>(k) * tau + p];
        if (tabu && r <= best_rate) continue; // aspiration: beat the incumbent
        if (r > mrate) {
          mrate = r;
          mk = k;
          mp = p;
        }
      }
      cand[k] = cur;
    }
    if (mk < 0) break; // whole neighborhood tabu
    if (tenure == 0 && mrate <= rate) break; // greedy descent: improving moves only
    tabu_until[static_cast<std::size_t>(mk) * tau + a[mk]] = it + 1 + tenure;
    a[mk] = mp;
    rate = mrate;
    ++since_improvement;
    if (rate > best_rate) {
      best_rate = rate;
      best = a;
      since_improvement = 0;
    }
  }
  return assemble(basis, best);
}

}  // namespace cfmimo
