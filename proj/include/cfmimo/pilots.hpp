#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cfmimo/rng.hpp"
#include "cfmimo/system_config.hpp"

namespace cfmimo {

enum class PilotKind {
  UnimodularEntries,   // every entry on the unit circle (manifold point)
  OrthonormalAssigned, // columns drawn from a scaled orthonormal basis
};

// tau x K, column k is user k's pilot; (1/tau)||f_k||^2 = 1 for both kinds.
// `assignment` maps user -> basis column and is present only for
// OrthonormalAssigned matrices.
struct PilotMatrix {
  Eigen::MatrixXcd F;
  PilotKind kind = PilotKind::OrthonormalAssigned;
  std::optional<std::vector<int>> assignment;
};

enum class BasisFlavor { RandomUnitary, Dft };

// tau x tau with B^H B = tau * I
struct PilotBasis {
  Eigen::MatrixXcd B;
  BasisFlavor flavor = BasisFlavor::RandomUnitary;
};

PilotBasis make_basis(int tau, BasisFlavor flavor, Rng& rng);

PilotMatrix assemble(const PilotBasis& basis, const std::vector<int>& assignment);

// uniform over basis columns, with replacement
PilotMatrix assign_random(const PilotBasis& basis, int K, Rng& rng);

// Keep-best local improvement from a round-robin start: each round the
// worst-rate user moves to the column with the least co-pilot large-scale
// power sum_l sum_{k' != k, same pilot} beta[l][k']. n_iter < 0 selects the
// default (K rounds); n_iter = 0 returns the round-robin start.
PilotMatrix assign_greedy(const PilotBasis& basis, const Eigen::MatrixXd& beta,
                          const SystemConfig& cfg, int n_iter = -1);

struct TabuConfig {
  int tenure = -1;     // default ceil(K/4); 0 degenerates to greedy descent
  int max_iter = -1;   // default 100*K
  int stall_iter = -1; // default 25*K moves without a new incumbent
};

// Single-user pilot moves maximizing the sum rate, with a tabu list over
// (user, pilot) reversals, aspiration on new incumbents and keep-best.
// Deterministic: ties break on the lowest (user, pilot) pair.
PilotMatrix assign_tabu(const PilotBasis& basis, const Eigen::MatrixXd& beta,
                        const SystemConfig& cfg, const TabuConfig& tc = {});

// Per-user SINR of an assignment under the exact orthogonality of a shared
// basis (|f_k^H f_k'| is tau for co-pilot users and 0 otherwise). Matches
// metrics::sinr_per_user on the assembled matrix up to basis rounding.
Eigen::VectorXd assignment_sinr(const Eigen::MatrixXd& beta, const std::vector<int>& assignment,
                                int tau, double rho);

double assignment_sum_rate(const Eigen::MatrixXd& beta, const std::vector<int>& assignment,
                           int tau, double rho);

}  // namespace cfmimo
