#pragma once

#include "freehull/matops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freehull {

struct SparseEntry {
  int row, col;
  double value;
};

/// One PSD block of an affine problem: F(u) = F0 + sum_i u_i F_i with the F_i
/// stored sparsely (coeff[i] lists the entries of F_i in this block).
struct AffineBlock {
  Matrix F0;
  std::vector<std::vector<SparseEntry>> coeff;

  int dim() const { return static_cast<int>(F0.rows()); }
  Matrix value(const Vector& u) const;
};

/// Block-affine PSD feasibility instance over box-bounded scalar parameters:
/// find u, |u_i| <= box_radius, with F^{(b)}(u) >= 0 for every block.
struct AffineMatrixProblem {
  int num_params = 0;
  std::vector<AffineBlock> blocks;
  double box_radius = 10.0;
  std::vector<std::string> labels;  // parameter provenance

  int total_dim() const;
  void check() const;
  /// min over blocks of lambda_min(F^{(b)}(u)).
  double margin(const Vector& u) const;
};

enum class FeasStatus { StrictlyFeasible, Infeasible, Marginal };

std::string to_string(FeasStatus s);

/// Farkas-type dual data for the box-bounded problem. Verifiable identity:
///   sum_b tr(Lambda_b F_i^{(b)}) + box_plus_i - box_minus_i = 0  for every i,
///   sum_b tr(Lambda_b F_0^{(b)}) + R * sum_i (box_plus_i + box_minus_i) = -gap,
/// with gap > 0 and every Lambda_b PSD. Together these certify that no point
/// of the box makes all blocks PSD.
struct InfeasibilityCertificate {
  std::vector<Matrix> multipliers;  // one PSD matrix per block
  Vector box_plus, box_minus;      // nonnegative m-vectors
  double gap = 0.0;
};

struct Verdict {
  FeasStatus status = FeasStatus::Marginal;
  double margin = 0.0;  // best attained t
  Vector point;         // maximizer u*
  std::optional<InfeasibilityCertificate> certificate;
  int newton_iterations = 0;
  std::string note;
};

struct SdpConfig {
  double tol = 1e-6;        // accuracy target for the reported margin
  double eps_feas = 1e-7;   // strict/infeasible decision threshold on t*
  int max_newton = 600;
  int dim_cap = 4000;
};

/// Maximizes t subject to F^{(b)}(u) >= t I for all blocks and |u_i| <= R,
/// by damped Newton on the log-det barrier with a path-following schedule,
/// falling back to supergradient ascent on min_b lambda_min when Newton stalls.
Verdict solve(const AffineMatrixProblem& problem, const SdpConfig& config = {});

/// Re-checks the certificate identities independently of solver internals.
bool verify_certificate(const InfeasibilityCertificate& cert,
                        const AffineMatrixProblem& problem, double tol = 1e-6);

/// Debug dump (flattened blocks, labels, box radius) as a JSON string.
std::string dump_problem(const AffineMatrixProblem& problem);

}  // namespace freehull
