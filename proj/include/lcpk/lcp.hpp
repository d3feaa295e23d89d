#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcpk/classify.hpp"
#include "lcpk/matrix.hpp"

namespace lcpk {

// Brute-force complementary-basis enumeration is capped at this dimension.
inline constexpr std::size_t kBruteforceCap = 12;

// Solution acceptance tolerances. assert_tol is the only one the CLI lets
// the environment override (LCPK_TOL); pivot tolerances are never touched.
struct SolutionTolerances {
  double nonneg = 1e-9;     // floor on z and w entries
  double equation = 1e-8;   // ||w - M z - q||_inf
  double assert_tol = 1e-7; // |z'w| <= assert_tol * (1 + ||z|| ||w||)
};

// The problem: find z >= 0, w = M z + q >= 0 with z'w = 0.
struct LcpInstance {
  Matrix m;
  Vector q;
  std::optional<BlockPartition> partition;
  std::optional<Matrix> hidden_x;
  std::optional<Matrix> hidden_y;
};

struct Residuals {
  double min_entry = 0.0;  // min over entries of z and w
  double comp = 0.0;       // z'w
  double equation = 0.0;   // ||w - M z - q||_inf
};

struct LcpSolution {
  Vector z;
  Vector w;
  std::string method;
  Residuals residuals;
  std::optional<Vector> dual_y;
  bool certified = false;  // set by the LP reduction when the dual
                           // certificate (I - M')y + p > 0 holds
};

// Computes w = M z + q and the residual triple for a candidate z.
Residuals complementarity_residual(const LcpInstance& inst, const Vector& z);

// Residuals for an externally supplied (z, w) pair.
Residuals residuals_for(const Matrix& m, const Vector& q, const Vector& z,
                        const Vector& w);

bool meets_invariants(const Residuals& r,
                      const SolutionTolerances& tol = SolutionTolerances());

enum class LemkeStatus { kSolved, kRayTermination, kNumericalBreakdown };

inline const char* to_string(LemkeStatus s) {
  switch (s) {
    case LemkeStatus::kSolved: return "solved";
    case LemkeStatus::kRayTermination: return "ray_termination";
    case LemkeStatus::kNumericalBreakdown: return "numerical_breakdown";
  }
  return "unknown";
}

// The secondary ray, reported on ray termination: points
// (z, w) + t (dz, dw) stay feasible for the augmented system as t grows.
struct SecondaryRay {
  Vector z_base, w_base, z_dir, w_dir;
  double z0 = 0.0, z0_dir = 0.0;
};

struct LemkeResult {
  LemkeStatus status = LemkeStatus::kNumericalBreakdown;
  std::optional<LcpSolution> solution;
  std::optional<SecondaryRay> ray;
  int pivots = 0;
};

// Complementary pivoting with covering vector e and the lexicographic
// ratio test.
LemkeResult solve_lemke(const Matrix& m, const Vector& q);
LemkeResult solve_lemke(const LcpInstance& inst);

enum class LpReductionStatus {
  kSolvedCertified,
  kSolvedUncertified,
  kInfeasible,
  kLpFailed,
};

inline const char* to_string(LpReductionStatus s) {
  switch (s) {
    case LpReductionStatus::kSolvedCertified: return "solved_certified";
    case LpReductionStatus::kSolvedUncertified: return "solved_uncertified";
    case LpReductionStatus::kInfeasible: return "infeasible";
    case LpReductionStatus::kLpFailed: return "lp_failed";
  }
  return "unknown";
}

struct LpReductionResult {
  LpReductionStatus status = LpReductionStatus::kLpFailed;
  std::optional<LcpSolution> solution;  // present on both solved statuses
  Vector certificate;                   // (I - M')y + p
};

// Solves min p'x over FEA(M, q), extracts the dual y, and checks the
// certificate (I - M')y + p > 0 that turns the minimizer into an LCP
// solution. An uncertified point is returned flagged, not suppressed.
LpReductionResult solve_lp_reduction(const LcpInstance& inst, const Vector& p);

// p = e by default; with z1 supplied, p is the game strategy r with
// r'Z1 > 0. Requires the instance's matrix to be block triangular K.
Vector derive_p_block_triangular(const LcpInstance& inst,
                                 const Matrix* z1 = nullptr,
                                 Strictness strictness = Strictness::kRelaxed);

struct HiddenP {
  Vector p, r, s;
  bool p_nonnegative = true;
};

// r with r'X > 0, s with s'Y > 0, p = r + N's. Requires verified witnesses.
HiddenP derive_p_hidden(const LcpInstance& inst,
                        Strictness strictness = Strictness::kRelaxed);

// Solves diagonal blocks in order, feeding earlier z's forward.
LemkeResult solve_block_sequential(const LcpInstance& inst);

enum class LeastElementStatus {
  kFound,
  kInfeasible,
  kNotLeast,          // a sampled feasible point beat the LP minimizer
  kNotComplementary,  // the minimizer does not solve the LCP
  kClassCheckFailed,
};

inline const char* to_string(LeastElementStatus s) {
  switch (s) {
    case LeastElementStatus::kFound: return "found";
    case LeastElementStatus::kInfeasible: return "infeasible";
    case LeastElementStatus::kNotLeast: return "not_least";
    case LeastElementStatus::kNotComplementary: return "not_complementary";
    case LeastElementStatus::kClassCheckFailed: return "class_check_failed";
  }
  return "unknown";
}

struct LeastElementResult {
  LeastElementStatus status = LeastElementStatus::kInfeasible;
  Vector z;
  Residuals residuals;
};

// min e'z over FEA(M, q); verifies dominance against sampled feasible
// points and that the minimizer solves the LCP.
LeastElementResult least_element(const LcpInstance& inst,
                                 std::size_t verify_samples = 100,
                                 std::uint64_t seed = 0);

// The skew augmentation [[0, -N'], [N, 0]] with stacked (r + N's, q).
struct AugmentedInstance {
  Matrix script_n;
  Vector q_bar;
  std::size_t base_dim = 0;
};

AugmentedInstance build_augmented(const Matrix& n, const Vector& q,
                                  const Vector& r, const Vector& s);

// Evaluates (I - N')y + p at a feasible point (x, y) of the augmented
// instance; rejects infeasible points.
struct CertificateCheck {
  bool point_feasible = false;
  bool certificate_positive = false;
  Vector certificate;
};
CertificateCheck check_augmented_certificate(const AugmentedInstance& aug,
                                             const Vector& x, const Vector& y,
                                             const Vector& p);

// Lemke on the augmented instance; on success the x-part is validated as a
// solution of LCP(N, q) and returned.
struct AugmentedSolveResult {
  LemkeStatus status = LemkeStatus::kNumericalBreakdown;
  std::optional<LcpSolution> solution;   // the x-part, method "augmented"
  std::optional<LcpSolution> augmented;  // the full 2n solution
  bool x_part_valid = false;
};
AugmentedSolveResult solve_augmented(const LcpInstance& inst,
                                     Strictness strictness = Strictness::kRelaxed);

// Enumerates all 2^n complementary bases; returns every distinct
// nonnegative basic solution (dedup 1e-7 on z).
std::vector<LcpSolution> solve_bruteforce(const Matrix& m, const Vector& q);
std::vector<LcpSolution> solve_bruteforce(const LcpInstance& inst);

}  // namespace lcpk
