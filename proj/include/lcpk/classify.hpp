#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "lcpk/matrix.hpp"

namespace lcpk {

enum class Verdict { kTrue, kFalse, kUndetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "true";
    case Verdict::kFalse: return "false";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "unknown";
}

// Exhaustive principal-minor tests run up to this dimension (65535 minors);
// beyond it P/P0/PSD report undetermined after a randomized screen.
inline constexpr std::size_t kExhaustiveMinorCap = 16;

struct MinorCertificate {
  std::vector<std::size_t> indices;  // 0-based principal index set
  double value = 0.0;
};

struct PCheck {
  Verdict verdict = Verdict::kUndetermined;
  std::optional<MinorCertificate> failing_minor;
};

struct SCheck {
  bool is_s = false;
  Vector witness;   // x >= 0 with m x > 0 when is_s
  double margin = 0.0;
};

enum class Strictness { kRelaxed, kStrict };

struct BlockTriangularCheck {
  bool is_btk = false;
  std::optional<Orientation> orientation;
  // Block position that broke the check, when one did.
  std::optional<std::pair<std::size_t, std::size_t>> failing_block;
};

struct HiddenCheck {
  bool ok = false;
  std::optional<Orientation> orientation;
  double residual = 0.0;  // ||N X - Y||_inf
  std::string reason;
};

struct Q0Report {
  bool counterexample_found = false;
  Vector q;                   // the feasible-but-unsolvable q, when found
  Vector feasible_point;     // witness of feasibility of that q
  std::size_t samples_tested = 0;
};

// Predicate verdicts plus re-checkable certificates.
struct ClassReport {
  std::map<std::string, Verdict> verdicts;
  std::optional<MinorCertificate> p_failing_minor;
  std::optional<MinorCertificate> p0_failing_minor;
  std::optional<Vector> s_witness;
  std::optional<Orientation> btk_orientation;
  std::optional<std::pair<std::size_t, std::size_t>> btk_failing_block;
  std::optional<HiddenCheck> hidden;
};

bool is_z(const Matrix& m);

// All principal minors > 0 (tolerance 1e-10); exhaustive for n <= 16,
// randomized sign-non-reversal screen beyond.
PCheck is_p(const Matrix& m);

// All principal minors >= -1e-10.
PCheck is_p0(const Matrix& m);

Verdict is_k(const Matrix& m);
Verdict is_k0(const Matrix& m);

// P0 test on the symmetric part (exact for symmetric matrices).
Verdict is_psd(const Matrix& m);

// LP search for x >= 0, sum x <= 1, m x >= t e with t maximal.
SCheck is_s(const Matrix& m);

// True iff, for some orientation, all off-triangle blocks are exactly zero,
// every diagonal block is a K-matrix, and (strict mode) every nonzero
// filled off-diagonal block is a K-matrix as well.
BlockTriangularCheck is_block_triangular_k(const Matrix& m,
                                           std::size_t block_size,
                                           Strictness strictness = Strictness::kRelaxed);

// Checks N X = Y within 1e-8 with X, Y block triangular K sharing one
// orientation and zero pattern with N.
HiddenCheck verify_hidden_block_triangular_k(const Matrix& n, const Matrix& x,
                                             const Matrix& y,
                                             std::size_t block_size,
                                             Strictness strictness = Strictness::kRelaxed);

// LP feasibility search for r, s >= 0 with r'X + s'Y > 0, given M X = Y
// within 1e-8 and X, Y Z-matrices.
std::optional<std::pair<Vector, Vector>> hidden_z_witness(const Matrix& m,
                                                          const Matrix& x,
                                                          const Matrix& y);

// Samples q vectors and hunts for one that is feasible but has no
// complementary solution (brute-force oracle). A refutation procedure,
// not a decision procedure.
Q0Report q0_sampling_check(const Matrix& m, std::size_t sample_count,
                           std::uint64_t seed);

// Full report over every supported class; block-level verdicts are filled
// when a block size is supplied, the hidden verdict when witnesses are.
ClassReport classify_matrix(const Matrix& m,
                            std::optional<std::size_t> block_size = std::nullopt,
                            Strictness strictness = Strictness::kRelaxed,
                            const Matrix* x = nullptr, const Matrix* y = nullptr);

}  // namespace lcpk
