#include "lcpk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lcpk/lcp.hpp"
#include "lcpk/linalg.hpp"
#include "lcpk/lp.hpp"

namespace lcpk {

namespace {

constexpr double kMinorPosTol = 1e-10;
constexpr double kHiddenResidualTol = 1e-8;

void require_square(const Matrix& m, const char* who) {
  if (!m.square()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

std::vector<std::size_t> mask_to_indices(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1u << i)) idx.push_back(i);
  }
  return idx;
}

// Screens for a sign-reversing vector: z != 0 with z_k (Mz)_k <= tol for
// every k. Finding one refutes the P-property. Coordinate vectors catch
// nonpositive diagonal entries; sparse and dense random vectors the rest.
bool sign_reversal_found(const Matrix& m, std::mt19937_64& rng) {
  const std::size_t n = m.rows();
  auto reverses = [&](const Vector& z) {
    const Vector mz = m * z;
    const double scale = 1e-12 * dot(z, z);
    for (std::size_t k = 0; k < n; ++k) {
      if (z[k] * mz[k] > scale) return false;
    }
    return true;
  };

  for (std::size_t k = 0; k < n; ++k) {
    Vector unit(n, 0.0);
    unit[k] = 1.0;
    if (reverses(unit)) return true;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vector z(n, 0.0);
    const std::size_t support = 1 + rng() % n;
    for (std::size_t pick = 0; pick < support; ++pick) {
      z[rng() % n] = gauss(rng);
    }
    if (dot(z, z) == 0.0) continue;
    if (reverses(z)) return true;
  }
  return false;
}

PCheck minor_scan(const Matrix& m, double threshold) {
  const std::size_t n = m.rows();
  PCheck res;
  if (n > kExhaustiveMinorCap) {
    std::mt19937_64 rng(0x5eed);
    res.verdict = sign_reversal_found(m, rng) ? Verdict::kFalse
                                              : Verdict::kUndetermined;
    return res;
  }
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const auto idx = mask_to_indices(mask, n);
    const double minor = det(principal_submatrix(m, idx));
    if (minor <= threshold) {
      res.verdict = Verdict::kFalse;
      res.failing_minor = MinorCertificate{idx, minor};
      return res;
    }
  }
  res.verdict = Verdict::kTrue;
  return res;
}

bool is_k_block(const Matrix& block) {
  return is_z(block) && is_p(block).verdict == Verdict::kTrue;
}

// Zero pattern check for one orientation: blocks strictly on the wrong
// side of the diagonal must be exactly zero.
bool pattern_matches(const Matrix& m, const BlockPartition& part) {
  const std::size_t n = part.block_count;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool must_be_zero = part.orientation == Orientation::kLower
                                    ? (j > i)
                                    : (j < i);
      if (!must_be_zero) continue;
      const Matrix b = extract_block(m, part, i, j);
      for (double v : b.data()) {
        if (v != 0.0) return false;
      }
    }
  }
  return true;
}

bool block_is_zero(const Matrix& b) {
  for (double v : b.data()) {
    if (v != 0.0) return false;
  }
  return true;
}

BlockTriangularCheck check_one_orientation(const Matrix& m,
                                           const BlockPartition& part,
                                           Strictness strictness) {
  BlockTriangularCheck res;
  if (!pattern_matches(m, part)) return res;
  const std::size_t n = part.block_count;
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix d = extract_block(m, part, i, i);
    if (!is_k_block(d)) {
      res.failing_block = {i, i};
      return res;
    }
  }
  if (strictness == Strictness::kStrict) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool filled_side = part.orientation == Orientation::kLower
                                     ? (j < i)
                                     : (j > i);
        if (!filled_side) continue;
        const Matrix b = extract_block(m, part, i, j);
        if (!block_is_zero(b) && !is_k_block(b)) {
          res.failing_block = {i, j};
          return res;
        }
      }
    }
  }
  res.is_btk = true;
  res.orientation = part.orientation;
  return res;
}

}  // namespace

bool is_z(const Matrix& m) {
  require_square(m, "is_z");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) > 0.0) return false;
    }
  }
  return true;
}

PCheck is_p(const Matrix& m) {
  require_square(m, "is_p");
  return minor_scan(m, kMinorPosTol);
}

PCheck is_p0(const Matrix& m) {
  require_square(m, "is_p0");
  return minor_scan(m, -kMinorPosTol);
}

Verdict is_k(const Matrix& m) {
  if (!is_z(m)) return Verdict::kFalse;
  return is_p(m).verdict;
}

Verdict is_k0(const Matrix& m) {
  if (!is_z(m)) return Verdict::kFalse;
  return is_p0(m).verdict;
}

Verdict is_psd(const Matrix& m) {
  require_square(m, "is_psd");
  const std::size_t n = m.rows();
  Matrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (m(i, j) + m(j, i));
  }
  return is_p0(sym).verdict;
}

SCheck is_s(const Matrix& m) {
  require_square(m, "is_s");
  const std::size_t n = m.rows();

  // max t  s.t.  m x - t e >= 0, e'x <= 1, x >= 0, t >= 0.
  LpProblem prob;
  prob.c = Vector(n + 1, 0.0);
  prob.c[n] = -1.0;
  prob.a = Matrix(n + 1, n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) prob.a(i, j) = m(i, j);
    prob.a(i, n) = -1.0;
  }
  for (std::size_t j = 0; j < n; ++j) prob.a(n, j) = -1.0;
  prob.b = Vector(n + 1, 0.0);
  prob.b[n] = -1.0;

  LpSolution lp = solve_lp(prob);
  SCheck res;
  if (lp.status != LpStatus::kOptimal) return res;
  res.margin = -lp.objective;
  if (res.margin > 1e-9) {
    res.is_s = true;
    res.witness = Vector(lp.x.begin(), lp.x.begin() + n);
  }
  return res;
}

BlockTriangularCheck is_block_triangular_k(const Matrix& m,
                                           std::size_t block_size,
                                           Strictness strictness) {
  require_square(m, "is_block_triangular_k");
  if (block_size == 0 || m.rows() % block_size != 0) {
    throw std::invalid_argument(
        "is_block_triangular_k: block size does not divide dimension");
  }
  BlockPartition part{block_size, m.rows() / block_size, Orientation::kLower};
  BlockTriangularCheck lower = check_one_orientation(m, part, strictness);
  if (lower.is_btk) return lower;
  part.orientation = Orientation::kUpper;
  BlockTriangularCheck upper = check_one_orientation(m, part, strictness);
  if (upper.is_btk) return upper;
  return lower.failing_block ? lower : upper;
}

HiddenCheck verify_hidden_block_triangular_k(const Matrix& n, const Matrix& x,
                                             const Matrix& y,
                                             std::size_t block_size,
                                             Strictness strictness) {
  HiddenCheck res;
  if (!n.square() || n.rows() != x.rows() || n.rows() != y.rows() ||
      !x.square() || !y.square()) {
    throw std::invalid_argument(
        "verify_hidden_block_triangular_k: dimension mismatch");
  }
  if (block_size == 0 || n.rows() % block_size != 0) {
    throw std::invalid_argument(
        "verify_hidden_block_triangular_k: block size does not divide dimension");
  }

  const BlockTriangularCheck xc = is_block_triangular_k(x, block_size, strictness);
  if (!xc.is_btk) {
    res.reason = "X is not block triangular K";
    return res;
  }
  const BlockTriangularCheck yc = is_block_triangular_k(y, block_size, strictness);
  if (!yc.is_btk) {
    res.reason = "Y is not block triangular K";
    return res;
  }
  if (*xc.orientation != *yc.orientation) {
    res.reason = "X and Y have different orientations";
    return res;
  }
  BlockPartition part{block_size, n.rows() / block_size, *xc.orientation};
  if (!pattern_matches(n, part)) {
    res.reason = "N does not share the zero pattern";
    return res;
  }
  res.residual = inf_norm(n * x - y);
  if (res.residual > kHiddenResidualTol) {
    res.reason = "N X differs from Y";
    return res;
  }
  res.ok = true;
  res.orientation = *xc.orientation;
  return res;
}

std::optional<std::pair<Vector, Vector>> hidden_z_witness(const Matrix& m,
                                                          const Matrix& x,
                                                          const Matrix& y) {
  if (!m.square() || m.rows() != x.rows() || m.rows() != y.rows()) {
    throw std::invalid_argument("hidden_z_witness: dimension mismatch");
  }
  if (inf_norm(m * x - y) > kHiddenResidualTol) {
    throw std::invalid_argument("hidden_z_witness: M X != Y");
  }
  if (!is_z(x) || !is_z(y)) {
    throw std::invalid_argument("hidden_z_witness: X and Y must be Z-matrices");
  }
  const std::size_t n = m.rows();

  // max delta  s.t.  X'r + Y's >= delta e, e'(r+s) <= 1, r, s, delta >= 0.
  LpProblem prob;
  prob.c = Vector(2 * n + 1, 0.0);
  prob.c[2 * n] = -1.0;
  prob.a = Matrix(n + 1, 2 * n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      prob.a(j, i) = x(i, j);
      prob.a(j, n + i) = y(i, j);
    }
    prob.a(j, 2 * n) = -1.0;
  }
  for (std::size_t i = 0; i < 2 * n; ++i) prob.a(n, i) = -1.0;
  prob.b = Vector(n + 1, 0.0);
  prob.b[n] = -1.0;

  LpSolution lp = solve_lp(prob);
  if (lp.status != LpStatus::kOptimal) return std::nullopt;
  if (-lp.objective <= 1e-9) return std::nullopt;
  Vector r(lp.x.begin(), lp.x.begin() + n);
  Vector s(lp.x.begin() + n, lp.x.begin() + 2 * n);
  return std::make_pair(r, s);
}

Q0Report q0_sampling_check(const Matrix& m, std::size_t sample_count,
                           std::uint64_t seed) {
  require_square(m, "q0_sampling_check");
  const std::size_t n = m.rows();
  if (n > kBruteforceCap) {
    throw std::invalid_argument("q0_sampling_check: dimension too large for oracle");
  }
  Q0Report report;

  auto probe = [&](const Vector& q) -> bool {
    ++report.samples_tested;
    FeasibilityResult fr = feasible_point(m, q);
    if (!fr.feasible) return false;
    if (!solve_bruteforce(m, q).empty()) return false;
    report.counterexample_found = true;
    report.q = q;
    report.feasible_point = fr.point;
    return true;
  };

  // Directed probes first, then scaled unit-sphere samples.
  Vector ramp(n);
  for (std::size_t i = 0; i < n; ++i) ramp[i] = -static_cast<double>(i + 1);
  if (probe(ramp)) return report;
  if (probe(Vector(n, -1.0))) return report;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scales[3] = {0.1, 1.0, 10.0};
  while (report.samples_tested < sample_count) {
    Vector q(n);
    double norm = 0.0;
    for (double& v : q) {
      v = gauss(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    const double scale = scales[report.samples_tested % 3] / norm;
    for (double& v : q) v *= scale;
    if (probe(q)) return report;
  }
  return report;
}

ClassReport classify_matrix(const Matrix& m, std::optional<std::size_t> block_size,
                            Strictness strictness, const Matrix* x,
                            const Matrix* y) {
  require_square(m, "classify_matrix");
  ClassReport report;

  const bool z = is_z(m);
  report.verdicts["Z"] = z ? Verdict::kTrue : Verdict::kFalse;
  PCheck p = is_p(m);
  report.verdicts["P"] = p.verdict;
  report.p_failing_minor = p.failing_minor;
  PCheck p0 = is_p0(m);
  report.verdicts["P0"] = p0.verdict;
  report.p0_failing_minor = p0.failing_minor;

  // K = Z and P by definition.
  report.verdicts["K"] = !z ? Verdict::kFalse : p.verdict;
  report.verdicts["K0"] = !z ? Verdict::kFalse : p0.verdict;
  report.verdicts["PSD"] = is_psd(m);

  SCheck s = is_s(m);
  report.verdicts["S"] = s.is_s ? Verdict::kTrue : Verdict::kFalse;
  if (s.is_s) report.s_witness = s.witness;

  if (block_size) {
    BlockTriangularCheck btk = is_block_triangular_k(m, *block_size, strictness);
    report.verdicts["block_triangular_K"] =
        btk.is_btk ? Verdict::kTrue : Verdict::kFalse;
    report.btk_orientation = btk.orientation;
    report.btk_failing_block = btk.failing_block;

    BlockPartition part{*block_size, m.rows() / *block_size,
                        btk.orientation.value_or(Orientation::kLower)};
    bool diag_z = true;
    bool diag_k = true;
    for (std::size_t i = 0; i < part.block_count; ++i) {
      const Matrix d = extract_block(m, part, i, i);
      diag_z = diag_z && is_z(d);
      diag_k = diag_k && is_k_block(d);
    }
    report.verdicts["Z_diagonal_blocks"] = diag_z ? Verdict::kTrue : Verdict::kFalse;
    report.verdicts["K_diagonal_blocks"] = diag_k ? Verdict::kTrue : Verdict::kFalse;

    if (x != nullptr && y != nullptr) {
      HiddenCheck hc =
          verify_hidden_block_triangular_k(m, *x, *y, *block_size, strictness);
      report.verdicts["hidden_block_triangular_K"] =
          hc.ok ? Verdict::kTrue : Verdict::kFalse;
      report.hidden = hc;
    }
  }
  return report;
}

}  // namespace lcpk
