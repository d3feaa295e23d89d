#include "lcpk/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lcpk/game.hpp"
#include "lcpk/linalg.hpp"
#include "lcpk/lp.hpp"

namespace lcpk {

namespace {

constexpr double kLemkePivotTol = 1e-9;
constexpr double kLemkeBreakdownTol = 1e-11;
constexpr double kLexTieTol = 1e-12;
constexpr int kLemkePivotCap = 50000;
constexpr double kDedupTol = 1e-7;
constexpr double kCertStrictTol = 1e-10;

void require_instance(const Matrix& m, const Vector& q, const char* who) {
  if (!m.square() || m.rows() != q.size()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

// Tableau for Lemke's method:  I w - M z - e z0 = q.
// Column layout: w_0..w_{n-1}, z_0..z_{n-1}, z0, rhs. The w columns double
// as the running basis inverse, which drives the lexicographic test.
class LemkeTableau {
 public:
  LemkeTableau(const Matrix& m, const Vector& q) : n_(q.size()) {
    cols_ = 2 * n_ + 2;
    rows_.assign(n_, Vector(cols_, 0.0));
    basis_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      rows_[i][i] = 1.0;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][n_ + j] = -m(i, j);
      rows_[i][z0_col()] = -1.0;
      rows_[i][rhs_col()] = q[i];
      basis_[i] = i;  // w_i
    }
  }

  std::size_t z0_col() const { return 2 * n_; }
  std::size_t rhs_col() const { return 2 * n_ + 1; }

  // Lexicographic comparison of rows (rhs | w-columns) / divisor.
  bool lex_less(std::size_t a, double da, std::size_t b, double db) const {
    const double ra = rows_[a][rhs_col()] / da;
    const double rb = rows_[b][rhs_col()] / db;
    if (ra < rb - kLexTieTol) return true;
    if (ra > rb + kLexTieTol) return false;
    for (std::size_t j = 0; j < n_; ++j) {
      const double va = rows_[a][j] / da;
      const double vb = rows_[b][j] / db;
      if (va < vb - kLexTieTol) return true;
      if (va > vb + kLexTieTol) return false;
    }
    return false;
  }

  // Initial pivot: z0 enters; the leaving row is the lex-min of
  // (q_i | w-row), which both fixes feasibility and seeds lex-positivity.
  std::size_t initial_leaving_row() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      if (lex_less(i, 1.0, best, 1.0)) best = i;
    }
    return best;
  }

  // Standard lexicographic ratio test for an entering column.
  std::optional<std::size_t> ratio_test(std::size_t enter) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n_; ++i) {
      const double t = rows_[i][enter];
      if (t <= kLemkePivotTol) continue;
      if (!best || lex_less(i, t, *best, rows_[*best][enter])) best = i;
    }
    return best;
  }

  bool pivot(std::size_t row, std::size_t col) {
    Vector& pr = rows_[row];
    if (std::fabs(pr[col]) < kLemkeBreakdownTol) return false;
    const double d = pr[col];
    for (double& v : pr) v /= d;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      Vector& r = rows_[i];
      const double f = r[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) r[j] -= f * pr[j];
      r[col] = 0.0;
    }
    basis_[row] = col;
    return true;
  }

  std::size_t basis(std::size_t row) const { return basis_[row]; }
  double rhs(std::size_t row) const { return rows_[row][rhs_col()]; }
  double entry(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
};

LcpSolution make_solution(const Matrix& m, const Vector& q, Vector z, Vector w,
                          std::string method) {
  LcpSolution sol;
  sol.residuals = residuals_for(m, q, z, w);
  sol.z = std::move(z);
  sol.w = std::move(w);
  sol.method = std::move(method);
  return sol;
}

}  // namespace

Residuals residuals_for(const Matrix& m, const Vector& q, const Vector& z,
                        const Vector& w) {
  require_instance(m, q, "residuals_for");
  Residuals r;
  r.min_entry = std::min(min_entry(z), min_entry(w));
  r.comp = dot(z, w);
  Vector eq = w - (m * z) - q;
  r.equation = inf_norm(eq);
  return r;
}

Residuals complementarity_residual(const LcpInstance& inst, const Vector& z) {
  require_instance(inst.m, inst.q, "complementarity_residual");
  Vector w = inst.m * z + inst.q;
  return residuals_for(inst.m, inst.q, z, w);
}

bool meets_invariants(const Residuals& r, const SolutionTolerances& tol) {
  return r.min_entry >= -tol.nonneg && r.equation <= tol.equation &&
         std::fabs(r.comp) <= tol.assert_tol;
}

LemkeResult solve_lemke(const Matrix& m, const Vector& q) {
  require_instance(m, q, "solve_lemke");
  const std::size_t n = q.size();
  LemkeResult result;

  if (min_entry(q) >= 0.0) {
    result.status = LemkeStatus::kSolved;
    result.solution = make_solution(m, q, Vector(n, 0.0), q, "lemke");
    return result;
  }

  LemkeTableau tab(m, q);
  std::size_t row = tab.initial_leaving_row();
  const std::size_t leaving_first = tab.basis(row);
  if (!tab.pivot(row, tab.z0_col())) {
    result.status = LemkeStatus::kNumericalBreakdown;
    return result;
  }

  // Drive the complement of whatever just left.
  std::size_t enter = leaving_first < n ? leaving_first + n : leaving_first - n;

  for (int pivots = 1; pivots <= kLemkePivotCap; ++pivots) {
    result.pivots = pivots;
    auto blocking = tab.ratio_test(enter);
    if (!blocking) {
      // Secondary ray along the entering column.
      result.status = LemkeStatus::kRayTermination;
      SecondaryRay ray;
      ray.z_base.assign(n, 0.0);
      ray.w_base.assign(n, 0.0);
      ray.z_dir.assign(n, 0.0);
      ray.w_dir.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = tab.basis(i);
        const double val = tab.rhs(i);
        const double dir = -tab.entry(i, enter);
        if (b < n) {
          ray.w_base[b] = val;
          ray.w_dir[b] = dir;
        } else if (b < 2 * n) {
          ray.z_base[b - n] = val;
          ray.z_dir[b - n] = dir;
        } else {
          ray.z0 = val;
          ray.z0_dir = dir;
        }
      }
      if (enter < n) {
        ray.w_dir[enter] = 1.0;
      } else if (enter < 2 * n) {
        ray.z_dir[enter - n] = 1.0;
      }
      result.ray = ray;
      return result;
    }

    const std::size_t leaving = tab.basis(*blocking);
    if (!tab.pivot(*blocking, enter)) {
      result.status = LemkeStatus::kNumericalBreakdown;
      return result;
    }
    if (leaving == tab.z0_col()) {
      Vector z(n, 0.0), w(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = tab.basis(i);
        if (b < n) {
          w[b] = tab.rhs(i);
        } else if (b < 2 * n) {
          z[b - n] = tab.rhs(i);
        }
      }
      result.status = LemkeStatus::kSolved;
      result.solution = make_solution(m, q, std::move(z), std::move(w), "lemke");
      return result;
    }
    enter = leaving < n ? leaving + n : leaving - n;
  }
  result.status = LemkeStatus::kNumericalBreakdown;
  return result;
}

LemkeResult solve_lemke(const LcpInstance& inst) {
  return solve_lemke(inst.m, inst.q);
}

LpReductionResult solve_lp_reduction(const LcpInstance& inst, const Vector& p) {
  require_instance(inst.m, inst.q, "solve_lp_reduction");
  if (p.size() != inst.q.size()) {
    throw std::invalid_argument("solve_lp_reduction: p has wrong length");
  }
  const std::size_t n = inst.q.size();
  LpReductionResult result;

  LpProblem prob;
  prob.c = p;
  prob.a = inst.m;
  prob.b = Vector(n);
  for (std::size_t i = 0; i < n; ++i) prob.b[i] = -inst.q[i];
  LpSolution lp = solve_lp(prob);
  if (lp.status == LpStatus::kInfeasible) {
    result.status = LpReductionStatus::kInfeasible;
    return result;
  }
  if (lp.status != LpStatus::kOptimal) {
    result.status = LpReductionStatus::kLpFailed;
    return result;
  }

  // Certificate (I - M')y + p, strict positivity makes the minimizer a
  // complementary solution.
  Vector cert(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double mty = 0.0;
    for (std::size_t i = 0; i < n; ++i) mty += inst.m(i, k) * lp.y[i];
    cert[k] = lp.y[k] - mty + p[k];
  }
  result.certificate = cert;

  Vector z = lp.x;
  Vector w = inst.m * z + inst.q;
  LcpSolution sol = make_solution(inst.m, inst.q, std::move(z), std::move(w),
                                  "lp_reduction");
  sol.dual_y = lp.y;
  const bool cert_ok = min_entry(cert) > kCertStrictTol;
  const bool residuals_ok = meets_invariants(sol.residuals);
  sol.certified = cert_ok && residuals_ok;
  result.status = sol.certified ? LpReductionStatus::kSolvedCertified
                                : LpReductionStatus::kSolvedUncertified;
  result.solution = std::move(sol);
  return result;
}

Vector derive_p_block_triangular(const LcpInstance& inst, const Matrix* z1,
                                 Strictness strictness) {
  require_instance(inst.m, inst.q, "derive_p_block_triangular");
  const std::size_t block_size =
      inst.partition ? inst.partition->block_size : inst.m.rows();
  BlockTriangularCheck btk =
      is_block_triangular_k(inst.m, block_size, strictness);
  if (!btk.is_btk) {
    throw std::invalid_argument(
        "derive_p_block_triangular: matrix is not block triangular K");
  }
  if (z1 == nullptr) return Vector(inst.m.rows(), 1.0);
  auto r = positive_value_vector(*z1);
  if (!r) {
    throw std::runtime_error(
        "derive_p_block_triangular: Z1 has no positive-value strategy");
  }
  return *r;
}

HiddenP derive_p_hidden(const LcpInstance& inst, Strictness strictness) {
  require_instance(inst.m, inst.q, "derive_p_hidden");
  if (!inst.hidden_x || !inst.hidden_y || !inst.partition) {
    throw std::invalid_argument(
        "derive_p_hidden: instance lacks hidden witnesses or a partition");
  }
  HiddenCheck hc = verify_hidden_block_triangular_k(
      inst.m, *inst.hidden_x, *inst.hidden_y, inst.partition->block_size,
      strictness);
  if (!hc.ok) {
    throw std::invalid_argument("derive_p_hidden: witnesses failed verification: " +
                                hc.reason);
  }
  auto r = positive_value_vector(*inst.hidden_x);
  auto s = positive_value_vector(*inst.hidden_y);
  if (!r || !s) {
    throw std::runtime_error(
        "derive_p_hidden: game strategy with strict positivity not found");
  }

  // Nudge the strategies to strict positivity. positive_value_vector leaves
  // min(r'X) = 1, so adding eps*e keeps r'X > 0 while making r + s > 0,
  // which the augmented certificate at y = s evaluates to.
  auto nudge = [](Vector v, const Matrix& a) {
    double col_abs = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double s_j = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) s_j += std::fabs(a(i, j));
      col_abs = std::max(col_abs, s_j);
    }
    const double eps = 0.5 / std::max(1.0, col_abs);
    for (double& x : v) x += eps;
    return v;
  };
  HiddenP out;
  out.r = nudge(*r, *inst.hidden_x);
  out.s = nudge(*s, *inst.hidden_y);
  out.p = out.r + transpose(inst.m) * out.s;
  out.p_nonnegative = min_entry(out.p) >= -1e-12;
  return out;
}

LemkeResult solve_block_sequential(const LcpInstance& inst) {
  require_instance(inst.m, inst.q, "solve_block_sequential");
  if (!inst.partition) {
    throw std::invalid_argument("solve_block_sequential: partition required");
  }
  BlockPartition part = *inst.partition;
  if (part.dimension() != inst.m.rows()) {
    throw std::invalid_argument(
        "solve_block_sequential: partition does not match dimension");
  }

  // One code path: upper-oriented instances are conjugated by the block
  // reversal permutation into lower form and mapped back at the end.
  Matrix m = inst.m;
  Vector q = inst.q;
  const bool reversed = part.orientation == Orientation::kUpper;
  Matrix perm(1, 1);
  if (reversed) {
    perm = block_reversal_permutation(part);
    m = perm * m * transpose(perm);
    q = perm * q;
    part.orientation = Orientation::kLower;
  }

  const std::size_t s = part.block_size;
  const std::size_t blocks = part.block_count;
  Vector z(m.rows(), 0.0), w(m.rows(), 0.0);
  LemkeResult result;
  int pivots = 0;
  for (std::size_t bi = 0; bi < blocks; ++bi) {
    Matrix mb = extract_block(m, part, bi, bi);
    Vector qb(s, 0.0);
    for (std::size_t r = 0; r < s; ++r) {
      double acc = q[bi * s + r];
      for (std::size_t j = 0; j < bi * s; ++j) acc += m(bi * s + r, j) * z[j];
      qb[r] = acc;
    }
    LemkeResult sub = solve_lemke(mb, qb);
    pivots += sub.pivots;
    if (sub.status != LemkeStatus::kSolved) {
      result.status = sub.status;
      result.pivots = pivots;
      return result;
    }
    for (std::size_t r = 0; r < s; ++r) {
      z[bi * s + r] = sub.solution->z[r];
      w[bi * s + r] = sub.solution->w[r];
    }
  }
  if (reversed) {
    z = transpose(perm) * z;
    w = transpose(perm) * w;
  }
  result.status = LemkeStatus::kSolved;
  result.pivots = pivots;
  result.solution =
      make_solution(inst.m, inst.q, std::move(z), std::move(w), "block_sequential");
  return result;
}

LeastElementResult least_element(const LcpInstance& inst,
                                 std::size_t verify_samples,
                                 std::uint64_t seed) {
  require_instance(inst.m, inst.q, "least_element");
  LeastElementResult result;
  const std::size_t block_size =
      inst.partition ? inst.partition->block_size : inst.m.rows();
  if (!is_block_triangular_k(inst.m, block_size).is_btk) {
    result.status = LeastElementStatus::kClassCheckFailed;
    return result;
  }

  const std::size_t n = inst.m.rows();
  LpProblem prob;
  prob.c = Vector(n, 1.0);
  prob.a = inst.m;
  prob.b = Vector(n);
  for (std::size_t i = 0; i < n; ++i) prob.b[i] = -inst.q[i];
  LpSolution lp = solve_lp(prob);
  if (lp.status == LpStatus::kInfeasible) {
    result.status = LeastElementStatus::kInfeasible;
    return result;
  }
  if (lp.status != LpStatus::kOptimal) {
    result.status = LeastElementStatus::kInfeasible;
    return result;
  }
  result.z = lp.x;
  result.residuals = complementarity_residual(inst, lp.x);

  // Dominance check against sampled feasible points z* + M^{-1} d, d >= 0.
  // The slack side is feasible by construction; candidates that pick up a
  // negative z component are outside FEA and do not count.
  auto minv = inverse(inst.m);
  if (minv) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (std::size_t t = 0; t < verify_samples; ++t) {
      Vector d(n);
      for (double& v : d) v = unif(rng);
      Vector sample = lp.x + (*minv) * d;
      if (min_entry(sample) < 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (lp.x[i] > sample[i] + 1e-8) {
          result.status = LeastElementStatus::kNotLeast;
          return result;
        }
      }
    }
  }
  if (!meets_invariants(result.residuals)) {
    result.status = LeastElementStatus::kNotComplementary;
    return result;
  }
  result.status = LeastElementStatus::kFound;
  return result;
}

AugmentedInstance build_augmented(const Matrix& n, const Vector& q,
                                  const Vector& r, const Vector& s) {
  require_instance(n, q, "build_augmented");
  if (r.size() != q.size() || s.size() != q.size()) {
    throw std::invalid_argument("build_augmented: r or s has wrong length");
  }
  const std::size_t dim = q.size();
  AugmentedInstance aug;
  aug.base_dim = dim;
  aug.script_n = Matrix(2 * dim, 2 * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      aug.script_n(i, dim + j) = -n(j, i);  // -N'
      aug.script_n(dim + i, j) = n(i, j);   // N
    }
  }
  aug.q_bar = Vector(2 * dim, 0.0);
  Vector nts = transpose(n) * s;
  for (std::size_t i = 0; i < dim; ++i) {
    aug.q_bar[i] = r[i] + nts[i];
    aug.q_bar[dim + i] = q[i];
  }
  return aug;
}

CertificateCheck check_augmented_certificate(const AugmentedInstance& aug,
                                             const Vector& x, const Vector& y,
                                             const Vector& p) {
  const std::size_t n = aug.base_dim;
  if (x.size() != n || y.size() != n || p.size() != n) {
    throw std::invalid_argument("check_augmented_certificate: dimension mismatch");
  }
  CertificateCheck res;
  Vector point(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    point[i] = x[i];
    point[n + i] = y[i];
  }
  Vector slack = aug.script_n * point + aug.q_bar;
  const double feas_floor = std::min(min_entry(point), min_entry(slack));
  res.point_feasible = feas_floor >= -1e-8;
  if (!res.point_feasible) return res;

  res.certificate.assign(n, 0.0);
  // (I - N')y + p; N sits in the lower-left block of the augmentation.
  for (std::size_t k = 0; k < n; ++k) {
    double nty = 0.0;
    for (std::size_t i = 0; i < n; ++i) nty += aug.script_n(n + i, k) * y[i];
    res.certificate[k] = y[k] - nty + p[k];
  }
  res.certificate_positive = min_entry(res.certificate) > kCertStrictTol;
  return res;
}

AugmentedSolveResult solve_augmented(const LcpInstance& inst,
                                     Strictness strictness) {
  require_instance(inst.m, inst.q, "solve_augmented");
  HiddenP hp = derive_p_hidden(inst, strictness);
  AugmentedInstance aug = build_augmented(inst.m, inst.q, hp.r, hp.s);

  AugmentedSolveResult out;
  LemkeResult lr = solve_lemke(aug.script_n, aug.q_bar);
  out.status = lr.status;
  if (lr.status != LemkeStatus::kSolved) return out;

  const std::size_t n = inst.q.size();
  Vector x(lr.solution->z.begin(), lr.solution->z.begin() + n);
  LcpSolution xsol = make_solution(inst.m, inst.q, x, inst.m * x + inst.q,
                                   "augmented");
  out.x_part_valid = meets_invariants(xsol.residuals);
  out.augmented = lr.solution;
  out.solution = std::move(xsol);
  return out;
}

std::vector<LcpSolution> solve_bruteforce(const Matrix& m, const Vector& q) {
  require_instance(m, q, "solve_bruteforce");
  const std::size_t n = q.size();
  if (n > kBruteforceCap) {
    throw std::invalid_argument("solve_bruteforce: dimension too large");
  }
  std::vector<LcpSolution> found;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    Vector z(n, 0.0);
    if (mask != 0) {
      std::vector<std::size_t> alpha;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) alpha.push_back(i);
      }
      Matrix sub = principal_submatrix(m, alpha);
      Vector rhs(alpha.size());
      for (std::size_t k = 0; k < alpha.size(); ++k) rhs[k] = -q[alpha[k]];
      auto zsub = solve_linear(sub, rhs);
      if (!zsub) continue;
      for (std::size_t k = 0; k < alpha.size(); ++k) z[alpha[k]] = (*zsub)[k];
    }
    Vector w = m * z + q;
    Residuals res = residuals_for(m, q, z, w);
    if (!meets_invariants(res)) continue;
    bool duplicate = false;
    for (const auto& prev : found) {
      if (inf_norm(prev.z - z) <= kDedupTol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    LcpSolution sol = make_solution(m, q, std::move(z), std::move(w), "bruteforce");
    found.push_back(std::move(sol));
  }
  return found;
}

std::vector<LcpSolution> solve_bruteforce(const LcpInstance& inst) {
  return solve_bruteforce(inst.m, inst.q);
}

}  // namespace lcpk
