#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "lcpk/classify.hpp"
#include "lcpk/generate.hpp"
#include "lcpk/lcp.hpp"
#include "lcpk/linalg.hpp"

using namespace lcpk;

TEST_CASE("is_z") {
  const Matrix k_block{{1, -1}, {-1.5, 2}};
  CHECK(is_z(k_block));
  CHECK(is_z(Matrix::identity(3)));
  // A block with a positive off-diagonal entry.
  const Matrix not_z{{1, 0.5}, {-0.25, 0.3125}};
  CHECK_FALSE(is_z(not_z));
}

TEST_CASE("is_p on the 6x6 fixture enumerates all 63 minors") {
  const Matrix m = fixtures::block_k_6x6();
  CHECK(is_p(m).verdict == Verdict::kTrue);

  // Independent enumeration of every principal minor.
  int count = 0;
  for (unsigned mask = 1; mask < (1u << 6); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 6; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    CHECK(det(principal_submatrix(m, idx)) > 0.0);
    ++count;
  }
  CHECK(count == 63);
}

TEST_CASE("is_p failure certificate") {
  const Matrix swap{{0, 1}, {1, 0}};
  PCheck res = is_p(swap);
  CHECK(res.verdict == Verdict::kFalse);
  REQUIRE(res.failing_minor);
  CHECK(res.failing_minor->indices == std::vector<std::size_t>{0});
  CHECK(is_p(Matrix::identity(5)).verdict == Verdict::kTrue);
}

TEST_CASE("beyond the exhaustive cap the P test degrades gracefully") {
  // 17 x 17: too many minors to enumerate. The identity passes the
  // randomized screen and stays undetermined; an indefinite matrix is
  // refuted by it.
  CHECK(is_p(Matrix::identity(17)).verdict == Verdict::kUndetermined);
  Matrix bad = Matrix::identity(17);
  bad(0, 0) = -1.0;
  CHECK(is_p(bad).verdict == Verdict::kFalse);
}

TEST_CASE("P0 boundary cases") {
  CHECK(is_p0(Matrix(2, 2, 0.0)).verdict == Verdict::kTrue);
  CHECK(is_k0(Matrix(2, 2, 0.0)) == Verdict::kTrue);
  const Matrix neg{{-1.0}};
  PCheck res = is_p0(neg);
  CHECK(res.verdict == Verdict::kFalse);
  REQUIRE(res.failing_minor);
  CHECK(res.failing_minor->value == doctest::Approx(-1.0));
}

TEST_CASE("P is preserved under transpose on generated matrices") {
  Rng rng(71);
  for (int t = 0; t < 40; ++t) {
    const std::size_t blocks = 1 + rng() % 3;
    const std::size_t bsz = 1 + rng() % 3;
    const Matrix m = gen_block_triangular_k(blocks, bsz, rng);
    CHECK(is_p(m).verdict == is_p(transpose(m)).verdict);
    CHECK(is_p(m).verdict == Verdict::kTrue);
  }
  // And on a non-P example.
  const Matrix swap{{0, 1}, {1, 0}};
  CHECK(is_p(swap).verdict == is_p(transpose(swap)).verdict);
}

TEST_CASE("P-matrices do not reverse signs") {
  Rng rng(81);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const Matrix m = gen_block_triangular_k(2, 2, rng);
    REQUIRE(is_p(m).verdict == Verdict::kTrue);
    for (int trial = 0; trial < 200; ++trial) {
      Vector z(4);
      for (double& v : z) v = gauss(rng);
      const Vector mz = m * z;
      bool some_positive = false;
      for (std::size_t k = 0; k < 4; ++k) {
        if (z[k] * mz[k] > 1e-12 * dot(z, z)) some_positive = true;
      }
      CHECK(some_positive);
    }
  }
}

TEST_CASE("K, K0, PSD, S") {
  const Matrix k_block{{1, -1}, {-1.5, 2}};
  CHECK(is_k(k_block) == Verdict::kTrue);
  CHECK(is_k0(k_block) == Verdict::kTrue);
  CHECK(is_k(Matrix{{-1.0}}) == Verdict::kFalse);

  SUBCASE("the skew augmentation of the hidden fixture is PSD") {
    const Matrix n = fixtures::hidden_n();
    Matrix script_n(8, 8, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        script_n(i, 4 + j) = -n(j, i);
        script_n(4 + i, j) = n(i, j);
      }
    }
    CHECK(is_psd(script_n) == Verdict::kTrue);
  }
  CHECK(is_psd(Matrix{{1, 0}, {0, 1}}) == Verdict::kTrue);
  CHECK(is_psd(Matrix{{-1.0}}) == Verdict::kFalse);

  CHECK_FALSE(is_s(Matrix{{-1.0}}).is_s);
  SCheck s = is_s(fixtures::block_k_6x6());
  CHECK(s.is_s);
  REQUIRE(!s.witness.empty());
  const Vector image = fixtures::block_k_6x6() * s.witness;
  CHECK(min_entry(image) > 0.0);
}

TEST_CASE("block triangular K detection") {
  SUBCASE("the 6x6 fixture is strict block triangular K") {
    BlockTriangularCheck res =
        is_block_triangular_k(fixtures::block_k_6x6(), 2, Strictness::kStrict);
    CHECK(res.is_btk);
    CHECK(res.orientation == Orientation::kLower);
  }
  SUBCASE("identity has K blocks") {
    CHECK(is_block_triangular_k(Matrix::identity(4), 2).is_btk);
    CHECK(is_block_triangular_k(Matrix::identity(4), 2, Strictness::kStrict).is_btk);
  }
  SUBCASE("the hidden fixture N is not block triangular K") {
    BlockTriangularCheck res = is_block_triangular_k(fixtures::hidden_n(), 2);
    CHECK_FALSE(res.is_btk);
    REQUIRE(res.failing_block);
    CHECK(res.failing_block->first == 0);  // N11 has a negative diagonal
    CHECK(res.failing_block->second == 0);
  }
  SUBCASE("upper orientation is detected") {
    Rng rng(91);
    const BlockPartition part{2, 3, Orientation::kLower};
    Matrix low = gen_block_triangular_k(3, 2, rng);
    Matrix perm = block_reversal_permutation(part);
    Matrix up = perm * low * transpose(perm);
    BlockTriangularCheck res = is_block_triangular_k(up, 2);
    CHECK(res.is_btk);
    CHECK(res.orientation == Orientation::kUpper);
  }
  SUBCASE("generated matrices pass relaxed, not strict") {
    Rng rng(101);
    Matrix g = gen_block_triangular_k(3, 2, rng);
    CHECK(is_block_triangular_k(g, 2).is_btk);
    CHECK_FALSE(is_block_triangular_k(g, 2, Strictness::kStrict).is_btk);
  }
  CHECK_THROWS_AS(is_block_triangular_k(Matrix::identity(4), 3),
                  std::invalid_argument);
}

TEST_CASE("block triangular K implies P") {
  Rng rng(111);
  for (int t = 0; t < 40; ++t) {
    const std::size_t blocks = 1 + rng() % 4;
    const std::size_t bsz = 1 + rng() % 3;
    const Matrix m = gen_block_triangular_k(blocks, bsz, rng);
    REQUIRE(is_block_triangular_k(m, bsz).is_btk);
    CHECK(is_p(m).verdict == Verdict::kTrue);
  }
}

TEST_CASE("hidden verification") {
  const Matrix n = fixtures::hidden_n();
  const Matrix x = fixtures::hidden_x();
  const Matrix y = fixtures::hidden_y();

  SUBCASE("the fixture triple verifies, exactly") {
    CHECK(inf_norm(n * x - y) == 0.0);
    HiddenCheck res = verify_hidden_block_triangular_k(n, x, y, 2);
    CHECK(res.ok);
    CHECK(res.orientation == Orientation::kLower);
    CHECK(verify_hidden_block_triangular_k(n, x, y, 2, Strictness::kStrict).ok);
  }
  SUBCASE("X = I, Y = M works for any block triangular K matrix") {
    const Matrix m = fixtures::block_k_6x6();
    CHECK(verify_hidden_block_triangular_k(m, Matrix::identity(6), m, 2).ok);
  }
  SUBCASE("perturbing Y breaks the product identity") {
    Matrix y_bad = y;
    y_bad(2, 0) += 1.0;
    CHECK_FALSE(verify_hidden_block_triangular_k(n, x, y_bad, 2).ok);
  }
}

TEST_CASE("hidden verification implies positive diagonal determinants and witnesses") {
  Rng rng(121);
  for (int t = 0; t < 25; ++t) {
    HiddenTriple ht = gen_hidden(2, 2, rng);
    REQUIRE(verify_hidden_block_triangular_k(ht.n, ht.x, ht.y, 2).ok);
    const BlockPartition part{2, 2, Orientation::kLower};
    for (std::size_t i = 0; i < 2; ++i) {
      const Matrix nii = extract_block(ht.n, part, i, i);
      CHECK(det(nii) > 0.0);
      const Matrix xii = extract_block(ht.x, part, i, i);
      const Matrix yii = extract_block(ht.y, part, i, i);
      auto witness = hidden_z_witness(nii, xii, yii);
      REQUIRE(witness);
      Vector combo(2, 0.0);
      for (std::size_t jj = 0; jj < 2; ++jj) {
        for (std::size_t ii = 0; ii < 2; ++ii) {
          combo[jj] += witness->first[ii] * xii(ii, jj) +
                       witness->second[ii] * yii(ii, jj);
        }
      }
      CHECK(min_entry(combo) > 0.0);
    }
  }
}

TEST_CASE("hidden_z_witness basics") {
  const Matrix id = Matrix::identity(2);
  auto w = hidden_z_witness(id, id, id);
  REQUIRE(w);
  CHECK(min_entry(w->first + w->second) >= 0.0);

  // A common zero column forces r'X + s'Y to vanish there.
  const Matrix zero_col_x{{1, 0}, {0, 0}};
  const Matrix zero_col_y{{1, 0}, {0, 0}};
  const Matrix m_id = Matrix::identity(2);
  CHECK_FALSE(hidden_z_witness(m_id, zero_col_x, zero_col_y));

  // The diagonal blocks of the fixture pair.
  const BlockPartition part{2, 2, Orientation::kLower};
  const Matrix n22 = extract_block(fixtures::hidden_n(), part, 1, 1);
  const Matrix x22 = extract_block(fixtures::hidden_x(), part, 1, 1);
  const Matrix y22 = extract_block(fixtures::hidden_y(), part, 1, 1);
  CHECK(hidden_z_witness(n22, x22, y22));
}

TEST_CASE("K-matrices have nonnegative inverses") {
  Rng rng(131);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Matrix k = gen_k_matrix(n, rng);
    REQUIRE(is_k(k) == Verdict::kTrue);
    auto inv = inverse(k);
    REQUIRE(inv);
    CHECK(min_entry(*inv) >= -1e-9);
  }
}

TEST_CASE("inverse comparison for ordered pairs") {
  Rng rng(141);
  for (int t = 0; t < 30; ++t) {
    auto [m, n] = gen_inverse_comparison_pair(2, 2, rng);
    REQUIRE(is_z(m));
    REQUIRE(is_block_triangular_k(n, 2).is_btk);
    auto mi = inverse(m);
    auto ni = inverse(n);
    REQUIRE(mi);
    REQUIRE(ni);
    CHECK(min_entry(*ni) >= -1e-9);
    CHECK(min_entry(*mi - *ni) >= -1e-9);
  }
}

TEST_CASE("q0 sampling check") {
  SUBCASE("finds the classic counterexample") {
    const Matrix m{{1, 0}, {1, 0}};
    Q0Report rep = q0_sampling_check(m, 500, 3);
    CHECK(rep.counterexample_found);
    REQUIRE(rep.q.size() == 2);
    CHECK(rep.q[0] == doctest::Approx(-1.0));
    CHECK(rep.q[1] == doctest::Approx(-2.0));
    // Feasibility of the counterexample, e.g. z = (2, 0).
    const Vector slack = m * rep.feasible_point + rep.q;
    CHECK(min_entry(slack) >= -1e-8);
    CHECK(min_entry(rep.feasible_point) >= -1e-9);
    CHECK(solve_bruteforce(m, rep.q).empty());
  }
  SUBCASE("no counterexample for a PSD matrix") {
    const Matrix psd{{2, -1}, {-1, 2}};
    CHECK_FALSE(q0_sampling_check(psd, 300, 5).counterexample_found);
  }
  SUBCASE("no counterexample for the hidden fixture") {
    Q0Report rep = q0_sampling_check(fixtures::hidden_n(), 500, 7);
    CHECK_FALSE(rep.counterexample_found);
    CHECK(rep.samples_tested == 500);
  }
  CHECK_THROWS_AS(q0_sampling_check(Matrix::identity(13), 10, 0),
                  std::invalid_argument);
}

TEST_CASE("classify_matrix assembles a coherent report") {
  ClassReport rep = classify_matrix(fixtures::block_k_6x6(), 2,
                                    Strictness::kStrict);
  CHECK(rep.verdicts.at("Z") == Verdict::kFalse);  // m31 = 3 > 0
  CHECK(rep.verdicts.at("P") == Verdict::kTrue);
  CHECK(rep.verdicts.at("block_triangular_K") == Verdict::kTrue);
  CHECK(rep.verdicts.at("Z_diagonal_blocks") == Verdict::kTrue);
  CHECK(rep.verdicts.at("K_diagonal_blocks") == Verdict::kTrue);
  // K = Z and P.
  CHECK(rep.verdicts.at("K") == Verdict::kFalse);

  Rng rng(151);
  const Matrix g = gen_block_triangular_k(2, 2, rng);
  ClassReport grep = classify_matrix(g, 2);
  CHECK(grep.verdicts.at("Z") == Verdict::kTrue);
  CHECK(grep.verdicts.at("P") == Verdict::kTrue);
  CHECK(grep.verdicts.at("K") == Verdict::kTrue);
  CHECK(grep.verdicts.at("block_triangular_K") == Verdict::kTrue);

  const Matrix x = fixtures::hidden_x();
  const Matrix y = fixtures::hidden_y();
  ClassReport hrep = classify_matrix(fixtures::hidden_n(), 2,
                                     Strictness::kRelaxed, &x, &y);
  CHECK(hrep.verdicts.at("hidden_block_triangular_K") == Verdict::kTrue);
  CHECK(hrep.verdicts.at("block_triangular_K") == Verdict::kFalse);
}
