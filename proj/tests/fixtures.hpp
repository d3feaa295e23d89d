#pragma once

#include "lcpk/matrix.hpp"

// The two worked 2x2-block examples used across the suites: a 6x6 block
// triangular K-matrix and a 4x4 hidden one with its witnesses.
namespace fixtures {

inline lcpk::Matrix block_k_6x6() {
  return lcpk::Matrix{{1, -1, 0, 0, 0, 0},
                      {-1.5, 2, 0, 0, 0, 0},
                      {3, -1, 1, -1, 0, 0},
                      {-1, 4, -0.75, 1, 0, 0},
                      {1, -1, 1, -0.5, 5, -1},
                      {-0.5, 1, -0.5, 1, -10, 6}};
}

inline lcpk::Matrix hidden_n() {
  return lcpk::Matrix{{-1, -1, 0, 0},
                      {5, 4, 0, 0},
                      {-4.75, -3, 1, 0.25},
                      {4.6875, 2.75, -0.25, 0.1875}};
}

inline lcpk::Matrix hidden_x() {
  return lcpk::Matrix{
      {2, -1, 0, 0}, {-3, 2, 0, 0}, {3, 0, 4, -1}, {-2, 1, 0, 4}};
}

inline lcpk::Matrix hidden_y() {
  return lcpk::Matrix{
      {1, -1, 0, 0}, {-2, 3, 0, 0}, {2, -1, 4, 0}, {0, 1, -1, 1}};
}

}  // namespace fixtures
