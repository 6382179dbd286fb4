// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace htype::clifford {

struct GeneratorSet {
  int n = 0;
  int m = 0;
  std::vector<Eigen::MatrixXd> mats;  // m matrices, each 2n x 2n
};

struct GeneratorReport {
  double skew = 0;          // max |U + U^T|
  double orthogonal = 0;    // max |U^T U - I|
  double anticommute = 0;   // max |U_j U_k + U_k U_j|, j != k
  bool shape_ok = true;

  double worst() const;
  bool passes(double tol) const { return shape_ok && worst() <= tol; }
};

// rho(N) = 8a + 2^b for N = 2^(4a+b) * odd, 0 <= b <= 3.
int radon_hurwitz(int N);

// Smallest module dimension carrying m anticommuting skew orthogonal maps.
int minimal_module_dim(int m);

GeneratorSet build_generators(int n, int m);

GeneratorReport verify_generators(const GeneratorSet& g);

}  // namespace htype::clifford
