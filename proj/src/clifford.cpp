// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/clifford.hpp"

#include "htype/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace htype::clifford {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Vec conj(const Vec& x) {
  Vec y = -x;
  y(0) = x(0);
  return y;
}

// Cayley-Dickson product (a,b)(c,d) = (ac - d*b, da + bc*).
Vec cd_mul(const Vec& x, const Vec& y) {
  const Eigen::Index d = x.size();
  if (d == 1) return x.cwiseProduct(y);
  const Eigen::Index h = d / 2;
  Vec a = x.head(h), b = x.tail(h), c = y.head(h), e = y.tail(h);
  Vec out(d);
  out.head(h) = cd_mul(a, c) - cd_mul(conj(e), b);
  out.tail(h) = cd_mul(e, a) + cd_mul(b, conj(c));
  return out;
}

// Left multiplication by the imaginary units of the dimension-d algebra, negated.
std::vector<Mat> division_algebra_generators(int d, int count) {
  std::vector<Mat> out;
  for (int i = 1; i <= count; ++i) {
    Mat L(d, d);
    Vec ei = Vec::Unit(d, i);
    for (int j = 0; j < d; ++j) L.col(j) = cd_mul(ei, Vec::Unit(d, j));
    out.push_back(-L);
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Eight generators on R^16 and their (symmetric, involutive) volume element.
std::pair<std::vector<Mat>, Mat> period_eight() {
  Mat sz(2, 2), eps(2, 2);
  sz << 1, 0, 0, -1;
  eps << 0, 1, -1, 0;
  std::vector<Mat> g;
  for (const Mat& L : division_algebra_generators(8, 7)) g.push_back(kron(L, sz));
  g.push_back(kron(Mat::Identity(8, 8), eps));
  Mat vol = Mat::Identity(16, 16);
  for (const Mat& x : g) vol = vol * x;
  return {g, vol};
}

std::vector<Mat> minimal_generators(int m) {
  if (m == 0) return {};
  const int r = m % 8;
  if (m >= 8) {
    auto [g8, vol] = period_eight();
    std::vector<Mat> base = minimal_generators(m - 8);
    const Eigen::Index d = base.empty() ? 1 : base.front().rows();
    std::vector<Mat> out;
    for (const Mat& e : base) out.push_back(kron(e, vol));
    for (const Mat& f : g8) out.push_back(kron(Mat::Identity(d, d), f));
    return out;
  }
  return division_algebra_generators(minimal_module_dim(r), r);
}

}  // namespace

double GeneratorReport::worst() const { return std::max({skew, orthogonal, anticommute}); }

int radon_hurwitz(int N) {
  require(N >= 1, "radon_hurwitz: N must be >= 1");
  int e = 0;
  while (N % 2 == 0) {
    N /= 2;
    ++e;
  }
  return 8 * (e / 4) + (1 << (e % 4));
}

int minimal_module_dim(int m) {
  require(m >= 0, "minimal_module_dim: m must be >= 0");
  static const int base[8] = {1, 2, 4, 4, 8, 8, 8, 8};
  int d = base[m % 8];
  for (int k = 0; k < m / 8; ++k) d *= 16;
  return d;
}

GeneratorSet build_generators(int n, int m) {
  require(n >= 1 && m >= 1, "build_generators: n and m must be positive");
  const int rho = radon_hurwitz(2 * n);
  if (m > rho - 1)
    throw PreconditionError("inadmissible (n,m) = (" + std::to_string(n) + "," + std::to_string(m) +
                            "): Radon-Hurwitz bound requires m <= rho(2n) - 1 = " +
                            std::to_string(rho - 1));
  const int d = minimal_module_dim(m);
  const int copies = 2 * n / d;
  GeneratorSet g{n, m, {}};
  for (const Mat& e : minimal_generators(m)) g.mats.push_back(kron(Mat::Identity(copies, copies), e));
  return g;
}

GeneratorReport verify_generators(const GeneratorSet& g) {
  GeneratorReport r;
  const Eigen::Index dim = 2 * g.n;
  if (static_cast<int>(g.mats.size()) != g.m) r.shape_ok = false;
  for (const Mat& u : g.mats)
    if (u.rows() != dim || u.cols() != dim) r.shape_ok = false;
  if (!r.shape_ok) return r;
  const Mat I = Mat::Identity(dim, dim);
  for (std::size_t j = 0; j < g.mats.size(); ++j) {
    const Mat& a = g.mats[j];
    r.skew = std::max(r.skew, (a + a.transpose()).cwiseAbs().maxCoeff());
    r.orthogonal = std::max(r.orthogonal, (a.transpose() * a - I).cwiseAbs().maxCoeff());
    for (std::size_t k = j + 1; k < g.mats.size(); ++k) {
      const Mat& b = g.mats[k];
      r.anticommute = std::max(r.anticommute, (a * b + b * a).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

}  // namespace htype::clifford
