#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "amgpoly/csr.hpp"
#include "amgpoly/dense.hpp"

namespace testing {

inline amgpoly::Vector random_vector(std::size_t n, std::uint32_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  amgpoly::Vector v(n);
  for (double& x : v) x = u(gen);
  return v;
}

// G^T G + n I, dense but stored as CSR.
inline amgpoly::DenseMatrix random_spd_dense(std::size_t n, std::uint32_t seed) {
  amgpoly::DenseMatrix G(n, n);
  const amgpoly::Vector g = random_vector(n * n, seed);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) G(i, j) = g[i * n + j];
  amgpoly::DenseMatrix S = G.transposed() * G;
  for (std::size_t i = 0; i < n; ++i) S(i, i) += static_cast<double>(n) * 0.1;
  return S;
}

inline amgpoly::CsrMatrix to_csr(const amgpoly::DenseMatrix& S) {
  std::vector<amgpoly::Triplet> t;
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = 0; j < S.cols(); ++j)
      if (S(i, j) != 0.0) t.push_back({i, j, S(i, j)});
  return amgpoly::CsrMatrix::from_triplets(S.rows(), S.cols(), std::move(t));
}

inline double max_abs_diff(const amgpoly::Vector& a, const amgpoly::Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testing
