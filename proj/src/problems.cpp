#include "amgpoly/problems.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amgpoly {

Problem poisson3d(std::size_t m) {
  if (m < 2) throw std::invalid_argument("poisson3d: m must be >= 2");
  const std::size_t n = m * m * m;
  std::vector<Triplet> t;
  t.reserve(7 * n);
  auto id = [m](std::size_t i, std::size_t j, std::size_t k) { return i + m * (j + m * k); };
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = id(i, j, k);
        t.push_back({r, r, 6.0});
        if (i > 0) t.push_back({r, id(i - 1, j, k), -1.0});
        if (i + 1 < m) t.push_back({r, id(i + 1, j, k), -1.0});
        if (j > 0) t.push_back({r, id(i, j - 1, k), -1.0});
        if (j + 1 < m) t.push_back({r, id(i, j + 1, k), -1.0});
        if (k > 0) t.push_back({r, id(i, j, k - 1), -1.0});
        if (k + 1 < m) t.push_back({r, id(i, j, k + 1), -1.0});
      }
    }
  }
  return {CsrMatrix::from_triplets(n, n, std::move(t)), Vector(n, 1.0)};
}

Problem poisson2d(std::size_t m) {
  if (m < 2) throw std::invalid_argument("poisson2d: m must be >= 2");
  const std::size_t n = m * m;
  std::vector<Triplet> t;
  t.reserve(5 * n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t r = i + m * j;
      t.push_back({r, r, 4.0});
      if (i > 0) t.push_back({r, r - 1, -1.0});
      if (i + 1 < m) t.push_back({r, r + 1, -1.0});
      if (j > 0) t.push_back({r, r - m, -1.0});
      if (j + 1 < m) t.push_back({r, r + m, -1.0});
    }
  }
  return {CsrMatrix::from_triplets(n, n, std::move(t)), Vector(n, 1.0)};
}

Problem laplacian1d(std::size_t n) {
  if (n < 1) throw std::invalid_argument("laplacian1d: n must be >= 1");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return {CsrMatrix::from_triplets(n, n, std::move(t)), Vector(n, 1.0)};
}

Problem aniso2d_q1(std::size_t m, double epsilon, double angle) {
  if (m < 2) throw std::invalid_argument("aniso2d_q1: m must be >= 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("aniso2d_q1: epsilon must be positive");

  const double c = std::cos(angle), s = std::sin(angle);
  // K = R diag(1, eps) R^T
  const double kxx = c * c + epsilon * s * s;
  const double kyy = s * s + epsilon * c * c;
  const double kxy = c * s * (1.0 - epsilon);

  // Reference element [0,1]^2, nodes (0,0),(1,0),(1,1),(0,1). The stiffness
  // does not depend on h in 2D.
  constexpr std::array<double, 4> xi{0.0, 1.0, 1.0, 0.0};
  constexpr std::array<double, 4> eta{0.0, 0.0, 1.0, 1.0};
  const double g = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> gp{0.5 - g, 0.5 + g};
  std::array<std::array<double, 4>, 4> ke{};
  for (double qx : gp) {
    for (double qy : gp) {
      std::array<double, 4> dx{}, dy{};
      for (int a = 0; a < 4; ++a) {
        const double sx = xi[a] > 0.5 ? 1.0 : -1.0;
        const double sy = eta[a] > 0.5 ? 1.0 : -1.0;
        const double fx = xi[a] > 0.5 ? qx : 1.0 - qx;
        const double fy = eta[a] > 0.5 ? qy : 1.0 - qy;
        dx[a] = sx * fy;
        dy[a] = fx * sy;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          ke[a][b] += 0.25 * (kxx * dx[a] * dx[b] + kxy * (dx[a] * dy[b] + dy[a] * dx[b]) +
                              kyy * dy[a] * dy[b]);
        }
      }
    }
  }

  const std::size_t nx = m + 1;
  const std::size_t n = m * nx;
  const double h = 2.0 / static_cast<double>(m);
  // Node (i, j) with j >= 1 maps to unknown i + nx (j - 1); j = 0 is eliminated.
  auto unknown = [nx](std::size_t i, std::size_t j) -> long {
    return j == 0 ? -1 : static_cast<long>(i + nx * (j - 1));
  };
  std::vector<Triplet> t;
  t.reserve(16 * m * m);
  Vector b(n, 0.0);
  for (std::size_t ej = 0; ej < m; ++ej) {
    for (std::size_t ei = 0; ei < m; ++ei) {
      const std::array<long, 4> nodes{unknown(ei, ej), unknown(ei + 1, ej),
                                      unknown(ei + 1, ej + 1), unknown(ei, ej + 1)};
      const double xc = -1.0 + (static_cast<double>(ei) + 0.5) * h;
      const double yc = -1.0 + (static_cast<double>(ej) + 0.5) * h;
      const double load = std::exp(-100.0 * (xc * xc + yc * yc)) * h * h / 4.0;
      for (int a = 0; a < 4; ++a) {
        if (nodes[a] < 0) continue;
        b[nodes[a]] += load;
        for (int bb = 0; bb < 4; ++bb) {
          if (nodes[bb] < 0) continue;
          t.push_back({static_cast<std::size_t>(nodes[a]), static_cast<std::size_t>(nodes[bb]),
                       ke[a][bb]});
        }
      }
    }
  }
  return {CsrMatrix::from_triplets(n, n, std::move(t)), std::move(b)};
}

CsrMatrix linear_interpolation_1d(std::size_t n) {
  const std::size_t nc = n / 2;
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t f = 2 * j + 1;
    t.push_back({f, j, 1.0});
    t.push_back({f - 1, j, 0.5});
    if (f + 1 < n) t.push_back({f + 1, j, 0.5});
  }
  return CsrMatrix::from_triplets(n, nc, std::move(t));
}

CsrMatrix linear_interpolation_2d(std::size_t m) {
  const CsrMatrix p = linear_interpolation_1d(m);
  const std::size_t mc = p.cols();
  const auto e = p.to_triplets();
  std::vector<Triplet> t;
  for (const Triplet& ey : e) {
    for (const Triplet& ex : e) {
      t.push_back({ex.row + m * ey.row, ex.col + mc * ey.col, ex.value * ey.value});
    }
  }
  return CsrMatrix::from_triplets(m * m, mc * mc, std::move(t));
}

std::string to_string(SpectrumDistribution d) {
  switch (d) {
    case SpectrumDistribution::Equispaced: return "equispaced";
    case SpectrumDistribution::BoundaryAccumulating: return "boundary";
    case SpectrumDistribution::Gapped: return "gapped";
  }
  return "unknown";
}

SpectrumDistribution parse_spectrum_distribution(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "a" || s == "equispaced") return SpectrumDistribution::Equispaced;
  if (s == "b" || s == "boundary") return SpectrumDistribution::BoundaryAccumulating;
  if (s == "c" || s == "gapped") return SpectrumDistribution::Gapped;
  throw std::invalid_argument("unknown spectrum distribution '" + std::string(name) + "'");
}

Vector logspace(double p, double q, std::size_t n) {
  const double hi = q == std::numbers::pi ? std::log10(std::numbers::pi) : q;
  Vector v(n);
  if (n == 1) {
    v[0] = std::pow(10.0, hi);
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::pow(10.0, p + (hi - p) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return v;
}

Vector spectrum_eigenvalues(std::size_t N, SpectrumDistribution dist) {
  if (N == 0) throw std::invalid_argument("spectrum_eigenvalues: N must be positive");
  Vector d;
  if (dist == SpectrumDistribution::Equispaced) {
    const double lo = 1.0 / static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) {
      d.push_back(N == 1 ? 1.0 : lo + (1.0 - lo) * static_cast<double>(i) / (N - 1.0));
    }
    return d;
  }
  if (N % 2 != 0) throw std::invalid_argument("spectrum_eigenvalues: N must be even");
  const Vector small = logspace(-8.0, -1.0, N / 2);
  if (dist == SpectrumDistribution::BoundaryAccumulating) {
    for (double v : small) d.push_back(1.0 - v);
    d.insert(d.end(), small.begin(), small.end());
  } else {
    d = small;
    const Vector large = logspace(1.0, std::numbers::pi, N / 2);
    d.insert(d.end(), large.begin(), large.end());
  }
  return d;
}

SpectralOperator::SpectralOperator(Vector eigenvalues) : d_(std::move(eigenvalues)) {
  const std::size_t N = d_.size();
  q_ = DenseMatrix(N, N);
  const double scale = std::sqrt(2.0 / (N + 1.0));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      // sin(ij pi/(N+1)) with the argument reduced mod 2(N+1) for accuracy
      const std::size_t r = ((i + 1) * (j + 1)) % (2 * (N + 1));
      q_(i, j) = scale * std::sin(static_cast<double>(r) * std::numbers::pi / (N + 1.0));
    }
  }
}

void SpectralOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t N = size();
  if (x.size() != N || y.size() != N) throw std::invalid_argument("SpectralOperator: size");
  // Q is symmetric, so Q^T x = Q x.
  Vector t(N);
  for (std::size_t i = 0; i < N; ++i) t[i] = d_[i] * dot(q_.row(i), x);
  for (std::size_t i = 0; i < N; ++i) y[i] = dot(q_.row(i), t);
}

OperatorRef SpectralOperator::op() const {
  return OperatorRef(size(), [this](std::span<const double> x, std::span<double> y) { apply(x, y); });
}

Vector SpectralOperator::row(std::size_t i) const {
  const std::size_t N = size();
  Vector w(N);
  for (std::size_t l = 0; l < N; ++l) w[l] = q_(i, l) * d_[l];
  Vector r(N);
  for (std::size_t j = 0; j < N; ++j) r[j] = dot(q_.row(j), w);
  return r;
}

Vector SpectralOperator::l1_row_sums() const {
  Vector m(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    m[i] = s;
  }
  return m;
}

DenseMatrix SpectralOperator::to_dense() const {
  DenseMatrix A(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    const Vector r = row(i);
    std::copy(r.begin(), r.end(), A.row(i).begin());
  }
  return A;
}

SpectralProblem spectral_synthetic(std::size_t N, SpectrumDistribution dist) {
  SpectralOperator A(spectrum_eigenvalues(N, dist));
  Vector ones(N, 1.0), b(N);
  A.apply(ones, b);
  return {std::move(A), std::move(b)};
}

}  // namespace amgpoly
