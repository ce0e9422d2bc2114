#include "amgpoly/csr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace amgpoly {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

CsrMatrix::CsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != nrows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != values_.size() || col_idx_.size() != values_.size()) {
    throw std::invalid_argument("CsrMatrix: inconsistent row_ptr/col_idx/values lengths");
  }
  for (std::size_t i = 0; i < nrows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw std::invalid_argument("CsrMatrix: row_ptr must be nondecreasing");
    }
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= ncols_) throw std::invalid_argument("CsrMatrix: column out of range");
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw std::invalid_argument("CsrMatrix: columns must be strictly increasing in a row");
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t nrows, std::size_t ncols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= nrows || t.col >= ncols) {
      throw std::invalid_argument("CsrMatrix::from_triplets: index out of range");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_ptr(nrows + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(entries.size());
  vals.reserve(entries.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < nrows; ++i) {
    while (k < entries.size() && entries[k].row == i) {
      const std::size_t j = entries[k].col;
      double sum = 0.0;
      while (k < entries.size() && entries[k].row == i && entries[k].col == j) {
        sum += entries[k].value;
        ++k;
      }
      if (sum != 0.0) {
        cols.push_back(j);
        vals.push_back(sum);
      }
    }
    row_ptr[i + 1] = cols.size();
  }
  return CsrMatrix(nrows, ncols, std::move(row_ptr), std::move(cols), std::move(vals));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  const Vector ones(n, 1.0);
  return diagonal(ones);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), d.size(), std::move(t));
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= nrows_ || j >= ncols_) throw std::out_of_range("CsrMatrix::at");
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector CsrMatrix::diagonal() const {
  Vector d(std::min(nrows_, ncols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (nrows_ != ncols_) return false;
  double scale = 0.0;
  for (double v : values_) scale = std::max(scale, std::abs(v));
  const CsrMatrix T = transpose(*this);
  if (T.row_ptr_ != row_ptr_ || T.col_idx_ != col_idx_) return false;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (std::abs(values_[k] - T.values_[k]) > tol * scale) return false;
  }
  return true;
}

std::vector<Triplet> CsrMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      out.push_back({i, col_idx_[k], values_[k]});
    }
  }
  return out;
}

void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y) {
  require_same_length(A.cols(), x.size(), "spmv");
  require_same_length(A.rows(), y.size(), "spmv");
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) sum += v[k] * x[ci[k]];
    y[i] = sum;
  }
}

Vector spmv(const CsrMatrix& A, std::span<const double> x) {
  Vector y(A.rows());
  spmv(A, x, y);
  return y;
}

CsrMatrix transpose(const CsrMatrix& A) {
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  std::vector<std::size_t> tp(A.cols() + 1, 0);
  for (std::size_t k = 0; k < A.nnz(); ++k) ++tp[ci[k] + 1];
  for (std::size_t j = 0; j < A.cols(); ++j) tp[j + 1] += tp[j];
  std::vector<std::size_t> next(tp.begin(), tp.end() - 1);
  std::vector<std::size_t> tc(A.nnz());
  std::vector<double> tv(A.nnz());
  // Rows visited in increasing order keep the transposed columns sorted.
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      const std::size_t dst = next[ci[k]]++;
      tc[dst] = i;
      tv[dst] = v[k];
    }
  }
  return CsrMatrix(A.cols(), A.rows(), std::move(tp), std::move(tc), std::move(tv));
}

CsrMatrix multiply(const CsrMatrix& A, const CsrMatrix& B) {
  require_same_length(A.cols(), B.rows(), "multiply");
  const auto arp = A.row_ptr();
  const auto aci = A.col_idx();
  const auto av = A.values();
  const auto brp = B.row_ptr();
  const auto bci = B.col_idx();
  const auto bv = B.values();

  std::vector<std::size_t> row_ptr(A.rows() + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  Vector acc(B.cols(), 0.0);
  std::vector<std::size_t> marker(B.cols(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> touched;

  for (std::size_t i = 0; i < A.rows(); ++i) {
    touched.clear();
    for (std::size_t ka = arp[i]; ka < arp[i + 1]; ++ka) {
      const std::size_t j = aci[ka];
      const double a = av[ka];
      for (std::size_t kb = brp[j]; kb < brp[j + 1]; ++kb) {
        const std::size_t c = bci[kb];
        if (marker[c] != i) {
          marker[c] = i;
          acc[c] = 0.0;
          touched.push_back(c);
        }
        acc[c] += a * bv[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t c : touched) {
      if (acc[c] != 0.0) {
        cols.push_back(c);
        vals.push_back(acc[c]);
      }
    }
    row_ptr[i + 1] = cols.size();
  }
  return CsrMatrix(A.rows(), B.cols(), std::move(row_ptr), std::move(cols), std::move(vals));
}

void fused_update(double rho, double rho_prev, double two_rho_over_delta,
                  std::span<const double> s, std::span<double> r, std::span<double> d,
                  std::span<double> x) {
  const std::size_t n = r.size();
  require_same_length(s.size(), n, "fused_update");
  require_same_length(d.size(), n, "fused_update");
  require_same_length(x.size(), n, "fused_update");
  const double c = rho * rho_prev;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = r[i] - s[i];
    const double di = c * d[i] + two_rho_over_delta * ri;
    r[i] = ri;
    d[i] = di;
    x[i] = x[i] + di;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_length(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

OperatorRef::OperatorRef(const CsrMatrix& A) : n_(A.rows()) {
  if (A.rows() != A.cols()) throw std::invalid_argument("OperatorRef: matrix not square");
  const CsrMatrix* p = &A;
  apply_ = [p](std::span<const double> x, std::span<double> y) { spmv(*p, x, y); };
}

// ---------------------------------------------------------------------------
// Matrix Market

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate") {
    throw std::runtime_error("matrix market: only 'matrix coordinate' files are supported");
  }
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "pattern") {
    throw std::runtime_error("matrix market: unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw std::runtime_error("matrix market: unsupported symmetry '" + symmetry + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  const bool pattern = field == "pattern";

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream sizes(line);
    if (!(sizes >> nrows >> ncols >> nnz)) throw std::runtime_error("matrix market: bad size line");
  }
  std::vector<Triplet> entries;
  entries.reserve(symmetric ? 2 * nnz : nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 1.0;
    if (!(in >> i >> j)) throw std::runtime_error("matrix market: truncated entry list");
    if (!pattern && !(in >> v)) throw std::runtime_error("matrix market: missing value");
    if (i == 0 || j == 0 || i > nrows || j > ncols) {
      throw std::runtime_error("matrix market: index out of range");
    }
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  return CsrMatrix::from_triplets(nrows, ncols, std::move(entries));
}

CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& A, bool symmetric) {
  if (symmetric && A.rows() != A.cols()) {
    throw std::invalid_argument("write_matrix_market: symmetric output needs a square matrix");
  }
  std::vector<Triplet> entries = A.to_triplets();
  if (symmetric) {
    std::erase_if(entries, [](const Triplet& t) { return t.col > t.row; });
  }
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
  out << A.rows() << ' ' << A.cols() << ' ' << entries.size() << '\n';
  out << std::setprecision(17);
  for (const auto& t : entries) out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
}

void write_matrix_market(const std::string& path, const CsrMatrix& A, bool symmetric) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_matrix_market(out, A, symmetric);
}

}  // namespace amgpoly
