#include "tds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tds {

SymMatrix::SymMatrix(std::size_t order, std::vector<Rational> entries, bool /*trusted*/)
    : order_(order), entries_(std::move(entries)) {}

SymMatrix::SymMatrix(std::size_t order, std::vector<Rational> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ == 0) throw std::invalid_argument("matrix order must be positive");
  if (entries_.size() != order_ * order_) throw std::invalid_argument("entry count does not match order");
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = i + 1; j < order_; ++j) {
      if (entries_[i * order_ + j] != entries_[j * order_ + i]) {
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
    }
  }
}

SymMatrix SymMatrix::zero(std::size_t order) {
  if (order == 0) throw std::invalid_argument("matrix order must be positive");
  return SymMatrix(order, std::vector<Rational>(order * order), true);
}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix m = zero(order);
  for (std::size_t i = 0; i < order; ++i) m.entries_[i * order + i] = 1;
  return m;
}

SymMatrix SymMatrix::ones(std::size_t order) {
  if (order == 0) throw std::invalid_argument("matrix order must be positive");
  return SymMatrix(order, std::vector<Rational>(order * order, Rational(1)), true);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("matrix rows must all have length " + std::to_string(n));
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return SymMatrix(n, std::move(entries));
}

SymMatrix SymMatrix::from_float(const Eigen::MatrixXd& m, double symmetry_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = m(Eigen::Index(i), Eigen::Index(j));
      if (!std::isfinite(x)) throw std::invalid_argument("non-finite matrix entry");
      if (j < i) {
        if (std::abs(x - m(Eigen::Index(j), Eigen::Index(i))) > symmetry_tol) {
          throw std::invalid_argument("matrix is not symmetric");
        }
        entries[i * n + j] = entries[j * n + i];
      } else {
        entries[i * n + j] = from_double(x);
      }
    }
  }
  return SymMatrix(n, std::move(entries));
}

Eigen::MatrixXd SymMatrix::to_float() const {
  const auto n = static_cast<Eigen::Index>(order_);
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = entries_[std::size_t(i * n + j)].get_d();
  }
  return out;
}

Rational SymMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < order_; ++i) t += entries_[i * order_ + i];
  return t;
}

Rational SymMatrix::trace_of_square() const {
  Rational t = 0;
  for (const auto& e : entries_) t += e * e;
  return t;
}

Rational SymMatrix::max_abs() const {
  Rational best = 0;
  for (const auto& e : entries_) best = std::max<Rational>(best, abs(e));
  return best;
}

SymMatrix SymMatrix::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = perm.size();
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= order_) throw std::out_of_range("permutation index out of range");
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = (*this)(perm[i], perm[j]);
  }
  return SymMatrix(n, std::move(entries), true);
}

namespace {

void require_same_order(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw std::invalid_argument("matrix order mismatch");
}

}  // namespace

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_order(a, b);
  std::vector<Rational> out(a.entries_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.entries_[k] + b.entries_[k];
  return SymMatrix(a.order_, std::move(out), true);
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_order(a, b);
  std::vector<Rational> out(a.entries_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.entries_[k] - b.entries_[k];
  return SymMatrix(a.order_, std::move(out), true);
}

SymMatrix operator*(const Rational& s, const SymMatrix& m) {
  std::vector<Rational> out(m.entries_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = s * m.entries_[k];
  return SymMatrix(m.order_, std::move(out), true);
}

SymMatrix operator/(const SymMatrix& m, const Rational& s) {
  if (s == 0) throw std::domain_error("division of matrix by zero");
  std::vector<Rational> out(m.entries_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = m.entries_[k] / s;
  return SymMatrix(m.order_, std::move(out), true);
}

std::size_t Spectrum::order() const {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.multiplicity;
  return n;
}

std::size_t Spectrum::multiplicity_of(double value, double within) const {
  for (const auto& c : clusters) {
    if (std::abs(c.value - value) <= within) return c.multiplicity;
  }
  return 0;
}

std::vector<double> Spectrum::expand() const {
  std::vector<double> out;
  for (const auto& c : clusters) out.insert(out.end(), c.multiplicity, c.value);
  return out;
}

std::vector<double> eig_sym(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("eig_sym needs a non-empty square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

std::vector<double> eig_sym(const SymMatrix& m) { return eig_sym(m.to_float()); }

Spectrum group_spectrum(std::span<const double> eigs, double tol) {
  if (eigs.empty()) throw std::invalid_argument("empty spectrum");
  if (tol < 0) throw std::invalid_argument("negative tolerance");
  Spectrum out;
  out.tol = tol;
  double sum = eigs.front();
  std::size_t count = 1;
  for (std::size_t i = 1; i < eigs.size(); ++i) {
    const double mean = sum / double(count);
    if (std::abs(eigs[i] - mean) <= tol) {
      sum += eigs[i];
      ++count;
    } else {
      out.clusters.push_back({mean, count});
      sum = eigs[i];
      count = 1;
    }
  }
  out.clusters.push_back({sum / double(count), count});
  return out;
}

double spectral_radius(std::span<const double> eigs) {
  double r = 0.0;
  for (double x : eigs) r = std::max(r, std::abs(x));
  return r;
}

Spectrum spectrum_of(const Eigen::MatrixXd& m, double tol) {
  const auto eigs = eig_sym(m);
  return group_spectrum(eigs, tol * std::max(1.0, spectral_radius(eigs)));
}

Spectrum spectrum_of(const SymMatrix& m, double tol) { return spectrum_of(m.to_float(), tol); }

PsdReport psd_rank(const Eigen::MatrixXd& m, double tol) {
  const auto eigs = eig_sym(m);
  const double scaled = tol * std::max(1.0, spectral_radius(eigs));
  PsdReport report{eigs.front() >= -scaled, 0, eigs.front()};
  for (double x : eigs) {
    if (std::abs(x) > scaled) ++report.numeric_rank;
  }
  return report;
}

PsdReport psd_rank(const SymMatrix& m, double tol) { return psd_rank(m.to_float(), tol); }

WeylReport verify_weyl(const Eigen::MatrixXd& n, const Eigen::MatrixXd& r, double tol) {
  if (n.rows() != r.rows() || n.cols() != r.cols()) throw std::invalid_argument("matrix order mismatch");
  auto en = eig_sym(n);
  auto er = eig_sym(r);
  auto es = eig_sym(Eigen::MatrixXd(n + r));
  std::reverse(en.begin(), en.end());
  std::reverse(es.begin(), es.end());
  const double r_max = er.back();
  const double r_min = er.front();
  const double slack = tol * std::max(1.0, spectral_radius(en) + spectral_radius(er));

  WeylReport report{true, {}};
  report.checks.reserve(en.size());
  for (std::size_t i = 0; i < en.size(); ++i) {
    WeylCheck c{i + 1, en[i] + r_min, es[i], en[i] + r_max, false};
    c.holds = c.lower - slack <= c.value && c.value <= c.upper + slack;
    report.all_hold = report.all_hold && c.holds;
    report.checks.push_back(c);
  }
  return report;
}

WeylReport verify_weyl(const SymMatrix& n, const SymMatrix& r, double tol) {
  if (n.order() != r.order()) throw std::invalid_argument("matrix order mismatch");
  return verify_weyl(n.to_float(), r.to_float(), tol);
}

std::size_t exact_rank(const SymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<Rational> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[rank * n + j]);
    }
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (a[i * n + col] == 0) continue;
      const Rational factor = a[i * n + col] / a[rank * n + col];
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= factor * a[rank * n + j];
    }
    ++rank;
  }
  return rank;
}

bool exact_is_psd(const SymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<Rational> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (a[i * n + i] < 0) return false;
      if (a[i * n + i] > 0 && pivot == n) pivot = i;
    }
    if (pivot == n) {
      // Remaining diagonal is zero, so the remaining block must vanish.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[i] && !done[j] && a[i * n + j] != 0) return false;
        }
      }
      return true;
    }
    done[pivot] = true;
    const Rational d = a[pivot * n + pivot];
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i * n + pivot] == 0) continue;
      const Rational factor = a[i * n + pivot] / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) a[i * n + j] -= factor * a[pivot * n + j];
      }
    }
  }
  return true;
}

std::size_t exact_multiplicity(const SymMatrix& m, const Rational& lambda) {
  return m.order() - exact_rank(m - lambda * SymMatrix::identity(m.order()));
}

SymMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_nonblank = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_nonblank()) throw ParseError("matrix file is empty");
  std::size_t order = 0;
  {
    std::istringstream header(line);
    long long parsed = 0;
    std::string extra;
    if (!(header >> parsed) || parsed <= 0 || (header >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected a positive matrix order");
    }
    order = static_cast<std::size_t>(parsed);
  }

  std::vector<Rational> entries;
  entries.reserve(order * order);
  for (std::size_t row = 0; row < order; ++row) {
    if (!next_nonblank()) throw ParseError("expected " + std::to_string(order) + " rows, got " + std::to_string(row));
    std::istringstream tokens(line);
    std::string token;
    std::size_t count = 0;
    while (tokens >> token) {
      try {
        entries.push_back(parse_rational(token));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
      ++count;
    }
    if (count != order) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(order) + " entries, got " +
                       std::to_string(count));
    }
  }
  if (next_nonblank()) throw ParseError("line " + std::to_string(line_no) + ": trailing data after matrix");
  try {
    return SymMatrix(order, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

SymMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const SymMatrix& m) {
  out << m.order() << '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const SymMatrix& m) {
  const auto saved = out.precision();
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) out << ',';
      out << m(i, j).get_d();
    }
    out << '\n';
  }
  out.precision(saved);
}

}  // namespace tds
