#include "tds/etf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tds {

namespace {

constexpr const char* kBundledCatalog =
    "n_vectors,dim,exists,provenance\n"
    "6,3,yes,constructed: Paley conference matrix q=5 (icosahedron diagonals)\n"
    "16,6,yes,constructed: Seidel matrix of the Clebsch graph\n"
    "28,7,yes,constructed: triangular graph T(8) / E7 root lines\n"
    "36,15,yes,constructed: cyclic Latin square graph of order 6\n"
    "76,19,no,Fickus and Mixon tables of real equiangular tight frames (2015)\n";

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_count(const std::string& cell, std::size_t line_no) {
  if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("catalog line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" + cell + "'");
  }
  return std::stoul(cell);
}

}  // namespace

std::string to_string(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    case Existence::unknown: return "unknown";
  }
  return "unknown";
}

EtfCatalog::EtfCatalog(std::vector<EtfRecord> records) : records_(std::move(records)) {
  for (const auto& r : records_) {
    if (r.dim < 1 || r.n_vectors <= r.dim) throw DomainError("invalid catalog entry", "need n_vectors > dim >= 1");
    if (r.exists != Existence::unknown && r.provenance.empty()) {
      throw DomainError("invalid catalog entry", "yes/no entries need a provenance");
    }
  }
}

EtfCatalog EtfCatalog::bundled() {
  std::istringstream in(kBundledCatalog);
  return catalog_parse(in);
}

EtfRecord EtfCatalog::query(std::size_t n_vectors, std::size_t dim) const {
  for (const auto& r : records_) {
    if (r.n_vectors == n_vectors && r.dim == dim) return r;
  }
  return {n_vectors, dim, Existence::unknown, {}};
}

EtfCatalog catalog_parse(std::istream& in) {
  std::vector<EtfRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (line_no == 1 && trim(line).rfind("n_vectors", 0) == 0) continue;

    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    // Provenance is the remainder of the line and may itself contain commas.
    for (int k = 0; k < 3 && std::getline(row, cell, ','); ++k) cells.push_back(trim(cell));
    std::string rest;
    std::getline(row, rest);
    if (cells.size() != 3) throw ParseError("catalog line " + std::to_string(line_no) + ": expected 4 fields");
    EtfRecord r;
    r.n_vectors = parse_count(cells[0], line_no);
    r.dim = parse_count(cells[1], line_no);
    if (cells[2] == "yes") {
      r.exists = Existence::yes;
    } else if (cells[2] == "no") {
      r.exists = Existence::no;
    } else if (cells[2] == "unknown") {
      r.exists = Existence::unknown;
    } else {
      throw ParseError("catalog line " + std::to_string(line_no) + ": exists must be yes|no|unknown, got '" +
                       cells[2] + "'");
    }
    r.provenance = trim(rest);
    if (r.dim < 1 || r.n_vectors <= r.dim) {
      throw ParseError("catalog line " + std::to_string(line_no) + ": need n_vectors > dim >= 1");
    }
    if (r.exists != Existence::unknown && r.provenance.empty()) {
      throw ParseError("catalog line " + std::to_string(line_no) + ": missing provenance");
    }
    records.push_back(std::move(r));
  }
  return EtfCatalog(std::move(records));
}

EtfCatalog catalog_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog '" + path + "'");
  return catalog_parse(in);
}

void write_catalog(std::ostream& out, const EtfCatalog& catalog) {
  out << "n_vectors,dim,exists,provenance\n";
  for (const auto& r : catalog.records()) {
    out << r.n_vectors << ',' << r.dim << ',' << to_string(r.exists) << ',' << r.provenance << '\n';
  }
}

EtfTestResult etf_signature_test(const SeidelMatrix& q, double tol) {
  const std::size_t n = q.order();
  const auto sq = q.square();
  EtfTestResult r;

  std::optional<long long> mu;
  bool consistent = true;
  for (std::size_t i = 0; i < n && consistent; ++i) {
    if (sq[i * n + i] != static_cast<long long>(n) - 1) consistent = false;
    for (std::size_t j = i + 1; j < n && consistent; ++j) {
      // Off the diagonal (Q^2)_ij = mu * Q_ij with Q_ij = +-1.
      const long long candidate = sq[i * n + j] * q(i, j);
      if (!mu) {
        mu = candidate;
      } else if (*mu != candidate) {
        consistent = false;
      }
    }
  }
  if (n == 1) mu = 0;

  const auto eigs = eig_sym(q.to_float());
  const double within = tol * std::max(1.0, spectral_radius(eigs));
  const Spectrum spec = group_spectrum(eigs, within);
  r.spectral_clusters = spec.clusters.size();
  r.rho1 = eigs.back();
  r.rho2 = eigs.front();

  if (!consistent || !mu) return r;

  r.is_two_eigenvalue = true;
  r.mu = mu;
  const double m = double(*mu);
  const double root = std::sqrt(m * m + 4.0 * double(n - 1));
  r.rho1 = (m + root) / 2;
  r.rho2 = (m - root) / 2;
  // Trace zero: mult1 * rho1 + mult2 * rho2 = 0 with mult1 + mult2 = n.
  r.mult1 = static_cast<std::size_t>(std::llround(double(n) * -r.rho2 / root));
  r.mult2 = n - r.mult1;
  r.inferred_dim = r.mult1;
  return r;
}

BoundResult refine_euclidean(std::size_t d, const Rational& gamma, const EtfCatalog& catalog) {
  BoundResult r = bound_euclidean(d, gamma);
  if (!r.valid) return r;
  if (!is_integer(r.exact_value)) {
    r.note = "bound not integral; no refinement";
    return r;
  }
  const std::size_t n = r.cardinality_bound.get_ui();
  const EtfRecord rec = catalog.query(n - 1, d + 1);
  if (rec.exists == Existence::no) {
    r.cardinality_bound -= 1;
    r.refined = true;
    r.note = "no ETF with " + std::to_string(n - 1) + " vectors in R^" + std::to_string(d + 1) + " (" +
             rec.provenance + ")";
  } else if (rec.exists == Existence::yes) {
    r.note = "ETF with " + std::to_string(n - 1) + " vectors in R^" + std::to_string(d + 1) + " exists";
  } else {
    r.note = "no catalog evidence";
  }
  return r;
}

BoundResult refine_spherical(std::size_t d, const Rational& gamma, const EtfCatalog& catalog, SphericalBranch branch) {
  BoundResult r = branch == SphericalBranch::pos ? bound_spherical_pos(d, gamma) : bound_spherical_neg(d, gamma);
  if (!r.valid) return r;
  if (!is_integer(r.exact_value)) {
    r.note = "bound not integral; no refinement";
    return r;
  }
  const std::size_t n = r.cardinality_bound.get_ui();
  const std::size_t dim = branch == SphericalBranch::pos ? d : d + 1;
  const EtfRecord rec = catalog.query(n, dim);
  if (rec.exists == Existence::no) {
    r.cardinality_bound -= 1;
    r.refined = true;
    r.note = "no ETF with " + std::to_string(n) + " vectors in R^" + std::to_string(dim) + " (" + rec.provenance + ")";
  } else if (rec.exists == Existence::yes) {
    r.note = "ETF with " + std::to_string(n) + " vectors in R^" + std::to_string(dim) + " exists";
  } else {
    r.note = "no catalog evidence";
  }
  return r;
}

}  // namespace tds
