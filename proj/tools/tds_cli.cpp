#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "selftest.hpp"
#include "tds/bounds.hpp"
#include "tds/configurations.hpp"
#include "tds/correspondence.hpp"
#include "tds/etf.hpp"
#include "tds/linalg.hpp"
#include "tds/seidel.hpp"
#include "tds/tables.hpp"

using nlohmann::ordered_json;
using namespace tds;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_tolerance() {
  if (const char* env = std::getenv("TDS_TOL")) {
    try {
      std::size_t used = 0;
      const double tol = std::stod(env, &used);
      if (used == std::string(env).size() && tol > 0) return tol;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("TDS_TOL must be a positive number, got '") + env + "'");
  }
  return kDefaultTol;
}

Rational rational_option(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& name, const std::string& text) {
  auto number = [&](const std::string& part) -> std::size_t {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--" + name + ": expected N or A..B, got '" + text + "'");
    }
    return std::stoul(part);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = number(text);
    return {v, v};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (hi < lo) throw UsageError("--" + name + ": empty range '" + text + "'");
  return {lo, hi};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

// Writes to --out when given, else stdout.
template <typename F>
void emit(const std::string& out_path, F&& write) {
  if (out_path.empty()) {
    write(std::cout);
  } else {
    auto out = open_output(out_path);
    write(out);
  }
}

ordered_json rational_json(const Rational& q) { return to_string(q); }

ordered_json matrix_json(const SymMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.order(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json seidel_json(const SeidelMatrix& s) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < s.order(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < s.order(); ++j) row.push_back(s(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json bound_json(const BoundResult& r) {
  ordered_json j;
  j["kind"] = to_string(r.kind);
  j["d"] = r.d;
  j["gamma"] = r.gamma ? rational_json(*r.gamma) : ordered_json(nullptr);
  j["m"] = r.m ? ordered_json(*r.m) : ordered_json(nullptr);
  j["exact_value"] = r.valid ? rational_json(r.exact_value) : ordered_json(nullptr);
  j["cardinality_bound"] = r.valid ? ordered_json(r.cardinality_bound.get_si()) : ordered_json(nullptr);
  j["valid"] = r.valid;
  j["refined"] = r.refined;
  j["note"] = r.note;
  return j;
}

ordered_json spectrum_json(const Spectrum& s) {
  ordered_json clusters = ordered_json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return {{"order", s.order()}, {"tol", s.tol}, {"clusters", clusters}};
}

ordered_json structure_json(const StructureReport& r) {
  return {{"smallest_eigenvalue", r.smallest_eig}, {"smallest_multiplicity", r.smallest_mult},
          {"target_value", r.target_value},       {"target_multiplicity", r.target_mult},
          {"required_multiplicity", r.required_mult}, {"below_target", r.below_target},
          {"passes", r.passes},                   {"vacuous", r.vacuous},
          {"note", r.note}};
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (format == f) return;
  }
  throw UsageError("--format '" + format + "' is not supported by this command");
}

PointConfiguration load_points(const std::string& path, const std::string& flavor) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_point_csv(in, parse_flavor(flavor.empty() ? "euclidean" : flavor));
  }
  return read_point_set_file(path);
}

// Seidel matrix of a point set, a squared-distance matrix or a Gram matrix.
struct SeidelBuild {
  SeidelMatrix seidel;
  ordered_json params;
  std::optional<StructureReport> structure;
};

SeidelBuild build_seidel(const SymMatrix* dist_sq, const SymMatrix* g, std::size_t d,
                         std::optional<Rational> delta_sq, double tol) {
  if (dist_sq) {
    EuclideanSeidel es = seidel_euclidean(*dist_sq, delta_sq, tol);
    ordered_json params = {{"flavor", "euclidean"},
                           {"n", es.params.n},
                           {"d", d ? d : es.params.d},
                           {"delta_sq", to_string(es.params.delta_sq)},
                           {"h", es.params.h},
                           {"scale", to_string(es.scale)},
                           {"permutation", es.permutation}};
    auto report = check_structure_euclidean(es.seidel, d ? d : es.params.d, es.params.delta_sq, tol);
    return {std::move(es.seidel), std::move(params), report};
  }
  const TwoDistanceCertificate cert = certify_gram(*g, true, tol);
  if (!cert.ok) throw DomainError("not a two-distance set", "Gram matrix has more than two off-diagonal values");
  const Rational a = cert.values[0];
  const Rational b = cert.values[1];
  SeidelMatrix s = seidel_spherical(*g, a, b);
  const std::size_t dim = d ? d : psd_rank(*g, tol).numeric_rank;
  ordered_json params = {{"flavor", "spherical"}, {"n", g->order()}, {"d", dim}, {"a", to_string(a)}, {"b", to_string(b)}};
  auto report = check_structure_spherical(s, dim, a, b, tol);
  return {std::move(s), std::move(params), report};
}

ordered_json certificate_json(const TwoDistanceCertificate& c) {
  ordered_json j;
  j["ok"] = c.ok;
  j["flavor"] = to_string(c.flavor);
  j["n"] = c.n;
  if (!c.ok) return j;
  j["values"] = {to_string(c.values[0]), to_string(c.values[1])};
  // Squared ratio of the larger distance to the smaller one.
  if (c.flavor == Flavor::euclidean) {
    j["ratio_sq"] = to_string(Rational(c.values[1] / c.values[0]));
  } else {
    j["ratio_sq"] = to_string(Rational((1 - c.values[0]) / (1 - c.values[1])));
  }
  j["pair_labels"] = c.pair_labels;
  if (c.flavor == Flavor::euclidean) {
    j["h"] = c.h;
    j["permutation"] = c.permutation;
  }
  return j;
}

void print_error(const std::string& error, const std::string& detail) {
  std::cerr << ordered_json{{"error", error}, {"detail", detail}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral tools for two-distance sets, Seidel matrices and equiangular lines"};
  app.require_subcommand(1);

  std::optional<double> tol_flag;
  app.add_option("--tol", tol_flag, "Relative eigenvalue tolerance (default from TDS_TOL, else 1e-7)")
      ->check(CLI::PositiveNumber);

  std::string format = "json";
  std::string out_path;

  // certify
  auto* certify = app.add_subcommand("certify", "Certify that a point set is a two-distance set");
  std::string certify_file, flavor_opt;
  certify->add_option("--file", certify_file, "Point set (.json, or .csv floats)")->required()->check(CLI::ExistingFile);
  certify->add_option("--flavor", flavor_opt, "Flavor for .csv input")->check(CLI::IsMember({"euclidean", "spherical"}));

  // seidel
  auto* seidel = app.add_subcommand("seidel", "Build the Seidel matrix of a two-distance set");
  std::string seidel_points, seidel_dist, seidel_gram, delta_sq_text;
  std::size_t seidel_d = 0;
  auto* seidel_src = seidel->add_option_group("input");
  seidel_src->add_option("--file", seidel_points, "Point set JSON")->check(CLI::ExistingFile);
  seidel_src->add_option("--dist", seidel_dist, "Squared-distance matrix file")->check(CLI::ExistingFile);
  seidel_src->add_option("--gram", seidel_gram, "Spherical Gram matrix file")->check(CLI::ExistingFile);
  seidel_src->require_option(1);
  seidel->add_option("--delta-sq", delta_sq_text, "Expected squared distance ratio p/q");
  seidel->add_option("--d", seidel_d, "Dimension (default: numeric rank)");
  seidel->add_option("--format", format, "text|json|csv")->capture_default_str();
  seidel->add_option("--out", out_path, "Output file");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Clustered spectrum of a symmetric matrix file");
  std::string spectrum_file;
  spectrum->add_option("file", spectrum_file, "Matrix file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--format", format, "json|csv")->capture_default_str();

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate one cardinality bound");
  std::string bound_kind = "euclidean", gamma_text, a_text, b_text, catalog_path;
  std::size_t bound_d = 0;
  unsigned bound_k = 0, bound_m = 0;
  bound->add_option("--kind", bound_kind, "euclidean|spherical_pos|spherical_neg|ls_max_euclidean|ls_max_spherical")
      ->capture_default_str();
  bound->add_option("--d", bound_d, "Dimension")->required();
  auto* gamma_src = bound->add_option_group("gamma");
  gamma_src->add_option("--k", bound_k, "Integer k with gamma = 2k - 1");
  gamma_src->add_option("--gamma", gamma_text, "gamma as p/q");
  gamma_src->add_option("--delta-sq", delta_sq_text, "Squared distance ratio p/q");
  auto* a_opt = gamma_src->add_option("--a", a_text, "Smaller inner product p/q");
  gamma_src->add_option("--b", b_text, "Larger inner product p/q")->needs(a_opt);
  gamma_src->add_option("--m", bound_m, "m for the ls_max kinds");
  bound->add_option("--catalog", catalog_path, "Apply ETF refinements from this catalog ('bundled' for the built-in one)");

  // table
  auto* table = app.add_subcommand("table", "Regenerate a bound table");
  std::string table_kind = "table2", d_range, k_range;
  bool published_diff = false, use_catalog = false;
  table->add_option("--kind", table_kind, "table2|table3|table4")->capture_default_str();
  table->add_option("--d", d_range, "Dimension range A..B");
  table->add_option("--k", k_range, "k range A..B (tables 2 and 3)");
  table->add_option("--format", format, "csv|md|json");
  table->add_flag("--published-diff,--paper-diff", published_diff, "Show published values beside computed ones");
  table->add_option("--catalog", catalog_path, "ETF catalog for refinements");
  table->add_flag("--refine", use_catalog, "Apply the bundled catalog (table4 does so by default)");
  table->add_option("--out", out_path, "Output file");

  // refine
  auto* refine = app.add_subcommand("refine", "Table with ETF refinements and the published values beside it");
  refine->add_option("--table", table_kind, "table2|table3|table4")->required();
  refine->add_option("--d", d_range, "Dimension range A..B");
  refine->add_option("--k", k_range, "k range A..B");
  refine->add_option("--catalog", catalog_path, "ETF catalog CSV (default: bundled)");
  refine->add_option("--format", format, "csv|md|json");
  refine->add_option("--out", out_path, "Output file");

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between spherical two-distance sets and equiangular lines");
  std::string convert_file, direction, alpha_text;
  convert->add_option("--file", convert_file, "Gram matrix (to-lines) or Seidel/equiangular Gram matrix (to-spherical)")
      ->required()
      ->check(CLI::ExistingFile);
  convert->add_option("--direction", direction, "to-lines|to-spherical")
      ->required()
      ->check(CLI::IsMember({"to-lines", "to-spherical"}));
  convert->add_option("--alpha", alpha_text, "Angle p/q when --file holds a Seidel matrix");
  convert->add_option("--a", a_text, "Family parameter a (to-spherical) or smaller inner product (to-lines)");
  convert->add_option("--b", b_text, "Larger inner product (to-lines)");
  convert->add_option("--format", format, "text|json");
  convert->add_option("--out", out_path, "Output file");

  // etf-check
  auto* etf = app.add_subcommand("etf-check", "Two-eigenvalue (ETF) test of a Seidel matrix");
  std::string etf_file;
  etf->add_option("file", etf_file, "Seidel matrix file")->required()->check(CLI::ExistingFile);

  // check-seidel
  auto* check = app.add_subcommand("check-seidel", "Validate a Seidel matrix file");
  std::string check_file;
  check->add_option("file", check_file, "Seidel matrix file")->required()->check(CLI::ExistingFile);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle checks");
  selftest->add_option("--format", format, "text|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const double tol = tol_flag ? *tol_flag : default_tolerance();

    if (*certify) {
      const PointConfiguration cfg = load_points(certify_file, flavor_opt);
      std::cout << certificate_json(certify_two_distance(cfg, tol)).dump(2) << '\n';
      return 0;
    }

    if (*seidel) {
      if (seidel->get_option("--format")->count() == 0) format = "text";
      check_format(format, {"text", "json", "csv"});
      std::optional<Rational> delta_sq;
      if (!delta_sq_text.empty()) delta_sq = rational_option("delta-sq", delta_sq_text);
      std::optional<SymMatrix> dist, g;
      std::size_t d = seidel_d;
      if (!seidel_points.empty()) {
        const PointConfiguration cfg = read_point_set_file(seidel_points);
        if (!d) d = cfg.dim();
        if (cfg.flavor() == Flavor::euclidean) {
          dist = distance_sq_matrix(cfg);
        } else {
          g = gram(cfg);
        }
      } else if (!seidel_dist.empty()) {
        dist = read_matrix_file(seidel_dist);
      } else {
        g = read_matrix_file(seidel_gram);
      }
      const SeidelBuild built = build_seidel(dist ? &*dist : nullptr, g ? &*g : nullptr, d, delta_sq, tol);
      emit(out_path, [&](std::ostream& out) {
        if (format == "json") {
          ordered_json j = {{"order", built.seidel.order()}, {"params", built.params}};
          if (built.structure) j["structure"] = structure_json(*built.structure);
          j["matrix"] = seidel_json(built.seidel);
          out << j.dump(2) << '\n';
        } else if (format == "csv") {
          write_matrix_csv(out, built.seidel.to_sym());
        } else {
          write_seidel(out, built.seidel);
        }
      });
      return 0;
    }

    if (*spectrum) {
      check_format(format, {"json", "csv"});
      const Spectrum s = spectrum_of(read_matrix_file(spectrum_file), tol);
      if (format == "csv") {
        std::cout << "value,multiplicity\n";
        std::cout.precision(12);
        for (const auto& c : s.clusters) std::cout << c.value << ',' << c.multiplicity << '\n';
      } else {
        std::cout << spectrum_json(s).dump(2) << '\n';
      }
      return 0;
    }

    if (*bound) {
      const BoundKind kind = parse_bound_kind(bound_kind);
      BoundResult r;
      if (kind == BoundKind::ls_max_euclidean || kind == BoundKind::ls_max_spherical) {
        if (!bound_m) throw UsageError("--m is required for " + bound_kind);
        r = ls_max_bound(bound_d, bound_m, kind);
      } else {
        GammaParam gp;
        if (bound_k) {
          gp = gamma_of_k(bound_k);
        } else if (!gamma_text.empty()) {
          gp.gamma = rational_option("gamma", gamma_text);
        } else if (!delta_sq_text.empty()) {
          gp = gamma_of_euclidean(rational_option("delta-sq", delta_sq_text));
        } else if (!a_text.empty() && !b_text.empty()) {
          gp = gamma_of_spherical(rational_option("a", a_text), rational_option("b", b_text));
        } else {
          throw UsageError("one of --k, --gamma, --delta-sq or --a/--b is required");
        }
        if (catalog_path.empty()) {
          r = bound_for(kind, bound_d, gp.gamma);
        } else {
          const EtfCatalog catalog = catalog_path == "bundled" ? EtfCatalog::bundled() : catalog_load(catalog_path);
          switch (kind) {
            case BoundKind::euclidean: r = refine_euclidean(bound_d, gp.gamma, catalog); break;
            case BoundKind::spherical_pos:
              r = refine_spherical(bound_d, gp.gamma, catalog, SphericalBranch::pos);
              break;
            default: r = refine_spherical(bound_d, gp.gamma, catalog, SphericalBranch::neg); break;
          }
        }
      }
      std::cout << bound_json(r).dump(2) << '\n';
      return 0;
    }

    if (*table || *refine) {
      const TableKind kind = parse_table_kind(table_kind);
      TableSpec spec = TableSpec::defaults(kind);
      if (!d_range.empty()) std::tie(spec.d_min, spec.d_max) = parse_range("d", d_range);
      if (!k_range.empty()) {
        if (kind == TableKind::table4) throw UsageError("--k does not apply to table4");
        const auto [lo, hi] = parse_range("k", k_range);
        spec.k_min = unsigned(lo);
        spec.k_max = unsigned(hi);
      }
      std::optional<EtfCatalog> catalog;
      if (!catalog_path.empty()) {
        catalog = catalog_load(catalog_path);
      } else if (*refine || use_catalog || kind == TableKind::table4) {
        catalog = EtfCatalog::bundled();
      }
      const bool with_published = published_diff || *refine;
      const auto* fmt_opt = (*refine ? refine : table)->get_option("--format");
      if (fmt_opt->count() == 0) format = "csv";
      check_format(format, {"csv", "md", "json"});
      const Table t = make_table(spec, catalog ? &*catalog : nullptr);
      emit(out_path, [&](std::ostream& out) {
        if (format == "md") {
          render_markdown(out, t, with_published);
        } else if (format == "json") {
          render_json(out, t, with_published);
        } else {
          render_csv(out, t, with_published);
        }
      });
      return 0;
    }

    if (*convert) {
      if (convert->get_option("--format")->count() == 0) format = "text";
      check_format(format, {"text", "json"});
      const SymMatrix input = read_matrix_file(convert_file);
      SymMatrix result = input;
      ordered_json info;
      if (direction == "to-lines") {
        Rational a, b;
        if (!a_text.empty() && !b_text.empty()) {
          a = rational_option("a", a_text);
          b = rational_option("b", b_text);
        } else {
          const TwoDistanceCertificate cert = certify_gram(input, true, tol);
          if (!cert.ok) throw DomainError("not a two-distance set", "Gram matrix has more than two off-diagonal values");
          a = cert.values[0];
          b = cert.values[1];
        }
        const EquiangularSystem sys = spherical_to_equiangular(input, a, b, tol);
        result = sys.gram_exact();
        info = {{"alpha", to_string(*sys.alpha_exact)}, {"dim", sys.dim}, {"a", to_string(a)}, {"b", to_string(b)}};
      } else {
        if (a_text.empty()) throw UsageError("--a is required for to-spherical");
        const Rational a = rational_option("a", a_text);
        EquiangularSystem sys = alpha_text.empty()
                                    ? equiangular_from_gram(input, tol)
                                    : EquiangularSystem{SeidelMatrix::from_sym(input), 0.0,
                                                        rational_option("alpha", alpha_text), 0};
        if (!alpha_text.empty()) {
          sys.alpha = sys.alpha_exact->get_d();
          sys.dim = input.order() - exact_multiplicity(input, Rational(-1 / *sys.alpha_exact));
        }
        result = equiangular_to_spherical(sys, a);
        const FamilyParam f = family_param(*sys.alpha_exact, a);
        info = {{"alpha", to_string(*sys.alpha_exact)}, {"a", to_string(f.a)}, {"b", to_string(f.b)},
                {"dim", sys.dim > 0 ? sys.dim - 1 : 0}};
      }
      emit(out_path, [&](std::ostream& out) {
        if (format == "json") {
          info["order"] = result.order();
          info["matrix"] = matrix_json(result);
          out << info.dump(2) << '\n';
        } else {
          write_matrix(out, result);
        }
      });
      return 0;
    }

    if (*etf) {
      std::ifstream in(etf_file);
      const SeidelMatrix q = read_seidel(in);
      const EtfTestResult r = etf_signature_test(q, tol);
      ordered_json j = {{"order", q.order()},
                        {"is_two_eigenvalue", r.is_two_eigenvalue},
                        {"mu", r.mu ? ordered_json(*r.mu) : ordered_json(nullptr)},
                        {"rho1", r.rho1},
                        {"rho2", r.rho2},
                        {"mult1", r.mult1},
                        {"mult2", r.mult2},
                        {"inferred_dim", r.inferred_dim},
                        {"spectral_clusters", r.spectral_clusters}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*check) {
      std::ifstream in(check_file);
      const SeidelMatrix q = read_seidel(in);
      std::cout << ordered_json{{"ok", true},
                                {"order", q.order()},
                                {"trace", q.trace()},
                                {"trace_of_square", q.trace_of_square()}}
                       .dump(2)
                << '\n';
      return 0;
    }

    if (*selftest) {
      if (selftest->get_option("--format")->count() == 0) format = "text";
      check_format(format, {"text", "json"});
      return run_selftest(std::cout, format == "json") ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    print_error(e.error(), e.detail());
    return 1;
  } catch (const ParseError& e) {
    print_error("parse error", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    print_error("invalid input", e.what());
    return 1;
  }
  return 2;
}
