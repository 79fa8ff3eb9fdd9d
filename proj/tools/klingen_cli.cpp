// Command-line front end: verification scenarios, coefficient tables,
// L-values and coset listings.

#include "klingen/harness.hpp"
#include "klingen/klingen_coefficients.hpp"
#include "klingen/lfunctions.hpp"
#include "klingen/qseries.hpp"
#include "klingen/symplectic.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace klingen;

namespace {

struct Settings {
  int weight = 12;
  std::int64_t level = 1;
  std::int64_t n1 = 1, n2 = 1;
  std::optional<std::int64_t> b;
  std::string tau1, tau2;
  TruncationParams trunc;
  std::optional<std::int64_t> grid;
  std::optional<std::int64_t> cutoff;
  std::optional<double> tolerance;
  std::string coeff_file;
  std::string json_path;
  std::string csv_path;
  std::uint64_t seed = 0;
  std::int64_t disc = -4;
  double s = 11.0;
  std::int64_t v = 1;
  unsigned threads = 1;
  double prune_rel = 1e-17;
};

UpperHalfPoint parse_point(const std::string& text) {
  std::istringstream in(text);
  double x = 0.0, y = 0.0;
  char comma = 0;
  if (!(in >> x >> comma >> y) || comma != ',' || !in.eof())
    throw CLI::ValidationError("point", "expected 'x,y', got '" + text + "'");
  return UpperHalfPoint(x, y);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(const std::complex<double>& z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

HarnessOptions harness_options(const Settings& st) {
  HarnessOptions h;
  h.threads = st.threads;
  h.prune_rel = st.prune_rel;
  if (st.cutoff) h.rankin_cutoff = *st.cutoff;
  return h;
}

int finish_reports(const Settings& st, const std::vector<VerificationReport>& reports) {
  bool all = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.claim << "  lhs=" << format_complex(r.lhs)
              << "  rhs=" << format_complex(r.rhs) << "  rel_err=" << format_double(r.rel_err)
              << "  tol=" << format_double(r.tolerance) << "\n";
    all = all && r.pass;
  }
  if (!st.json_path.empty()) write_file(st.json_path, reports_to_json(reports));
  return all ? 0 : 1;
}

int run_verify(const std::string& which, Settings st) {
  if (st.grid) st.trunc.grid_size = *st.grid;
  if (which == "pointwise") {
    std::vector<PointPair> points = standard_points();
    if (!st.tau1.empty() || !st.tau2.empty()) {
      if (st.tau1.empty() || st.tau2.empty()) throw CLI::ValidationError("--tau1/--tau2", "give both points");
      points = {{parse_point(st.tau1), parse_point(st.tau2)}};
    }
    return finish_reports(st, verify_pointwise(st.weight, points, st.trunc, st.tolerance.value_or(1e-6), harness_options(st)));
  }
  if (which == "cor13")
    return finish_reports(st, {verify_cor13(st.weight, st.trunc, st.tolerance.value_or(1e-5), harness_options(st))});
  if (which == "cor14") {
    if (!st.grid) st.trunc.grid_size = 16;
    return finish_reports(
        st, {verify_cor14(st.weight, st.n1, st.n2, st.trunc, st.tolerance.value_or(1e-4), harness_options(st))});
  }
  // para
  std::optional<CuspForm> f;
  if (!st.coeff_file.empty()) {
    const IngestedForm form = ingest_coefficients(std::filesystem::path(st.coeff_file));
    f = CuspForm::from_series(form.series);
    st.weight = form.spec.weight;
    st.level = form.spec.level;
  } else if (st.level == 1) {
    f = CuspForm::builtin(st.weight, st.trunc.qexp_order);
  } else {
    throw CLI::ValidationError("--coeff-file", "level > 1 requires an ingested form");
  }
  return finish_reports(st, verify_para_properties(*f, st.weight, st.level, st.trunc, st.tolerance.value_or(1e-6),
                                                   harness_options(st)));
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void emit(const std::string& csv_path) const {
    auto line = [](const std::vector<std::string>& cells, const char* sep) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? sep : "") + cells[i];
      return s + "\n";
    };
    std::cout << line(header, "\t");
    for (const auto& r : rows) std::cout << line(r, "\t");
    if (!csv_path.empty()) {
      std::string text = line(header, ",");
      for (const auto& r : rows) text += line(r, ",");
      write_file(csv_path, text);
    }
  }
};

int run_coeff(const std::string& which, const Settings& st) {
  Table t;
  if (which == "klingen") {
    KlingenCoefficients A(st.weight, LSeriesParams{st.cutoff.value_or(2000), 1000});
    t.header = {"n1", "b", "n2", "det2T", "A", "bound"};
    std::vector<HalfIntMatrix> forms;
    if (st.b) forms.push_back({st.n1, *st.b, st.n2});
    else forms = lambda_set(st.n1, st.n2);
    for (const auto& T : forms) {
      const CoefficientValue c = A(T);
      t.rows.push_back({std::to_string(T.n1), std::to_string(T.b), std::to_string(T.n2), std::to_string(T.det2()),
                        format_double(c.value), format_double(c.bound)});
    }
  } else if (which == "eigenform") {
    const auto count = static_cast<std::size_t>(st.cutoff.value_or(20));
    t.header = {"n", "a"};
    if (!st.coeff_file.empty()) {
      const IngestedForm form = ingest_coefficients(std::filesystem::path(st.coeff_file));
      for (std::size_t n = 1; n <= count && n < form.series.order(); ++n)
        t.rows.push_back({std::to_string(n), form.series[n].str()});
    } else {
      const auto a = eigenform_integer_coefficients(st.weight, count + 1);
      for (std::size_t n = 1; n <= count; ++n) t.rows.push_back({std::to_string(n), a[n].str()});
    }
  } else {
    const HalfIntMatrix T{st.n1, st.b.value_or(0), st.n2};
    const auto r = theta_coeffs(T, static_cast<std::size_t>(st.cutoff.value_or(20)) + 1);
    t.header = {"n", "r_T"};
    for (std::size_t n = 0; n < r.size(); ++n) t.rows.push_back({std::to_string(n), std::to_string(r[n])});
  }
  t.emit(st.csv_path);
  return 0;
}

int run_lvalue(const std::string& which, const Settings& st) {
  const std::int64_t cutoff = st.cutoff.value_or(which == "sym2" ? 1000 : 100000);
  if (which == "dirichlet") {
    const LValue L = dirichlet_L_numeric(st.disc, st.s, cutoff);
    std::cout << "numeric " << format_double(L.value) << " tail_bound " << format_double(L.tail_bound) << "\n";
    const bool exact_available = st.disc < 0 && is_fundamental_discriminant(st.disc) && st.s >= 1 &&
                                 st.s == static_cast<double>(static_cast<int>(st.s)) && static_cast<int>(st.s) % 2 == 1;
    if (exact_available) {
      const ExactPiMultiple e = dirichlet_L_exact(st.disc, static_cast<unsigned>(st.s));
      std::cout << "exact " << e.coeff.str() << " * pi^" << e.pi_power;
      if (e.sqrt_factor != 1) std::cout << " * sqrt(" << e.sqrt_factor << ")";
      std::cout << " = " << format_double(e.to_double()) << "\n";
    }
    return 0;
  }
  const auto a = eigenform_coefficients_double(st.weight, static_cast<std::size_t>(cutoff) + 1);
  const std::span<const double> as(a->data(), a->size());
  LValue L;
  if (which == "rankin") L = rankin_theta(as, HalfIntMatrix{st.n1, st.b.value_or(0), st.n2}, st.s, st.v, st.weight, cutoff);
  else L = sym2_L(as, st.weight, st.s, cutoff);
  std::cout << "value " << format_double(L.value) << " tail_bound " << format_double(L.tail_bound) << " cutoff "
            << L.cutoff << "\n";
  return 0;
}

int run_cosets(const Settings& st) {
  const auto reps = coset_reps(st.level, st.trunc.coset_height);
  Table t;
  t.header = {"a", "b", "c", "d"};
  for (const auto& g : reps) {
    t.rows.push_back({std::to_string(g.a), std::to_string(g.b), std::to_string(g.c), std::to_string(g.d)});
    std::cout << g.a << " " << g.b << " " << g.c << " " << g.d << "\n";
  }
  if (!st.csv_path.empty()) {
    std::string text = "a,b,c,d\n";
    for (const auto& r : t.rows) text += r[0] + "," + r[1] + "," + r[2] + "," + r[3] + "\n";
    write_file(st.csv_path, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klingen Eisenstein series: pullback identities, Fourier coefficients and L-values"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings st;
  app.add_option("--weight", st.weight, "weight k");
  app.add_option("--level", st.level, "level N")->check(CLI::PositiveNumber);
  app.add_option("--n1", st.n1, "first diagonal index");
  app.add_option("--n2", st.n2, "second diagonal index");
  app.add_option("--b", st.b, "off-diagonal entry of T = (n1, b, n2)");
  app.add_option("--tau1", st.tau1, "first point as x,y");
  app.add_option("--tau2", st.tau2, "second point as x,y");
  app.add_option("--coset-height", st.trunc.coset_height, "coset height M")->check(CLI::PositiveNumber);
  app.add_option("--cd-bound", st.trunc.cd_bound, "bound C on c, d")->check(CLI::PositiveNumber);
  app.add_option("--fourier-cutoff", st.trunc.fourier_cutoff, "Fourier cutoff in n1, n2")->check(CLI::PositiveNumber);
  app.add_option("--qexp-order", st.trunc.qexp_order, "stored q-expansion order")->check(CLI::PositiveNumber);
  app.add_option("--grid", st.grid, "extraction grid size")->check(CLI::PositiveNumber);
  app.add_option("--cutoff", st.cutoff, "series cutoff (L-series length or table size)")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", st.tolerance, "pass tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--coeff-file", st.coeff_file, "ingested coefficient file")->check(CLI::ExistingFile);
  app.add_option("--json", st.json_path, "write the JSON report here");
  app.add_option("--csv", st.csv_path, "write the table as CSV here");
  app.add_option("--seed", st.seed, "accepted and ignored; every computation is deterministic");
  app.add_option("--disc", st.disc, "discriminant D of chi_D");
  app.add_option("--s", st.s, "point s of the L-series");
  app.add_option("--v", st.v, "twist index v");
  app.add_option("--threads", st.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--prune-rel", st.prune_rel, "relative pruning threshold of coset terms")->check(CLI::NonNegativeNumber);

  std::string chosen_group, chosen;
  auto add_group = [&](const std::string& name, const std::string& help, const std::vector<std::string>& leaves) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    for (const auto& leaf : leaves) {
      CLI::App* s = g->add_subcommand(leaf);
      s->fallthrough();
      s->callback([&, name, leaf] {
        chosen_group = name;
        chosen = leaf;
      });
    }
  };
  add_group("verify", "run a verification scenario", {"pointwise", "cor13", "cor14", "para"});
  add_group("coeff", "print a coefficient table", {"klingen", "eigenform", "theta"});
  add_group("lvalue", "evaluate an L-value", {"dirichlet", "rankin", "sym2"});
  app.add_subcommand("cosets", "list coset representatives of Gamma_infty \\ Gamma_0(N)")->fallthrough()->callback([&] {
    chosen_group = "cosets";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (chosen_group == "verify") return run_verify(chosen, st);
    if (chosen_group == "coeff") return run_coeff(chosen, st);
    if (chosen_group == "lvalue") return run_lvalue(chosen, st);
    return run_cosets(st);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
