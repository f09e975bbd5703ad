#pragma once

#include <chrono>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohom/io.hpp"
#include "cohom/random.hpp"

namespace cohom::cli {

using io::Json;

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

inline bool is_scalar(const Json& j) { return j.is_primitive(); }

inline bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!is_scalar(x)) return false;
  return true;
}

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline std::string tuple_text(const Json& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
  return s + ")";
}

inline bool is_flat_record_array(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& x : j) {
    if (!x.is_object()) return false;
    for (const auto& [k, v] : x.items())
      if (!is_scalar(v) && !is_scalar_array(v)) return false;
  }
  return true;
}

/// Human-readable rendering of a report; every number printed comes from the JSON.
inline void render(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(indent, ' ');
  for (const auto& [key, v] : j.items()) {
    if (is_scalar(v)) {
      out << pad << key << ": " << scalar_text(v) << "\n";
    } else if (is_scalar_array(v)) {
      out << pad << key << ": " << tuple_text(v) << "\n";
    } else if (is_flat_record_array(v)) {
      out << pad << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& rec : v)
        for (const auto& [c, _] : rec.items())
          if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> width;
      for (const auto& c : cols) width.push_back(c.size());
      for (const auto& rec : v) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          std::string t;
          if (rec.contains(cols[c])) t = is_scalar(rec[cols[c]]) ? scalar_text(rec[cols[c]]) : tuple_text(rec[cols[c]]);
          width[c] = std::max(width[c], t.size());
          row.push_back(std::move(t));
        }
        cells.push_back(std::move(row));
      }
      auto line = [&](const std::vector<std::string>& row) {
        out << pad << "  ";
        for (std::size_t c = 0; c < row.size(); ++c) out << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
        out << "\n";
      };
      line(cols);
      for (const auto& row : cells) line(row);
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_scalar(v[i])) {
          out << pad << "  [" << i << "] " << scalar_text(v[i]) << "\n";
        } else if (is_scalar_array(v[i])) {
          out << pad << "  [" << i << "] " << tuple_text(v[i]) << "\n";
        } else {
          out << pad << "  [" << i << "]\n";
          render(v[i].is_object() ? v[i] : Json{{"items", v[i]}}, out, indent + 4);
        }
      }
    } else {
      out << pad << key << ":\n";
      render(v, out, indent + 2);
    }
  }
}

inline Json log_class_to_json(const LogClassVector& v) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.subsets.size(); ++i)
    a.push_back(Json{{"I", subset_name(v.subsets[i])}, {"coef", to_string(v.coeffs[i])}});
  return a;
}

inline Json log_basis_to_json(const DeRhamCohomology& d) {
  Json a = Json::array();
  for (const auto& subs : d.log_basis) {
    Json row = Json::array();
    for (const auto& s : subs) row.push_back("w" + subset_name(s));
    a.push_back(std::move(row));
  }
  return a;
}

inline Json pole_filtration_to_json(const PoleFiltration& pf) {
  Json levels = Json::array();
  for (std::size_t n = 0; n < pf.dims.size(); ++n) levels.push_back(Json{{"level", n}, {"dims", io::dims_to_json(pf.dims[n])}});
  return Json{{"levels", std::move(levels)}, {"stabilization_level", pf.stabilization_level}, {"limit", io::dims_to_json(pf.limit)}};
}

inline Json pages_to_json(const std::vector<SpectralPage>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(io::page_to_json(p));
  return a;
}

inline Json certificate_to_json(const FiltrationCertificate& c) {
  Json e = Json::array();
  for (const auto& row : c.e_infinity) e.push_back(io::dims_to_json(row));
  return Json{{"degeneration_page", c.degeneration_page}, {"e_infinity", std::move(e)}};
}

// ---- subcommands

inline Json cmd_complex(const std::string& file) {
  auto c = io::complex_from_json(io::load_json_file(file));
  auto r = cohomology(c);
  Json j;
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  j["dims"] = io::dims_to_json(r.dims());
  j["euler_characteristic"] = euler_characteristic(c);
  j["representatives"] = io::representatives_to_json(r, c);
  return j;
}

inline Json cmd_cech(const std::string& file) {
  auto in = io::cover_from_json(io::load_json_file(file));
  auto c = cech_complex(in.nerve, in.sheaf);
  auto r = cohomology(c);
  std::vector<std::size_t> cdims;
  for (int p = c.lo(); p <= c.hi(); ++p) cdims.push_back(c.dim(p));
  Json j;
  j["dims"] = io::dims_to_json(r.dims());
  j["cochain_dims"] = io::dims_to_json(cdims);
  j["representatives"] = io::representatives_to_json(r, c);
  return j;
}

inline Json hyper_report(const HyperResult& h) {
  Json j;
  j["dims"] = io::dims_to_json(h.total.dims());
  j["grid"] = Json{{"P", h.grid.P()}, {"Q", h.grid.Q()}};
  j["first"] = pages_to_json(h.first);
  j["second"] = pages_to_json(h.second);
  return j;
}

inline Json cmd_hyper(const std::string& file) {
  auto in = io::hyper_from_json(io::load_json_file(file));
  return hyper_report(cech_hyper(in.nerve, in.levels, in.maps));
}

inline Json cmd_spectral(const std::string& file, int r, const std::string& filtration) {
  auto k = io::double_complex_from_json(io::load_json_file(file));
  Filtration f = filtration == "first" ? Filtration::First : Filtration::Second;
  Json j;
  j["filtration"] = filtration_name(f);
  j["total_dims"] = io::dims_to_json(cohomology(total(k)).dims());
  j["pages"] = pages_to_json(pages(k, f, r));
  return j;
}

inline Json cmd_derham(int n, int k, int window, const std::string& reduce) {
  TorusSpec spec{n, k, window};
  auto d = derham_cohomology(spec);
  Json j;
  j["n"] = n;
  j["k"] = k;
  j["window"] = window;
  j["dims"] = io::dims_to_json(d.dims);
  j["log_basis"] = log_basis_to_json(d);
  j["multidegrees_checked"] = d.multidegrees_checked;
  if (!reduce.empty()) {
    auto phi = parse_form(reduce, n);
    auto lr = log_representative(phi, spec);
    Json r;
    r["form"] = phi.to_string();
    r["degree"] = phi.degree();
    r["log_coefficients"] = log_class_to_json(lr.classes);
    r["exactness_witness"] = lr.witness.to_string();
    r["window_used"] = lr.window_used;
    if (k >= 1) {
      auto step = pole_reduce(phi, spec, 0);
      r["pole_reduce_axis_1"] = Json{{"phi0", step.phi0.to_string()}, {"alpha1", step.alpha1.to_string()}, {"theta", step.theta.to_string()}};
    }
    j["reduce"] = std::move(r);
  }
  return j;
}

inline Json cmd_preset(const std::string& name) {
  auto p = parse_preset(name);
  Json j;
  j["preset"] = p.display();
  if (!p.weights.empty()) {
    Json w;
    for (const auto& [g, v] : p.weights) w[g] = v;
    j["weights"] = std::move(w);
  }
  if (p.name == "circle") {
    auto c = build_circle();
    auto cx = cech_complex(c.nerve, c.sheaf);
    auto r = cohomology(cx);
    j["dims"] = io::dims_to_json(r.dims());
    j["representatives"] = io::representatives_to_json(r, cx);
  } else if (p.name == "torus") {
    auto spec = build_torus(p.params[0], p.params[1]);
    auto d = derham_cohomology(spec);
    j["window"] = spec.window;
    j["dims"] = io::dims_to_json(d.dims);
    j["log_basis"] = log_basis_to_json(d);
    j["pole_filtration"] = pole_filtration_to_json(pole_filtration_dims(spec, 3));
    auto t = cup_table(spec);
    Json products = Json::array();
    for (std::size_t a = 0; a < t.basis.size(); ++a)
      for (std::size_t b = 0; b < t.basis.size(); ++b) {
        std::string val;
        const auto& v = t.product[a][b];
        for (std::size_t i = 0; i < v.subsets.size(); ++i) {
          if (v.coeffs[i] == 0) continue;
          std::string term = (v.coeffs[i] == 1 ? "" : v.coeffs[i] == -1 ? "-" : to_string(v.coeffs[i]) + "*") +
                             "w" + subset_name(v.subsets[i]);
          val += (val.empty() ? "" : " + ") + term;
        }
        products.push_back(Json{{"left", "w" + subset_name(t.basis[a])}, {"right", "w" + subset_name(t.basis[b])},
                                {"product", val.empty() ? "0" : val}});
      }
    j["cup_table"] = std::move(products);
  } else {
    auto r = p1_report(4);
    j["window"] = r.window;
    j["dims"] = io::dims_to_json(r.dims);
    j["dims_window_plus_2"] = io::dims_to_json(r.dims_enlarged);
    j["E1_second"] = io::page_to_json(r.hyper.second.front())["dims"];
    j["E1_first"] = io::page_to_json(r.hyper.first.front())["dims"];
    j["h2_representative"] = r.h2_representative;
    j["h2_class"] = io::vector_to_json(r.h2_class);
  }
  return j;
}

/// Quick randomized versions of the main invariants.
inline Json cmd_selftest(std::uint64_t seed, int cases) {
  gen::Rng rng(seed);
  Json checks = Json::array();
  bool ok_all = true;
  auto record = [&](const std::string& name, int passed, int total) {
    checks.push_back(Json{{"check", name}, {"cases", total}, {"passed", passed}});
    ok_all = ok_all && passed == total;
  };
  int pass = 0;
  for (int i = 0; i < cases; ++i) {
    auto c = function_sheaf(gen::random_point_sets(rng));
    try {
      validate(cech_complex(c.nerve, c.sheaf));
      ++pass;
    } catch (const Error&) {
    }
  }
  record("cech coboundary squares to zero", pass, cases);
  pass = 0;
  for (int i = 0; i < cases; ++i) {
    auto t = gen::random_tensor_double(rng, 2);
    try {
      certify_convergence(t.k);
      ++pass;
    } catch (const Error&) {
    }
  }
  record("spectral sequences converge", pass, cases);
  pass = 0;
  for (int i = 0; i < cases; ++i) {
    if (totals_agree(gen::random_tensor_triple(rng))) ++pass;
  }
  record("triple complex flattenings agree", pass, cases);
  pass = 0;
  TorusSpec spec{2, 2, 3};
  for (int i = 0; i < cases; ++i) {
    auto f = gen::random_closed_form(rng, spec, 1 + i % 2);
    try {
      auto lr = log_representative(f.phi, spec);
      if (lr.classes == f.classes) ++pass;
    } catch (const Error&) {
    }
  }
  record("log representative recovers classes", pass, cases);
  return Json{{"seed", seed}, {"checks", std::move(checks)}, {"ok", ok_all}};
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 success, 1 malformed input, 2 violated mathematical invariant.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cohomology of cochain complexes, double complexes, Čech covers and algebraic de Rham complexes",
               "cohom"};
  app.require_subcommand(1);
  std::string format = "table";
  std::uint64_t seed = 1;
  bool timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--seed", seed, "Seed for generator-backed self-tests");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  std::string file;
  auto* complex = app.add_subcommand("complex", "Cohomology of a cochain complex (JSON)");
  complex->add_option("file", file, "Complex JSON file")->required();
  auto* cech = app.add_subcommand("cech", "Čech cohomology of a sheaf on a finite cover (JSON)");
  cech->add_option("file", file, "Cover JSON file")->required();
  auto* hyper = app.add_subcommand("hyper", "Čech hypercohomology of a complex of sheaves (JSON)");
  hyper->add_option("file", file, "Hyper-cover JSON file")->required();
  int r_pages = 2;
  std::string filtration = "first";
  auto* spectral = app.add_subcommand("spectral", "Spectral sequence pages of a double complex (JSON)");
  spectral->add_option("file", file, "Double complex JSON file")->required();
  spectral->add_option("--pages", r_pages, "Number of pages to compute");
  spectral->add_option("--filtration", filtration, "Column (first) or row (second) filtration")
      ->check(CLI::IsMember({"first", "second"}));
  int n = 1, k = 1, window = 4;
  std::string reduce;
  auto* derham = app.add_subcommand("derham", "Algebraic de Rham cohomology of a torus-type variety");
  derham->add_option("--n", n, "Number of variables")->required();
  derham->add_option("--invert", k, "Number of inverted variables")->required();
  derham->add_option("--window", window, "Multidegree window W");
  derham->add_option("--reduce", reduce, "Closed form to express in the log basis");
  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Built-in examples: circle | torus:k,n | p1");
  preset->add_option("name", preset_name, "Preset name")->required();
  int cases = 20;
  auto* selftest = app.add_subcommand("selftest", "Randomized invariant checks");
  selftest->add_option("--cases", cases, "Cases per check")->check(CLI::Range(1, 1000));
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  Json body;
  try {
    if (complex->parsed()) {
      body = detail::cmd_complex(file);
    } else if (cech->parsed()) {
      body = detail::cmd_cech(file);
    } else if (hyper->parsed()) {
      body = detail::cmd_hyper(file);
    } else if (spectral->parsed()) {
      body = detail::cmd_spectral(file, r_pages, filtration);
    } else if (derham->parsed()) {
      body = detail::cmd_derham(n, k, window, reduce);
    } else if (preset->parsed()) {
      body = detail::cmd_preset(preset_name);
    } else if (selftest->parsed()) {
      body = detail::cmd_selftest(seed, cases);
      if (!body["ok"].get<bool>()) code = 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? 1 : 2;
  }

  std::string command;
  for (const auto& a : args) {
    if (a == "--format" || a == "table" || a == "json" || a.rfind("--format=", 0) == 0 || a == "--timing") continue;
    command += (command.empty() ? "" : " ") + a;
  }
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  for (auto& [key, v] : body.items()) report[key] = v;
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    detail::render(report, out);
  }
  return code;
}

}  // namespace cohom::cli
