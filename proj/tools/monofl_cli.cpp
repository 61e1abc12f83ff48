// Command line front end. Subcommands:
//   gkz    build a hypergeometric system from an integer matrix and beta
//   mono   operate on monodromic module files (validate, fl, twist, ...)
//   micro  the microlocal model (phi images, identity and shift checks)
// Output is deterministic for fixed inputs and seeds. Exit codes: 0 success,
// 1 a verification report failed, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monofl/corpus.hpp"
#include "monofl/error.hpp"
#include "monofl/gkz.hpp"
#include "monofl/json_io.hpp"
#include "monofl/micro.hpp"
#include "monofl/monodromic.hpp"
#include "monofl/rmf.hpp"

namespace {

using monofl::Json;
using monofl::Rational;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) monofl::fail(monofl::ErrorKind::invalid_input, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

monofl::IntMatrix parse_int_matrix(const std::string& text) {
  std::vector<std::vector<monofl::Int>> rows;
  std::stringstream row_stream(text);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<monofl::Int> entries;
    std::stringstream cell_stream(row);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
      Rational q = monofl::parse_rational(cell);
      if (!monofl::is_integer(q))
        monofl::fail(monofl::ErrorKind::parse, "matrix entries must be integers");
      entries.push_back(monofl::numerator(q));
    }
    if (!rows.empty() && entries.size() != rows.front().size())
      monofl::fail(monofl::ErrorKind::parse, "matrix rows have unequal lengths");
    rows.push_back(std::move(entries));
  }
  if (rows.empty() || rows.front().empty())
    monofl::fail(monofl::ErrorKind::parse, "empty matrix");
  return monofl::IntMatrix::from_rows(rows);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) out.push_back(monofl::parse_rational(cell));
  return out;
}

void print_report_text(std::ostream& os, const monofl::Report& rep) {
  os << "check " << rep.name << ": " << (rep.passed ? "pass" : "FAIL") << "\n";
  for (const auto& w : rep.failures) os << "  witness: " << w << "\n";
  for (const auto& n : rep.notes) os << "  " << n << "\n";
}

std::string jump_line(const monofl::Filtration& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [index, sub] : f.jumps()) {
    if (!first) os << ", ";
    first = false;
    os << index << ":" << sub.dim();
  }
  return first ? std::string("none") : os.str();
}

void print_module_text(std::ostream& os, const monofl::MonodromicModule& m) {
  os << "monodromic module: r=" << m.r << " denom=" << m.denom
     << " window [" << monofl::to_string(m.chi_min) << ", "
     << monofl::to_string(m.chi_at(m.levels() - 1)) << "]"
     << (m.low_flag ? " low+" : "") << (m.high_flag ? " high+" : "") << "\n";
  for (long k = 0; k < m.levels(); ++k) {
    const auto& s = m.spaces[static_cast<size_t>(k)];
    os << "  chi=" << monofl::to_string(m.chi_at(k)) << " dim=" << s.dim
       << "  F " << jump_line(s.F) << "  W " << jump_line(s.W) << "\n";
  }
}

Json complex_to_json(const monofl::FilteredTwoTermComplex& c) {
  auto space = [](const monofl::FilteredSpace& s) {
    Json j;
    j["dim"] = s.dim;
    j["f"] = monofl::filtration_to_json(s.F);
    j["w"] = monofl::filtration_to_json(s.W);
    return j;
  };
  Json j;
  j["degree0_offset"] = c.degree0_offset;
  j["twist_tag"] = c.twist_tag;
  j["src"] = space(c.src);
  j["dst"] = space(c.dst);
  j["d"] = monofl::matrix_to_json(c.d);
  return j;
}

void print_complex_text(std::ostream& os, const char* tag,
                        const monofl::FilteredTwoTermComplex& c) {
  os << tag << " complex, degrees [" << (c.degree0_offset - 1) << ", "
     << c.degree0_offset << "], twist " << c.twist_tag << "\n";
  os << "  src dim=" << c.src.dim << "  F " << jump_line(c.src.F) << "  W "
     << jump_line(c.src.W) << "\n";
  os << "  dst dim=" << c.dst.dim << "  F " << jump_line(c.dst.F) << "  W "
     << jump_line(c.dst.W) << "\n";
  if (c.d.rows() == 0 || c.d.cols() == 0) {
    os << "  d: (trivial)\n";
    return;
  }
  os << "  d:\n";
  for (long i = 0; i < c.d.rows(); ++i) {
    os << "   ";
    for (long j = 0; j < c.d.cols(); ++j) os << " " << monofl::to_string(c.d.at(i, j));
    os << "\n";
  }
}

int finish_report(const monofl::Report& rep, bool json_format) {
  if (json_format)
    std::cout << monofl::report_to_json(rep).dump(2) << "\n";
  else
    print_report_text(std::cout, rep);
  return rep.passed ? 0 : 1;
}

int run_gkz(const std::string& matrix_text, const std::string& beta_text, bool strict,
            bool json_format, int points, std::uint64_t seed) {
  monofl::IntMatrix a = parse_int_matrix(matrix_text);
  std::vector<Rational> beta = parse_rational_list(beta_text);
  monofl::GkzSystem sys = monofl::gkz_construct(a, beta);

  std::vector<monofl::Report> checks;
  checks.push_back(monofl::euler_box_commutators(sys));
  checks.push_back(monofl::homogeneity_degree_check(sys));
  monofl::GkzFourier four = monofl::fourier_transform_generators(sys);
  checks.push_back(four.report);
  checks.push_back(monofl::toric_vanishing(sys, points, seed));
  bool all_passed = true;
  for (const auto& rep : checks) all_passed = all_passed && rep.passed;

  if (json_format) {
    Json j;
    j["system"] = monofl::gkz_to_json(sys);
    Json transformed = Json::array();
    for (const auto& e : four.primary) transformed.push_back(monofl::print_weyl(e));
    j["fourier_images"] = std::move(transformed);
    Json reports = Json::array();
    for (const auto& rep : checks) reports.push_back(monofl::report_to_json(rep));
    j["checks"] = std::move(reports);
    j["passed"] = all_passed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "matrix (" << a.rows() << " x " << a.cols() << "):\n";
    for (long i = 0; i < a.rows(); ++i) {
      std::cout << " ";
      for (long j = 0; j < a.cols(); ++j) std::cout << " " << monofl::to_string(a.at(i, j));
      std::cout << "\n";
    }
    std::cout << "beta:";
    for (const auto& b : beta) std::cout << " " << monofl::to_string(b);
    std::cout << "\n";
    std::cout << "lattice basis:\n";
    for (const auto& l : sys.lattice_basis) {
      std::cout << "  (";
      for (size_t i = 0; i < l.size(); ++i)
        std::cout << (i ? ", " : "") << monofl::to_string(l[i]);
      std::cout << ")\n";
    }
    for (size_t b = 0; b < sys.boxes.size(); ++b)
      std::cout << "box_" << (b + 1) << " = " << monofl::print_weyl(sys.boxes[b]) << "\n";
    for (size_t k = 0; k < sys.eulers.size(); ++k)
      std::cout << "E_" << (k + 1) << " = " << monofl::print_weyl(sys.eulers[k]) << "\n";
    auto yn = [](bool v) { return v ? "yes" : "no"; };
    std::cout << "flags: homogeneous=" << yn(sys.flags.homogeneous)
              << " pointed=" << yn(sys.flags.pointed)
              << " columns_span=" << yn(sys.flags.columns_span) << "\n";
    for (size_t b = 0; b < four.primary.size() && b < sys.boxes.size(); ++b)
      std::cout << "fourier box_" << (b + 1) << " -> " << monofl::print_weyl(four.primary[b])
                << "\n";
    for (const auto& rep : checks) print_report_text(std::cout, rep);
  }
  if (strict && !all_passed) return 1;
  return 0;
}

int run_mono(const std::string& op, const std::string& path, long l, bool json_format) {
  Json input = monofl::parse_json_text(slurp(path));

  if (op == "rmf") {
    monofl::RmfInput in = monofl::rmf_input_from_json(input);
    monofl::RmfResult res = monofl::rmf(in.n, in.l, in.center);
    if (json_format) {
      Json j;
      j["exists"] = res.exists;
      if (res.exists)
        j["w"] = monofl::filtration_to_json(res.w);
      else
        j["reason"] = res.reason;
      std::cout << j.dump(2) << "\n";
    } else if (res.exists) {
      std::cout << "relative monodromy filtration exists\n";
      std::cout << "  W " << jump_line(res.w) << "\n";
      for (const auto& [index, sub] : res.w.jumps()) {
        std::cout << "  W_" << index << " basis:\n";
        for (long i = 0; i < sub.basis().rows(); ++i) {
          std::cout << "   ";
          for (long j = 0; j < sub.basis().cols(); ++j)
            std::cout << " " << monofl::to_string(sub.basis().at(i, j));
          std::cout << "\n";
        }
      }
    } else {
      std::cout << "relative monodromy filtration does not exist\n";
      std::cout << "  " << res.reason << "\n";
    }
    return 0;
  }

  monofl::MonodromicModule m = monofl::module_from_json(input);
  if (op == "validate") return finish_report(monofl::validate(m), json_format);
  if (op == "inversion") return finish_report(monofl::fourier_inversion_check(m), json_format);
  if (op == "flrestrict") return finish_report(monofl::check_fl_restriction(m), json_format);
  if (op == "fl" || op == "twist") {
    monofl::MonodromicModule out = op == "fl" ? monofl::fl(m) : monofl::tate_twist(m, l);
    if (json_format)
      std::cout << monofl::module_to_json(out).dump(2) << "\n";
    else
      print_module_text(std::cout, out);
    return 0;
  }
  if (op == "restrict") {
    monofl::FilteredTwoTermComplex shriek = monofl::restrict_shriek(m);
    monofl::FilteredTwoTermComplex star = monofl::restrict_star(m);
    if (json_format) {
      Json j;
      j["shriek"] = complex_to_json(shriek);
      j["star"] = complex_to_json(star);
      std::cout << j.dump(2) << "\n";
    } else {
      print_complex_text(std::cout, "shriek", shriek);
      print_complex_text(std::cout, "star", star);
    }
    return 0;
  }
  monofl::fail(monofl::ErrorKind::invalid_input, "unknown mono operation " + op);
}

monofl::MicroContext build_context(int n, int r, const std::string& f_text) {
  if (f_text.empty()) {
    if (n == 2 && r == 2) return monofl::MicroContext::standard();
    monofl::fail(monofl::ErrorKind::invalid_input,
                 "--f is required when n or r differ from the defaults");
  }
  return monofl::MicroContext::make(n, r, monofl::parse_poly_list(f_text));
}

int run_micro_phi(const monofl::MicroContext& ctx, const std::string& elem_text,
                  bool json_format) {
  monofl::MicroElement e = monofl::parse_micro(ctx, elem_text);
  monofl::GraphElement image = monofl::phi(ctx, e);
  auto parts = monofl::eigen_decompose(e);
  if (json_format) {
    Json j;
    j["input"] = monofl::print_micro(ctx, e);
    Json comps = Json::array();
    for (const auto& [ell, part] : parts) comps.push_back(ell);
    j["ell_components"] = std::move(comps);
    j["image"] = monofl::print_graph(ctx, image);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "input: " << monofl::print_micro(ctx, e) << "\n";
    std::cout << "ell components:";
    if (parts.empty()) std::cout << " none";
    for (const auto& [ell, part] : parts) std::cout << " " << ell;
    std::cout << "\n";
    std::cout << "image: " << monofl::print_graph(ctx, image) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for monodromic transforms"};
  app.require_subcommand(1);
  std::string format = "text";

  auto* gkz = app.add_subcommand("gkz", "build and check a hypergeometric system");
  std::string gkz_matrix, gkz_beta = "";
  bool gkz_strict = false;
  int gkz_points = 25;
  std::uint64_t gkz_seed = 2026;
  gkz->add_option("--matrix", gkz_matrix, "rows separated by ';', entries by ','")->required();
  gkz->add_option("--beta", gkz_beta, "parameters, comma separated")->required();
  gkz->add_flag("--strict", gkz_strict, "exit 1 when any check fails");
  gkz->add_option("--points", gkz_points, "torus sample count")->default_val(25);
  gkz->add_option("--seed", gkz_seed, "torus sample seed")->default_val(2026);
  gkz->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* mono = app.add_subcommand("mono", "monodromic module operations");
  mono->require_subcommand(1);
  std::string mono_file;
  long twist_l = 0;
  const std::vector<std::string> mono_ops = {"validate", "fl",         "twist", "inversion",
                                             "restrict", "flrestrict", "rmf"};
  std::vector<CLI::App*> mono_subs;
  for (const auto& op : mono_ops) {
    auto* sub = mono->add_subcommand(op);
    sub->add_option("file", mono_file, "module json file")->required();
    if (op == "twist") sub->add_option("--l", twist_l, "twist amount")->required();
    sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    mono_subs.push_back(sub);
  }

  auto* micro = app.add_subcommand("micro", "microlocal model");
  micro->require_subcommand(1);
  int micro_n = 2, micro_r = 2, micro_samples = 200;
  long micro_bound = 6;
  std::uint64_t micro_seed = 2026;
  std::string micro_f, micro_elem;
  auto add_ctx = [&](CLI::App* sub) {
    sub->add_option("--n", micro_n, "ambient variable count")->default_val(2);
    sub->add_option("--r", micro_r, "map component count")->default_val(2);
    sub->add_option("--f", micro_f, "map components, comma separated polynomials");
    sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  };
  auto* micro_phi = micro->add_subcommand("phi", "apply the comparison map");
  add_ctx(micro_phi);
  micro_phi->add_option("--elem", micro_elem, "microlocal element")->required();
  auto* micro_ident = micro->add_subcommand("identities", "check the intertwining identities");
  add_ctx(micro_ident);
  micro_ident->add_option("--samples", micro_samples, "random sample count")->default_val(200);
  micro_ident->add_option("--seed", micro_seed, "sample seed")->default_val(2026);
  auto* micro_shifts = micro->add_subcommand("shifts", "check the filtration level shifts");
  add_ctx(micro_shifts);
  micro_shifts->add_option("--bound", micro_bound, "total monomial degree bound")->default_val(6);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bool json_format = format == "json";
    if (gkz->parsed())
      return run_gkz(gkz_matrix, gkz_beta, gkz_strict, json_format, gkz_points, gkz_seed);
    if (mono->parsed()) {
      for (size_t i = 0; i < mono_subs.size(); ++i)
        if (mono_subs[i]->parsed()) return run_mono(mono_ops[i], mono_file, twist_l, json_format);
    }
    if (micro->parsed()) {
      monofl::MicroContext ctx = build_context(micro_n, micro_r, micro_f);
      if (micro_phi->parsed()) return run_micro_phi(ctx, micro_elem, json_format);
      if (micro_ident->parsed())
        return finish_report(monofl::verify_phi_identities(ctx, micro_samples, micro_seed),
                             json_format);
      if (micro_shifts->parsed())
        return finish_report(monofl::verify_filtration_shift(ctx, micro_bound), json_format);
    }
  } catch (const monofl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
