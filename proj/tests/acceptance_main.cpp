// Acceptance gate. Each criterion prints one pass/fail line; the process
// exits nonzero when any criterion fails. Every comparison is exact, no
// tolerances anywhere. argv[1] is the command line tool, argv[2] the fixture
// directory; both are only used by the determinism criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "monofl/corpus.hpp"
#include "monofl/gkz.hpp"
#include "monofl/lattice.hpp"
#include "monofl/micro.hpp"
#include "monofl/monodromic.hpp"
#include "monofl/rmf.hpp"
#include "monofl/rng.hpp"
#include "support/rmf_oracle.hpp"

using namespace monofl;

namespace {

using Failures = std::vector<std::string>;

int g_failed = 0;

void check(Failures& out, bool ok, const std::string& msg) {
  if (!ok) out.push_back(msg);
}

void run_criterion(int num, const std::string& label, double cap_seconds,
                   const std::function<void(Failures&)>& body) {
  Failures fails;
  auto start = std::chrono::steady_clock::now();
  try {
    body(fails);
  } catch (const Error& e) {
    fails.push_back(std::string("unexpected error: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cap_seconds > 0 && elapsed > cap_seconds) {
    std::ostringstream os;
    os << "time cap exceeded: " << elapsed << "s > " << cap_seconds << "s";
    fails.push_back(os.str());
  }

  std::ostringstream line;
  line << "criterion " << std::setw(2) << num << ": " << (fails.empty() ? "pass" : "FAIL") << "  "
       << label;
  if (cap_seconds > 0)
    line << " (" << std::fixed << std::setprecision(2) << elapsed << "s, cap "
         << static_cast<long>(cap_seconds) << "s)";
  std::cout << line.str() << "\n";
  size_t shown = 0;
  for (const std::string& f : fails) {
    if (++shown > 8) {
      std::cout << "    ... " << (fails.size() - 8) << " more\n";
      break;
    }
    std::cout << "    " << f << "\n";
  }
  if (!fails.empty()) ++g_failed;
}

// 1. Hodge transport under the transform, corpus wide.
void criterion_fourier_hodge(Failures& f) {
  auto corpus = corpus::standard_corpus(2026);
  check(f, corpus.size() >= 50, "corpus has fewer than 50 modules");
  std::set<int> rs;
  bool mixed_denom = false;
  for (const auto& entry : corpus) {
    rs.insert(entry.m.r);
    if (entry.m.denom > 1) mixed_denom = true;
    check(f, entry.m.denom <= 3, entry.label + ": denominator above 3");
    for (long k = 0; k < entry.m.levels(); ++k)
      check(f, entry.m.dim_at(k) <= 4, entry.label + ": level dimension above 4");
  }
  check(f, rs.count(1) == 1 && rs.count(2) == 1, "corpus does not cover r = 1 and r = 2");
  check(f, mixed_denom, "corpus has no fractional eigenvalue grids");

  for (const auto& entry : corpus) {
    const MonodromicModule& m = entry.m;
    MonodromicModule t = fl(m);
    check(f, validate(t).passed, entry.label + ": transform fails validation");
    for (long k = 0; k < m.levels(); ++k) {
      if (m.dim_at(k) == 0) continue;
      Rational chi = m.chi_at(k);
      long kp = t.level_of(Rational(m.r) - chi);
      bool ok = t.spaces[static_cast<size_t>(kp)].F ==
                m.spaces[static_cast<size_t>(k)].F.shift(to_long(ceil_rat(chi)));
      check(f, ok, entry.label + ": hodge jump mismatch at chi=" + to_string(chi));
    }
  }
}

// 2. Double transform equals antipode of the twist on unipotent modules.
void criterion_inversion(Failures& f) {
  long tested = 0;
  for (const auto& entry : corpus::standard_corpus(2026)) {
    const MonodromicModule& m = entry.m;
    if (m.denom != 1) continue;
    ++tested;
    Report rep = fourier_inversion_check(m);
    check(f, rep.passed, entry.label + ": inversion report failed");
    MonodromicModule ffm = fl(fl(m));
    check(f, ffm == antipode(tate_twist(m, m.r)),
          entry.label + ": double transform is not the twisted antipode");
    for (long k = 0; k < m.levels(); ++k) {
      const FilteredSpace& got = ffm.spaces[static_cast<size_t>(k)];
      const FilteredSpace& src = m.spaces[static_cast<size_t>(k)];
      check(f, got.F.jump_indices() == src.F.shift(m.r).jump_indices(),
            entry.label + ": hodge jump multiset moved");
      check(f, got.W.jump_indices() == src.W.shift(-2 * m.r).jump_indices(),
            entry.label + ": weight jump multiset moved");
    }
  }
  check(f, tested >= 20, "unipotent subcorpus is too small");

  Rng rng(11);
  MonodromicModule frac = corpus::random_loc_block(rng, 2, 2, 1);
  bool threw = false;
  try {
    fourier_inversion_check(frac);
  } catch (const Error&) {
    threw = true;
  }
  check(f, threw, "fractional eigenvalues must be rejected by the inversion check");
}

// 3. Restriction exchange across the one variable corpus.
void criterion_restriction(Failures& f) {
  long tested = 0;
  for (const auto& entry : corpus::standard_corpus(2026)) {
    const MonodromicModule& m = entry.m;
    if (m.r != 1) continue;
    ++tested;
    check(f, check_fl_restriction(m).passed, entry.label + ": exchange report failed");
    bool on_the_nose = restrict_star(fl(m)) == shift(twist(restrict_shriek(m), 1), 1);
    check(f, on_the_nose, entry.label + ": star of transform is not the shifted twist");
  }
  check(f, tested >= 20, "r = 1 subcorpus is too small");
}

// 4. Comparison map identities on seeded samples.
void criterion_phi(Failures& f) {
  Report rep = verify_phi_identities(MicroContext::standard(), 200, 2026);
  check(f, rep.passed, rep.failures.empty() ? "identity check failed" : rep.failures.front());
}

// 5. Exhaustive filtration shift check.
void criterion_shift(Failures& f) {
  Report rep = verify_filtration_shift(MicroContext::standard(), 6);
  check(f, rep.passed, rep.failures.empty() ? "shift check failed" : rep.failures.front());
  bool counted = false;
  for (const std::string& n : rep.notes)
    if (n.find("140") != std::string::npos) counted = true;
  check(f, counted, "expected 140 monomials below the bound");
}

// 6. Relative monodromy filtration against the exhaustive lattice oracle.
void criterion_rmf(Failures& f) {
  struct Instance {
    RatMatrix n;
    Filtration l;
    long center;
  };
  std::vector<Instance> instances;
  RatMatrix j2 = monofl_test::jordan_block(2);
  Subspace im2 = Subspace::from_rows(j2.transpose());
  instances.push_back({j2, Filtration::from_jumps(2, {{-1, im2}, {1, Subspace::full(2)}}), 0});
  instances.push_back({j2, Filtration::from_jumps(2, {{-1, im2}, {0, Subspace::full(2)}}), 0});
  instances.push_back({monofl_test::jordan_block(3), Filtration::single_jump(3, 0), 0});

  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    long dim = rng.range(2, 3);
    RatMatrix n(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = i + 1; j < dim; ++j)
        if (rng.flip()) n.at(i, j) = Rational(rng.nonzero(2));
    long center = rng.range(-1, 1);
    std::set<Subspace> pool =
        monofl_test::subspace_lattice(n, Filtration::single_jump(dim, 0), {});
    std::map<long, Subspace> values;
    long jump = rng.range(-1, 0);
    for (const Subspace& s : pool) {
      if (s.is_zero()) continue;
      if (!values.empty() && !s.contains(values.rbegin()->second)) continue;
      if (!values.empty() && s == values.rbegin()->second) continue;
      if (rng.flip()) continue;
      values[jump] = s;
      jump += rng.range(1, 2);
    }
    if (values.empty() || !values.rbegin()->second.is_full())
      values[jump] = Subspace::full(dim);
    instances.push_back({n, Filtration::from_jumps(dim, values), center});
  }

  long oracle_exists = 0, oracle_none = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    std::string tag = "instance " + std::to_string(i);
    RmfResult res = rmf(inst.n, inst.l, inst.center);
    if (res.exists)
      check(f, verify_rmf(inst.n, inst.l, inst.center, res.w).passed,
            tag + ": result does not satisfy both defining properties");

    std::vector<Subspace> extra;
    if (res.exists)
      for (const auto& [idx, sub] : res.w.jumps()) extra.push_back(sub);
    std::set<Subspace> lattice = monofl_test::subspace_lattice(inst.n, inst.l, extra);
    if (lattice.size() > 40) continue;
    Filtration found = Filtration::from_jumps(0, {});
    long admissible = monofl_test::count_admissible(inst.n, inst.l, inst.center, lattice, &found);
    if (res.exists) {
      ++oracle_exists;
      check(f, admissible == 1, tag + ": verifier accepts " + std::to_string(admissible) +
                                    " candidates, uniqueness needs exactly 1");
      check(f, admissible != 1 || found == res.w, tag + ": oracle found a different filtration");
    } else {
      ++oracle_none;
      check(f, admissible == 0,
            tag + ": claimed nonexistent but the oracle accepts " + std::to_string(admissible));
    }
  }
  check(f, oracle_exists >= 2 && oracle_none >= 1,
        "oracle must cover both outcomes, got " + std::to_string(oracle_exists) + " / " +
            std::to_string(oracle_none));
}

// 7. The canonical filtration axioms hold window by window.
void criterion_v_axioms(Failures& f) {
  for (const auto& entry : corpus::standard_corpus(2026)) {
    VFiltrationResult res = v_filtration(entry.m);
    check(f, res.report.passed,
          entry.label + ": " +
              (res.report.failures.empty() ? "axioms failed" : res.report.failures.front()));
  }
}

// 8. Hypergeometric running example end to end.
void criterion_gkz(Failures& f) {
  IntMatrix a = IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}});
  GkzSystem sys = gkz_construct(a, {Rational(0), Rational(0)});

  check(f, sys.lattice_basis.size() == 1, "lattice basis must have one generator");
  if (sys.lattice_basis.size() == 1) {
    const std::vector<Int>& v = sys.lattice_basis[0];
    bool plus = v == std::vector<Int>{1, -2, 1};
    bool minus = v == std::vector<Int>{-1, 2, -1};
    check(f, plus || minus, "generator is not (1, -2, 1) up to sign");
  }
  check(f, sys.boxes.size() == 1 && print_weyl(sys.boxes[0]) == "d1*d3 - d2^2",
        "box operator mismatch");
  auto d = [](int i) { return WeylElement::generator(derivation(VarGroup::lambda, i)); };
  WeylElement expected = d(1) * d(3) - d(2) * d(2);
  check(f, !sys.boxes.empty() && sys.boxes[0] == expected, "box differs algebraically");
  check(f, sys.flags.homogeneous && sys.flags.pointed && sys.flags.columns_span,
        "structure flags are not all set");

  Report comm = euler_box_commutators(sys);
  check(f, comm.passed, "euler commutators leave a residual");
  GkzFourier four = fourier_transform_generators(sys);
  check(f, four.report.passed, "transform round trip is not the identity");
  Report toric = toric_vanishing(sys, 25, 2026);
  check(f, toric.passed, "box images do not vanish on the torus samples");
}

// 9. Normal form and kernel saturation on seeded integer matrices.
void criterion_snf(Failures& f) {
  Rng rng(2024);
  auto abs_int = [](const Int& v) { return v < 0 ? Int(-v) : v; };
  for (int trial = 0; trial < 100; ++trial) {
    std::string tag = "matrix " + std::to_string(trial);
    long rows = rng.range(1, 6), cols = rng.range(1, 6);
    IntMatrix a(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) a.at(i, j) = rng.range(-10, 10);

    SnfResult s = smith_normal_form(a);
    IntMatrix lhs = s.U * a * s.V;
    bool product_ok = lhs.rows() == s.D.rows() && lhs.cols() == s.D.cols();
    for (long i = 0; product_ok && i < lhs.rows(); ++i)
      for (long j = 0; j < lhs.cols(); ++j)
        if (lhs.at(i, j) != s.D.at(i, j)) product_ok = false;
    check(f, product_ok, tag + ": U A V differs from D");
    check(f, abs_int(s.U.det()) == 1 && abs_int(s.V.det()) == 1,
          tag + ": transforms are not unimodular");
    bool diag_ok = true;
    long n = std::min(s.D.rows(), s.D.cols());
    for (long i = 0; i < s.D.rows(); ++i)
      for (long j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D.at(i, j) != 0) diag_ok = false;
    for (long i = 0; i < n; ++i)
      if (s.D.at(i, i) < 0) diag_ok = false;
    for (long i = 0; i + 1 < n; ++i)
      if (s.D.at(i + 1, i + 1) != 0 &&
          (s.D.at(i, i) == 0 || s.D.at(i + 1, i + 1) % s.D.at(i, i) != 0))
        diag_ok = false;
    check(f, diag_ok, tag + ": diagonal or divisibility chain broken");

    std::vector<std::vector<Int>> k = kernel_lattice(a);
    check(f, static_cast<long>(k.size()) == cols - a.rank(), tag + ": kernel rank mismatch");
    for (const std::vector<Int>& v : k)
      for (const Int& e : a.apply(v))
        check(f, e == 0, tag + ": kernel vector is not annihilated");
    if (!k.empty())
      check(f, is_saturated_lattice(k), tag + ": kernel lattice is not saturated");
  }
}

// 10. The tool is byte deterministic; every verification command runs twice.
std::string g_cli, g_fixtures;

std::pair<int, std::string> run_tool(const std::string& args) {
  std::string cmd = "'" + g_cli + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "(popen failed)"};
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void criterion_determinism(Failures& f) {
  auto fx = [&](const std::string& name) { return "'" + g_fixtures + "/" + name + "'"; };
  std::vector<std::string> commands = {
      "gkz --matrix '1,1,1;0,1,2' --beta '0,0' --strict",
      "gkz --matrix '1,1,1;0,1,2' --beta '0,0' --format json",
      "mono validate " + fx("czmodel.json"),
      "mono validate " + fx("deltamodel.json") + " --format json",
      "mono inversion " + fx("czmodel.json"),
      "mono flrestrict " + fx("deltamodel.json"),
      "mono rmf " + fx("rmf_exists.json") + " --format json",
      "mono rmf " + fx("rmf_none.json"),
      "micro identities --samples 30 --seed 9",
      "micro shifts --bound 4 --format json",
  };
  for (const std::string& cmd : commands) {
    auto first = run_tool(cmd);
    auto second = run_tool(cmd);
    check(f, first.first == 0, cmd + ": exit " + std::to_string(first.first));
    check(f, first == second, cmd + ": two runs differ");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <tool> <fixture dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];

  run_criterion(1, "hodge transport across the corpus", 60, criterion_fourier_hodge);
  run_criterion(2, "inversion with the explicit intertwiner on unipotent modules", 0,
                criterion_inversion);
  run_criterion(3, "restriction exchange across the r = 1 corpus", 0, criterion_restriction);
  run_criterion(4, "comparison map identities, 200 seeded samples", 30, criterion_phi);
  run_criterion(5, "filtration shift, exhaustive below total degree 6", 0, criterion_shift);
  run_criterion(6, "relative weight filtration against the exhaustive oracle", 0, criterion_rmf);
  run_criterion(7, "canonical filtration axioms across the corpus", 0, criterion_v_axioms);
  run_criterion(8, "hypergeometric running example end to end", 5, criterion_gkz);
  run_criterion(9, "normal form and kernel saturation, 100 seeded matrices", 0, criterion_snf);
  run_criterion(10, "tool output is byte deterministic", 0, criterion_determinism);

  if (g_failed) {
    std::cout << g_failed << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
