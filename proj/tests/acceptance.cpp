// Acceptance run: nine criteria, one PASS/FAIL line each.  Exit status is
// the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>

#include "diffalg/atiyah.hpp"
#include "diffalg/session.hpp"
#include "fixtures.hpp"
#include "jet_support.hpp"
#include "modgen.hpp"

using namespace diffalg;
namespace fs = std::filesystem;

namespace {

// Counts failed checks inside one criterion; the first few are reported.
struct Tally {
  int failures = 0;
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 5) std::cerr << "    failed: " << what << "\n";
    ++failures;
  }
};

int run(int number, const char* name, double limit_seconds, const std::function<void(Tally&)>& body) {
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(tally);
  } catch (const std::exception& e) {
    std::cerr << "    exception: " << e.what() << "\n";
    ++tally.failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool pass = tally.failures == 0 && in_time;
  std::printf("criterion %d (%s): %s  [%.2f s", number, name, pass ? "PASS" : "FAIL", secs);
  if (limit_seconds > 0) std::printf(", limit %.0f s", limit_seconds);
  if (tally.failures) std::printf(", %d failed checks", tally.failures);
  std::printf("]\n");
  std::fflush(stdout);
  return pass ? 0 : 1;
}

StructurePtr coordinate_ps(std::size_t p, std::size_t q) {
  static std::map<std::pair<std::size_t, std::size_t>, StructurePtr> cache;
  auto& slot = cache[{p, q}];
  if (!slot) slot = modgen::coordinate_param_structure(p, q);
  return slot;
}

// Gauge-flat module together with its horizontal frame T^{-1}.
struct Gauge {
  DiffModule module;
  Matrix frame;
};

Gauge random_gauge(gen::Rng& rng, const StructurePtr& ps, std::size_t rank) {
  const std::size_t n = ps->full.base().size();
  Matrix t = rank > 1 && rng.chance(0.6) ? modgen::unimodular(rng, rank, n) : modgen::with_pole(rng, rank, n);
  return {modgen::gauge_module(ps, t), inverse(t)};
}

DiffModule gauge(gen::Rng& rng, const StructurePtr& ps, std::size_t rank) { return random_gauge(rng, ps, rank).module; }

bool horizontal_frame(const DiffModule& m, const Matrix& f) {
  for (std::size_t i = 0; i < m.ps->p; ++i)
    if (!(modgen::derive(m.ps->principal, i, f) == m.conn[i] * f)) return false;
  return true;
}

Matrix param_derivative(const StructurePtr& ps, std::size_t j, const Matrix& m) {
  return modgen::derive(ps->full, ps->p + j, m);
}

Matrix block_diagonal(const Matrix& t, std::size_t copies) {
  Matrix out(t.rows() * copies, t.cols() * copies);
  for (std::size_t s = 0; s < copies; ++s) out.set_block(s * t.rows(), s * t.cols(), t);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1. Integrability of the quotient-by-z morphism and the closedness criterion.
void morphism_example(Tally& t) {
  const FieldSpec& f = fx::xy();
  t.check(check_morphism(fx::quotient_by_z(parse_ratfun("y", f), parse_ratfun("x", f))).ok(), "(y, x) is Ok");
  const MorphismCheck bad = check_morphism(fx::quotient_by_z(parse_ratfun("y", f), parse_ratfun("0", f)));
  t.check(bad.kind == MorphismCheck::Kind::IntegrabilityFail, "(y, 0) fails integrability");
  t.check(bad.integrability_witness.at(0, 1) == RatFun(-1), "witness is -dx^dy");
  gen::Rng rng(101);
  int closed = 0, open = 0;
  for (int k = 0; k < 20; ++k) {
    RatFun a, b;
    if (k % 2 == 0) {
      MultiPoly h = rng.poly(2, 3);
      a = RatFun(h.derivative(0));
      b = RatFun(h.derivative(1));
    } else {
      a = RatFun(rng.poly(2, 2));
      b = RatFun(rng.poly(2, 2));
    }
    const bool criterion = a.derivative(1) == b.derivative(0);
    (criterion ? closed : open)++;
    t.check(check_morphism(fx::quotient_by_z(a, b)).ok() == criterion, "verdict follows d_y f = d_x g");
  }
  t.check(closed > 0 && open > 0, "both outcomes exercised");
}

// 2. A basis whose bracket leaves its span.
void not_closed(Tally& t) {
  const FieldSpec& f = fx::xyz();
  try {
    build_structure(f, {fx::D(f, {{"x", "z"}, {"y", "1"}}), fx::D(f, {{"z", "1"}})});
    t.check(false, "NotClosed raised");
  } catch (const NotClosed& e) {
    t.check(e.witness() == fx::D(f, {{"x", "-1"}}), "witness is -d/dx");
  }
}

// 3. x^t system.
void xt_fixture(Tally& t) {
  const StructurePtr ps = coordinate_ps(1, 1);
  const FieldSpec& f = ps->full.base();
  DiffModule m = make_module(ps, {Matrix(1, 1, {parse_ratfun("t/x", f)})});
  ProlongedModule p = prolong_module(m);
  t.check(render(p.core.conn[0], f) == std::vector<std::vector<std::string>>{{"(t)/(x)", "(0)/(1)"}, {"(-1)/(x)", "(t)/(x)"}},
          "prolonged matrix text");
  for (unsigned b = 0; b <= 3; ++b) t.check(horizontal_space(m, b).empty(), "no rational solution at bound " + std::to_string(b));
}

// 4. Jet algebra laws on Q(x, t) with d = 2.
void jet_laws(Tally& t) {
  const DiffStructure s = fx::coordinate_structure(FieldSpec({"x", "t"}));
  gen::Rng rng(104);
  for (int k = 0; k < 200; ++k) {
    const RatFun a = rng.ratfun(2, 2), b = rng.ratfun(2, 2);
    t.check(jet1_e(jet1_l(a, s)) == a && jet1_e(jet1_r(a, s)) == a, "first-jet counits");
    t.check(jet2_e(jet2_l(a, s)) == a && jet2_e(jet2_r(a, s)) == a, "second-jet counits");
    t.check(jet2_mul(jet2_r(a, s), jet2_r(b, s), s) == jet2_r(a * b, s), "r2 multiplicative");
    t.check(jet2_add(jet2_r(a, s), jet2_r(b, s)) == jet2_r(a + b, s), "r2 additive");
    t.check(jet2_mul(jet2_l(a, s), jet2_l(b, s), s) == jet2_l(a * b, s), "l2 multiplicative");
    t.check(jet2_add(jet2_l(a, s), jet2_l(b, s)) == jet2_l(a + b, s), "l2 additive");

    const Jet2Element x = jetgen::random_member(rng, s), y = jetgen::random_member(rng, s);
    const Jet11Element dx = jet2_Delta(x, s);
    t.check(jet11_e_left(dx) == jet2_proj1(x) && jet11_e_right(dx) == jet2_proj1(x), "counits of Delta");
    const Jet2Element xy = jet2_mul(x, y, s);
    t.check(jet2_is_member(xy, s), "P2 closed under product");
    t.check(xy == jetgen::expanded_product(x, y, s), "product matches the expansion");

    const Jet2Element u = jetgen::random_member(rng, s, true), v = jetgen::random_member(rng, s, true);
    t.check(jet2_gamma(jet2_mul(jet2_l(a, s), u, s)) == (a * a) * jet2_gamma(u), "gamma(ax) = a^2 gamma(x)");
    t.check(jet2_gamma(jet2_add(u, v)) - jet2_gamma(u) - jet2_gamma(v) == jet2_sym2_value(jet2_mul(u, v, s)),
            "gamma(x+y) = gamma(x) + xy + gamma(y)");
  }
}

// 5. de Rham and Lie identities.
void derham_lie(Tally& t) {
  gen::Rng rng(105);
  for (const auto& s : {fx::log_z_structure(), fx::twisted_structure(), fx::scaled_structure()}) {
    const std::size_t n = s.base().size();
    for (int k = 0; k < 100; ++k) t.check(deRham_d1(deRham_d0(rng.ratfun(n, 3), s), s).is_zero(), "d o d = 0");
    for (int k = 0; k < 50; ++k) {
      OmegaElement w = jetgen::random_form(rng, s);
      std::vector<RatFun> u(s.dim());
      for (auto& c : u) c = rng.ratfun(n, 1);
      const OmegaElement l = lie_derivative_general(u, w, s);
      const Derivation ud = s.combine(u);
      for (std::size_t j = 0; j < s.dim(); ++j) {
        const auto coords = s.coordinates(bracket(ud, s.basis(j)));
        t.check(coords.has_value() && l.coeffs[j] == ud.apply(w.coeffs[j]) - w.pair(*coords),
                "L_u(w)(d_j) = u(w(d_j)) - w([u, d_j])");
      }
      const RatFun a = rng.ratfun(n, 2);
      const std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(s.dim()) - 1));
      std::vector<RatFun> ai(s.dim());
      ai[i] = a;
      t.check(lie_derivative_general(ai, w, s) == a * lie_derivative(i, w, s) + w.coeffs[i] * deRham_d0(a, s),
              "L_{a d} w = a L_d w + w(d) da");
    }
  }
}

// 6. Curvature against jet membership.
void oracle_equivalence(Tally& t) {
  gen::Rng rng(106);
  const std::vector<StructurePtr> structures{coordinate_ps(2, 0), coordinate_ps(2, 1), coordinate_ps(2, 2)};
  for (int k = 0; k < 50; ++k) {
    const StructurePtr& ps = structures[static_cast<std::size_t>(k) % structures.size()];
    DiffModule m = gauge(rng, ps, 1 + static_cast<std::size_t>(k / 2) % 3);
    if (k % 2) {
      std::vector<Matrix> conn = m.conn;
      const std::size_t r = m.rank();
      conn[1](static_cast<std::size_t>(rng.integer(0, static_cast<int>(r) - 1)),
              static_cast<std::size_t>(rng.integer(0, static_cast<int>(r) - 1))) += RatFun::variable(ps->full.base().size(), 0);
      m = make_module(ps, conn);
    }
    const IntegrabilityCheck ic = check_integrability(m);
    const MembershipCheck mc = phi2_membership(m);
    t.check(ic.flat == (k % 2 == 0), "gauge modules flat, perturbed ones curved");
    t.check(ic.flat == mc.ok, "verdicts agree");
    if (!ic.flat && !mc.ok) t.check(ic.i == mc.i && ic.j == mc.j, "witness indices agree");
  }
}

// 7. Prolongation properties.
void prolongation(Tally& t) {
  gen::Rng rng(107);
  for (int k = 0; k < 50; ++k) {
    const std::size_t p = 1 + k % 2, q = 1 + (k / 2) % 2, r = 1 + (k / 4) % 3;
    const StructurePtr ps = coordinate_ps(p, q);
    const Gauge g = random_gauge(rng, ps, r);
    const DiffModule& m = g.module;
    ProlongedModule pm = prolong_module(m);
    t.check(check_integrability(pm.core).flat, "prolongation flat");
    Matrix frame = block_diagonal(g.frame, 1 + q);
    for (std::size_t j = 0; j < q; ++j) frame.set_block((j + 1) * r, 0, -param_derivative(ps, j, g.frame));
    t.check(horizontal_frame(pm.core, frame), "frame [[F, 0], [-d_t F, F]] horizontal");
    t.check((pm.proj * pm.incl).is_zero(), "proj o incl = 0");
    t.check(rank(pm.incl) + rank(pm.proj) == r * (1 + q), "ranks add up");
    t.check(morphism_check(pm.incl, parameter_forms(m), pm.core).ok, "incl horizontal");
    t.check(morphism_check(pm.proj, pm.core, m).ok, "proj horizontal");
    std::vector<Matrix> offs;
    for (std::size_t i = 0; i < p; ++i) offs.push_back(pm.core.conn[i].block(r, 0, r * q, r));
    t.check(make_extension(m, parameter_forms(m), offs).module == pm.core, "extension of M by forms");
  }
  for (int k = 0; k < 20; ++k) {
    const std::size_t p = 1 + k % 2, q = 1 + (k / 2) % 2, r = 1 + k % 3;
    const StructurePtr ps = coordinate_ps(p, q);
    const std::size_t n = ps->full.base().size();
    DiffModule m3 = gauge(rng, ps, r);
    Matrix s = modgen::unimodular(rng, r, n), u = modgen::unimodular(rng, r, n);
    DiffModule m2 = modgen::gauge_transform(m3, s), m1 = modgen::gauge_transform(m2, u);
    ModMorphism ps_ = prolong_morphism({m2, m3, s}), pu = prolong_morphism({m1, m2, u}),
                psu = prolong_morphism({m1, m3, s * u});
    t.check(prolong_morphism({m3, m3, Matrix::identity(r)}).t == Matrix::identity(r * (1 + q)), "identity");
    t.check(psu.t == ps_.t * pu.t, "composition");
    t.check(morphism_check(psu).ok, "prolonged morphism horizontal");
    ProlongedModule a = prolong_module(m2), b = prolong_module(m3);
    t.check(ps_.t * a.incl == b.incl * block_diagonal(s, q) && b.proj * ps_.t == s * a.proj, "naturality square");
  }
  for (int k = 0; k < 25; ++k) {
    const std::size_t p = 1 + k % 2, q = 1 + (k / 2) % 2;
    const StructurePtr ps = coordinate_ps(p, q);
    t.check(check_tensor_compat(gauge(rng, ps, 1 + k % 2), gauge(rng, ps, 2)), "tensor compatibility");
  }
  for (int k = 0; k < 25; ++k) {
    const std::size_t p = 1 + k % 2, q = 1 + (k / 2) % 2, r = 1 + (k / 4) % 2;
    DiffModule m = gauge(rng, coordinate_ps(p, q), r);
    At2Module a = at2_module(m);
    t.check(a.core.rank() == r * (1 + q + q * (q + 1) / 2), "invariant rank");
    t.check(morphism_check(a.incl, a.core, a.doubled).ok, "invariant inclusion horizontal");
  }
}

// 8. Horizontal sections of gauge connections.
void horizontal_recovery(Tally& t) {
  gen::Rng rng(108);
  for (int k = 0; k < 20; ++k) {
    const StructurePtr ps = k % 2 ? coordinate_ps(2, 0) : coordinate_ps(1, 1);
    const std::size_t n = ps->full.base().size(), r = 1 + static_cast<std::size_t>(k) % 3;
    Matrix g = k % 4 == 3 ? modgen::with_pole(rng, r, n) : modgen::unimodular(rng, r, n);
    DiffModule m = modgen::gauge_module(ps, g);
    const Matrix inv = inverse(g);
    unsigned bound = 0;
    for (const auto& x : inv.data()) bound = std::max({bound, x.num().total_degree(), x.den().total_degree()});
    const auto sols = horizontal_space(m, bound);
    t.check(sols.size() == r, "dimension m");
    if (!sols.empty()) {
      Matrix frame(r, sols.size());
      for (std::size_t c = 0; c < sols.size(); ++c)
        for (std::size_t l = 0; l < r; ++l) frame(l, c) = sols[c][l];
      t.check(rank(frame) == sols.size(), "independent");
      t.check(horizontal_frame(m, frame), "d_i v = A_i v");
    }
  }
}

// 9. CLI determinism and round-trips over the fixture corpus.
void cli_determinism(Tally& t) {
  std::vector<fs::path> corpus;
  for (const auto& e : fs::directory_iterator(fs::path(DIFFALG_FIXTURES) / "corpus"))
    if (e.path().extension() == ".yaml") corpus.push_back(e.path());
  std::sort(corpus.begin(), corpus.end());
  t.check(!corpus.empty(), "corpus present");
  const fs::path tmp = fs::temp_directory_path();
  for (const auto& path : corpus) {
    std::string outs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = tmp / ("acceptance_" + std::to_string(run) + ".json");
      const std::string cmd = std::string(DIFFALG_CLI) + " run " + path.string() + " --quiet --out " + out.string();
      t.check(std::system(cmd.c_str()) == 0, "cli exit 0 on " + path.filename().string());
      outs[run] = slurp(out);
    }
    t.check(!outs[0].empty() && outs[0] == outs[1], "identical certificates for " + path.filename().string());

    const std::string text = slurp(path);
    Session s(text);
    const SessionResult r = s.run();
    std::string structures;
    {
      std::istringstream in(text);
      std::string line;
      bool inside = false;
      while (std::getline(in, line)) {
        if (!line.empty() && line[0] != ' ' && line[0] != '#') inside = line.rfind("structures:", 0) == 0;
        if (inside) structures += line + "\n";
      }
    }
    for (const auto& res : r.certificate["results"]) {
      if (!res["command"].contains("as") || !res["artifacts"].contains("module")) continue;
      Session back(structures + "modules:\n  back: " + res["artifacts"]["module"].dump() + "\n");
      t.check(back.module("back").conn == s.module(res["command"]["as"]).conn, "module round-trip");
    }
  }
}

}  // namespace

int main() {
  int failed = 0;
  failed += run(1, "morphism integrability example and closedness criterion", 5, morphism_example);
  failed += run(2, "non-closed bracket rejection", 1, not_closed);
  failed += run(3, "x^t prolongation fixture", 2, xt_fixture);
  failed += run(4, "jet algebra laws", 30, jet_laws);
  failed += run(5, "de Rham and Lie identities", 30, derham_lie);
  failed += run(6, "integrability oracle equivalence", 60, oracle_equivalence);
  failed += run(7, "prolongation theorems", 300, prolongation);
  failed += run(8, "horizontal solver soundness and recovery", 120, horizontal_recovery);
  failed += run(9, "CLI determinism and round-trip", 0, cli_determinism);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed;
}
