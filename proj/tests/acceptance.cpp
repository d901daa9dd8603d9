// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "loopforge/constructions.hpp"
#include "loopforge/json_io.hpp"
#include "loopforge/radical.hpp"

using namespace loopforge;
using PF = PrimeField;
using CS = std::span<const std::uint32_t>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome PaigeOrders() {
  Outcome o;
  auto t = std::chrono::steady_clock::now();
  auto m2 = PaigeLoop(2);
  double t2 = Seconds(t);
  o.require(m2.order() == 120, "|M(2)| = 120");
  o.require(t2 < 5, "M(2) within 5s");
  t = std::chrono::steady_clock::now();
  auto m3 = PaigeLoop(3);
  double t3 = Seconds(t);
  o.require(m3.order() == 1080, "|M(3)| = 1080");
  o.require(t3 < 60, "M(3) within 60s");
  // (1/d) q^3 (q^4 - 1)
  o.require(PaigeOrder(2) == 8 * 15 && PaigeOrder(3) == 27 * 80 / 2, "order formula");
  o.note("|M(2)|=" + std::to_string(m2.order()) + " in " + Fmt(t2) + ", |M(3)|=" + std::to_string(m3.order()) +
         " in " + Fmt(t3));
  return o;
}

Outcome M2Structure() {
  Outcome o;
  auto m = PaigeLoop(2);
  o.require(CheckMoufangExhaustive(m).ok, "Moufang on 120^3 triples");
  auto a = CheckAssociative(m);
  o.require(!a.ok && a.witness.has_value(), "nonassociative witness");
  if (a.witness) {
    auto [x, y, z] = *a.witness;
    o.require(m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)), "witness recomputed");
    o.note("witness (" + m.name(x) + ", " + m.name(y) + ", " + m.name(z) + ")");
  }
  int whole = 0;
  for (Elt x = 1; x < 120; ++x) whole += NormalClosure(m, {x}).is_whole();
  o.require(whole == 119, "119 normal closures equal M(2)");
  o.note(std::to_string(whole) + "/119 normal closures are the whole loop");
  return o;
}

Outcome FixtureGates() {
  Outcome o;
  auto c = BuiltinLoop("chein12");
  o.require(CheckMoufangExhaustive(c).ok, "chein12 Moufang");
  o.require(!IsAssociative(c), "chein12 nonassociative");
  auto m = Cml81();
  o.require(CheckCommutative(m).ok, "cml81 commutative");
  o.require(CheckMoufangExhaustive(m).ok, "cml81 Moufang on 81^3");
  o.require(!IsAssociative(m), "cml81 nonassociative");
  o.require(Exponent(m) == 3, "cml81 exponent 3");
  auto z = Center(m);
  o.require(z.size() == 3, "|Z(cml81)| = 3");
  auto up = CentralSeries(m, SeriesReport::Kind::kUpperCentral);
  auto low = CentralSeries(m, SeriesReport::Kind::kLowerCentral);
  o.require(up.nilpotency_class == 2u && low.nilpotency_class == 2u, "nilpotency class 2");
  o.note("|Z|=" + std::to_string(z.size()) + ", class " +
         (up.nilpotency_class ? std::to_string(*up.nilpotency_class) : std::string("none")));
  return o;
}

Outcome Cml81OverGF3() {
  Outcome o;
  PF f(3);
  auto l = Cml81();
  auto fqb = BuildAlternativeLoopAlgebra(f, l);
  const auto& a = *fqb.algebra;
  o.note("dim FQ/I(Q)=" + std::to_string(a.dim()));
  auto alt = AlternativeCheck(a, false, 10'000, kDefaultSeed);
  o.require(alt.ok, "alternative on 10^4 triples");
  o.note("alternativity seed " + std::to_string(alt.seed));
  auto omega = AugmentationIdeal(fqb, SubloopSet::Whole(81));
  o.require(!omega.Contains(a.RequireUnit()), "e not in omega");
  o.require(omega.dim() + 1 == a.dim(), "codim omega = 1");
  auto idx = AlgebraNilpotencyIndex(a, omega);
  o.require(idx.has_value(), "omega nilpotent");
  if (idx) o.note("nilpotency index " + std::to_string(*idx));
  auto v = Embeddability(l, f, "cml81");
  o.require(v.outcome == EmbeddabilityVerdict<PF>::Outcome::kEmbeds, "verdict embeds");
  // independent re-verification of the map
  bool distinct = true, invertible = true, mult = true;
  for (Elt x = 0; x < 81; ++x) {
    invertible &= Invert(a, CS(fqb.Image(x))).has_value();
    for (Elt y = 0; y < 81; ++y) {
      if (x < y && fqb.Image(x) == fqb.Image(y)) distinct = false;
      if (a.Mul(fqb.Image(x), fqb.Image(y)) != fqb.Image(l.mul(x, y))) mult = false;
    }
  }
  o.require(distinct, "81 distinct images");
  o.require(invertible, "images invertible");
  o.require(mult, "multiplicative on 81^2 pairs");
  return o;
}

Outcome CharacteristicObstruction() {
  Outcome o;
  PF f(5);
  auto l = Cml81();
  auto fqb = BuildAlternativeLoopAlgebra(f, l);
  o.note("dim FQ/I(Q)=" + std::to_string(fqb.algebra->dim()));
  auto w = FindNonassociativeTriple(*fqb.algebra, 10'000, kDefaultSeed);
  o.require(!w.has_value(), "associative on 10^4 sampled triples");
  auto c = FindCollision(fqb);
  o.require(c.has_value(), "collision pair");
  if (c) o.note("collision " + l.name(c->first) + " ~ " + l.name(c->second));
  return o;
}

Outcome SemisimpleSide() {
  Outcome o;
  PF f(11);
  auto m = PaigeLoop(2);
  auto fqb = BuildAlternativeLoopAlgebra(f, m);
  const auto& a = *fqb.algebra;
  auto omega = AugmentationIdeal(fqb, SubloopSet::Whole(120));
  o.note("dim FQ/I(Q)=" + std::to_string(a.dim()) + ", dim omega=" + std::to_string(omega.dim()));
  o.require(omega.is_full(), "omega[M(2)] = F[M(2)]");
  o.require(omega.Contains(a.RequireUnit()), "e in omega[M(2)]");
  o.require(LoopRadicalS(m).is_trivial(), "S(M(2)) = {e}");
  auto v = Embeddability(m, f, "paige2");
  o.require(v.outcome == EmbeddabilityVerdict<PF>::Outcome::kObstructed, "verdict obstructed");
  o.require(v.witness && v.witness->is_whole() && v.witness_verified, "witness is M(2)");
  if (v.collision) o.note("collision " + m.name(v.collision->first) + " ~ " + m.name(v.collision->second));
  return o;
}

Outcome CircleLoops() {
  Outcome o;
  {
    PF f(3);
    LoopAlgebra<PF> fq(f, CyclicGroup(3));
    auto omega = AugmentationIdeal(fq, SubloopSet::Whole(3));
    auto res = CircleLoop(fq, omega);
    o.require(res.loop && res.loop->order() == 9, "circle loop of order 9");
    if (res.loop) o.require(Exponent(*res.loop) == 3, "exponent 3");
    auto iso = CircleIsoCheck(res.structure);
    o.require(iso.exhaustive && iso.ok(), "eta/phi/quasiinverse exhaustive on C3");
  }
  {
    PF f(3);
    auto fqb = BuildAlternativeLoopAlgebra(f, Cml81());
    auto omega = AugmentationIdeal(fqb, SubloopSet::Whole(81));
    CircleStructure<PF> cs(*fqb.algebra, omega);
    auto iso = CircleIsoCheck(cs, 100'000, kDefaultSeed);
    o.require(!iso.exhaustive && iso.pairs == 100'000, "10^5 sampled pairs");
    o.require(iso.eta_ok, "eta equation on cml81");
    o.require(iso.phi_ok, "phi equation on cml81");
    o.require(iso.quasiinverse_ok, "quasiinverse identity on cml81");
    o.note(std::to_string(iso.pairs) + " pairs, seed " + std::to_string(iso.seed));
  }
  return o;
}

Outcome UnitFormulas() {
  Outcome o;
  {
    PF f(3);
    auto fqb = BuildAlternativeLoopAlgebra(f, Cml81());
    const auto& a = *fqb.algebra;
    auto omega = AugmentationIdeal(fqb, SubloopSet::Whole(81));
    auto idx = AlgebraNilpotencyIndex(a, omega);
    o.require(idx.has_value(), "omega nilpotent");
    if (!idx) return o;
    Rng rng(kDefaultSeed);
    int good = 0;
    for (int s = 0; s < 1000; ++s) {
      auto u = omega.Combine(RandomVec(f, omega.dim(), rng));
      auto v = omega.Combine(RandomVec(f, omega.dim(), rng));
      auto w = omega.Combine(RandomVec(f, omega.dim(), rng));
      good += CheckUnitFormulas(a, CS(u), CS(v), CS(w), *idx).ok();
    }
    o.require(good == 1000, "1000 seeded triples on cml81");
    o.note(std::to_string(good) + "/1000 triples, m=" + std::to_string(*idx));
  }
  {
    PF f(2);
    LoopAlgebra<PF> fq(f, CyclicGroup(2));
    auto omega = AugmentationIdeal(fq, SubloopSet::Whole(2));
    std::vector<Vec<PF>> elems{fq.Zero(), omega.rows()[0]};
    bool all = true;
    for (const auto& u : elems)
      for (const auto& v : elems)
        for (const auto& w : elems) all &= CheckUnitFormulas(fq, CS(u), CS(v), CS(w), 2).ok();
    o.require(all, "exhaustive on omega[GF(2)C2]");
  }
  return o;
}

Outcome AssociatorIdentity() {
  Outcome o;
  auto r = CheckAssociatorIdentity(Cml81(), 1000, kDefaultSeed);
  o.require(r.holds && r.samples == 1000, "1000 seeded 7-tuples");
  o.note(std::to_string(r.samples) + " tuples, seed " + std::to_string(r.seed));
  return o;
}

template <class Algebra, class Omega>
std::string IndexText(const Algebra& a, const Omega& omega, std::optional<std::size_t>& idx) {
  idx = AlgebraNilpotencyIndex(a, omega);
  return idx ? std::to_string(*idx) : std::string("none");
}

Outcome NilpotencyMatrix() {
  Outcome o;
  std::optional<std::size_t> idx;
  {
    LoopAlgebra<PF> fq(PF(3), CyclicGroup(3));
    auto s = IndexText(fq, AugmentationIdeal(fq, SubloopSet::Whole(3)), idx);
    o.require(idx == 3u, "(C3, GF(3)) index 3");
    o.note("C3/GF(3): " + s);
  }
  {
    auto fqb = BuildAlternativeLoopAlgebra(PF(3), Cml81());
    auto s = IndexText(*fqb.algebra, AugmentationIdeal(fqb, SubloopSet::Whole(81)), idx);
    o.require(idx.has_value(), "(cml81, GF(3)) finite");
    o.note("cml81/GF(3): " + s);
  }
  {
    LoopAlgebra<PF> fq(PF(5), CyclicGroup(3));
    auto s = IndexText(fq, AugmentationIdeal(fq, SubloopSet::Whole(3)), idx);
    o.require(!idx, "(C3, GF(5)) none");
    o.note("C3/GF(5): " + s);
  }
  {
    auto fqb = BuildAlternativeLoopAlgebra(PF(7), Cml81());
    auto s = IndexText(*fqb.algebra, AugmentationIdeal(fqb, SubloopSet::Whole(81)), idx);
    o.require(!idx, "(cml81, GF(7)) none");
    o.note("cml81/GF(7): " + s + " (dim " + std::to_string(fqb.algebra->dim()) + ")");
  }
  return o;
}

Outcome DimensionLaw() {
  Outcome o;
  for (std::uint32_t p : {3u, 7u}) {
    PF f(p);
    auto s3 = SymmetricGroup3();
    LoopAlgebra<PF> fs(f, s3);
    auto a3 = NormalClosure(s3, {3});
    auto d1 = fs.dim() - AugmentationIdeal(fs, a3).dim();
    o.require(a3.size() == 3 && d1 == 2, "dim FS3/omega(A3) = 2 over GF(" + std::to_string(p) + ")");
    auto m = Cml81();
    LoopAlgebra<PF> fm(f, m);
    auto z = Center(m);
    auto d2 = fm.dim() - AugmentationIdeal(fm, z).dim();
    o.require(d2 == 27, "dim F cml81/omega(Z) = 27 over GF(" + std::to_string(p) + ")");
    o.note("GF(" + std::to_string(p) + "): " + std::to_string(d1) + ", " + std::to_string(d2));
  }
  return o;
}

Outcome RadicalAxioms() {
  Outcome o;
  for (const char* name : {"s3", "chein12", "cml81", "product:paige:2,c2"}) {
    auto l = BuiltinLoop(name);
    auto s = LoopRadicalS(l);
    bool quotient_ok = LoopRadicalS(QuotientLoop(l, s).loop).is_trivial();
    bool heredity = true;
    auto lattice = NormalSubloopLattice(l);
    for (const auto& n : lattice) heredity &= Lift(n, LoopRadicalS(Restrict(l, n))) == n.Intersect(s);
    o.require(quotient_ok, std::string(name) + " S(L/S(L)) = {e}");
    o.require(heredity, std::string(name) + " heredity");
    o.note(std::string(name) + ": |S|=" + std::to_string(s.size()) + ", " + std::to_string(lattice.size()) +
           " normal subloops");
  }
  return o;
}

// ---------------------------------------------------------------------------
// CLI contract

struct Run {
  int code = -1;
  std::string out;
};

Run Exec(const std::string& args) {
  std::string cmd = std::string(LOOPFORGE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome CliContract() {
  Outcome o;
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "loopforge_acceptance";
  fs::create_directories(dir);
  auto m2 = (dir / "m2.json").string(), again = (dir / "again.json").string();
  o.require(Exec("construct --kind paige:2 -o " + m2).code == 0, "construct exit 0");
  o.require(Exec("construct --kind " + m2 + " -o " + again).code == 0, "re-serialize exit 0");
  o.require(!Slurp(m2).empty() && Slurp(m2) == Slurp(again), "byte-identical round trip");
  o.require(LoopToJson(LoadLoop(m2)) == Slurp(m2), "library round trip");
  auto chk = Exec("check --loop " + m2 + " --property associative --json");
  o.require(chk.code == 1 && chk.out.find("\"witness\"") != std::string::npos, "violation exit 1 with witness");
  auto emb = Exec("embed --loop cml81 --field gf:3 --json");
  o.require(emb.code == 0 && emb.out.find("\"outcome\":\"embeds\"") != std::string::npos, "embed cml81 gf:3");
  o.require(Exec("check --loop nowhere --property moufang").code == 2, "bad input exit 2");
  o.require(Exec("check --loop cml81 --property bogus").code == 2, "bad flag exit 2");
  int golden = 0, stable = 0;
  const std::vector<std::pair<std::string, std::string>> goldens{
      {"paige2.json", "construct --kind paige:2"},
      {"cml81.json", "construct --kind cml81"},
      {"check_cml81_identity44.json", "check --loop cml81 --property identity44 --json"},
      {"embed_cml81_gf3.json", "embed --loop cml81 --field gf:3 --json"}};
  for (const auto& [file, args] : goldens) {
    auto expect = Slurp(fs::path(LOOPFORGE_GOLDEN_DIR) / file);
    auto a = Exec(args), b = Exec(args);
    golden += !expect.empty() && a.out == expect;
    stable += a.out == b.out;
  }
  o.require(golden == static_cast<int>(goldens.size()), "golden files match");
  o.require(stable == static_cast<int>(goldens.size()), "outputs stable across runs");
  o.note(std::to_string(golden) + "/" + std::to_string(goldens.size()) + " goldens");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Paige orders", 65, PaigeOrders},
      {2, "M(2) structure", 120, M2Structure},
      {3, "fixture gates", 60, FixtureGates},
      {4, "F[cml81] over GF(3)", 600, Cml81OverGF3},
      {5, "characteristic obstruction", 600, CharacteristicObstruction},
      {6, "semisimple side", 900, SemisimpleSide},
      {7, "circle loops", 60, CircleLoops},
      {8, "associator/commutator formulas", 60, UnitFormulas},
      {9, "seven-variable associator identity", 30, AssociatorIdentity},
      {10, "nilpotency matrix", 300, NilpotencyMatrix},
      {11, "dimension law", 60, DimensionLaw},
      {12, "radical axioms", 600, RadicalAxioms},
      {13, "CLI contract", 600, CliContract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    double s = Seconds(t);
    if (s > c.budget_s) o.require(false, "runtime budget " + Fmt(c.budget_s));
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << " [" << Fmt(s) << "] " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
