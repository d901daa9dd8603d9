// loopforge: construct fixture loops, run property checks, central series,
// alternative loop algebras, radicals and embeddability verdicts.
//
// Exit codes: 0 success, 1 a checked property fails (witness printed),
// 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "loopforge/algebra.hpp"
#include "loopforge/constructions.hpp"
#include "loopforge/json_io.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/radical.hpp"

namespace {

using namespace loopforge;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string kind;
  std::string loop;
  std::string field = "gf:3";
  std::string property;
  std::string series = "both";
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  bool json = false;
};

template <class Fn>
auto WithField(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::kRationals) return fn(RationalField());
  return fn(PrimeField(spec.p));
}

void Emit(const Options& o, const ojson& j) {
  std::string text = o.json ? j.dump() : j.dump(2);
  if (o.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParse, "cannot write " + o.out);
  f << text << "\n";
}

ojson TripleJson(const FiniteLoop& l, const Triple& t, bool pair) {
  if (pair) return ojson::array({l.name(t.x), l.name(t.y)});
  return ojson::array({l.name(t.x), l.name(t.y), l.name(t.z)});
}

ojson CheckJson(const FiniteLoop& l, const PropertyCheck& c, bool pair) {
  ojson j;
  j["ok"] = c.ok;
  if (c.witness) j["witness"] = TripleJson(l, *c.witness, pair);
  return j;
}

ojson SeriesJson(const FiniteLoop& l, const SeriesReport& s) {
  ojson j;
  j["kind"] = s.kind == SeriesReport::Kind::kUpperCentral ? "upper" : "lower";
  ojson orders = ojson::array();
  for (const auto& t : s.terms) orders.push_back(t.size());
  j["term_orders"] = orders;
  j["stabilized"] = s.stabilized;
  j["nilpotency_class"] = s.nilpotency_class ? ojson(*s.nilpotency_class) : ojson(nullptr);
  if (s.kind == SeriesReport::Kind::kLowerCentral) {
    ojson w = ojson::array();
    for (const auto& t : s.weight_terms) w.push_back(t.size());
    j["weight_term_orders"] = w;
    j["weight_alignment"] = s.weight_alignment ? ojson(*s.weight_alignment) : ojson(nullptr);
  }
  (void)l;
  return j;
}

// ---------------------------------------------------------------------------

int RunConstruct(const Options& o) {
  FiniteLoop l = ResolveLoop(o.kind);
  if (o.out.empty()) {
    std::cout << LoopToJson(l);
  } else {
    SaveLoop(l, o.out);
  }
  return kExitOk;
}

int RunCheck(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  ojson j;
  j["loop"] = o.loop;
  j["order"] = l.order();
  if (o.property.empty()) {
    PropertyOptions po;
    po.seed = o.seed;
    if (o.samples) po.samples = o.samples;
    PropertyReport r = CheckProperties(l, po);
    j["moufang"] = CheckJson(l, r.moufang, false);
    j["moufang_mode"] = r.moufang_exhaustive ? "exhaustive" : "sampled";
    j["moufang_samples"] = r.moufang_samples;
    j["associative"] = CheckJson(l, r.associative, false);
    j["commutative"] = CheckJson(l, r.commutative, true);
    j["ip"] = CheckJson(l, r.ip, true);
    j["exponent"] = r.exponent;
    j["p_loop"] = r.p_loop ? ojson(*r.p_loop) : ojson(nullptr);
    j["seed"] = o.seed;
    if (o.json) {
      Emit(o, j);
    } else {
      std::cout << "loop " << o.loop << " order " << l.order() << "\n";
      std::cout << "moufang      " << (r.moufang.ok ? "yes" : "no") << " (" << j["moufang_mode"].get<std::string>()
                << ")\n";
      std::cout << "associative  " << (r.associative.ok ? "yes" : "no") << "\n";
      std::cout << "commutative  " << (r.commutative.ok ? "yes" : "no") << "\n";
      std::cout << "ip           " << (r.ip.ok ? "yes" : "no") << "\n";
      std::cout << "exponent     " << r.exponent << "\n";
      std::cout << "seed         " << o.seed << "\n";
    }
    return kExitOk;
  }

  j["property"] = o.property;
  bool ok = true;
  ojson witness;
  if (o.property == "identity44") {
    const std::uint64_t samples = o.samples ? o.samples : 1000;
    AssociatorIdentityResult r = CheckAssociatorIdentity(l, samples, o.seed);
    ok = r.holds;
    j["mode"] = "sampled";
    j["samples"] = r.samples;
    if (r.witness) {
      witness = ojson::array();
      for (Elt x : *r.witness) witness.push_back(l.name(x));
    }
  } else {
    PropertyCheck c;
    bool pair = false;
    if (o.property == "moufang") {
      PropertyOptions po;
      po.seed = o.seed;
      if (o.samples) po.samples = o.samples;
      PropertyReport r = CheckProperties(l, po);
      c = r.moufang;
      j["mode"] = r.moufang_exhaustive ? "exhaustive" : "sampled";
      if (!r.moufang_exhaustive) j["samples"] = r.moufang_samples;
    } else if (o.property == "associative") {
      c = CheckAssociative(l);
      j["mode"] = "exhaustive";
    } else if (o.property == "commutative") {
      c = CheckCommutative(l);
      pair = true;
      j["mode"] = "exhaustive";
    } else if (o.property == "ip") {
      c = CheckIP(l);
      pair = true;
      j["mode"] = "exhaustive";
    } else {
      throw CLI::ValidationError("--property", "unknown property '" + o.property + "'");
    }
    ok = c.ok;
    if (c.witness) witness = TripleJson(l, *c.witness, pair);
  }
  j["ok"] = ok;
  if (!witness.is_null()) j["witness"] = witness;
  j["seed"] = o.seed;
  if (o.json) {
    Emit(o, j);
  } else {
    std::cout << o.property << ": " << (ok ? "holds" : "violated");
    if (!witness.is_null()) std::cout << " witness " << witness.dump();
    std::cout << "\n";
  }
  return ok ? kExitOk : kExitViolated;
}

int RunSeries(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  ojson j;
  j["loop"] = o.loop;
  j["order"] = l.order();
  if (o.series == "upper" || o.series == "both")
    j["upper"] = SeriesJson(l, CentralSeries(l, SeriesReport::Kind::kUpperCentral));
  if (o.series == "lower" || o.series == "both")
    j["lower"] = SeriesJson(l, CentralSeries(l, SeriesReport::Kind::kLowerCentral));
  Emit(o, j);
  return kExitOk;
}

template <Field F>
ojson AlgebraReport(const Options& o, const FiniteLoop& l, const F& f) {
  CheckAlgebraBound(l, kAlgebraOrderBound);
  auto fq = std::make_shared<const LoopAlgebra<F>>(f, l);
  ojson j;
  j["loop"] = o.loop;
  j["field"] = f.spec().ToString();
  j["dim"] = fq->dim();
  Subspace<F> ideal(f, fq->dim());
  bool unit_in_ideal = false;
  try {
    ideal = AlternatorIdeal(*fq);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAlternatorIdealFull) throw;
    unit_in_ideal = true;
  }
  j["ideal_dim"] = unit_in_ideal ? ojson(nullptr) : ojson(ideal.dim());
  j["unit_in_ideal"] = unit_in_ideal;
  if (unit_in_ideal) return j;
  auto quot = std::make_shared<const QuotientAlgebra<F>>(fq, ideal);
  AlternativeLoopAlgebra<F> fqb{fq, ideal, quot};
  Subspace<F> omega = AugmentationIdeal(fqb, SubloopSet::Whole(l.order()));
  auto nil = AlgebraNilpotencyIndex(*quot, omega);
  j["nilpotency_index"] = nil ? ojson(*nil) : ojson(nullptr);
  const std::uint64_t samples = o.samples ? o.samples : 10'000;
  auto alt = AlternativeCheck(*quot, false, samples, o.seed);
  ojson a;
  a["mode"] = alt.exhaustive ? "exhaustive" : "sampled";
  a["samples"] = alt.samples;
  a["seed"] = alt.seed;
  a["ok"] = alt.ok;
  if (!alt.ok) a["witness"] = alt.witness;
  j["alternative"] = a;
  j["quotient_dim"] = quot->dim();
  j["omega_dim"] = omega.dim();
  j["unit_in_omega"] = omega.Contains(quot->RequireUnit());
  j["associative_sampled"] = !FindNonassociativeTriple(*quot, samples, o.seed).has_value();
  auto collision = FindCollision(fqb);
  j["canonical_map_injective"] = !collision.has_value();
  if (collision) j["collision"] = {l.name(collision->first), l.name(collision->second)};
  j["diagonal_alternator_generators"] = true;
  j["seed"] = o.seed;
  return j;
}

int RunAlgebra(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  ojson j = WithField(FieldSpec::Parse(o.field), [&](const auto& f) { return AlgebraReport(o, l, f); });
  Emit(o, j);
  return kExitOk;
}

ClassSOptions ClassOptions(const Options& o) {
  ClassSOptions c;
  c.seed = o.seed;
  if (o.samples) c.triple_samples = o.samples;
  return c;
}

int RunRadical(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  ojson j = WithField(FieldSpec::Parse(o.field), [&](const auto& f) {
    ojson r;
    r["loop"] = o.loop;
    r["field"] = f.spec().ToString();
    auto cls = InClassS(l, f, ClassOptions(o));
    r["in_class_S"] = cls.value;
    r["checks"] = ClassSChecksJson(cls.checks);
    r["group_type_radical"] = SubloopJson(l, cls.checks.group_type_radical);
    r["e_in_omega"] = !cls.e_notin_omega;
    r["wedderburn"] = WedderburnJson(l, MakeWedderburnReport(l, f, ClassOptions(o)));
    r["seed"] = o.seed;
    return r;
  });
  Emit(o, j);
  return kExitOk;
}

int RunEmbed(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  bool embeds = false;
  ojson j = WithField(FieldSpec::Parse(o.field), [&](const auto& f) {
    using FF = std::decay_t<decltype(f)>;
    auto v = Embeddability(l, f, o.loop, ClassOptions(o));
    embeds = v.outcome == EmbeddabilityVerdict<FF>::Outcome::kEmbeds;
    return VerdictJson(l, v);
  });
  Emit(o, j);
  return embeds ? kExitOk : kExitViolated;
}

int RunReport(const Options& o) {
  FiniteLoop l = ResolveLoop(o.loop);
  ojson j;
  j["loop"] = o.loop;
  j["order"] = l.order();
  PropertyOptions po;
  po.seed = o.seed;
  PropertyReport pr = CheckProperties(l, po);
  ojson props;
  props["moufang"] = pr.moufang.ok;
  props["associative"] = pr.associative.ok;
  props["commutative"] = pr.commutative.ok;
  props["ip"] = pr.ip.ok;
  props["exponent"] = pr.exponent;
  j["properties"] = props;
  j["simple"] = IsSimple(l).simple;
  j["upper_central"] = SeriesJson(l, CentralSeries(l, SeriesReport::Kind::kUpperCentral));
  WithField(FieldSpec::Parse(o.field), [&](const auto& f) {
    j["algebra"] = AlgebraReport(o, l, f);
    j["verdict"] = VerdictJson(l, Embeddability(l, f, o.loop, ClassOptions(o)));
    j["wedderburn"] = WedderburnJson(l, MakeWedderburnReport(l, f, ClassOptions(o)));
    return 0;
  });
  j["seed"] = o.seed;
  Emit(o, j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopforge: finite Moufang loops and alternative loop algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--samples", o.samples, "Sample count for sampled checks");
    sub->add_option("-o,--output", o.out, "Write output to a file");
    sub->add_flag("--json", o.json, "Compact JSON output");
  };
  auto add_loop = [&](CLI::App* sub) {
    sub->add_option("--loop", o.loop, "Cayley JSON file or builtin name")->required();
  };
  auto add_field = [&](CLI::App* sub) { sub->add_option("--field", o.field, "gf:p or q")->capture_default_str(); };

  auto* construct = app.add_subcommand("construct", "Build a fixture loop and write its Cayley table");
  construct->add_option("--kind", o.kind, "cyclic:n | s3 | chein:<group> | cml81 | paige:q, or a Cayley JSON file to re-serialize")->required();
  construct->add_option("-o,--output", o.out, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Property checks");
  add_loop(check);
  check->add_option("--property", o.property, "moufang | associative | commutative | ip | identity44")
      ->check(CLI::IsMember({"moufang", "associative", "commutative", "ip", "identity44"}));
  add_common(check);

  auto* series = app.add_subcommand("series", "Upper and lower central series");
  add_loop(series);
  series->add_option("--series", o.series, "upper | lower | both")->check(CLI::IsMember({"upper", "lower", "both"}));
  add_common(series);

  auto* algebra = app.add_subcommand("algebra", "Alternative loop algebra F[Q] report");
  add_loop(algebra);
  add_field(algebra);
  add_common(algebra);

  auto* radical = app.add_subcommand("radical", "Radical S(Q) and the Wedderburn-style report");
  add_loop(radical);
  add_field(radical);
  add_common(radical);

  auto* embed = app.add_subcommand("embed", "Embeddability verdict for Q -> U(F[Q])");
  add_loop(embed);
  add_field(embed);
  add_common(embed);

  auto* report = app.add_subcommand("report", "Everything above in one JSON document");
  add_loop(report);
  add_field(report);
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return RunConstruct(o);
    if (*check) return RunCheck(o);
    if (*series) return RunSeries(o);
    if (*algebra) return RunAlgebra(o);
    if (*radical) return RunRadical(o);
    if (*embed) return RunEmbed(o);
    if (*report) return RunReport(o);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
