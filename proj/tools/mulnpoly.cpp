// mulnpoly: generate, specialize, evaluate and verify multiplication-by-n
// triples on Weierstrass curves.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mulnpoly/cache.hpp"
#include "mulnpoly/curves.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/generic_fast.hpp"
#include "mulnpoly/moduli.hpp"
#include "mulnpoly/projmul.hpp"
#include "mulnpoly/verify.hpp"

namespace {

using namespace mulnpoly;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string ring;
  std::vector<std::string> coeffs;
  std::string out;
  std::string format;
  std::uint64_t seed = 42;
};

void emit(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open " + c.out + " for writing");
  f << body;
}

std::string format_or(const Common& c, const char* fallback) {
  std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "text") throw UsageError("--format must be json or text");
  return f;
}

bool has_curve(const Common& c) { return !c.ring.empty() || !c.coeffs.empty(); }

WeierstrassCurve curve_of(const Common& c) {
  if (c.ring.empty() || c.coeffs.empty()) throw UsageError("--ring and --coeffs are both required");
  return WeierstrassCurve::parse(RingDescriptor::parse(c.ring), c.coeffs);
}

template <class P>
std::string triple_text(const P& alpha, const P& beta, const P& gamma) {
  return "alpha = " + to_pretty(alpha) + "\nbeta = " + to_pretty(beta) + "\ngamma = " + to_pretty(gamma) + "\n";
}

// gen ----------------------------------------------------------------------

struct GenOptions {
  std::optional<long> n;
  bool generic = false;
  bool no_cache = false;
  std::string cache_dir;
};

int run_gen(const Common& c, const GenOptions& o) {
  if (!o.n) throw UsageError("gen needs n");
  std::string fmt = format_or(c, "json");
  if (o.generic == has_curve(c)) throw UsageError("gen needs exactly one of --generic or --ring/--coeffs");
  if (o.generic) {
    MulTriple t;
    if (o.no_cache) {
      t = build_triple(*o.n);
    } else {
      TripleCache cache(o.cache_dir.empty() ? TripleCache::default_dir() : std::filesystem::path(o.cache_dir));
      t = cache.get_or_build(*o.n);
    }
    emit(c, fmt == "json" ? to_json(t).dump() + "\n" : triple_text(t.alpha, t.beta, t.gamma));
    return kExitOk;
  }
  WeierstrassCurve curve = curve_of(c);
  SpecializedTriple t = build_specialized_triple(*o.n, curve.a());
  emit(c, fmt == "json" ? to_json(t).dump() + "\n" : triple_text(t.alpha, t.beta, t.gamma));
  return kExitOk;
}

// psi ----------------------------------------------------------------------

struct PsiOptions {
  std::optional<long> n;
  std::string which = "psi";
  std::string form = "yrep";
};

int run_psi(const Common& c, const PsiOptions& o) {
  if (!o.n) throw UsageError("psi needs n");
  std::string fmt = format_or(c, "json");
  if (o.form != "yrep" && o.form != "xrep") throw UsageError("--form must be yrep or xrep");
  GenericLadder ladder = make_generic_ladder();
  YRep<IntegerPolyCoeffs> value = [&] {
    if (o.which == "psi") return ladder.psi(*o.n);
    if (o.which == "phi") return ladder.phi(*o.n);
    if (o.which == "omega") return ladder.omega(*o.n);
    throw UsageError("--which must be psi, phi or omega");
  }();
  std::vector<MPoly> parts;
  if (o.form == "yrep") {
    for (auto& p : yrep_parts(value)) parts.push_back(p);
  } else {
    XRep<IntegerPolyCoeffs> x = [&] {
      try {
        FastGenericLadder fast;
        if (o.which == "psi") return FastGenericLadder::to_xrep(fast.psi(*o.n));
        if (o.which == "phi") return FastGenericLadder::to_xrep(fast.phi(*o.n));
        return FastGenericLadder::to_xrep(fast.omega(*o.n));
      } catch (const std::overflow_error&) {
        return ladder.curve_ring().to_xrep(value);
      }
    }();
    for (auto& p : xrep_parts(x)) parts.push_back(p);
  }

  Json j{{"form", o.form}};
  std::string text = o.which + "_" + std::to_string(*o.n) + " (" + o.form + ")\n";
  if (has_curve(c)) {
    WeierstrassCurve curve = curve_of(c);
    auto bind = coefficient_bindings(curve.a());
    VarList target{o.form == "yrep" ? "X" : "Y"};
    Json js = Json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      RingPoly r = poly_specialize(parts[i], bind, target, curve.ring());
      js.push_back(to_json(r));
      text += "part " + std::to_string(i) + " = " + to_pretty(r) + "\n";
    }
    j["ring"] = curve.ring().to_string();
    j["parts"] = std::move(js);
  } else {
    Json js = Json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      js.push_back(to_json(parts[i]));
      text += "part " + std::to_string(i) + " = " + to_pretty(parts[i]) + "\n";
    }
    j["parts"] = std::move(js);
  }
  emit(c, fmt == "json" ? j.dump() + "\n" : text);
  return kExitOk;
}

// apply --------------------------------------------------------------------

struct ApplyOptions {
  std::vector<std::string> point;
  std::optional<long> n;
};

int run_apply(const Common& c, const ApplyOptions& o) {
  if (!o.n) throw UsageError("apply needs --n");
  std::string fmt = format_or(c, "text");
  WeierstrassCurve curve = curve_of(c);
  ProjPoint p = parse_point(curve.ring(), o.point);
  if (!curve_contains(curve, p))
    throw NotOnCurve("point " + to_string(p) + " is not on the curve (W = " + curve.w(p.x, p.y, p.z).to_string() + ")");
  if (!is_smooth_point(curve, p)) {
    auto g = curve.gradient(p.x, p.y, p.z);
    throw SingularPoint("partials at " + to_string(p) + " are (" + g[0].to_string() + ", " + g[1].to_string() + ", " +
                        g[2].to_string() + "), which do not generate the unit ideal");
  }
  ProjPoint q = normalize(mul_point(curve, p, *o.n));
  if (fmt == "text") {
    emit(c, to_string(q) + "\n");
  } else {
    Json j{{"ring", curve.ring().to_string()},
           {"n", *o.n},
           {"point", Json::array({p.x.to_string(), p.y.to_string(), p.z.to_string()})},
           {"result", Json::array({q.x.to_string(), q.y.to_string(), q.z.to_string()})}};
    emit(c, j.dump() + "\n");
  }
  return kExitOk;
}

// tate ---------------------------------------------------------------------

int run_tate(const Common& c, const std::vector<std::string>& point) {
  std::string fmt = format_or(c, "json");
  WeierstrassCurve curve = curve_of(c);
  ProjPoint p = parse_point(curve.ring(), point);
  TateForm tf = tate_normal_form(curve, p);
  if (fmt == "text") {
    std::string out = "s = " + tf.s.to_string() + "\nt = " + tf.t.to_string() + "\n";
    out += "change (u, r, s, t) = (" + tf.change.u.to_string() + ", " + tf.change.r.to_string() + ", " +
           tf.change.s.to_string() + ", " + tf.change.t.to_string() + ")\n";
    emit(c, out);
  } else {
    Json j{{"ring", curve.ring().to_string()},
           {"s", tf.s.to_string()},
           {"t", tf.t.to_string()},
           {"change", Json{{"u", tf.change.u.to_string()},
                           {"r", tf.change.r.to_string()},
                           {"s", tf.change.s.to_string()},
                           {"t", tf.change.t.to_string()}}},
           {"curve", to_json(tf.curve)}};
    emit(c, j.dump() + "\n");
  }
  return kExitOk;
}

// y1 -----------------------------------------------------------------------

struct Y1Options {
  std::optional<long> n;
  std::optional<std::string> modulus;
};

int run_y1(const Common& c, const Y1Options& o) {
  if (!o.n) throw UsageError("y1 needs --n");
  std::string fmt = format_or(c, "json");
  Y1Equation y = emit_y1(*o.n);
  std::optional<Integer> m;
  if (o.modulus) {
    try {
      m = Integer(*o.modulus);
    } catch (const std::invalid_argument&) {
      throw UsageError("--modulus must be an integer");
    }
    if (*m < 2) throw UsageError("--modulus must be at least 2");
  }
  if (fmt == "json") {
    Json j = to_json(y);
    if (m) {
      j["modulus"] = m->get_str();
      j["f_mod"] = to_json(reduce_mod(y.f, *m));
      j["delta_mod"] = to_json(reduce_mod(y.delta, *m));
    }
    emit(c, j.dump() + "\n");
  } else {
    std::string out = to_text(y);
    if (m) {
      out += "f mod " + m->get_str() + " = " + to_pretty(reduce_mod(y.f, *m)) + "\n";
      out += "delta mod " + m->get_str() + " = " + to_pretty(reduce_mod(y.delta, *m)) + "\n";
    }
    emit(c, out);
  }
  return kExitOk;
}

// verify -------------------------------------------------------------------

struct VerifyOptions {
  long n_max = 6;
  std::vector<std::uint64_t> primes{5, 7, 11};
  int curves = 10;
  std::size_t sample = 200;
  std::uint64_t enumerate_below = 100;
};

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int run_verify(const Common& c, const VerifyOptions& o) {
  if (o.curves < 0) throw UsageError("--curves must be non-negative");
  for (auto p : o.primes) {
    if (!is_prime(p) || p == 2) throw UsageError("verification primes must be odd primes, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 32)) throw UsageError("verification primes must be below 2^32");
  }
  std::ostringstream out;
  Json header{{"seed", c.seed}, {"n_max", o.n_max}, {"primes", o.primes}, {"curves", o.curves}};
  out << header.dump() << '\n';
  std::mt19937_64 rng(c.seed);
  CheckReport total("total");
  for (auto p : o.primes) {
    Fp f(p);
    CheckReport oracle("oracle_equivalence", p), torsion("torsion_criterion", p), coprime("phi_psi_coprime", p);
    if (o.n_max >= 1) {
      for (const auto& a : random_smooth_curves(p, o.curves, rng)) {
        auto pts = fp_points(f, a);
        if (p > o.enumerate_below) pts = sample_points(pts, o.sample, rng);
        oracle.merge(check_oracle_equivalence(p, a, pts, o.n_max));
        torsion.merge(check_torsion_criterion(p, a, pts, o.n_max));
        coprime.merge(check_coprimality(p, a, pts, o.n_max));
      }
    }
    for (const auto* r : {&oracle, &torsion, &coprime}) {
      out << r->to_json().dump() << '\n';
      total.merge(*r);
    }
  }
  Json summary{{"summary", true}, {"checks", total.checks}, {"passed", total.passed}, {"ok", total.ok()}};
  if (total.checks == 0) summary["vacuous"] = true;
  if (total.counterexample) summary["first_counterexample"] = *total.counterexample;
  out << summary.dump() << '\n';
  emit(c, out.str());
  return total.ok() ? kExitOk : kExitFailure;
}

void add_common(CLI::App* sub, Common& c, bool curve) {
  if (curve) {
    sub->add_option("--ring", c.ring, "ring descriptor: zz, qq, zmod:N, poly:<base>:<vars>");
    sub->add_option("--coeffs", c.coeffs, "a1,a2,a3,a4,a6")->delimiter(',')->expected(5);
  }
  sub->add_option("--out", c.out, "write to this file instead of stdout");
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--seed", c.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplication-by-n polynomials on Weierstrass curves"};
  app.require_subcommand(1);

  Common common;
  GenOptions gen;
  PsiOptions psi;
  ApplyOptions apply;
  std::vector<std::string> tate_point;
  Y1Options y1;
  VerifyOptions verify;

  auto* gen_cmd = app.add_subcommand("gen", "build the triple (alpha_n, beta_n, gamma_n)");
  gen_cmd->add_option("N", gen.n, "multiplier");
  gen_cmd->add_option("--n", gen.n, "multiplier");
  gen_cmd->add_flag("--generic", gen.generic, "over Z[a1, a2, a3, a4, a6]");
  gen_cmd->add_flag("--no-cache", gen.no_cache, "skip the on-disk cache");
  gen_cmd->add_option("--cache-dir", gen.cache_dir, "cache directory (default $MULNPOLY_CACHE)");
  add_common(gen_cmd, common, true);

  auto* psi_cmd = app.add_subcommand("psi", "division polynomial Psi_n, Phi_n or Omega_n");
  psi_cmd->add_option("N", psi.n, "index");
  psi_cmd->add_option("--n", psi.n, "index");
  psi_cmd->add_option("--which", psi.which, "psi, phi or omega")->check(CLI::IsMember({"psi", "phi", "omega"}));
  psi_cmd->add_option("--form", psi.form, "yrep or xrep")->check(CLI::IsMember({"yrep", "xrep"}));
  add_common(psi_cmd, common, true);

  auto* apply_cmd = app.add_subcommand("apply", "evaluate nP");
  apply_cmd->add_option("--point", apply.point, "x,y,z")->delimiter(',')->expected(3)->required();
  apply_cmd->add_option("--n", apply.n, "multiplier")->required();
  add_common(apply_cmd, common, true);

  auto* tate_cmd = app.add_subcommand("tate", "Tate normal form of a curve with a marked point");
  tate_cmd->add_option("--point", tate_point, "x,y,z")->delimiter(',')->expected(3)->required();
  add_common(tate_cmd, common, true);

  auto* y1_cmd = app.add_subcommand("y1", "defining equation of Y1(n)");
  y1_cmd->add_option("N", y1.n, "level");
  y1_cmd->add_option("--n", y1.n, "level");
  y1_cmd->add_option("--modulus", y1.modulus, "also reduce f and delta modulo this integer");
  add_common(y1_cmd, common, false);

  auto* verify_cmd = app.add_subcommand("verify", "seeded checks against the chord-tangent group law");
  verify_cmd->add_option("--n-max", verify.n_max, "check |n| <= n_max");
  verify_cmd->add_option("--primes", verify.primes, "odd primes")->delimiter(',');
  verify_cmd->add_option("--curves", verify.curves, "random smooth curves per prime");
  verify_cmd->add_option("--sample", verify.sample, "points per curve above --enumerate-below");
  verify_cmd->add_option("--enumerate-below", verify.enumerate_below, "use every point for primes up to this");
  add_common(verify_cmd, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(common, gen);
    if (*psi_cmd) return run_psi(common, psi);
    if (*apply_cmd) return run_apply(common, apply);
    if (*tate_cmd) return run_tate(common, tate_point);
    if (*y1_cmd) return run_y1(common, y1);
    if (*verify_cmd) return run_verify(common, verify);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotOnCurve& e) {
    std::cerr << "not on curve: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularPoint& e) {
    std::cerr << "singular point: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OrderObstruction& e) {
    std::cerr << "order obstruction: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonField& e) {
    std::cerr << "not a field: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotAUnit& e) {
    std::cerr << "not a unit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
