// Command-line front end: every library capability as a subcommand with
// machine-readable output. Exit codes: 0 ok, 1 violation detected, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "stacky/census.hpp"
#include "stacky/curve.hpp"
#include "stacky/diophantine.hpp"
#include "stacky/format.hpp"
#include "stacky/primes.hpp"
#include "stacky/vojta.hpp"

using json = nlohmann::ordered_json;
using namespace stacky;

namespace {

int default_threads() {
  if (const char* env = std::getenv("STACKY_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text << "\n";
  }
}

std::string census_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "T,count,search_bound,exhaustive,ratio\n";
  for (const auto& r : rows) {
    out << r.T << "," << r.count << "," << r.search_bound << "," << (r.exhaustive ? "true" : "false")
        << "," << r.ratio << "\n";
  }
  return out.str();
}

json census_json(const std::vector<RatioRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"T", r.T},
                   {"count", r.count},
                   {"search_bound", r.search_bound},
                   {"exhaustive", r.exhaustive},
                   {"ratio", r.ratio}});
  }
  return arr;
}

struct Config {
  std::string format = "json";
  std::string out_path;
  int threads = default_threads();
};

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--threads", cfg.threads, "worker threads");
}

int run_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (uint64_t n = 1; n <= 2000 && ok; ++n) {
      for (int m : {2, 3, 5}) {
        mpz_class lhs = phi_m(n, m) * r_m(n, m);
        mpz_class rhs, base(static_cast<unsigned long>(rad_m(n, m)));
        mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), m);
        ok = ok && lhs == rhs;
      }
    }
    report("phi_m * r_m = rad_m^m", ok);
  }
  {
    StackyCurveP1 c = parse_curve("0:2,inf:2,-1:2");
    bool ok = anticanonical_height(c, make_point(3, 4)).value == 84;
    ok = ok && dual_product(c, anticanonical_bundle(c), make_point(3, 4)) == 21;
    report("height machine spot values", ok);
  }
  {
    bool ok = true;
    for (uint64_t x1 = 1; x1 <= 12 && ok; ++x1) {
      for (uint64_t x2 = 1; x2 <= 12 && ok; ++x2) {
        for (uint64_t x3 = 1; x3 * x1 * x2 <= 60 && ok; ++x3) {
          bool admissible = sqf(x1) == x1 && sqf(x2) == x2 && sqf(x3) == x3 &&
                            std::gcd(x1, x2) == 1 && std::gcd(x1, x3) == 1 && std::gcd(x2, x3) == 1;
          if (!admissible) continue;
          int f = f_S_indicator(x1, x2, x3);
          bool sol = legendre_solvable(TernaryDiagonalForm{(long long)x1, (long long)x2, -(long long)x3});
          ok = f == (sol ? 1 : 0);
        }
      }
    }
    report("f_S agrees with Legendre solubility", ok);
  }
  {
    LPInstance inst = lp_build({2, 3, 7}, mpq_class(1, 100));
    DualCheck dc = dual_feasible_check(inst);
    bool ok = dc.feasible && dc.tight && dc.dual_value_coefficient == mpq_class(1, 42) - mpq_class(1, 100);
    report("LP dual feasibility on (2,3,7)", ok);
  }
  {
    CensusRecord r = n2_count(100);
    report("n2 census sanity", r.exhaustive && r.count > 0);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact stacky-curve height machine on P^1/Q"};
  app.require_subcommand(1);
  Config cfg;

  // height
  auto* cmd_height = app.add_subcommand("height", "evaluate an exact height");
  std::string h_curve, h_point, h_bundle, h_delta;
  bool h_anti = false, h_canon = false;
  cmd_height->add_option("--curve", h_curve)->required();
  cmd_height->add_option("--point", h_point)->required();
  cmd_height->add_option("--bundle", h_bundle, "d;d_1,...,d_r");
  cmd_height->add_flag("--anticanonical", h_anti);
  cmd_height->add_flag("--canonical", h_canon);
  cmd_height->add_option("--perturbed-delta", h_delta, "rational delta");
  add_common(cmd_height, cfg);

  // census
  auto* cmd_census = app.add_subcommand("census", "bounded-height point counts");
  std::string c_kind, c_ladder, c_curve, c_bundle, c_model_e;
  uint64_t c_T = 0;
  long long c_B = 0;
  int c_m = 2, c_model_k = -1;
  cmd_census->add_option("kind", c_kind, "n2 | nm | integral222 | generic")->required();
  cmd_census->add_option("--T", c_T);
  cmd_census->add_option("--T-ladder", c_ladder, "e.g. 2^8..2^14 or 100,200,400");
  cmd_census->add_option("--m", c_m);
  cmd_census->add_option("--curve", c_curve);
  cmd_census->add_option("--bundle", c_bundle);
  cmd_census->add_option("--B", c_B, "search box for the generic census");
  cmd_census->add_option("--model-e", c_model_e, "ratio model exponent (rational)");
  cmd_census->add_option("--model-k", c_model_k, "ratio model log power");
  add_common(cmd_census, cfg);

  // integral
  auto* cmd_integral = app.add_subcommand("integral", "integral-point test at a point");
  std::string i_curve, i_point;
  cmd_integral->add_option("--curve", i_curve)->required();
  cmd_integral->add_option("--point", i_point)->required();
  add_common(cmd_integral, cfg);

  // hasse
  auto* cmd_hasse = app.add_subcommand("hasse", "Hasse test for integral points on a (2,2,2) curve");
  std::string ha_curve;
  long long ha_bound = 100'000;
  cmd_hasse->add_option("--curve", ha_curve)->required();
  cmd_hasse->add_option("--search-bound", ha_bound, "box radius certifying absence when censored");
  add_common(cmd_hasse, cfg);

  // abc
  auto* cmd_abc = app.add_subcommand("abc", "abc triple scan");
  uint64_t a_N = 0, a_direct = 100'000;
  double a_minq = 1.0;
  size_t a_top = 25;
  cmd_abc->add_option("--N", a_N)->required();
  cmd_abc->add_option("--min-quality", a_minq);
  cmd_abc->add_option("--top", a_top, "rows to print (0 = all)");
  cmd_abc->add_option("--direct-limit", a_direct, "full pair loop for c below this");
  add_common(cmd_abc, cfg);

  // lp
  auto* cmd_lp = app.add_subcommand("lp", "linear-program dual feasibility");
  std::string l_m, l_eps = "0";
  cmd_lp->add_option("--m", l_m, "multiplicities, e.g. 2,3,7")->required();
  cmd_lp->add_option("--eps", l_eps, "rational epsilon");
  add_common(cmd_lp, cfg);

  // northcott
  auto* cmd_north = app.add_subcommand("northcott", "perturbed-height Northcott probe");
  std::string n_curve, n_deltas, n_Bs;
  uint64_t n_C = 10;
  cmd_north->add_option("--curve", n_curve)->required();
  cmd_north->add_option("--delta-ladder", n_deltas, "rationals, e.g. 0,1/2,1")->required();
  cmd_north->add_option("--C", n_C, "height cutoff");
  cmd_north->add_option("--B-ladder", n_Bs, "search boxes")->required();
  add_common(cmd_north, cfg);

  auto* cmd_selftest = app.add_subcommand("selftest", "quick invariant sweep");
  (void)cmd_selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_height->parsed()) {
      StackyCurveP1 curve = parse_curve(h_curve);
      ProjPoint t = parse_point(h_point);
      ExactHeight h;
      std::string kind;
      if (h_anti) {
        h = anticanonical_height(curve, t);
        kind = "anticanonical";
      } else if (h_canon) {
        h = canonical_height(curve, t);
        kind = "canonical";
      } else if (!h_delta.empty()) {
        h = perturbed_height(curve, t, parse_rational(h_delta));
        kind = "perturbed";
      } else if (!h_bundle.empty()) {
        h = height(curve, parse_bundle(h_bundle, curve), t);
        kind = "bundle";
      } else {
        throw std::invalid_argument("pick --bundle, --anticanonical, --canonical or --perturbed-delta");
      }
      json out = {{"curve", curve_str(curve)}, {"point", point_str(t)},     {"kind", kind},
                  {"L", h.lcm_power},          {"height_pow_L", rational_str(h.value)},
                  {"approx", h.approx()}};
      emit(cfg.format == "csv" ? "L,height_pow_L,approx\n" + std::to_string(h.lcm_power) + "," +
                                     rational_str(h.value) + "," + std::to_string(h.approx())
                               : out.dump(2),
           cfg.out_path);
      return 0;
    }

    if (cmd_census->parsed()) {
      std::vector<uint64_t> ladder;
      if (!c_ladder.empty()) ladder = parse_ladder(c_ladder);
      if (c_T > 0) ladder.push_back(c_T);
      std::vector<CensusRecord> recs;
      double model_e;
      int model_k;
      if (c_kind == "n2") {
        for (uint64_t T : ladder) recs.push_back(n2_count(T, cfg.threads));
        model_e = 0.5;
        model_k = 3;
      } else if (c_kind == "nm") {
        for (uint64_t T : ladder) recs.push_back(nm_count(T, c_m, cfg.threads));
        model_e = 1.0 / c_m;
        model_k = 0;
      } else if (c_kind == "integral222") {
        for (uint64_t T : ladder) recs.push_back(integral_census_222(T));
        model_e = 0.5;
        model_k = 0;
        // cross-check the counts against the primitive pythagorean sweep
        bool crosscheck = true;
        for (const auto& r : recs) {
          std::set<std::pair<long long, long long>> pts;
          long long lim = 2 * static_cast<long long>(isqrt_u64(r.T)) + 2;
          for (long long u = 2; u * u <= lim; ++u) {
            for (long long v = 1; v < u; ++v) {
              if (std::gcd(u, v) != 1 || (u - v) % 2 == 0) continue;
              long long o = u * u - v * v, e = 2 * u * v, h = u * u + v * v;
              auto add = [&](long long x, long long y) {
                if (std::max(std::llabs(x), std::llabs(y)) <= static_cast<long long>(r.T)) {
                  ProjPoint t = make_point(x, y);
                  pts.insert({t.x, t.y});
                }
              };
              add(o * o, e * e);
              add(e * e, o * o);
              add(-o * o, h * h);
              add(-e * e, h * h);
              add(-h * h, o * o);
              add(-h * h, e * e);
            }
          }
          crosscheck = crosscheck && pts.size() == r.count;
        }
        if (!crosscheck) throw std::logic_error("integral222 parametrization cross-check failed");
        std::cerr << "parametrization cross-check: ok\n";
      } else if (c_kind == "generic") {
        StackyCurveP1 curve = parse_curve(c_curve);
        LineBundle bundle = c_bundle.empty() ? anticanonical_bundle(curve) : parse_bundle(c_bundle, curve);
        if (c_B <= 0) throw std::invalid_argument("generic census needs --B");
        for (uint64_t T : ladder) {
          recs.push_back(generic_bounded_height_census(curve, bundle, T, c_B, cfg.threads));
        }
        model_e = 0.5;
        model_k = 0;
      } else {
        throw std::invalid_argument("unknown census kind '" + c_kind + "'");
      }
      if (!c_model_e.empty()) model_e = parse_rational(c_model_e).get_d();
      if (c_model_k >= 0) model_k = c_model_k;
      std::vector<RatioRow> rows = ratio_table(recs, model_e, model_k);
      if (cfg.format == "csv") {
        emit(census_csv(rows), cfg.out_path);
      } else {
        json out = {{"kind", c_kind},
                    {"height_normalization", "power_m_classical_exponent_1"},
                    {"model_exponent", model_e},
                    {"model_log_power", model_k},
                    {"rows", census_json(rows)}};
        emit(out.dump(2), cfg.out_path);
      }
      return 0;
    }

    if (cmd_integral->parsed()) {
      StackyCurveP1 curve = parse_curve(i_curve);
      ProjPoint t = parse_point(i_point);
      json lambdas = json::array();
      for (const auto& sp : curve.points()) lambdas.push_back(lambda(sp, t));
      json out = {{"curve", curve_str(curve)},
                  {"point", point_str(t)},
                  {"lambdas", lambdas},
                  {"integral", is_integral_point(curve, t)}};
      emit(out.dump(2), cfg.out_path);
      return 0;
    }

    if (cmd_hasse->parsed()) {
      StackyCurveP1 curve = parse_curve(ha_curve);
      HasseOutcome res = hasse_integral_check(curve, ha_bound);
      json out;
      out["form"] = {res.form.a, res.form.b, res.form.c};
      out["soluble"] = res.soluble;
      out["witness"] = nullptr;
      out["integral_point"] = nullptr;
      if (res.soluble && res.witness)
        out["witness"] = {(*res.witness)[0], (*res.witness)[1], (*res.witness)[2]};
      if (res.integral_point) out["integral_point"] = {res.integral_point->x, res.integral_point->y};
      emit(out.dump(2), cfg.out_path);
      return 0;
    }

    if (cmd_abc->parsed()) {
      AbcScanOptions opt;
      opt.direct_limit = a_direct;
      opt.min_quality = a_minq;
      opt.threads = cfg.threads;
      std::vector<AbcTriple> triples = abc_scan(a_N, opt);
      if (a_top > 0 && triples.size() > a_top) triples.resize(a_top);
      if (cfg.format == "csv") {
        std::ostringstream out;
        out << "a,b,c,rad,quality\n" << std::fixed << std::setprecision(4);
        for (const auto& t : triples) {
          out << t.a << "," << t.b << "," << t.c << "," << t.rad << "," << t.quality << "\n";
        }
        emit(out.str(), cfg.out_path);
      } else {
        json arr = json::array();
        for (const auto& t : triples) {
          arr.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}, {"rad", t.rad}, {"quality", t.quality}});
        }
        emit(json{{"N", a_N}, {"triples", arr}}.dump(2), cfg.out_path);
      }
      return 0;
    }

    if (cmd_lp->parsed()) {
      std::vector<int> m;
      for (const auto& q : parse_rational_list(l_m)) {
        if (q.get_den() != 1 || q < 2) throw std::invalid_argument("--m needs integers >= 2");
        m.push_back(static_cast<int>(mpz_get_si(q.get_num().get_mpz_t())));
      }
      LPInstance inst = lp_build(m, parse_rational(l_eps));
      DualCheck dc = dual_feasible_check(inst);
      mpq_class chi = 2;
      for (int mi : m) chi -= mpq_class(mi - 1, mi);
      chi.canonicalize();
      json out = {{"m", m},
                  {"eps", rational_str(inst.epsilon)},
                  {"feasible", dc.feasible},
                  {"tight", dc.tight},
                  {"dual_coefficient", rational_str(dc.dual_value_coefficient)},
                  {"chi", rational_str(chi)}};
      emit(out.dump(2), cfg.out_path);
      return 0;
    }

    if (cmd_north->parsed()) {
      StackyCurveP1 curve = parse_curve(n_curve);
      std::vector<mpq_class> deltas = parse_rational_list(n_deltas);
      std::vector<long long> Bs;
      for (uint64_t b : parse_ladder(n_Bs)) Bs.push_back(static_cast<long long>(b));
      std::vector<NorthcottRow> rows = northcott_gamma_probe(curve, deltas, n_C, Bs);
      if (cfg.format == "csv") {
        std::ostringstream out;
        out << "delta,B,count,exhaustive\n";
        for (const auto& r : rows) {
          out << rational_str(r.delta) << "," << r.B << "," << r.count << ","
              << (r.exhaustive ? "true" : "false") << "\n";
        }
        emit(out.str(), cfg.out_path);
      } else {
        json arr = json::array();
        for (const auto& r : rows) {
          arr.push_back({{"delta", rational_str(r.delta)},
                         {"B", r.B},
                         {"count", r.count},
                         {"exhaustive", r.exhaustive}});
        }
        emit(json{{"curve", curve_str(curve)}, {"C", n_C}, {"rows", arr}}.dump(2), cfg.out_path);
      }
      return 0;
    }

    if (cmd_selftest->parsed()) {
      return run_selftest();
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
