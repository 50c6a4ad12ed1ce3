#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/arith.hpp"
#include "heckelab/cm.hpp"
#include "heckelab/error.hpp"
#include "heckelab/hecke.hpp"
#include "heckelab/heights.hpp"
#include "heckelab/lattices.hpp"
#include "heckelab/numerics.hpp"
#include "heckelab/scan.hpp"
#include "heckelab/tate.hpp"

namespace heckelab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  unsigned precision_bits = kDefaultBits;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;
};

// One table per run: a metadata line, a header, rows, and an optional summary.
class RecordWriter {
 public:
  RecordWriter(std::ostream& os, const RunConfig& cfg, const std::string& command, std::vector<std::string> columns)
      : os_(os), jsonl_(cfg.format == "jsonl"), columns_(std::move(columns)) {
    if (jsonl_) {
      Json meta;
      meta["command"] = command;
      meta["seed"] = cfg.seed;
      meta["precision_bits"] = cfg.precision_bits;
      meta["columns"] = columns_;
      os_ << Json{{"meta", meta}}.dump() << '\n';
    } else {
      os_ << "# heckelab " << command << " seed=" << cfg.seed << " precision_bits=" << cfg.precision_bits << '\n';
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    }
  }

  void row(const std::vector<Json>& values) {
    if (jsonl_) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = values.at(i);
      os_ << obj.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << csv_field(values[i]);
    os_ << '\n';
  }

  void summary(const Json& fields) {
    if (jsonl_) {
      os_ << Json{{"summary", fields}}.dump() << '\n';
      return;
    }
    for (const auto& [k, v] : fields.items()) os_ << "# summary " << k << '=' << csv_field(v) << '\n';
  }

 private:
  static std::string csv_field(const Json& v) {
    if (v.is_null()) return "";
    if (!v.is_string()) return v.dump();
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::ostream& os_;
  bool jsonl_;
  std::vector<std::string> columns_;
};

int digits_for(unsigned bits) { return std::max(17, static_cast<int>(std::floor(bits * 0.30103)) - 2); }

Json big(const BigFloat& x, unsigned bits) { return x.to_string(digits_for(bits)); }

std::int64_t parse_integer(const std::string& text, const std::string& what) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw CLI::ValidationError(what, "not an integer: '" + text + "'");
  return v;
}

// "a+bi", "a-bi", "bi", "i", or a real "a".
BigComplex parse_complex(std::string text, unsigned bits) {
  std::erase_if(text, [](char c) { return c == ' '; });
  if (text.empty()) throw CLI::ValidationError("complex", "empty value");
  std::string re = "0";
  std::string im = "0";
  if (text.back() == 'i') {
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    std::string imag = split == std::string::npos ? body : body.substr(split);
    if (split != std::string::npos) re = body.substr(0, split);
    if (imag.empty() || imag == "+") imag = "1";
    if (imag == "-") imag = "-1";
    if (imag[0] == '+') imag.erase(0, 1);
    im = imag;
  } else {
    re = text;
  }
  try {
    return {BigFloat(re, bits), BigFloat(im, bits)};
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("complex", "cannot parse '" + text + "'");
  }
}

UpperHalfPoint parse_tau(const std::string& text, unsigned bits) {
  BigComplex z = parse_complex(text, bits);
  if (z.im.sign() <= 0) throw CLI::ValidationError("tau", "Im tau must be positive, got '" + text + "'");
  return UpperHalfPoint(std::move(z.re), std::move(z.im));
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("range", "expected A..B, got '" + text + "'");
  return {parse_integer(text.substr(0, dots), "range"), parse_integer(text.substr(dots + 2), "range")};
}

std::vector<ExactRational> parse_rational_list(const std::string& text) {
  std::vector<ExactRational> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(ExactRational::parse(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Prints PASS/FAIL per named check; exit 0 iff all pass.
int run_self_test(std::ostream& out, const std::vector<std::pair<std::string, std::function<bool()>>>& checks) {
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    std::string note;
    try {
      ok = check();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "PASS " : "FAIL ") << name << note << '\n';
    failed += !ok;
  }
  out << (failed == 0 ? "self-test passed" : "self-test failed") << '\n';
  return failed == 0 ? 0 : 1;
}

std::string class_name(const TraceRecord& r) {
  return r.kind == ReductionType::Supersingular ? "supersingular" : "ordinary";
}

Json opt_int(bool present, std::int64_t v) { return present ? Json(v) : Json(nullptr); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"heckelab: Hecke orbits, heights, lattices, CM points and isogeny scans"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--precision-bits", cfg.precision_bits, "Working precision in bits (>= 53)")
      ->check(CLI::Range(53U, 1U << 22));
  app.add_option("--seed", cfg.seed, "Seed for randomized experiments");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");

  std::ofstream file;
  std::ostream* os = &out;
  bool self_test = false;
  std::function<int()> action;
  auto open_output = [&]() -> std::ostream& {
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open '" + cfg.out_path + "' for writing");
      os = &file;
    }
    return *os;
  };
  auto prec = [&] { return Precision(cfg.precision_bits); };

  // orbit
  std::string tau_text;
  std::int64_t orbit_n = 1;
  auto* orbit = app.add_subcommand("orbit", "Hecke orbit T_N*tau.\nCSV columns: alpha,beta,delta,tau_re,tau_im,j_re,j_im");
  orbit->add_flag("--self-test", self_test, "Run the built-in example table");
  orbit->add_option("tau", tau_text, "Base point, e.g. 2i or 0.3+1.7i");
  orbit->add_option("N", orbit_n, "Degree")->check(CLI::PositiveNumber);
  orbit->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"orbit(2i, 2) has 3 points", [] { return hecke_orbit(UpperHalfPoint(0.0, 2.0), 2).points.size() == 3; }},
            {"orbit(2i, 1) has 1 point", [] { return hecke_orbit(UpperHalfPoint(0.0, 2.0), 1).points.size() == 1; }},
            {"j(i) = 1728", [] { return abs(eval_j(UpperHalfPoint(0.0, 1.0)) - 1728) < 1e-20; }},
        });
      if (tau_text.empty()) throw CLI::ValidationError("tau", "required");
      const unsigned bits = cfg.precision_bits;
      const HeckeOrbit o = hecke_orbit(parse_tau(tau_text, bits), orbit_n, prec());
      RecordWriter w(open_output(), cfg, "orbit", {"alpha", "beta", "delta", "tau_re", "tau_im", "j_re", "j_im"});
      for (const OrbitPoint& p : o.points)
        w.row({p.coset.alpha, p.coset.beta, p.coset.delta, big(p.tau.re(), bits), big(p.tau.im(), bits),
               big(p.j.re, bits), big(p.j.im, bits)});
      return 0;
    };
  });

  // height
  std::string j_base_text;
  std::string range_text;
  std::optional<std::int64_t> height_z;
  bool primes_only = false;
  auto* height = app.add_subcommand(
      "height", "Archimedean heights of T_N*y for j(y) = j_base.\n"
                "CSV columns: N,e_N,value,normalized[,residual,phi_bits] (normalized = H_N/(6 e_N log N))");
  height->add_flag("--self-test", self_test, "Run the built-in example table");
  height->add_option("j_base", j_base_text, "Integer j-invariant of the base point");
  height->add_option("range", range_text, "Degrees as A..B");
  height->add_flag("--primes", primes_only, "Only prime N");
  height->add_option("--z", height_z, "Also report the global identity residual against this integer");
  height->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"e_N(101) = 102", [] { return e_N(101) == 102; }},
            {"H_101 for j = 1 is positive", [] {
               const UpperHalfPoint y = tau_from_j(BigComplex(1.0, 0.0, 160), Precision(160));
               return cusp_height(y, 101).value.sign() > 0;
             }},
            {"phi_value symmetric at N = 2", [] { return phi_value(1, 2, 2).value == phi_value(2, 1, 2).value; }},
        });
      if (j_base_text.empty() || range_text.empty()) throw CLI::ValidationError("height", "j_base and range required");
      const std::int64_t j_base = parse_integer(j_base_text, "j_base");
      const auto [lo, hi] = parse_range(range_text);
      const unsigned bits = cfg.precision_bits;
      std::vector<std::string> cols{"N", "e_N", "value", "normalized"};
      if (height_z) cols.insert(cols.end(), {"residual", "phi_bits"});
      RecordWriter w(open_output(), cfg, "height", cols);
      if (lo > hi) return 0;
      const UpperHalfPoint y = tau_from_j(BigComplex(BigFloat(static_cast<long>(j_base), bits + 32), BigFloat(bits + 32)),
                                          Precision(bits + 32));
      for (std::int64_t N = std::max<std::int64_t>(lo, 2); N <= hi; ++N) {
        if (primes_only && !is_prime(N)) continue;
        const HeightSeriesPoint h = cusp_height(y, N, prec());
        std::vector<Json> row{h.N, h.e_N, big(h.value, bits), big(h.normalized, bits)};
        if (height_z) {
          const IdentityResidual r = global_identity_residual(j_base, *height_z, N, prec());
          row.insert(row.end(), {r.residual, r.phi_bits});
        }
        w.row(row);
      }
      return 0;
    };
  });

  // scan
  std::string left_text;
  std::string right_text;
  std::int64_t p_min = 5;
  std::int64_t p_max = 5;
  bool all_primes = false;
  auto* scan = app.add_subcommand(
      "scan", "Primes where two curves over Q become geometrically isogenous.\n"
              "Curves are 'a4,a6' with rational parts n or n/d (y^2 = x^3 + a4 x + a6).\n"
              "CSV columns: p,k,left_a_p,left_class,left_d_K,left_f,right_a_p,right_class,right_d_K,right_f");
  scan->add_flag("--self-test", self_test, "Run the built-in example table");
  scan->add_option("left", left_text, "First curve a4,a6");
  scan->add_option("right", right_text, "Second curve a4,a6");
  scan->add_option("p_min", p_min, "Smallest prime (>= 5)");
  scan->add_option("p_max", p_max, "Largest prime");
  scan->add_flag("--all-primes", all_primes, "Emit a row for every good prime, k empty when no hit");
  scan->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"a_5(x^3 - x) = -2", [] { return count_points(CurveQ(-1, 0), 5).a_p == -2; }},
            {"a_11(x^3 - x) = 0", [] { return count_points(CurveQ(-1, 0), 11).a_p == 0; }},
            {"a_11(x^3 - 1) = 0", [] { return count_points(CurveQ(0, -1), 11).a_p == 0; }},
            {"trace_power(-2, 5, 2) = -6", [] { return trace_power(-2, 5, 2) == -6; }},
            {"hits at 11,23,47,59,71,83", [] {
               std::vector<std::int64_t> ps;
               for (const ScanHit& h : scan_pair(CurveQ(-1, 0), CurveQ(0, -1), 5, 100).hits) ps.push_back(h.p);
               for (std::int64_t p : {11, 23, 47, 59, 71, 83})
                 if (std::find(ps.begin(), ps.end(), p) == ps.end()) return false;
               return true;
             }},
        });
      if (left_text.empty() || right_text.empty()) throw CLI::ValidationError("scan", "two curves required");
      if (p_min < 5 || p_min > p_max) throw CLI::ValidationError("scan", "need 5 <= p_min <= p_max");
      const CurveQ left = CurveQ::parse(left_text);
      const CurveQ right = CurveQ::parse(right_text);
      RecordWriter w(open_output(), cfg, "scan",
                     {"p", "k", "left_a_p", "left_class", "left_d_K", "left_f", "right_a_p", "right_class",
                      "right_d_K", "right_f"});
      auto emit = [&](const TraceRecord& l, const TraceRecord& r, std::optional<int> k) {
        const bool lo = l.kind == ReductionType::Ordinary;
        const bool ro = r.kind == ReductionType::Ordinary;
        w.row({l.p, k ? Json(*k) : Json(nullptr), l.a_p, class_name(l), opt_int(lo, l.cm_fundamental_disc),
               opt_int(lo, l.conductor), r.a_p, class_name(r), opt_int(ro, r.cm_fundamental_disc),
               opt_int(ro, r.conductor)});
      };
      std::size_t hit_count = 0;
      std::size_t skipped = 0;
      if (all_primes) {
        const TraceTable lt = trace_table(left, p_min, p_max);
        const TraceTable rt = trace_table(right, p_min, p_max);
        std::size_t j = 0;
        for (const TraceRecord& l : lt.records) {
          while (j < rt.records.size() && rt.records[j].p < l.p) ++j;
          if (j == rt.records.size() || rt.records[j].p != l.p) continue;
          const auto k = geom_isogenous(l, rt.records[j]);
          hit_count += k.has_value();
          emit(l, rt.records[j], k);
        }
        for (std::int64_t p : primes_in_range(p_min, p_max)) {
          const auto has = [p](const TraceTable& t) {
            return std::binary_search(t.records.begin(), t.records.end(), TraceRecord{p},
                                      [](const TraceRecord& a, const TraceRecord& b) { return a.p < b.p; });
          };
          skipped += !(has(lt) && has(rt));
        }
      } else {
        const ScanResult res = scan_pair(left, right, p_min, p_max);
        for (const ScanHit& h : res.hits) emit(h.left, h.right, h.k);
        hit_count = res.hits.size();
        skipped = res.skipped.size();
      }
      const CoincidenceStatistic stat = coincidence_statistic(left, right, p_max);
      w.summary({{"hits", hit_count},
                 {"skipped_primes", skipped},
                 {"coincidences_observed", stat.observed},
                 {"coincidences_heuristic", stat.heuristic}});
      return 0;
    };
  });

  // tate
  std::string v_text;
  std::int64_t tate_n = 1;
  std::string x_text;
  auto* tate = app.add_subcommand("tate", "Valuation orbit {(r/t) v} of a Tate curve under T_N.\nCSV columns: r,s,t,valuation");
  tate->add_flag("--self-test", self_test, "Run the built-in example table");
  tate->add_option("v", v_text, "v(j), a negative rational n/d");
  tate->add_option("N", tate_n, "Degree")->check(CLI::PositiveNumber);
  tate->add_option("--x", x_text, "Target valuation for the collision check");
  tate->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"orbit(-1, 2) = {-2, -1/2, -1/2}", [] {
               return valuation_orbit(-1, 2) ==
                      std::vector<ExactRational>{ExactRational(-2), ExactRational(-1, 2), ExactRational(-1, 2)};
             }},
            {"|cyclic_subgroups(4)| = 6", [] { return cyclic_subgroups(4).size() == 6; }},
            {"no collision for (-2/3, -1/5, 7)",
             [] { return no_collision_check(ExactRational(-2, 3), ExactRational(-1, 5), 7); }},
            {"collision for (-1, -1, 4)", [] { return !no_collision_check(-1, -1, 4); }},
        });
      if (v_text.empty()) throw CLI::ValidationError("v", "required");
      const ExactRational v = ExactRational::parse(v_text);
      const auto subgroups = cyclic_subgroups(tate_n);
      const auto orbit_vals = valuation_orbit(v, tate_n);
      RecordWriter w(open_output(), cfg, "tate", {"r", "s", "t", "valuation"});
      for (std::size_t i = 0; i < subgroups.size(); ++i)
        w.row({subgroups[i].r, subgroups[i].s, subgroups[i].t, orbit_vals[i].to_string()});
      if (!x_text.empty()) {
        const ExactRational x = ExactRational::parse(x_text);
        const BadReductionConstant c = badred_constant(v, x);
        w.summary({{"no_collision", no_collision_check(v, x, tate_n)},
                   {"n", c.n},
                   {"valuation_floor", c.valuation_floor.to_string()}});
      }
      return 0;
    };
  });

  // latcount
  std::string gram_text;
  std::string order_text;
  std::int64_t lat_n = 0;
  auto* latcount = app.add_subcommand(
      "latcount", "Representation counts of a positive-definite lattice.\n"
                  "With --gram: CSV columns N,fiber_count; summary represented,bound,disc.\n"
                  "With --order d_K,f: CSV columns ideal_a,ideal_b,ideal_c,represented,bound (one row per Hom lattice)");
  latcount->add_flag("--self-test", self_test, "Run the built-in example table");
  latcount->add_option("n", lat_n, "Largest value")->check(CLI::NonNegativeNumber);
  latcount->add_option("--gram", gram_text, "Row-major Gram matrix (4 or 16 rationals)");
  latcount->add_option("--order", order_text, "Fundamental discriminant and conductor, d_K,f");
  latcount->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"x^2 + y^2 represents 5 eight ways", [] { return fiber_count(GramForm::diagonal(2, 1), 5) == 8; }},
            {"x^2 + y^2 obeys the counting bound at n = 100", [] {
               const GramForm f = GramForm::diagonal(2, 1);
               return static_cast<double>(represented_values(f, 100).size()) <= counting_bound(100, f.disc());
             }},
            {"sum of four squares r_4(1) = 8", [] { return fiber_count(GramForm::diagonal(4, 1), 1) == 8; }},
        });
      if (gram_text.empty() == order_text.empty())
        throw CLI::ValidationError("latcount", "give exactly one of --gram or --order");
      if (!order_text.empty()) {
        const auto parts = parse_rational_list(order_text);
        if (parts.size() != 2 || !parts[0].is_integer() || !parts[1].is_integer())
          throw CLI::ValidationError("--order", "expected two integers d_K,f");
        RecordWriter w(open_output(), cfg, "latcount", {"ideal_a", "ideal_b", "ideal_c", "represented", "bound"});
        for (const HomCountRow& r : hom_representation_check(parts[0].num(), parts[1].num(), lat_n))
          w.row({r.ideal.a, r.ideal.b, r.ideal.c, r.represented, r.bound});
        return 0;
      }
      auto entries = parse_rational_list(gram_text);
      const int rank = entries.size() == 4 ? 2 : entries.size() == 16 ? 4 : 0;
      if (rank == 0) throw CLI::ValidationError("--gram", "expected 4 or 16 entries");
      const GramForm form(rank, std::move(entries));
      const auto hist = fiber_histogram(form, lat_n);
      RecordWriter w(open_output(), cfg, "latcount", {"N", "fiber_count"});
      for (std::size_t k = 0; k < hist.size(); ++k) w.row({k, hist[k]});
      w.summary({{"represented", represented_values(form, lat_n).size()},
                 {"bound", counting_bound(lat_n, form.disc())},
                 {"disc", form.disc().to_string()}});
      return 0;
    };
  });

  // cm
  std::int64_t m_max = 1;
  double j_bound = 1e7;
  auto* cm = app.add_subcommand(
      "cm", "CM points fixed by integral matrices of determinant M <= M_max, one per j.\n"
            "CSV columns: M,t,a,b,c,d,conductor,d_K,tau_re,tau_im,j_re,j_im; summary c_obs");
  cm->add_flag("--self-test", self_test, "Run the built-in example table");
  cm->add_option("M_max", m_max, "Largest determinant")->check(CLI::PositiveNumber);
  cm->add_option("--j-bound", j_bound, "Only pairs with |j| <= bound enter c_obs");
  cm->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"S fixes i", [] {
               const auto p = fixed_point({0, -1, 1, 0});
               return p && abs(p->tau0.as_complex() - BigComplex(0.0, 1.0, 128)) < 1e-30;
             }},
            {"N = 3 satisfies (P) at 2", [] { return condition_p(3, 2).satisfies; }},
            {"order_index(1, 1) = (1, -3)", [] {
               const OrderIndex o = order_index(1, 1);
               return o.conductor == 1 && o.fundamental_disc == -3;
             }},
            {"(P) lemma at p = 3 up to 200", [] { return condition_p_lemma_check(3, 200).passed; }},
        });
      const unsigned bits = cfg.precision_bits;
      const auto points = enumerate_cm_points(m_max, prec());
      RecordWriter w(open_output(), cfg, "cm",
                     {"M", "t", "a", "b", "c", "d", "conductor", "d_K", "tau_re", "tau_im", "j_re", "j_im"});
      for (const CmPoint& p : points)
        w.row({p.M, p.trace, p.matrix.a, p.matrix.b, p.matrix.c, p.matrix.d, p.conductor, p.fundamental_disc,
               big(p.tau0.re(), bits), big(p.tau0.im(), bits), big(p.j.re, bits), big(p.j.im, bits)});
      try {
        const Separation s = min_separation_constant(points, j_bound);
        w.summary({{"points", points.size()}, {"c_obs", s.c_obs}});
      } catch (const DomainError&) {
        w.summary({{"points", points.size()}, {"c_obs", nullptr}});
      }
      return 0;
    };
  });

  // equi
  std::string equi_range;
  double threshold = 1.5;
  auto* equi = app.add_subcommand(
      "equi", "Share of T_N*tau with Im >= threshold against the hyperbolic-measure prediction.\n"
              "CSV columns: N,e_N,fraction,prediction");
  equi->add_flag("--self-test", self_test, "Run the built-in example table");
  equi->add_option("tau", tau_text, "Base point");
  equi->add_option("range", equi_range, "Degrees as A..B");
  equi->add_option("--threshold", threshold, "Im threshold")->check(CLI::PositiveNumber);
  equi->add_flag("--primes", primes_only, "Only prime N");
  equi->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"threshold below sqrt(3)/2 gives fraction 1", [] {
               const EquiFraction f = equi_fraction(hecke_orbit(UpperHalfPoint(0.0, 2.0), 7), 0.8);
               return f.fraction == 1.0 && f.prediction == 1.0;
             }},
            {"prediction at 1.5 is 2/pi", [] {
               const EquiFraction f = equi_fraction(hecke_orbit(UpperHalfPoint(0.0, 2.0), 2), 1.5);
               return std::fabs(f.prediction - 2.0 / M_PI) < 1e-15;
             }},
        });
      if (tau_text.empty() || equi_range.empty()) throw CLI::ValidationError("equi", "tau and range required");
      const UpperHalfPoint tau = parse_tau(tau_text, cfg.precision_bits);
      const auto [lo, hi] = parse_range(equi_range);
      RecordWriter w(open_output(), cfg, "equi", {"N", "e_N", "fraction", "prediction"});
      for (std::int64_t N = std::max<std::int64_t>(lo, 1); N <= hi; ++N) {
        if (primes_only && !is_prime(N)) continue;
        const EquiFraction f = equi_fraction(hecke_orbit(tau, N, prec()), threshold);
        w.row({N, e_N(N), f.fraction, f.prediction});
      }
      return 0;
    };
  });

  // density
  std::string z_text;
  int exponent_d = 4;
  std::int64_t n_max = 1;
  auto* density = app.add_subcommand(
      "density", "Degrees N with some alpha in T_N*tau at distance <= N^-D from z.\n"
                 "CSV columns: N,best_distance,member; summary members,density");
  density->add_flag("--self-test", self_test, "Run the built-in example table");
  density->add_option("tau", tau_text, "Base point");
  density->add_option("z", z_text, "Target value, complex");
  density->add_option("D", exponent_d, "Exponent")->check(CLI::PositiveNumber);
  density->add_option("N_max", n_max, "Largest degree")->check(CLI::PositiveNumber);
  density->callback([&] {
    action = [&] {
      if (self_test)
        return run_self_test(out, {
            {"five rows for N_max = 5", [] {
               return density_experiment(UpperHalfPoint(0.3, 1.7), BigComplex(128), 4, 5).rows.size() == 5;
             }},
            {"z = j(tau) is a member at N = 1", [] {
               const UpperHalfPoint y(0.3, 1.7);
               return density_experiment(y, eval_j(y), 4, 1).rows.front().member;
             }},
        });
      if (tau_text.empty() || z_text.empty()) throw CLI::ValidationError("density", "tau and z required");
      const unsigned bits = cfg.precision_bits;
      const DensityExperiment ex =
          density_experiment(parse_tau(tau_text, bits), parse_complex(z_text, bits), exponent_d, n_max, prec());
      RecordWriter w(open_output(), cfg, "density", {"N", "best_distance", "member"});
      for (const DensityRow& r : ex.rows) w.row({r.N, big(r.best_distance, bits), r.member});
      w.summary({{"members", ex.members}, {"density", ex.density}});
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
    return action();
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace heckelab::cli
