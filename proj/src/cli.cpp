#include "hgm/cli.hpp"

#include "hgm/arith.hpp"
#include "hgm/census.hpp"
#include "hgm/error.hpp"
#include "hgm/family.hpp"
#include "hgm/geometry.hpp"
#include "hgm/hodge.hpp"
#include "hgm/lseries.hpp"
#include "hgm/monodromy.hpp"
#include "hgm/poly.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>

namespace hgm {

using json = nlohmann::json;

namespace {

constexpr const char *kSchema = "hgm/1";
constexpr const char *kCacheFile = "hgm.cache";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string param, t, cache_dir, fixtures;
  bool json = false;
  int threads = 1;
};

json ints_json(const std::vector<Int> &v) {
  json a = json::array();
  for (auto &x : v) a.push_back(x.get_str());
  return a;
}

json gamma_json(const GammaVector &g) {
  json a = json::array();
  for (i64 x : g) a.push_back(x);
  return a;
}

json rats_json(const std::vector<Rat> &v) {
  json a = json::array();
  for (auto &x : v) a.push_back(x.get_str());
  return a;
}

std::string factored(const ConductorResult &r) {
  std::string s;
  for (auto &ld : r.locals) {
    if (!ld.c_p || *ld.c_p == 0) continue;
    if (!s.empty()) s += "*";
    s += std::to_string(ld.p);
    if (*ld.c_p > 1) s += "^" + std::to_string(*ld.c_p);
  }
  return s.empty() ? "1" : s;
}

json local_json(const LocalData &ld) {
  json j;
  j["p"] = ld.p;
  j["kind"] = prime_kind_name(ld.kind);
  j["c_p"] = ld.c_p ? json(*ld.c_p) : json(nullptr);
  j["exactness"] = exactness_name(ld.exactness);
  j["degree"] = ld.factor.degree;
  j["provenance"] = provenance_name(ld.factor.provenance);
  j["coeffs"] = ld.factor.known() ? ints_json(ld.factor.poly) : json(nullptr);
  j["poly"] = ld.factor.known() ? json(poly_to_string(ld.factor.poly)) : json(nullptr);
  if (ld.sigma) {
    const auto &s = *ld.sigma;
    j["sigma"] = {{"s_alpha", rats_json(s.s_alpha)}, {"s_beta", rats_json(s.s_beta)},
                  {"sigma_inf", s.sigma_inf.get_str()}, {"sigma_0", s.sigma_0.get_str()},
                  {"sigma_k", s.sigma_k.get_str()}, {"k", s.k}, {"k_crit", s.k_crit},
                  {"k_inf", s.k_inf}, {"k_zero", s.k_zero}};
  }
  if (!ld.note.empty()) j["note"] = ld.note;
  return j;
}

// plain-text rendering: one `key: value` line per field
void render_text(const json &j, std::ostream &out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "schema" || it.key() == "command") continue;
    const json &v = *it;
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_primitive(); })) {
      out << it.key() << ":";
      for (auto &x : v) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
      out << "\n";
    } else if (v.is_array()) {
      out << it.key() << ":\n";
      for (auto &x : v) out << "  " << x.dump() << "\n";
    } else if (v.is_string()) {
      out << it.key() << ": " << v.get<std::string>() << "\n";
    } else {
      out << it.key() << ": " << v.dump() << "\n";
    }
  }
}

struct Options {
  bool at_one = false;
  i64 mk = 0;
  std::string mcusp = "zero";
  bool matrices = false;
  u64 cq = 0;
  u64 tp = 0, tq = 0;
  int te = 1;
  std::string engine = "padic";
  bool erased = false;
  u64 ep = 0;
  u64 dn = 50;
  u64 xn = 100;
  std::optional<int> xsigma;
  std::string xout;
  int cn = 0;
  std::string cmode = "mod-negation", ckpt;
  std::uint64_t cbudget = 0;
  bool call = false, cdp = false;
  int mn = 12;
  u64 spmax = 1000;
  std::string sout;
};

std::string global_help(const CLI::App &app) {
  std::string s = "\nGlobal options:\n";
  for (const CLI::Option *o : app.get_options())
    if (o->get_name() != "--help") s += "  " + o->get_name() + "  " + o->get_description() + "\n";
  return s;
}

class Runner {
public:
  Runner(std::ostream &out, std::ostream &err) : out_(out), err_(err) {}

  int run(const std::vector<std::string> &args);

private:
  FamilyParameter param() const {
    if (g_.param.empty()) throw UsageError("--param is required");
    return parse_family(g_.param);
  }
  Rat t() const {
    if (g_.t.empty()) throw UsageError("--t is required");
    return parse_rational(g_.t);
  }
  LContext ctx() {
    LContext c;
    c.threads = std::max(1, g_.threads);
    if (!g_.cache_dir.empty()) {
      if (!cache_) {
        std::filesystem::create_directories(g_.cache_dir);
        cache_ = std::make_unique<Cache>((std::filesystem::path(g_.cache_dir) / kCacheFile).string());
      }
      c.cache = cache_.get();
    }
    return c;
  }
  FixtureTable fixtures() const {
    FixtureTable fx = FixtureTable::builtin();
    if (!g_.fixtures.empty()) fx.load_json(g_.fixtures);
    return fx;
  }
  void emit(const std::string &command, json j) {
    j["schema"] = kSchema;
    j["command"] = command;
    if (g_.json) out_ << j.dump(2) << "\n";
    else render_text(j, out_);
  }

  void setup(CLI::App &app);

  std::ostream &out_, &err_;
  Globals g_;
  Options o_;
  std::unique_ptr<Cache> cache_;
  std::function<void()> action_;
  CLI::App *active_ = nullptr;
};

void Runner::setup(CLI::App &app) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--param", g_.param, "family parameter: gamma vector or [den];[num] cyclotomic indices");
  app.add_option("--t", g_.t, "specialization point, a rational number");
  app.add_flag("--json", g_.json, "machine-readable output");
  app.add_option("--cache-dir", g_.cache_dir, "directory holding the trace cache");
  app.add_option("--threads", g_.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--fixtures", g_.fixtures, "JSON file with extra bad-prime fixtures");

  auto sub = [&](const char *name, const char *desc, std::function<void()> fn) {
    CLI::App *s = app.add_subcommand(name, desc);
    s->callback([this, s, fn]() {
      active_ = s;
      action_ = fn;
    });
    return s;
  };

  sub("info", "family invariants", [this]() {
    auto f = param();
    auto s = stats(f);
    json j{{"param", f.key()}, {"cyclotomic", f.cyclotomic_string()}, {"gamma", gamma_json(f.gamma)},
           {"n", s.n}, {"l", s.l}, {"kappa", s.kappa}, {"vol", s.vol}, {"m", s.m}, {"r", s.r},
           {"q_at_zero", s.q_at_zero}, {"reflexive", s.is_reflexive}, {"mum", s.is_mum},
           {"intertwined", s.is_intertwined}, {"alpha", rats_json(f.alpha)}, {"beta", rats_json(f.beta)}};
    emit("info", j);
  });

  sub("hodge", "Hodge vector from the zigzag", [this]() {
    auto f = param();
    HodgeData h = o_.at_one ? hodge_vector_at_one(f) : hodge_vector(f);
    emit("hodge", {{"param", f.key()}, {"hodge", h.h}, {"text", h.to_string()}, {"w", h.w}, {"phi0", h.phi0},
                   {"at_one", o_.at_one}});
  })->add_flag("--at-one", o_.at_one, "Hodge vector of the t = 1 fibre");

  auto mono = sub("monodromy", "Levelt triple, classification, drop ranks", [this]() {
    auto f = param();
    auto tr = levelt(f);
    json j{{"param", f.key()}, {"classification", classification_name(classify(f))}};
    std::string chk = check_levelt(f, tr);
    j["levelt_check"] = chk.empty() ? "ok" : chk;
    if (o_.mk > 0) {
      if (o_.mcusp != "zero" && o_.mcusp != "infinity") throw UsageError("--cusp must be zero or infinity");
      j["cusp"] = o_.mcusp;
      j["k"] = o_.mk;
      j["drop_rank"] = drop_rank(f, o_.mcusp == "zero" ? Cusp::Zero : Cusp::Infinity, o_.mk);
    }
    if (o_.matrices) {
      auto mj = [](const RatMatrix &m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
          json r = json::array();
          for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(m(i, c).get_str());
          rows.push_back(r);
        }
        return rows;
      };
      j["h_inf"] = mj(tr.h_inf);
      j["h_1"] = mj(tr.h_1);
      j["h_0"] = mj(tr.h_0);
    }
    emit("monodromy", j);
  });
  mono->add_option("--k", o_.mk, "local exponent k >= 1 for the drop rank");
  mono->add_option("--cusp", o_.mcusp, "zero or infinity");
  mono->add_flag("--matrices", o_.matrices, "print the Levelt matrices");

  sub("toric", "toric and BCM models", [this]() {
    auto f = param();
    auto m = toric_model(f.gamma);
    auto ps = polytope_stats(m);
    auto b = bcm_model(f.gamma);
    json j{{"param", f.key()}, {"equation", m.equation()}, {"dim", m.dim()}, {"u_factor", m.u_factor.get_str()},
           {"vols", ints_json(ps.vols)}, {"total_volume", ps.total.get_str()}, {"euler_characteristic", ps.chi.get_str()},
           {"bcm", b.equation()}, {"bcm_degree", b.degree}};
    if (ps.genus) j["genus"] = ps.genus->get_str();
    if (ps.punctures) j["punctures"] = ps.punctures->get_str();
    emit("toric", j);
  });

  sub("count", "points on the toric model over F_q", [this]() {
    auto f = param();
    if (!o_.cq) throw UsageError("--q is required");
    Rat tt = t();
    u64 c = count_points(f.gamma, tt, o_.cq, std::max(1, g_.threads));
    emit("count", {{"param", f.key()}, {"t", tt.get_str()}, {"q", o_.cq}, {"count", c}});
  })->add_option("--q", o_.cq, "prime power");

  sub("splice", "splicings of the gamma vector", [this]() {
    auto f = param();
    json a = json::array();
    for (auto &[x, y] : splicings(f.gamma)) a.push_back(json::array({gamma_json(x), gamma_json(y)}));
    emit("splice", {{"param", f.key()}, {"splicings", a}});
  });

  auto tr = sub("trace", "Frobenius trace over F_q", [this]() {
    auto f = param();
    Rat tt = t();
    u64 p = o_.tp;
    int e = o_.te;
    if (o_.tq) {
      auto [pp, ee] = prime_power(o_.tq);
      if (!pp) throw Error(ErrorKind::InvalidArgument, "--q is not a prime power");
      p = pp, e = ee;
    }
    if (!p) throw UsageError("--p or --q is required");
    Int v;
    if (o_.erased) v = trace_erased(f, tt, p, e);
    else if (o_.engine == "split") {
      u64 q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      v = trace_split(f, tt, q);
    } else if (o_.engine == "padic") v = cached_trace(f, tt, p, e, ctx());
    else throw UsageError("--engine must be padic or split");
    emit("trace", {{"param", f.key()}, {"t", tt.get_str()}, {"p", p}, {"e", e}, {"trace", v.get_str()},
                   {"erased", o_.erased}});
  });
  tr->add_option("--p", o_.tp, "prime");
  tr->add_option("--e", o_.te, "extension degree")->check(CLI::PositiveNumber);
  tr->add_option("--q", o_.tq, "prime power, overrides --p/--e");
  tr->add_option("--engine", o_.engine, "padic or split");
  tr->add_flag("--erased", o_.erased, "erased trace at a wild prime on the ramp bottom");

  sub("euler", "local Euler factor", [this]() {
    auto f = param();
    Rat tt = t();
    if (!o_.ep) throw UsageError("--p is required");
    auto ld = local_data(f, tt, o_.ep, fixtures(), ctx());
    json j = local_json(ld);
    j["param"] = f.key();
    j["t"] = tt.get_str();
    emit("euler", j);
  })->add_option("--p", o_.ep, "prime");

  sub("conductor", "conductor with local exponents", [this]() {
    auto f = param();
    Rat tt = t();
    auto r = conductor(f, tt, fixtures(), ctx());
    json locals = json::array();
    for (auto &ld : r.locals) locals.push_back(local_json(ld));
    emit("conductor", {{"param", f.key()}, {"t", tt.get_str()}, {"value", r.value.get_str()}, {"factored", factored(r)},
                       {"exact", r.exact}, {"uses_fixtures", r.uses_fixtures}, {"locals", locals}});
  });

  sub("dirichlet", "Dirichlet coefficients a_1..a_N", [this]() {
    auto f = param();
    Rat tt = t();
    auto a = dirichlet_coefficients(f, tt, o_.dn, fixtures(), ctx());
    emit("dirichlet", {{"param", f.key()}, {"t", tt.get_str()}, {"coefficients", ints_json(a)}});
  })->add_option("--n", o_.dn, "number of coefficients");

  auto ex = sub("export", "JSON document for analytic tools", [this]() {
    auto f = param();
    Rat tt = t();
    std::string doc = export_json(f, tt, o_.xn, fixtures(), o_.xsigma, ctx());
    if (o_.xout.empty()) out_ << doc << "\n";
    else {
      std::ofstream o(o_.xout);
      if (!o) throw Error(ErrorKind::Io, "cannot write " + o_.xout);
      o << doc << "\n";
      emit("export", {{"param", f.key()}, {"t", tt.get_str()}, {"path", o_.xout}});
    }
  });
  ex->add_option("--n", o_.xn, "number of Dirichlet coefficients");
  ex->add_option("--sigma", o_.xsigma, "signature for even weight");
  ex->add_option("--out", o_.xout, "output file");

  auto ce = sub("census", "Hodge-vector census of rank n", [this]() {
    if (o_.cn < 1) throw UsageError("--n is required");
    if (o_.cmode != "raw" && o_.cmode != "mod-negation") throw UsageError("--mode must be raw or mod-negation");
    CountMode mode = o_.cmode == "raw" ? CountMode::Raw : CountMode::ModNegation;
    CensusOptions opt;
    opt.threads = std::max(1, g_.threads);
    opt.primitive_only = !o_.call;
    opt.budget = o_.cbudget;
    opt.checkpoint_path = o_.ckpt;
    auto rec = census(o_.cn, mode, opt);
    json counts = json::array();
    for (auto &[h, c] : rec.counts) counts.push_back({{"hodge", h}, {"count", c}});
    json j{{"n", o_.cn}, {"mode", o_.cmode}, {"primitive_only", !o_.call}, {"total", rec.total}, {"partial", rec.partial},
           {"counts", counts}};
    if (o_.cdp) j["dp_total"] = census_total_dp(o_.cn, mode, !o_.call).get_str();
    emit("census", j);
  });
  ce->add_option("--n", o_.cn, "rank");
  ce->add_option("--mode", o_.cmode, "raw or mod-negation");
  ce->add_option("--budget", o_.cbudget, "maximum parameters examined");
  ce->add_option("--checkpoint", o_.ckpt, "checkpoint file");
  ce->add_flag("--all-gcd", o_.call, "include imprimitive gamma vectors");
  ce->add_flag("--dp", o_.cdp, "also report the generating-function total");

  sub("mum", "MUM counts c_0..c_n", [this]() {
    emit("mum", {{"n", o_.mn}, {"counts", ints_json(mum_counts(o_.mn))}});
  })->add_option("--n", o_.mn, "largest rank");

  auto st = sub("satotate", "normalized Frobenius traces", [this]() {
    auto f = param();
    Rat tt = t();
    auto s = sato_tate_samples(f, tt, o_.spmax, ctx());
    int n = f.n;
    std::vector<u64> hist(static_cast<std::size_t>(20 * n), 0);
    for (auto &x : s) {
      auto b = static_cast<long>(std::floor((x.normalized + n) * 10));
      b = std::clamp<long>(b, 0, static_cast<long>(hist.size()) - 1);
      hist[b]++;
    }
    if (!o_.sout.empty()) {
      std::ofstream o(o_.sout), h(o_.sout + ".hist");
      if (!o || !h) throw Error(ErrorKind::Io, "cannot write " + o_.sout);
      for (auto &x : s) o << x.p << " " << x.a_p << " " << x.normalized << "\n";
      for (std::size_t i = 0; i < hist.size(); ++i)
        h << -n + 0.1 * static_cast<double>(i) << " " << -n + 0.1 * static_cast<double>(i + 1) << " " << hist[i] << "\n";
      emit("satotate", {{"param", f.key()}, {"t", tt.get_str()}, {"samples", s.size()}, {"path", o_.sout},
                        {"histogram", o_.sout + ".hist"}});
      return;
    }
    json a = json::array();
    for (auto &x : s) a.push_back({{"p", x.p}, {"a_p", x.a_p.get_str()}, {"normalized", x.normalized}});
    emit("satotate", {{"param", f.key()}, {"t", tt.get_str()}, {"samples", a}, {"histogram", hist}});
  });
  st->add_option("--pmax", o_.spmax, "largest prime");
  st->add_option("--out", o_.sout, "data file; the histogram goes to <file>.hist");

  sub("cache-compact", "sort and deduplicate the cache file", [this]() {
    if (g_.cache_dir.empty()) throw UsageError("--cache-dir is required");
    auto path = (std::filesystem::path(g_.cache_dir) / kCacheFile).string();
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::Io, "no cache at " + path);
    std::size_t n = cache_compact(path);
    emit("cache-compact", {{"path", path}, {"records", n}});
  });
}

int Runner::run(const std::vector<std::string> &args) {
  CLI::App app{"hypergeometric motive toolkit", "hgm"};
  setup(app);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out_ << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err_ << "error: " << e.what() << "\n";
    const CLI::App *where = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err_ << where->help();
    if (where != &app) err_ << global_help(app);
    return 2;
  }
  try {
    if (action_) action_();
  } catch (const UsageError &e) {
    err_ << "error: " << e.what() << "\n" << (active_ ? active_->help() : app.help());
    if (active_) err_ << global_help(app);
    return 2;
  } catch (const Error &e) {
    err_ << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err_ << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Runner r(out, err);
  return r.run(args);
}

} // namespace hgm
