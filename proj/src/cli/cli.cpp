#include "pclab/cli/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "pclab/arith/primes.hpp"
#include "pclab/denoms/profile.hpp"
#include "pclab/hyp/hypergeometric.hpp"
#include "pclab/iso/schlesinger.hpp"
#include "pclab/parse/expr.hpp"
#include "pclab/pcurv/pcurvature.hpp"
#include "pclab/solve/series_solver.hpp"

namespace pclab::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

// Everything a handler needs: input bytes for the digest, and the payload.
struct Context {
  std::string digest_input;
  json payload;
  std::string raw_output;  // set instead of payload for CSV
};

std::string read_file(Context& ctx, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  ctx.digest_input += '\0' + path + '\0' + ss.str();
  return ss.str();
}

json rat_list(const std::vector<Rat>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.str());
  return out;
}

json opt_rat(const std::optional<Rat>& q) { return q ? json(q->str()) : json(nullptr); }

Rat rat_arg(const std::string& s) { return Rat::parse(s); }

std::size_t order_arg(long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  return static_cast<std::size_t>(n);
}

json series_payload(const QSeries& s) { return json{{"order", s.order()}, {"coeffs", rat_list(s.coeffs())}}; }

std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& q : parse::parse_rat_list(text)) {
    if (!q.is_integer() || q.sign() <= 0 || !q.num().fits_ulong_p())
      throw Error(ErrorKind::InvalidArgument, "bad prime " + q.str());
    std::uint64_t p = q.num().get_ui();
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    out.push_back(p);
  }
  return out;
}

json profile_json(const denoms::IntegralityProfile& prof) {
  json table = json::array();
  for (const auto& row : prof.table) table.push_back({{"p", row.p}, {"g", row.g}});
  auto v = denoms::verdicts(prof);
  return json{{"M", prof.M},
              {"P", prof.P},
              {"table", table},
              {"support", prof.support},
              {"verdicts",
               {{"finite_support", v.finite_support},
                {"omega_linear_floor", opt_rat(v.omega_linear_floor)},
                {"saturated", v.saturated},
                {"notes", v.notes}}}};
}

std::vector<Rat> coeffs_from_text(const std::string& text) {
  std::vector<Rat> out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) out.push_back(Rat::parse(tok));
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) flush();
    else tok += c;
  }
  flush();
  return out;
}

std::vector<Rat> coeffs_from_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("report is not JSON: ") + e.what());
  }
  if (!j.contains("payload")) throw Error(ErrorKind::InvalidArgument, "report has no payload");
  const json& p = j["payload"];
  const json* arr = p.is_array() ? &p : (p.is_object() && p.contains("coeffs") ? &p["coeffs"] : nullptr);
  if (!arr || !arr->is_array()) throw Error(ErrorKind::InvalidArgument, "report payload carries no coefficients");
  std::vector<Rat> out;
  for (const auto& e : *arr) {
    if (!e.is_string()) throw Error(ErrorKind::InvalidArgument, "coefficients must be \"p/q\" strings");
    out.push_back(Rat::parse(e.get<std::string>()));
  }
  return out;
}

json fp_matrix_json(const Matrix<FpRatFun>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

json rat_matrix_json(const Matrix<Rat>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

std::string fraction_str(const PolyFraction<PrimeField>& f) {
  if (f.num.is_zero()) return "0";
  if (f.den.is_constant()) return f.num.scaled(f.den.field().one() / f.den.constant_term()).str();
  return "(" + f.num.str() + ")/(" + f.den.str() + ")";
}

// option storage for every subcommand
struct Options {
  std::string ode, point = "0", init, g, a, b, poly, w0, b0, b1, primes, coeffs_file, from, format = "json",
                                                                                    matrix_file, residues_file,
                                                                                    poles, preset;
  long order = 0, n = 1, prime = 0, prime_bound = 0;
  bool singular = false;
};

void expand_linear(const Options& o, Context& ctx) {
  auto ode = parse::parse_linear_ode(o.ode);
  auto s = solve::expand_scalar_linear(ode, rat_arg(o.point), parse::parse_rat_list(o.init), order_arg(o.order));
  ctx.payload = series_payload(s);
  ctx.payload["point"] = rat_arg(o.point).str();
}

void expand_leaf(const Options& o, Context& ctx) {
  if (o.n < 1) throw Error(ErrorKind::InvalidArgument, "--n must be at least 1");
  auto field = parse::parse_nonlinear(o.g, static_cast<std::size_t>(o.n));
  solve::InitialCondition init{rat_arg(o.point), parse::parse_rat_list(o.init)};
  auto s = solve::expand_foliation_leaf(field, init, order_arg(o.order));
  ctx.payload = series_payload(s);
  ctx.payload["point"] = init.point.str();
}

void denoms_cmd(const Options& o, Context& ctx) {
  if (o.coeffs_file.empty() == o.from.empty())
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --coeffs-file and --from");
  if (o.prime_bound < 2) throw Error(ErrorKind::InvalidArgument, "--prime-bound must be at least 2");
  if (o.format != "json" && o.format != "csv") throw Error(ErrorKind::InvalidArgument, "--format must be json or csv");
  auto coeffs = o.from.empty() ? coeffs_from_text(read_file(ctx, o.coeffs_file))
                               : coeffs_from_report(read_file(ctx, o.from));
  auto prof = denoms::profile(coeffs, static_cast<std::uint64_t>(o.prime_bound));
  if (o.format == "csv") ctx.raw_output = denoms::to_csv(prof);
  else ctx.payload = profile_json(prof);
}

void pcurv_linear(const Options& o, Context& ctx) {
  if (o.primes.empty() == (o.prime_bound == 0))
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --primes and --prime-bound");
  auto sys = parse::parse_matrix(read_file(ctx, o.matrix_file));
  std::vector<std::uint64_t> primes = o.primes.empty() ? primes_up_to(static_cast<std::uint64_t>(o.prime_bound))
                                                        : parse_prime_list(o.primes);
  auto sweep = pcurv::pcurvature_sweep(sys, primes);
  json results = json::array();
  std::size_t gi = 0, bi = 0;
  // merge good and bad primes back into ascending order
  while (gi < sweep.results.size() || bi < sweep.bad.size()) {
    bool take_bad = gi == sweep.results.size() || (bi < sweep.bad.size() && sweep.bad[bi] < sweep.results[gi].p);
    if (take_bad) {
      results.push_back({{"p", sweep.bad[bi++]}, {"vanishes", false}, {"nilpotent", false}, {"bad", true}});
    } else {
      const auto& r = sweep.results[gi++];
      results.push_back(
          {{"p", r.p}, {"vanishes", r.vanishes}, {"nilpotent", r.nilpotent}, {"bad", false}, {"Ap", fp_matrix_json(r.Ap)}});
    }
  }
  ctx.payload = {{"rank", sys.rows()},
                 {"results", results},
                 {"summary",
                  {{"vanishing", sweep.vanishing},
                   {"nilpotent_only", sweep.nilpotent},
                   {"neither", sweep.neither},
                   {"bad", sweep.bad}}}};
}

void pcurv_foliation(const Options& o, Context& ctx) {
  if (o.n < 1) throw Error(ErrorKind::InvalidArgument, "--n must be at least 1");
  if (o.prime < 2) throw Error(ErrorKind::InvalidArgument, "--prime must be a prime");
  auto field = parse::parse_nonlinear(o.g, static_cast<std::size_t>(o.n));
  auto comps = pcurv::foliation_pcurvature(field, static_cast<std::uint64_t>(o.prime));
  json arr = json::array();
  bool all = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    bool z = comps[i].num.is_zero();
    all = all && z;
    arr.push_back({{"var", "y" + std::to_string(i)}, {"value", fraction_str(comps[i])}, {"vanishes", z}});
  }
  ctx.payload = {{"p", o.prime}, {"n", o.n}, {"components", arr}, {"vanishes", all}};
}

void hyp_classify(const Options& o, Context& ctx) {
  auto params = hyp::HypParams::make(parse::parse_rat_list(o.a), parse::parse_rat_list(o.b));
  auto rep = hyp::classify(params);
  json per = json::array();
  for (std::size_t i = 0; i < rep.christol_evidence.size(); ++i) {
    const auto& c = rep.christol_evidence[i];
    per.push_back({{"delta", c.delta},
                   {"a", rat_list(c.a)},
                   {"b", rat_list(c.b)},
                   {"christol", c.pass},
                   {"interlace", rep.bh_evidence[i].pass}});
  }
  ctx.payload = {{"a", rat_list(params.a)},
                 {"b", rat_list(params.b)},
                 {"N", params.N.get_str()},
                 {"bounded", rep.globally_bounded},
                 {"algebraic", rep.algebraic},
                 {"monodromy0_finite", rep.monodromy0_finite},
                 {"monodromy0_order", rep.monodromy0_finite ? json(rep.monodromy.order.get_str()) : json(nullptr)},
                 {"alphas", rat_list(rep.monodromy.alphas)},
                 {"betas", rat_list(rep.monodromy.betas)},
                 {"det_g1_exponent", rep.monodromy.det_g1_exponent.str()},
                 {"per_delta", per}};
}

void hyp_series_cmd(const Options& o, Context& ctx) {
  auto params = hyp::HypParams::make(parse::parse_rat_list(o.a), parse::parse_rat_list(o.b));
  ctx.payload = series_payload(solve::hyp_series(params, order_arg(o.order)));
  ctx.payload["a"] = rat_list(params.a);
  ctx.payload["b"] = rat_list(params.b);
}

constexpr std::uint64_t kSchlesingerProfileBound = 100;

void schlesinger_cmd(const Options& o, Context& ctx) {
  iso::SchlesingerState state;
  if (!o.preset.empty()) {
    if (o.preset != "legendre") throw Error(ErrorKind::InvalidArgument, "unknown preset " + o.preset);
    state = iso::legendre_pf_preset();
  } else {
    if (o.residues_file.empty() || o.poles.empty())
      throw Error(ErrorKind::InvalidArgument, "--residues-file and --poles are required without --preset");
    auto residues = parse::parse_matrix_blocks(read_file(ctx, o.residues_file));
    state = iso::SchlesingerState::make(parse::parse_rat_list(o.poles), std::move(residues));
  }
  auto series = iso::schlesinger_expand(state, order_arg(o.order));
  auto flat = iso::verify_flatness(series);
  auto inv = iso::invariants_check(series);

  json entries = json::array();
  std::vector<QMSeries> all;
  for (std::size_t i = 0; i < series.A.size(); ++i)
    for (std::size_t r = 0; r < series.A[i].rows(); ++r)
      for (std::size_t c = 0; c < series.A[i].cols(); ++c) {
        const auto& s = series.A[i](r, c);
        all.push_back(s);
        json terms = json::array();
        s.for_each([&](const Monomial& m, const Rat& q) { terms.push_back({{"m", m}, {"c", q.str()}}); });
        entries.push_back({{"i", i + 1}, {"row", r}, {"col", c}, {"terms", terms}});
      }
  json residues = json::array();
  for (const auto& m : state.residues) residues.push_back(rat_matrix_json(m));
  ctx.payload = {{"poles", rat_list(state.poles)},
                 {"residues", residues},
                 {"vars", series.vars},
                 {"nmax", series.nmax},
                 {"entries", entries},
                 {"flatness", {{"clean_through", flat.clean_through}, {"ok", flat.ok}, {"first_failure", flat.first_failure}}},
                 {"invariants",
                  {{"ok", inv.ok}, {"failing_invariant", inv.failing_invariant}, {"failing_degree", inv.failing_degree}}},
                 {"profile", profile_json(denoms::multivariate_profile(all, kSchlesingerProfileBound))}};
  bool trace_free = state.rank() == 2 && state.n() == 4;
  for (const auto& m : state.residues) trace_free = trace_free && m.trace().is_zero();
  if (trace_free) {
    auto pv = iso::painleve_vi_check(state);
    json theta = json::array();
    for (const auto& t : pv.theta) theta.push_back(opt_rat(t));
    ctx.payload["painleve_vi"] = {
        {"theta_squared", rat_list(pv.theta_squared)}, {"theta", theta}, {"constant_solution", pv.constant_solution}};
  }
}

void eisenstein_cmd(const Options& o, Context& ctx) {
  std::vector<std::string> vars{"z", "w"};
  auto p = parse::lower_poly(*parse::parse_expr(o.poly, vars), vars);
  Rat w0 = rat_arg(o.w0);
  auto s = solve::eisenstein_expand(p, w0, order_arg(o.order));
  ctx.payload = series_payload(s);
  ctx.payload["support_bound"] = solve::eisenstein_support_bound(p, w0).get_str();
}

void apery_cmd(const Options& o, Context& ctx) {
  if (o.singular) {
    ctx.payload = rat_list(solve::singular_apery(order_arg(o.order)));
    return;
  }
  if (o.a.empty() || o.b0.empty() || o.b1.empty())
    throw Error(ErrorKind::InvalidArgument, "--a, --b0 and --b1 are required without --singular");
  ctx.payload = rat_list(solve::apery_sequence(rat_arg(o.a), rat_arg(o.b0), rat_arg(o.b1), order_arg(o.order)));
}

json error_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact power series, p-curvature and isomonodromy toolkit", "pclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  std::function<void(const Options&, Context&)> handler;
  auto bind = [&](CLI::App* sub, void (*fn)(const Options&, Context&)) {
    sub->callback([&handler, fn] { handler = fn; });
  };

  auto* expand = app.add_subcommand("expand", "Taylor expansions");
  expand->require_subcommand(1);
  auto* lin = expand->add_subcommand("linear", "linear ODE sum c_i(z) f^(i) = 0 at an ordinary point");
  lin->add_option("--ode", o.ode, "c0;c1;...;cn in z")->required();
  lin->add_option("--point", o.point, "expansion point")->required();
  lin->add_option("--init", o.init, "f(a),f'(a),...")->required();
  lin->add_option("--order", o.order, "number of coefficients")->required();
  bind(lin, expand_linear);
  auto* leaf = expand->add_subcommand("leaf", "leaf of f^(n) = g(z, y0, .., y{n-1})");
  leaf->add_option("--g", o.g, "right-hand side")->required();
  leaf->add_option("--n", o.n, "ODE order")->required();
  leaf->add_option("--point", o.point, "expansion point")->required();
  leaf->add_option("--init", o.init, "f(a),f'(a),...")->required();
  leaf->add_option("--order", o.order, "number of coefficients")->required();
  bind(leaf, expand_leaf);

  auto* den = app.add_subcommand("denoms", "per-prime integrality profile");
  den->add_option("--coeffs-file", o.coeffs_file, "file of rationals");
  den->add_option("--from", o.from, "prior report with coefficients");
  den->add_option("--prime-bound", o.prime_bound, "largest prime examined")->required();
  den->add_option("--format", o.format, "json or csv");
  bind(den, denoms_cmd);

  auto* pc = app.add_subcommand("pcurv", "p-curvature");
  pc->require_subcommand(1);
  auto* pcl = pc->add_subcommand("linear", "p-curvature of f' = A f");
  pcl->add_option("--matrix-file", o.matrix_file, "matrix of rational functions in z")->required();
  pcl->add_option("--primes", o.primes, "comma-separated primes");
  pcl->add_option("--prime-bound", o.prime_bound, "all primes up to this bound");
  bind(pcl, pcurv_linear);
  auto* pcf = pc->add_subcommand("foliation", "p-curvature of the foliation of f^(n) = g");
  pcf->add_option("--g", o.g, "right-hand side")->required();
  pcf->add_option("--n", o.n, "ODE order")->required();
  pcf->add_option("--prime", o.prime, "prime")->required();
  bind(pcf, pcurv_foliation);

  auto* hy = app.add_subcommand("hyp", "hypergeometric functions");
  hy->require_subcommand(1);
  auto* hc = hy->add_subcommand("classify", "boundedness, algebraicity, local monodromy");
  hc->add_option("--a", o.a, "numerator parameters")->required();
  hc->add_option("--b", o.b, "denominator parameters")->required();
  bind(hc, hyp_classify);
  auto* hs = hy->add_subcommand("series", "Taylor coefficients");
  hs->add_option("--a", o.a, "numerator parameters")->required();
  hs->add_option("--b", o.b, "denominator parameters")->required();
  hs->add_option("--order", o.order, "number of coefficients")->required();
  bind(hs, hyp_series_cmd);

  auto* sch = app.add_subcommand("schlesinger", "formal Schlesinger deformation");
  sch->add_option("--residues-file", o.residues_file, "residue matrices separated by blank lines");
  sch->add_option("--poles", o.poles, "pole positions");
  sch->add_option("--order", o.order, "total degree bound")->required();
  sch->add_option("--preset", o.preset, "legendre");
  bind(sch, schlesinger_cmd);

  auto* eis = app.add_subcommand("eisenstein", "algebraic series by Newton iteration");
  eis->add_option("--poly", o.poly, "P(z, w)")->required();
  eis->add_option("--w0", o.w0, "w(0)")->required();
  eis->add_option("--order", o.order, "number of coefficients")->required();
  bind(eis, eisenstein_cmd);

  auto* ap = app.add_subcommand("apery", "Apery-type recurrence");
  ap->add_option("--a", o.a, "expansion point");
  ap->add_option("--b0", o.b0, "b_0");
  ap->add_option("--b1", o.b1, "b_1");
  ap->add_option("--order", o.order, "number of terms")->required();
  ap->add_flag("--singular", o.singular, "integral solution at the singular point 0");
  bind(ap, apery_cmd);

  std::vector<std::string> argv_store{"pclab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  std::string command;
  for (std::size_t i = 0; i < args.size(); ++i) command += (i ? " " : "") + args[i];

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("Usage", e.what()).dump(2) << '\n';
    return 2;
  }

  Context ctx;
  ctx.digest_input = command;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    handler(o, ctx);
  } catch (const Error& e) {
    out << error_json(kind_name(e.kind()), e.what()).dump(2) << '\n';
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    out << error_json("Internal", e.what()).dump(2) << '\n';
    return 1;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!ctx.raw_output.empty()) {
    out << ctx.raw_output;
    return 0;
  }
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.6f", secs);
  json env{{"command", command},
           {"input_digest", sha256_hex(ctx.digest_input)},
           {"version", kVersion},
           {"payload", ctx.payload},
           {"wall_time", wall}};
  out << env.dump(2) << '\n';
  return 0;
}

}  // namespace pclab::cli
