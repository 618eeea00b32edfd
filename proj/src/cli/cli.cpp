#include "mchain/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "mchain/dirichlet.hpp"
#include "mchain/errors.hpp"
#include "mchain/hurwitz.hpp"
#include "mchain/lattice.hpp"
#include "mchain/minkowski.hpp"

namespace mchain::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, table };

constexpr long kGridLimit = 100000;
constexpr int kMaxPowers = 8;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json json;
  Table table;
};

class PrecisionGuard {
 public:
  explicit PrecisionGuard(long bits) : saved_(max_precision_bits()) {
    if (bits > 0) set_max_precision_bits(bits);
  }
  ~PrecisionGuard() { set_max_precision_bits(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  long saved_;
};

// ---------------------------------------------------------------- formatting

Json integer_json(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return to_string(x);
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(integers_json(m.row(i)));
  return a;
}

std::string lo_string(const Interval& x, int digits) { return to_decimal(x.lo, digits, Rounding::down); }
std::string hi_string(const Interval& x, int digits) { return to_decimal(x.hi, digits, Rounding::up); }

Json interval_json(const Interval& x, int digits) {
  Json o;
  o["lo"] = lo_string(x, digits);
  o["hi"] = hi_string(x, digits);
  return o;
}

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

/// Refines an enclosure until its width is small relative to its magnitude
/// or the precision cap is reached.
Interval enclose(const std::function<Interval(long)>& f, int digits) {
  Rational rel = Rational(1) / pow(Rational(10), static_cast<unsigned>(digits + 2));
  Interval x;
  for (long bits = 128;; bits *= 2) {
    x = f(bits);
    const bool done = x.width() == 0 || (!x.contains_zero() && x.width() <= rel * x.abs().lo);
    if (done || bits >= max_precision_bits()) return x;
  }
}

Interval enclose(const RealScalar& x, int digits) {
  return enclose([&](long bits) { return x.interval(bits); }, digits);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::csv) {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return;
  }
  std::vector<std::size_t> w(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
    }
    os << s << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

// ------------------------------------------------------------------- parsing

const std::vector<std::string>& spec_prefixes() {
  static const std::vector<std::string> p{"rational:", "algebraic:", "builtin:", "decimal:"};
  return p;
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(p);
    if (parts.empty() || parts.size() > 3) throw ParseError("bad grid item '" + item + "'");
    Rational a = parse_rational(parts[0]);
    if (parts.size() == 1) {
      out.push_back(a);
      continue;
    }
    Rational b = parse_rational(parts[1]);
    Rational step = parts.size() == 3 ? parse_rational(parts[2]) : Rational(1);
    if (step <= 0) throw ParseError("grid step must be positive in '" + item + "'");
    for (Rational x = a; x <= b; x += step) {
      out.push_back(x);
      if (static_cast<long>(out.size()) > kGridLimit) throw ParseError("grid has too many points");
    }
  }
  if (out.empty()) throw ParseError("empty grid '" + text + "'");
  return out;
}

std::vector<long> parse_int_grid(const std::string& text) {
  std::vector<long> out;
  for (const auto& x : parse_grid(text)) {
    if (x.get_den() != 1 || !fits_int64(x.get_num())) throw ParseError("expected integers in '" + text + "'");
    out.push_back(static_cast<long>(to_int64(x.get_num())));
  }
  return out;
}

struct TargetArgs {
  std::vector<std::string> alpha;
  std::string powers;
};

ContextPtr build_context(const TargetArgs& a) {
  if (!a.powers.empty() && !a.alpha.empty()) throw ParseError("--alpha and --powers are exclusive");
  // Oracle targets cannot be checked for independence; the CLI asserts it.
  FormTarget target;
  if (!a.powers.empty()) {
    auto pos = a.powers.rfind(':');
    if (pos == std::string::npos) throw ParseError("--powers expects <alpha>:<n>");
    Rational n = parse_rational(a.powers.substr(pos + 1));
    if (n.get_den() != 1 || n < 1 || n > kMaxPowers) throw ParseError("--powers exponent must be in 1.." + std::to_string(kMaxPowers));
    target = powers_target(RealScalar::parse(a.powers.substr(0, pos)), static_cast<int>(n.get_num().get_si()), true);
  } else {
    std::vector<RealScalar> xs;
    for (const auto& list : a.alpha) {
      for (const auto& s : split_specs(list)) xs.push_back(RealScalar::parse(s));
    }
    if (xs.empty()) throw ParseError("a target needs --alpha or --powers");
    target = make_target(std::move(xs), true);
  }
  return std::make_shared<const FormContext>(std::move(target));
}

RealScalar single_alpha(const std::string& spec) {
  auto specs = split_specs(spec);
  if (specs.size() != 1) throw ParseError("expected exactly one number spec");
  return RealScalar::parse(specs.front());
}

Json alphas_json(const FormContext& ctx) {
  Json a = Json::array();
  for (const auto& x : ctx.target().alphas) a.push_back(x.describe());
  return a;
}

// ------------------------------------------------------------------ commands

Output cmd_hurwitz(const std::string& spec, std::size_t steps) {
  RealScalar x = single_alpha(spec);
  HurwitzChain c = hurwitz_chain(x, steps);
  Output o;
  o.table.header = {"k", "p", "q", "pp", "qp", "letter", "m"};
  Json pairs = Json::array();
  for (std::size_t k = 0; k < c.states.size(); ++k) {
    const auto& s = c.states[k];
    Json j;
    j["p"] = integer_json(s.pair.p);
    j["q"] = integer_json(s.pair.q);
    j["pp"] = integer_json(s.pair.pp);
    j["qp"] = integer_json(s.pair.qp);
    j["letter"] = std::string(1, s.letter);
    j["m"] = integer_json(s.m);
    pairs.push_back(std::move(j));
    o.table.rows.push_back({std::to_string(k + 1), to_string(s.pair.p), to_string(s.pair.q), to_string(s.pair.pp),
                            to_string(s.pair.qp), std::string(1, s.letter), to_string(s.m)});
  }
  o.json["alpha"] = x.describe();
  o.json["a0"] = integer_json(c.a0);
  o.json["pairs"] = std::move(pairs);
  o.json["word"] = c.word;
  o.json["partial_quotients"] = integers_json(block_lengths(c.word));
  o.json["terminated"] = c.terminated;
  return o;
}

Output cmd_cf(const std::string& spec, std::size_t terms) {
  RealScalar x = single_alpha(spec);
  PartialQuotients pq = continued_fraction(x, terms);
  Output o;
  o.table.header = {"j", "a_j"};
  o.table.rows.push_back({"0", to_string(pq.a0)});
  for (std::size_t j = 0; j < pq.a.size(); ++j) o.table.rows.push_back({std::to_string(j + 1), to_string(pq.a[j])});
  o.json["alpha"] = x.describe();
  o.json["a0"] = integer_json(pq.a0);
  o.json["partial_quotients"] = integers_json(pq.a);
  o.json["terminated"] = pq.terminated;
  return o;
}

Output cmd_minkowski(const TargetArgs& ta, long m_max, std::optional<std::size_t> k_max, int digits) {
  ContextPtr ctx = build_context(ta);
  auto entries = chain(ctx, ChainLimits{m_max, k_max});
  Output o;
  o.table.header = {"k", "m_k", "abs_alpha_k1_lo", "abs_alpha_k1_hi"};
  Json list = Json::array();
  for (const auto& e : entries) {
    Json j;
    j["k"] = e.k;
    j["m_k"] = e.m_k;
    j["B"] = matrix_json(e.B);
    Json beta = Json::array();
    for (const auto& b : e.beta) beta.push_back(interval_json(enclose(b, digits), digits));
    j["beta"] = std::move(beta);
    Json ak = Json::array();
    for (const auto& a : e.alpha_k) ak.push_back(interval_json(enclose(a, digits), digits));
    j["alpha_k"] = std::move(ak);
    list.push_back(std::move(j));
    Interval a1 = enclose(e.alpha_k.front(), digits).abs();
    o.table.rows.push_back({std::to_string(e.k), std::to_string(e.m_k), lo_string(a1, digits), hi_string(a1, digits)});
  }
  o.json["alphas"] = alphas_json(*ctx);
  o.json["m_max"] = m_max;
  o.json["entries"] = std::move(list);
  return o;
}

enum class LatticeMode { minima, reduced, trajectory };

struct LatticeArgs {
  std::string t;
  std::string norm = "sup";
  LatticeMode mode = LatticeMode::minima;
};

Json vectors_json(const NormedLattice& lat, const std::vector<LatticeVector>& vs, int digits, Table& table,
                  const std::string& scale) {
  Json a = Json::array();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Interval nv = enclose([&](long bits) { return lat.real_interval(vs[i].norm, bits); }, digits);
    Json j;
    j["i"] = i + 1;
    j["coeffs"] = integers_json(vs[i].coeffs);
    j["norm"] = interval_json(nv, digits);
    a.push_back(std::move(j));
    table.rows.push_back({scale, std::to_string(i + 1), join(vs[i].coeffs), lo_string(nv, digits), hi_string(nv, digits)});
  }
  return a;
}

Json check_json(const BoundCheck& c, int digits) {
  Json j;
  j["value"] = interval_json(c.value, digits);
  j["lower"] = to_string(c.lower);
  j["upper"] = to_string(c.upper);
  return j;
}

Output cmd_lattice(const TargetArgs& ta, const LatticeArgs& la, int digits) {
  ContextPtr ctx = build_context(ta);
  Output o;
  o.json["alphas"] = alphas_json(*ctx);
  o.json["norm"] = la.norm;
  std::vector<NormedLattice> lats;
  std::vector<std::string> scales;
  bool gm = false;
  if (la.norm.rfind("gm:", 0) == 0) {
    gm = true;
    Rational m = parse_rational(la.norm.substr(3));
    if (m.get_den() != 1 || m < 1 || !fits_int64(m.get_num())) throw ParseError("gm:<m> needs a positive integer m");
    if (la.mode == LatticeMode::trajectory) throw ParseError("--trajectory needs the sup norm");
    long mv = static_cast<long>(to_int64(m.get_num()));
    lats.push_back(gm_norm(ctx, greedy_matrix(ctx, mv)));
    scales.push_back(std::to_string(mv));
  } else if (la.norm != "sup") {
    throw ParseError("--norm must be sup or gm:<m>");
  }
  if (!gm) {
    if (la.t.empty()) throw ParseError("the sup norm needs --t");
    for (const auto& t : parse_grid(la.t)) {
      if (t <= 0) throw ParseError("t must be positive");
      if (la.mode != LatticeMode::trajectory) lats.push_back(lambda_lattice(ctx, t));
      scales.push_back(to_string(t));
    }
  }
  const std::string scale_name = gm ? "m" : "t";
  if (la.mode == LatticeMode::trajectory) {
    std::vector<Rational> grid = parse_grid(la.t);
    o.table.header = {"t", "coeffs", "mu1_lo", "mu1_hi"};
    Json pts = Json::array();
    for (const auto& p : lambda1_trajectory(ctx, grid)) {
      Json j;
      j["t"] = to_string(p.t);
      j["coeffs"] = integers_json(p.shortest.coeffs);
      j["mu1"] = interval_json(p.mu1, digits);
      pts.push_back(std::move(j));
      o.table.rows.push_back({to_string(p.t), join(p.shortest.coeffs), lo_string(p.mu1, digits), hi_string(p.mu1, digits)});
    }
    o.json["trajectory"] = std::move(pts);
    return o;
  }
  o.table.header = {scale_name, "i", "coeffs", "norm_lo", "norm_hi"};
  Json results = Json::array();
  for (std::size_t s = 0; s < lats.size(); ++s) {
    const NormedLattice& lat = lats[s];
    Json j;
    j[scale_name] = gm ? Json(lat.m()) : Json(scales[s]);
    if (la.mode == LatticeMode::minima) {
      MinimaReport r = successive_minima(lat);
      j["minima"] = vectors_json(lat, r.vectors, digits, o.table, scales[s]);
      j["minkowski_check"] = check_json(minkowski_second_check(lat, r), digits);
    } else {
      ReducedBasisReport r = reduced_basis(lat);
      j["basis"] = vectors_json(lat, r.basis, digits, o.table, scales[s]);
      j["det"] = integer_json(r.det);
      j["finiteness_check"] = check_json(first_finiteness_check(lat, r), digits);
    }
    results.push_back(std::move(j));
  }
  o.json["results"] = std::move(results);
  return o;
}

DirichletPolicy parse_policy(const std::string& text) {
  DirichletPolicy p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("policy items look like j=<J> or refine=<r>");
    std::string key = item.substr(0, eq);
    Rational v = parse_rational(item.substr(eq + 1));
    if (v.get_den() != 1 || v < 0 || v > 64) throw ParseError("policy value out of range in '" + item + "'");
    int iv = static_cast<int>(v.get_num().get_si());
    if (key == "j") {
      p.J = iv;
    } else if (key == "refine") {
      p.refine = iv;
    } else {
      throw ParseError("unknown policy key '" + key + "'");
    }
  }
  return p;
}

Output cmd_dirichlet(const TargetArgs& ta, const std::string& Q, const std::string& policy_text, int digits) {
  ContextPtr ctx = build_context(ta);
  DirichletPolicy policy = parse_policy(policy_text);
  std::vector<long> grid = parse_int_grid(Q);
  Output o;
  o.json["alphas"] = alphas_json(*ctx);
  o.json["policy"] = {{"j", policy.J}, {"refine", policy.refine}};
  o.table.header = {"Q", "t", "det", "norm_A", "value_lo", "value_hi", "c_lo", "c_hi", "status"};
  std::vector<CPoint> pts;
  if (grid.size() == 1) {
    CPoint p;
    p.Q = grid.front();
    p.cert = dirichlet_basis(ctx, p.Q, policy);
    p.running_max_c = p.cert->c_achieved;
    pts.push_back(std::move(p));
  } else {
    pts = c_trajectory(ctx, grid, policy);
  }
  Json list = Json::array();
  for (const auto& p : pts) {
    Json j;
    j["Q"] = p.Q;
    if (p.cert) {
      const auto& c = *p.cert;
      j["t"] = to_string(c.t);
      j["A"] = matrix_json(c.A);
      j["det"] = integer_json(c.det);
      j["value"] = interval_json(c.value, digits);
      j["c_achieved"] = interval_json(c.c_achieved, digits);
      o.table.rows.push_back({std::to_string(p.Q), to_string(c.t), to_string(c.det), to_string(c.A.max_abs()),
                              lo_string(c.value, digits), hi_string(c.value, digits), lo_string(c.c_achieved, digits),
                              hi_string(c.c_achieved, digits), "ok"});
    } else {
      j["failure"] = p.failure;
      o.table.rows.push_back({std::to_string(p.Q), "", "", "", "", "", "", "", p.failure});
    }
    if (p.running_max_c) j["running_max_c"] = interval_json(*p.running_max_c, digits);
    list.push_back(std::move(j));
  }
  o.json["points"] = std::move(list);
  return o;
}

Output cmd_figure1(const std::string& alpha, int n, long m_max, std::optional<std::size_t> k_max, int digits) {
  TargetArgs ta;
  ta.powers = alpha + ":" + std::to_string(n);
  ContextPtr ctx = build_context(ta);
  constexpr long kDiagnoseBits = 96;
  auto rows = diagnose(ctx, ChainLimits{m_max, k_max}, kDiagnoseBits);
  Output o;
  o.table.header = {"k", "abs_lambda_k1_mid", "abs_lambda_k1_width"};
  Json list = Json::array();
  for (const auto& r : rows) {
    const std::string mid = to_decimal(r.abs_alpha_k1.mid(), digits, Rounding::down);
    const std::string width = to_decimal(r.abs_alpha_k1.width(), digits, Rounding::up);
    Json j;
    j["k"] = r.k;
    j["m_k"] = r.m_k;
    j["abs_lambda_k1"] = interval_json(r.abs_alpha_k1, digits);
    j["mid"] = mid;
    j["width"] = width;
    list.push_back(std::move(j));
    o.table.rows.push_back({std::to_string(r.k), mid, width});
  }
  o.json["alpha"] = alpha;
  o.json["n"] = n;
  o.json["m_max"] = m_max;
  o.json["rows"] = std::move(list);
  return o;
}

}  // namespace

std::vector<std::string> split_specs(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == ',') {
      bool starts = false;
      for (const auto& p : spec_prefixes()) starts = starts || list.compare(i + 1, p.size(), p) == 0;
      if (starts) {
        out.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur += list[i];
  }
  out.push_back(cur);
  for (const auto& s : out) {
    if (s.empty()) throw ParseError("empty number spec in '" + list + "'");
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minkowski chains, Hurwitz pairs and lattice minima", "mchain"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, as_csv = false, as_table = false;
  long precision_bits = 0;
  int digits = 20;
  std::string out_path;
  auto* fj = app.add_flag("--json", as_json, "JSON output");
  auto* fc = app.add_flag("--csv", as_csv, "CSV output");
  auto* ft = app.add_flag("--table", as_table, "Aligned text output");
  fj->excludes(fc)->excludes(ft);
  fc->excludes(ft);
  app.add_option("--precision-bits", precision_bits, "Precision cap for interval refinement")->check(CLI::Range(64L, 1L << 24));
  app.add_option("--digits", digits, "Significant digits of printed interval endpoints")->check(CLI::Range(1, 200));
  app.add_option("--out", out_path, "Write output to this file");

  std::string h_alpha;
  std::size_t h_steps = 10;
  auto* hurwitz = app.add_subcommand("hurwitz", "Farey pairs and LR word");
  hurwitz->add_option("--alpha", h_alpha)->required();
  hurwitz->add_option("--steps", h_steps)->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));

  std::string c_alpha;
  std::size_t c_terms = 20;
  auto* cf = app.add_subcommand("cf", "Regular continued fraction");
  cf->add_option("--alpha", c_alpha)->required();
  cf->add_option("--terms", c_terms)->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));

  TargetArgs m_target;
  long m_max = 0;
  std::optional<std::size_t> k_max;
  auto* mink = app.add_subcommand("minkowski", "Minkowski chain B_k");
  auto* m_alpha = mink->add_option("--alpha", m_target.alpha, "Number specs, comma separated or repeated");
  auto* m_powers = mink->add_option("--powers", m_target.powers, "<alpha>:<n> for (alpha^n, ..., alpha)");
  m_alpha->excludes(m_powers);
  mink->add_option("--m-max", m_max)->required()->check(CLI::Range(1L, 1L << 40));
  mink->add_option("--k-max", k_max)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));

  TargetArgs l_target;
  LatticeArgs l_args;
  bool l_minima = false, l_reduced = false, l_traj = false;
  auto* lattice = app.add_subcommand("lattice", "Successive minima and reduced bases");
  auto* l_alpha = lattice->add_option("--alpha", l_target.alpha);
  auto* l_powers = lattice->add_option("--powers", l_target.powers);
  l_alpha->excludes(l_powers);
  lattice->add_option("--t", l_args.t, "Scale: rational or grid a:b[:step], comma separated");
  lattice->add_option("--norm", l_args.norm, "sup or gm:<m>");
  auto* lm = lattice->add_flag("--minima", l_minima);
  auto* lr = lattice->add_flag("--reduced", l_reduced);
  auto* lt = lattice->add_flag("--trajectory", l_traj);
  lm->excludes(lr)->excludes(lt);
  lr->excludes(lt);

  TargetArgs d_target;
  std::string d_Q, d_policy;
  auto* dir = app.add_subcommand("dirichlet", "GL(ell, Z) Dirichlet certificates");
  auto* d_alpha = dir->add_option("--alpha", d_target.alpha);
  auto* d_powers = dir->add_option("--powers", d_target.powers);
  d_alpha->excludes(d_powers);
  dir->add_option("--Q", d_Q, "Integer or grid a:b[:step], comma separated")->required();
  dir->add_option("--policy", d_policy, "j=<J>[,refine=<r>]");

  std::string f_alpha = "builtin:liouville";
  int f_n = 1;
  long f_m_max = 0;
  std::optional<std::size_t> f_k_max;
  auto* fig = app.add_subcommand("figure1", "|lambda_k1| trajectory of the powers target");
  fig->add_option("--alpha", f_alpha);
  fig->add_option("--n", f_n)->check(CLI::Range(1, 3));
  fig->add_option("--m-max", f_m_max)->required()->check(CLI::Range(1L, 1L << 40));
  fig->add_option("--k-max", f_k_max)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  Format fmt = as_csv ? Format::csv : as_table ? Format::table : Format::json;
  if (fig->parsed() && !as_json && !as_table) fmt = Format::csv;

  std::ostringstream buf;
  try {
    PrecisionGuard guard(precision_bits);
    Output o;
    if (hurwitz->parsed()) {
      o = cmd_hurwitz(h_alpha, h_steps);
    } else if (cf->parsed()) {
      o = cmd_cf(c_alpha, c_terms);
    } else if (mink->parsed()) {
      o = cmd_minkowski(m_target, m_max, k_max, digits);
    } else if (lattice->parsed()) {
      l_args.mode = l_reduced ? LatticeMode::reduced : l_traj ? LatticeMode::trajectory : LatticeMode::minima;
      o = cmd_lattice(l_target, l_args, digits);
    } else if (dir->parsed()) {
      o = cmd_dirichlet(d_target, d_Q, d_policy, digits);
    } else {
      o = cmd_figure1(f_alpha, f_n, f_m_max, f_k_max, digits);
    }
    if (fmt == Format::json) {
      buf << o.json.dump(2) << '\n';
    } else {
      write_table(buf, o.table, fmt);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return kPrecisionExhausted;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistency;
  }

  if (out_path.empty()) {
    out << buf.str();
    return kOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << buf.str();
  if (!f) {
    err << "error: cannot write " << out_path << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace mchain::cli
