#include "thickpat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "thickpat/appendix.hpp"
#include "thickpat/bounds.hpp"
#include "thickpat/game.hpp"
#include "thickpat/patterns.hpp"
#include "thickpat/serialize.hpp"
#include "thickpat/thickness.hpp"

namespace thickpat::cli {

namespace {

/// Raised for internal-consistency alarms; maps to exit code 3.
struct Alarm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Interval parse_hull(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw std::invalid_argument("hull must be lo,hi");
  return Interval(parse_rational(trim(parts[0])), parse_rational(trim(parts[1])));
}

std::pair<Rational, Rational> parse_pair(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw std::invalid_argument("expected a:b, got \"" + s + "\"");
  return {parse_rational(trim(parts[0])), parse_rational(trim(parts[1]))};
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void write_json(const std::string& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

// Minimal SVG scatter/line plot.
struct Series {
  std::string name;
  std::vector<std::pair<double, double>> pts;
  std::string color;
  bool line = false;
};

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    for (auto [x, y] : s.pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  std::ostringstream os;
  os << "<!-- thickpat " << kVersion << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    os << "<text x=\"" << fmt(px(xv), 1) << "\" y=\"" << H - B + 16 << "\" font-size=\"10\" text-anchor=\"middle\">"
       << fmt(xv, 3) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(yv) + 3, 1) << "\" font-size=\"10\" text-anchor=\"end\">"
       << fmt(yv, 3) << "</text>\n";
  }
  int row = 0;
  for (const auto& s : series) {
    if (s.line && s.pts.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
      for (auto [x, y] : s.pts) os << fmt(px(x), 2) << "," << fmt(py(y), 2) << " ";
      os << "\"/>\n";
    } else {
      for (auto [x, y] : s.pts)
        os << "<circle cx=\"" << fmt(px(x), 2) << "\" cy=\"" << fmt(py(y), 2) << "\" r=\"3\" fill=\"" << s.color
           << "\"/>\n";
    }
    os << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 14 * row << "\" font-size=\"11\" fill=\"" << s.color
       << "\">" << s.name << "</text>\n";
    ++row;
  }
  os << "</svg>\n";
  return os.str();
}

// ---- subcommand bodies ----

struct Common {
  int depth = 3;
  std::string json_out;
};

int cmd_thickness(const std::string& desc, const Common& c, bool chunk, bool lower,
                  const std::vector<std::string>& windows, const std::string& centers, const std::string& radii,
                  std::ostream& out) {
  const SetDescriptor d = parse_descriptor_arg(desc);
  Json j;
  const ThicknessValue t = thickness(d, c.depth);
  out << "tau = " << t.str() << "\n";
  j["gap"] = to_json(t);
  if (chunk) {
    const ThicknessValue tc = thickness_chunk(d, c.depth);
    out << "tau_chunk = " << tc.str() << "\n";
    j["chunk"] = to_json(tc);
  }
  if (lower) {
    if (d.is_explicit()) throw std::invalid_argument("ifs lower bound needs a self-similar descriptor");
    const ThicknessValue tl = thickness_ifs_lower(d.as_ifs());
    out << "tau_ifs_lower = " << tl.str() << "\n";
    j["ifs_lower"] = to_json(tl);
  }
  if (!windows.empty()) {
    std::vector<Interval> ws;
    for (const auto& w : windows) ws.push_back(parse_hull(w));
    const ThicknessValue tt = tilde_thickness(d, ws, c.depth);
    out << "tau_tilde = " << tt.str() << "\n";
    j["tilde"] = to_json(tt);
  }
  if (!centers.empty()) {
    const ThicknessValue tl = local_thickness(d, parse_rational_list(centers), parse_rational_list(radii), c.depth);
    out << "tau_local = " << tl.str() << "\n";
    j["local"] = to_json(tl);
  }
  if (!c.json_out.empty()) write_json(c.json_out, j);
  return kOk;
}

int cmd_bounds(const std::string& tau_s, const std::string& A_s, const std::string& D_s, const std::string& m_s,
               const std::string& astels, const std::string& eps_s, mpfr_prec_t prec, const std::string& json_out,
               std::ostream& out) {
  Json j;
  if (!tau_s.empty()) {
    const Rational tau = parse_rational(tau_s);
    if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
    const Enclosure h = hausdorff_lower(tau, prec);
    out << "dim_H >= " << h.str(12) << "\n";
    j["dim_lower"] = Json::array({to_json(h.lower()), to_json(h.upper())});
    if (tau <= 1) {
      out << "N(tau) = 0 (log tau <= 0: formula gives no progressions)\n";
      j["N"] = "0";
    } else {
      const CapacityResult r = ap_capacity(Real(tau), prec);
      out << "N(tau): " << r.str() << "\n";
      j["N"] = to_json(r);
      if (tau > 4) {
        const CapacityResult rp = ap_capacity_proof(Real(tau), prec);
        out << "N_proof(tau): " << rp.str() << "\n";
        j["N_proof"] = to_json(rp);
      }
    }
    if (!A_s.empty()) {
      const BilipCapacity b = bilip_capacity(Real(tau), parse_rational(A_s), parse_rational(D_s.empty() ? "1" : D_s),
                                             parse_rational(m_s.empty() ? "1/4" : m_s), prec);
      out << "beta = " << to_string(b.beta) << ", beta~ = " << to_string(b.beta_tilde) << "\n";
      out << "N_bilip: " << b.proof.str() << "\n";
      out << "N_bilip_statement: " << b.statement.str() << "\n";
      j["bilip"] = Json{{"proof", to_json(b.proof)}, {"statement", to_json(b.statement)}};
    }
  }
  if (!astels.empty()) {
    std::vector<ExtRational> taus;
    for (const auto& s : split(astels, ',')) taus.push_back(ExtRational::parse(trim(s)));
    const AstelsResult a = astels_sumset(taus);
    out << "astels: " << a.str() << "\n";
    j["astels"] = a.str();
  }
  if (!eps_s.empty()) {
    const auto [lo, hi] = bfs_ap_envelope(parse_rational(eps_s), prec);
    out << "envelope = [" << lo.str(10) << ", " << to_string(hi) << "]\n";
  }
  if (!json_out.empty()) write_json(json_out, j);
  return kOk;
}

void print_certificate(const Certificate& c, std::ostream& out) {
  out << "verdict = " << verdict_label(c.verdict) << "\n";
  out << "depth = " << c.depth << "\n";
  if (c.witness) out << "witness = " << to_string(*c.witness) << "\n";
  if (c.present()) out << "in_set = " << (c.in_set ? "true" : "false") << "\n";
}

int cmd_find_ap(const std::string& desc, const Common& c, int m, const std::string& delta, const std::string& deltas,
                bool longest, int m_max, std::size_t budget, const std::string& csv, std::ostream& out) {
  const SetDescriptor d = parse_descriptor_arg(desc);
  if (longest) {
    const LongestAp r = longest_ap(d, c.depth, m_max, budget);
    out << "longest m = " << r.m << "\n";
    if (r.delta) out << "delta = " << to_string(*r.delta) << "\n";
    if (r.witness) out << "witness = " << to_string(*r.witness) << "\n";
    out << "candidates = " << r.candidates << (r.exhausted ? " (budget hit)" : "") << "\n";
    out << "min_delta = " << to_string(r.min_delta) << "\n";
    if (!c.json_out.empty())
      write_json(c.json_out, Json{{"m", r.m},
                                  {"delta", r.delta ? to_json(*r.delta) : Json(nullptr)},
                                  {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
                                  {"candidates", r.candidates},
                                  {"exhausted", r.exhausted},
                                  {"verdict", verdict_label(r.verdict)}});
    return kOk;
  }
  if (!deltas.empty()) {
    const auto ds = parse_rational_list(deltas);
    const auto certs = ap_search_grid(d, m, ds, c.depth);
    std::ostringstream csv_text;
    csv_text << "delta,m,verdict,depth,witness\n";
    Json arr = Json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& ct = certs[i];
      out << to_string(ds[i]) << ": " << verdict_label(ct.verdict) << "\n";
      csv_text << to_string(ds[i]) << "," << m << "," << verdict_label(ct.verdict) << "," << ct.depth << ","
               << (ct.witness ? to_string(*ct.witness) : "") << "\n";
      arr.push_back(to_json(ct));
    }
    if (!csv.empty()) write_file(csv, csv_text.str());
    if (!c.json_out.empty()) write_json(c.json_out, arr);
    return kOk;
  }
  if (delta.empty()) throw CLI::ValidationError("--delta", "one of --delta, --deltas or --longest is required");
  const Certificate ct = ap_search(d, m, parse_rational(delta), c.depth);
  print_certificate(ct, out);
  if (!c.json_out.empty()) write_json(c.json_out, to_json(ct));
  return kOk;
}

int cmd_find_pattern(const std::string& desc, const Common& c, const std::string& points, const std::string& lambdas,
                     const std::string& qx, const std::string& qy, const std::string& qb, std::ostream& out) {
  const SetDescriptor d = parse_descriptor_arg(desc);
  if (!qx.empty()) {
    const QuadraticSetup q = quadratic_pattern_setup(parse_rational_list(qx), parse_rational_list(qy),
                                                     parse_rational(qb.empty() ? "0" : qb));
    if (!q.accepted) throw std::invalid_argument("quadratic setup rejected: " + q.rejection);
    out << "window = " << q.window.str() << ", c1 = " << to_string(q.c1) << ", c2 = " << to_string(q.c2) << "\n";
    const Certificate ct = pattern_search_general(d, q.maps, q.window, c.depth);
    print_certificate(ct, out);
    if (!c.json_out.empty()) write_json(c.json_out, to_json(ct));
    return kOk;
  }
  if (points.empty()) throw CLI::ValidationError("--points", "required unless --quad-x is given");
  const auto pts = parse_rational_list(points);
  if (!lambdas.empty()) {
    const auto ls = parse_rational_list(lambdas);
    const HomothetyResult h = homothety_search(d, pts, ls, c.depth);
    Json arr = Json::array();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      out << "lambda " << to_string(ls[i]) << ": " << verdict_label(h.per_lambda[i].verdict) << "\n";
      arr.push_back(to_json(h.per_lambda[i]));
    }
    out << "smallest present lambda = " << (h.smallest_present ? to_string(*h.smallest_present) : "none") << "\n";
    if (!c.json_out.empty()) write_json(c.json_out, arr);
    return kOk;
  }
  const Certificate ct = translate_search(d, pts, c.depth);
  print_certificate(ct, out);
  if (!c.json_out.empty()) write_json(c.json_out, to_json(ct));
  return kOk;
}

int cmd_gap_lemma(const std::string& a, const std::string& b, const Common& c, std::ostream& out) {
  const GapLemmaResult r = gap_lemma_check(parse_descriptor_arg(a), parse_descriptor_arg(b), c.depth);
  out << "status = " << gap_lemma_status_label(r.status) << "\n";
  out << "tau1 = " << r.tau1.str() << "\n";
  out << "tau2 = " << r.tau2.str() << "\n";
  if (!r.reason.empty()) out << "reason = " << r.reason << "\n";
  if (r.witness) print_certificate(*r.witness, out);
  if (!c.json_out.empty()) {
    Json j{{"status", gap_lemma_status_label(r.status)},
           {"reason", r.reason},
           {"tau1", to_json(r.tau1)},
           {"tau2", to_json(r.tau2)},
           {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
           {"alarm", r.alarm}};
    write_json(c.json_out, j);
  }
  if (r.alarm) throw Alarm("gap lemma hypotheses hold but the depth-" + std::to_string(c.depth) +
                           " covers do not intersect");
  return kOk;
}

int cmd_sumset(const std::vector<std::string>& descs, const Common& c, std::ostream& out) {
  if (descs.size() < 2) throw std::invalid_argument("sumset needs at least two descriptors");
  std::vector<SetDescriptor> ds;
  std::vector<ExtRational> taus;
  for (const auto& s : descs) {
    ds.push_back(parse_descriptor_arg(s));
    const ThicknessValue t = thickness(ds.back(), std::max(c.depth, 1));
    taus.push_back(t.value);
  }
  const IntervalUnion u = sumset_cover(ds, c.depth);
  out << "cover = " << u.str() << "\n";
  out << "parts = " << u.size() << "\n";
  out << "astels: " << astels_sumset(taus).str() << "\n";
  if (!c.json_out.empty()) write_json(c.json_out, Json{{"cover", to_json(u)}});
  return kOk;
}

SetDescriptor normalized_for_game(const std::string& desc, std::ostream& out) {
  const SetDescriptor d = parse_descriptor_arg(desc);
  if (d.hull() == Interval(Rational(0), Rational(1))) return d;
  out << "note: descriptor normalized to hull [0,1]; moves use normalized coordinates\n";
  return normalize(d).set;
}

std::string ball_str(const Ball& b) { return "B(" + to_string(b.center) + ", " + to_string(b.radius) + ")"; }

void print_alice(const Turn& t, std::ostream& out) {
  if (t.alice.erased.empty()) {
    out << "alice passes\n";
  } else {
    out << "alice erases";
    for (const auto& e : t.alice.erased) out << " " << ball_str(e);
    out << "\n";
  }
  out << "alice move " << (t.alice_check.ok ? "legal" : "illegal: " + t.alice_check.rule)
      << (t.alice_check.note.empty() ? "" : " (" + t.alice_check.note + ")") << "\n";
}

int cmd_play_game(const std::string& desc, const std::string& beta_s, const std::string& stop_s, std::size_t plays,
                  std::uint64_t seed, bool interactive, const std::string& script, const std::string& transcript_out,
                  bool serial, std::ostream& out, std::istream& in) {
  const SetDescriptor d = normalized_for_game(desc, out);
  const Rational beta = parse_rational(beta_s);
  const Rational stop = parse_rational(stop_s);
  const GameParams params = cantor_params(d, beta);
  const AliceStrategy alice = alice_cantor_strategy(d, params, stop);
  const TargetCover cover = target_cover(d, stop, beta);
  out << "params = " << params.str() << "\n";
  if (interactive || !script.empty()) {
    BobStrategy bob;
    if (!script.empty()) {
      std::ifstream f(script);
      if (!f) throw std::invalid_argument("cannot read script " + script);
      std::vector<Ball> moves;
      std::string line;
      while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string x, r;
        ls >> x >> r;
        moves.push_back(Ball{parse_rational(x), parse_rational(r)});
      }
      bob = bob_scripted(std::move(moves));
    } else {
      bob.name = "interactive";
      bob.next = [&](const GameTranscript& tr) -> std::optional<Ball> {
        if (!tr.turns.empty()) print_alice(tr.turns.back(), out);
        for (;;) {
          out << "bob> " << std::flush;
          std::string line;
          if (!std::getline(in, line)) return std::nullopt;
          line = trim(line);
          if (line.empty()) continue;
          if (line == "quit" || line == "q") return std::nullopt;
          std::istringstream ls(line);
          std::string x, r;
          ls >> x >> r;
          try {
            const Ball b{parse_rational(x), parse_rational(r)};
            const Legality l = validate_bob_move(tr, b);
            if (l.ok) return b;
            out << "bob move illegal: " << l.rule << "\n";
          } catch (const std::exception& e) {
            out << "expected \"center radius\": " << e.what() << "\n";
          }
        }
      };
    }
    const GameTranscript tr = play(bob, alice, stop, cover);
    if (interactive && !tr.turns.empty()) print_alice(tr.turns.back(), out);
    out << "outcome = " << outcome_label(tr.outcome) << "\n";
    if (!tr.violation.empty()) out << "violation = " << tr.violation << "\n";
    if (!transcript_out.empty()) write_json(transcript_out, to_json(tr));
    return kOk;
  }
  auto make_bob = [&](std::uint64_t s) { return bob_uniform_random(s, params, Rational(0), Rational(1)); };
  const auto ts = serial ? play_batch_serial(make_bob, alice, stop, cover, plays, seed)
                         : play_batch(make_bob, alice, stop, cover, plays, seed);
  const BatchSummary s = summarize(ts);
  out << "plays = " << s.plays << "\n";
  out << "erased = " << s.erased << "\n";
  out << "in-target-cover = " << s.in_cover << "\n";
  out << "undetermined = " << s.undetermined << "\n";
  out << "violations = " << s.violations << "\n";
  out << "repeated erasures = " << s.repeated_erasures << "\n";
  if (!transcript_out.empty()) {
    Json arr = Json::array();
    for (const auto& t : ts) arr.push_back(to_json(t));
    write_json(transcript_out, arr);
  }
  if (s.violations > 0 || s.undetermined > 0 || s.repeated_erasures > 0)
    throw Alarm("strategy failed to win every play within the horizon");
  return kOk;
}

struct AppendixOpts {
  std::string beta = "1/4";
  int N = 2;
  int J = 3;
  std::string alpha = "1/1000";
  std::string c = "1/2";
  std::string gamma = "1/72";
  std::string oracle = "none";
};

ConstructionParams construction_params(const AppendixOpts& o) {
  ConstructionParams p;
  p.beta = parse_rational(o.beta);
  p.N = o.N;
  p.J = o.J;
  p.alpha = Real(parse_rational(o.alpha));
  p.c = Real(parse_rational(o.c));
  p.gamma = parse_rational(o.gamma);
  p.validate();
  return p;
}

AliceOracle make_oracle(const std::string& name, const ConstructionParams& p) {
  if (name == "none") return no_erasure_oracle();
  if (name == "centered") {
    const Rational a = p.alpha.exact();
    return [a](const GridBall& b) { return std::vector<Ball>{Ball{b.center, a * b.radius}}; };
  }
  throw std::invalid_argument("unknown oracle " + name + " (none, centered)");
}

int cmd_build_appendix(const AppendixOpts& o, const std::string& tree_out, const std::string& csv, bool serial,
                       std::ostream& out) {
  const ConstructionParams p = construction_params(o);
  const AliceOracle oracle = make_oracle(o.oracle, p);
  const FractalTree t = serial ? build_fractal_serial(p, oracle) : build_fractal(p, oracle);
  const DimensionEstimate e = dimension_estimate(t);
  out << "M = " << t.M << "\n";
  for (std::size_t j = 0; j < t.levels.size(); ++j) out << "level " << j << ": " << t.levels[j].size() << " balls\n";
  out << "box slope = " << fmt(e.box_slope) << "\n";
  out << "node slope = " << fmt(e.node_slope) << "\n";
  out << "log M / (N |log beta|) = " << fmt(e.theoretical) << "\n";
  if (e.dim_bound) out << "1 - 1440 alpha log 6 / |log beta| = " << fmt(*e.dim_bound) << "\n";
  out << "note: Alice's answers are finite collections per turn\n";
  if (!tree_out.empty()) write_json(tree_out, to_json(t));
  if (!csv.empty()) {
    std::ostringstream os;
    os << "level,scale,count,nodes\n";
    for (std::size_t j = 0; j < e.box_counts.size(); ++j)
      os << j << "," << to_string(e.box_counts[j].first) << "," << e.box_counts[j].second << ","
         << t.levels[j].size() << "\n";
    write_file(csv, os.str());
  }
  return kOk;
}

int cmd_verify_lemmas(const std::string& betas, const std::string& Ns, long zmax, std::ostream& out) {
  bool failed = false;
  for (const auto& bs : split(betas, ',')) {
    const Rational beta = parse_rational(trim(bs));
    for (const auto& ns : split(Ns, ',')) {
      const int N = std::stoi(trim(ns));
      ConstructionParams p;
      p.beta = beta;
      p.N = N;
      p.validate();
      const std::string tag = "beta=" + to_string(beta) + " N=" + std::to_string(N);
      if (N >= 2) {
        const NestingSweep s = sweep_nesting_lemma(beta, N, zmax);
        out << tag << " nesting: " << s.checked << " checked, " << s.counterexamples << " counterexamples, "
            << s.geometric_failures << " geometric failures, min|I1| = " << to_string(s.min_i1_length)
            << ", min|I2| = " << to_string(s.min_i2_length) << "\n";
        for (const auto& r : s.reports) out << "  " << r << "\n";
        if (s.counterexamples || s.geometric_failures || s.min_i1_length < 1 || s.min_i2_length < 12) failed = true;
      }
      const ProjectionSweep ps = sweep_projection(p, zmax);
      out << tag << " projection: " << ps.checked << " checked, " << ps.failures << " failures, "
          << ps.containment_failures << " containment failures\n";
      for (std::size_t i = 0; i < std::min<std::size_t>(ps.reports.size(), 10); ++i)
        out << "  " << ps.reports[i] << "\n";
      if (ps.failures || ps.containment_failures) failed = true;
      const CountingInstance ci = counting_chain(grid_ball(0, Grid::D, 0, p), no_erasure_oracle(), p);
      const bool ok = ci.children_ok;
      out << tag << " children: " << ci.children << " (bound ceil(7/24 beta^-N) = " << ci.obs_bound << ") "
          << (ok ? "ok" : "FAIL") << "\n";
      if (!ok) failed = true;
    }
  }
  if (failed) throw Alarm("lemma verification found counterexamples");
  return kOk;
}

int cmd_report(const std::string& dir, int depth, int ap_depth, std::size_t budget, std::ostream& out) {
  std::filesystem::create_directories(dir);
  // Delta vs verdict grid for 3-term progressions.
  std::ostringstream grid;
  grid << "epsilon,delta,m,verdict,depth,witness\n";
  std::vector<Series> gs;
  const std::vector<std::pair<std::string, std::string>> colors = {
      {"present-at-depth", "#1b7837"}, {"certified-absent", "#b2182b"}, {"inconclusive", "#777777"},
      {"present-candidate", "#2166ac"}};
  for (const auto& [label, col] : colors) gs.push_back(Series{label, {}, col, false});
  for (const char* es : {"1/3", "1/5"}) {
    const Rational eps = parse_rational(es);
    const SetDescriptor d = SetDescriptor::middle_epsilon(eps);
    std::vector<Rational> ds;
    for (int k = 1; k <= 36; ++k) ds.push_back(make_rational(k, 72));
    const auto certs = ap_search_grid(d, 3, ds, depth);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& c = certs[i];
      grid << es << "," << to_string(ds[i]) << ",3," << verdict_label(c.verdict) << "," << c.depth << ","
           << (c.witness ? to_string(*c.witness) : "") << "\n";
      for (auto& s : gs)
        if (s.name == verdict_label(c.verdict)) s.pts.emplace_back(to_double(ds[i]), to_double(eps));
    }
  }
  write_file(dir + "/verdict_grid.csv", grid.str());
  write_file(dir + "/verdict_grid.svg", svg_plot("3-term progressions in M_eps", "delta", "epsilon", gs));

  // Box counts of the appendix construction.
  ConstructionParams p;
  p.beta = Rational(1, 4);
  p.N = 2;
  p.J = 5;
  const FractalTree t = build_fractal(p, no_erasure_oracle());
  const DimensionEstimate e = dimension_estimate(t);
  std::ostringstream bc;
  bc << "level,scale,count,nodes\n";
  Series pts{"box counts", {}, "#2166ac", false};
  Series fit{"slope " + fmt(e.box_slope, 4), {}, "#b2182b", true};
  for (std::size_t j = 0; j < e.box_counts.size(); ++j) {
    const auto& [s, n] = e.box_counts[j];
    bc << j << "," << to_string(s) << "," << n << "," << t.levels[j].size() << "\n";
    pts.pts.emplace_back(-std::log(to_double(s)), std::log(static_cast<double>(n)));
  }
  if (!pts.pts.empty()) {
    const double xa = pts.pts.front().first, xb = pts.pts.back().first;
    const double yb = pts.pts.back().second;
    fit.pts = {{xa, yb - e.box_slope * (xb - xa)}, {xb, yb}};
  }
  write_file(dir + "/box_counts.csv", bc.str());
  write_file(dir + "/box_counts.svg", svg_plot("appendix construction box counts", "log(1/s)", "log N(s)", {pts, fit}));

  // Longest progression trend against the unit-constant envelope.
  std::ostringstream lt;
  lt << "epsilon,m,delta,envelope_lo,envelope_hi\n";
  Series ms{"longest AP", {}, "#1b7837", false};
  Series lo{"(1/eps)/log(1/eps)", {}, "#2166ac", true};
  Series hi{"1/eps", {}, "#b2182b", true};
  for (const char* es : {"1/3", "1/5", "1/9"}) {
    const Rational eps = parse_rational(es);
    const LongestAp r = longest_ap(SetDescriptor::middle_epsilon(eps), ap_depth, 64, budget);
    const auto [elo, ehi] = bfs_ap_envelope(eps);
    lt << es << "," << r.m << "," << (r.delta ? to_string(*r.delta) : "") << "," << fmt(elo.mid()) << ","
       << to_string(ehi) << "\n";
    const double x = 1 / to_double(eps);
    ms.pts.emplace_back(x, r.m);
    lo.pts.emplace_back(x, elo.mid());
    hi.pts.emplace_back(x, to_double(ehi));
  }
  write_file(dir + "/longest_ap.csv", lt.str());
  write_file(dir + "/longest_ap.svg", svg_plot("longest progression vs 1/eps", "1/eps", "m", {ms, lo, hi}));
  out << "wrote verdict_grid, box_counts, longest_ap (.csv, .svg) to " << dir << "\n";
  return kOk;
}

}  // namespace

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) {
    const std::string t = trim(s);
    if (!t.empty()) out.push_back(parse_rational(t));
  }
  return out;
}

SetDescriptor parse_descriptor_arg(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = colon == std::string::npos ? "" : text.substr(0, colon);
  if (kind == "middle" || kind == "ifs" || kind == "gaps") {
    std::string body = text.substr(colon + 1);
    Interval hull(Rational(0), Rational(1));
    const auto at = body.find('@');
    if (at != std::string::npos) {
      hull = parse_hull(body.substr(at + 1));
      body = body.substr(0, at);
    }
    if (kind == "middle") return SetDescriptor::middle_epsilon(parse_rational(trim(body)), hull);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& item : split(body, ',')) {
      if (!trim(item).empty()) pairs.push_back(parse_pair(item));
    }
    if (kind == "ifs") {
      std::vector<Rational> ratios, offsets;
      for (const auto& [r, o] : pairs) {
        ratios.push_back(r);
        offsets.push_back(o);
      }
      return SetDescriptor::ifs(hull, std::move(ratios), std::move(offsets));
    }
    std::vector<OpenInterval> gaps;
    for (const auto& [a, b] : pairs) gaps.push_back(OpenInterval{a, b});
    return SetDescriptor::explicit_gaps(hull, std::move(gaps));
  }
  std::ifstream f(text);
  if (!f) throw std::invalid_argument("not a descriptor shorthand or readable file: " + text);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON in ") + text + ": " + e.what());
  }
  return descriptor_from_json(j);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Thickness, patterns and games on Cantor sets", "thickpat"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int prec_flag = 0;
  app.add_option("--precision", prec_flag, "starting MPFR precision in bits (>= 53)");
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--depth", common.depth, "construction depth")->check(CLI::NonNegativeNumber);
    s->add_option("--json", common.json_out, "write the result as JSON");
  };

  std::string desc, desc2;
  std::vector<std::string> descs;

  auto* th = app.add_subcommand("thickness", "Newhouse thickness of a set");
  th->add_option("set", desc, "descriptor shorthand or JSON file")->required();
  add_common(th);
  bool chunk = false, lower = false;
  std::vector<std::string> windows;
  std::string centers, radii;
  th->add_flag("--chunk", chunk, "also compute the chunk definition");
  th->add_flag("--ifs-lower", lower, "also report the ratio lower bound");
  th->add_option("--window", windows, "lo,hi window for the local thickness (repeatable)");
  th->add_option("--centers", centers, "ball centers for the local thickness");
  th->add_option("--radii", radii, "ball radii for the local thickness");

  auto* bd = app.add_subcommand("bounds", "dimension, capacity and sumset bounds");
  std::string tau_s, A_s, D_s, m_s, astels, eps_s, bounds_json;
  bd->add_option("--tau", tau_s, "thickness");
  bd->add_option("--A", A_s, "bi-Lipschitz constant");
  bd->add_option("--D", D_s, "hull diameter");
  bd->add_option("--m", m_s, "scale parameter m");
  bd->add_option("--astels", astels, "comma list of thicknesses (inf allowed)");
  bd->add_option("--eps", eps_s, "epsilon for the progression envelope");
  bd->add_option("--json", bounds_json, "write the result as JSON");

  auto* fa = app.add_subcommand("find-ap", "arithmetic progression search");
  fa->add_option("set", desc)->required();
  add_common(fa);
  int m = 3, m_max = 16;
  std::string delta, deltas, csv;
  bool longest = false;
  std::size_t budget = 100000;
  fa->add_option("--m", m, "progression length")->check(CLI::Range(2, 1 << 20));
  fa->add_option("--delta", delta, "common difference");
  fa->add_option("--deltas", deltas, "comma list of differences");
  fa->add_option("--csv", csv, "CSV of delta vs verdict");
  fa->add_flag("--longest", longest, "longest progression over the endpoint difference grid");
  fa->add_option("--m-max", m_max, "longest: maximal length tried");
  fa->add_option("--budget", budget, "longest: candidate differences kept");

  auto* fp = app.add_subcommand("find-pattern", "translates, homotheties and quadratic patterns");
  fp->add_option("set", desc)->required();
  add_common(fp);
  std::string points, lambdas, qx, qy, qb;
  fp->add_option("--points", points, "pattern points x_i");
  fp->add_option("--lambdas", lambdas, "homothety ratios");
  fp->add_option("--quad-x", qx, "quadratic centers x_i");
  fp->add_option("--quad-y", qy, "quadratic offsets y_i");
  fp->add_option("--quad-b", qb, "quadratic target hull left end b");

  auto* gl = app.add_subcommand("gap-lemma", "check the hypotheses and search for an intersection point");
  gl->add_option("first", desc)->required();
  gl->add_option("second", desc2)->required();
  add_common(gl);

  auto* ss = app.add_subcommand("sumset", "Minkowski sum of construction covers");
  ss->add_option("sets", descs)->required();
  add_common(ss);

  auto* pg = app.add_subcommand("play-game", "the set's Alice strategy against random, scripted or human Bob");
  pg->add_option("set", desc)->required();
  std::string beta_s = "1/5", stop_s = "1/1000000", script, transcript_out;
  std::size_t plays = 100;
  std::uint64_t seed = 1;
  bool interactive = false, serial = false;
  pg->add_option("--beta", beta_s, "Bob's shrink factor");
  pg->add_option("--stop", stop_s, "stop radius");
  pg->add_option("--plays", plays, "number of random plays");
  pg->add_option("--seed", seed, "first seed");
  pg->add_flag("--interactive", interactive, "read Bob's moves as \"center radius\" lines from stdin");
  pg->add_option("--script", script, "file of \"center radius\" lines");
  pg->add_option("--transcript", transcript_out, "write transcript JSON");
  pg->add_flag("--serial", serial, "use the serial batch runner");

  auto* ba = app.add_subcommand("build-appendix", "grid-ball construction of a winning set");
  AppendixOpts ao;
  std::string tree_out, box_csv;
  ba->add_option("--beta", ao.beta);
  ba->add_option("--N", ao.N)->check(CLI::PositiveNumber);
  ba->add_option("--J", ao.J)->check(CLI::NonNegativeNumber);
  ba->add_option("--alpha", ao.alpha);
  ba->add_option("--c", ao.c);
  ba->add_option("--gamma", ao.gamma);
  ba->add_option("--oracle", ao.oracle, "none or centered");
  ba->add_option("--tree", tree_out, "tree dump JSON");
  ba->add_option("--csv", box_csv, "box counts CSV");
  ba->add_flag("--serial", serial, "build levels serially");

  auto* vl = app.add_subcommand("verify-lemmas", "exhaustive lattice lemma checks");
  std::string vbetas = "1/4,1/5", vNs = "2,3";
  long zmax = 20;
  vl->add_option("--betas", vbetas);
  vl->add_option("--Ns", vNs);
  vl->add_option("--zmax", zmax);

  auto* rp = app.add_subcommand("report", "CSV and SVG summaries");
  std::string out_dir = "report";
  int rdepth = 4, ap_depth = 4;
  std::size_t rbudget = 100000;
  rp->add_option("--out", out_dir, "output directory");
  rp->add_option("--depth", rdepth, "depth of the verdict grid");
  rp->add_option("--ap-depth", ap_depth, "depth of the longest-progression trend");
  rp->add_option("--budget", rbudget, "candidate budget of the trend");

  std::vector<const char*> argv{"thickpat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const mpfr_prec_t prec = prec_flag > 0 ? prec_flag : precision_from_env();
    if (prec < 53) throw std::invalid_argument("precision must be at least 53 bits");
    if (*th) return cmd_thickness(desc, common, chunk, lower, windows, centers, radii, out);
    if (*bd) return cmd_bounds(tau_s, A_s, D_s, m_s, astels, eps_s, prec, bounds_json, out);
    if (*fa) return cmd_find_ap(desc, common, m, delta, deltas, longest, m_max, budget, csv, out);
    if (*fp) return cmd_find_pattern(desc, common, points, lambdas, qx, qy, qb, out);
    if (*gl) return cmd_gap_lemma(desc, desc2, common, out);
    if (*ss) return cmd_sumset(descs, common, out);
    if (*pg) return cmd_play_game(desc, beta_s, stop_s, plays, seed, interactive, script, transcript_out, serial, out, in);
    if (*ba) return cmd_build_appendix(ao, tree_out, box_csv, serial, out);
    if (*vl) return cmd_verify_lemmas(vbetas, vNs, zmax, out);
    if (*rp) return cmd_report(out_dir, rdepth, ap_depth, rbudget, out);
  } catch (const Alarm& e) {
    err << "alarm: " << e.what() << "\n";
    return kAlarm;
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    err << "validation: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "validation: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "validation: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace thickpat::cli
