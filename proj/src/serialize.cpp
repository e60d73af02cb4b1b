#include "thickpat/serialize.hpp"

namespace thickpat {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

ThicknessKind parse_kind(const std::string& s) {
  for (auto k : {ThicknessKind::Exact, ThicknessKind::LowerBound, ThicknessKind::DepthTruncation})
    if (kind_label(k) == s) return k;
  throw SchemaError("unknown thickness kind: " + s);
}

Json to_json(const std::optional<Interval>& iv) { return iv ? to_json(*iv) : Json(nullptr); }

Json map_to_json(const std::map<std::string, std::string>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[k] = v;
  return o;
}

std::map<std::string, std::string> map_from_json(const Json& j) {
  std::map<std::string, std::string> m;
  if (!j.is_object()) throw SchemaError("expected an object of strings");
  for (const auto& [k, v] : j.items()) m[k] = v.get<std::string>();
  return m;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::exception& e) {
    throw SchemaError(std::string("bad rational: ") + e.what());
  }
  throw SchemaError("rationals must be \"p/q\" strings or integers");
}

Json to_json(const Interval& iv) { return Json::array({to_json(iv.lo), to_json(iv.hi)}); }

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("intervals are two-element arrays");
  const Rational a = rational_from_json(j[0]);
  const Rational b = rational_from_json(j[1]);
  if (b < a) throw SchemaError("interval endpoints out of order");
  return Interval(a, b);
}

Json to_json(const IntervalUnion& u) {
  Json a = Json::array();
  for (const auto& iv : u.parts()) a.push_back(to_json(iv));
  return a;
}

IntervalUnion union_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("interval unions are arrays of intervals");
  std::vector<Interval> parts;
  for (const auto& e : j) parts.push_back(interval_from_json(e));
  return IntervalUnion::from_intervals(parts);
}

Json to_json(const Real& r) {
  if (r.is_exact()) return to_json(r.exact());
  const Enclosure e = r.enclose(128);
  return Json{{"label", r.label()}, {"lo", to_json(e.lower())}, {"hi", to_json(e.upper())}};
}

Real real_from_json(const Json& j) {
  if (!j.is_object()) return Real(rational_from_json(j));
  const Rational lo = rational_from_json(need(j, "lo"));
  const Rational hi = rational_from_json(need(j, "hi"));
  if (hi < lo) throw SchemaError("real enclosure out of order");
  const std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
  return Real::computed([lo, hi](mpfr_prec_t prec) { return Enclosure::between(lo, hi, prec); }, label);
}

Json to_json(const SetDescriptor& d) {
  Json j;
  j["hull"] = to_json(d.hull());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitGaps>) {
          j["kind"] = "gaps";
          Json g = Json::array();
          for (const auto& o : s.gaps) g.push_back(Json::array({to_json(o.lo), to_json(o.hi)}));
          j["gaps"] = g;
        } else if constexpr (std::is_same_v<T, SelfSimilarIFS>) {
          j["kind"] = "ifs";
          j["ifs"] = Json{{"ratios", rationals_to_json(s.ratios)}, {"offsets", rationals_to_json(s.offsets)}};
        } else {
          j["kind"] = "middle";
          j["epsilon"] = to_json(s.epsilon);
        }
      },
      d.shape());
  return j;
}

SetDescriptor descriptor_from_json(const Json& j) {
  const Interval hull = interval_from_json(need(j, "hull"));
  const std::string kind = need_string(j, "kind");
  try {
    if (kind == "gaps") {
      std::vector<OpenInterval> gaps;
      for (const auto& g : need(j, "gaps")) {
        if (!g.is_array() || g.size() != 2) throw SchemaError("gaps are two-element arrays");
        gaps.push_back(OpenInterval{rational_from_json(g[0]), rational_from_json(g[1])});
      }
      return SetDescriptor::explicit_gaps(hull, std::move(gaps));
    }
    if (kind == "ifs") {
      const Json& f = need(j, "ifs");
      return SetDescriptor::ifs(hull, rationals_from_json(need(f, "ratios")), rationals_from_json(need(f, "offsets")));
    }
    if (kind == "middle") return SetDescriptor::middle_epsilon(rational_from_json(need(j, "epsilon")), hull);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown descriptor kind: " + kind);
}

Json to_json(const ThicknessValue& t) {
  return Json{{"value", t.value.str()}, {"kind", kind_label(t.kind)}, {"depth", t.depth}, {"note", t.note}};
}

ThicknessValue thickness_from_json(const Json& j) {
  ThicknessValue t;
  t.value = ExtRational::parse(need_string(j, "value"));
  t.kind = parse_kind(need_string(j, "kind"));
  t.depth = need(j, "depth").get<int>();
  t.note = j.value("note", std::string());
  return t;
}

Json to_json(const Certificate& c) {
  Json j;
  j["verdict"] = verdict_label(c.verdict);
  j["depth"] = c.depth;
  j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  j["witness_set"] = to_json(c.witness_set);
  j["in_set"] = c.in_set;
  j["parameters"] = map_to_json(c.parameters);
  j["provenance"] = c.provenance;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  try {
    c.verdict = parse_verdict(need_string(j, "verdict"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  c.depth = need(j, "depth").get<int>();
  const Json& w = need(j, "witness");
  if (!w.is_null()) c.witness = rational_from_json(w);
  c.witness_set = union_from_json(need(j, "witness_set"));
  c.in_set = need(j, "in_set").get<bool>();
  c.parameters = map_from_json(need(j, "parameters"));
  c.provenance = need(j, "provenance").get<std::vector<std::string>>();
  return c;
}

Json to_json(const CapacityResult& c) {
  Json j;
  j["N"] = c.N ? Json(c.N->get_str()) : Json(nullptr);
  j["pre_floor"] = Json::array({to_json(c.pre_floor_lo), to_json(c.pre_floor_hi)});
  j["precision"] = c.precision;
  j["variant"] = c.variant;
  j["inputs"] = map_to_json(c.inputs);
  return j;
}

CapacityResult capacity_from_json(const Json& j) {
  CapacityResult c;
  const Json& n = need(j, "N");
  if (!n.is_null()) c.N = Integer(n.get<std::string>());
  const Interval pf = interval_from_json(need(j, "pre_floor"));
  c.pre_floor_lo = pf.lo;
  c.pre_floor_hi = pf.hi;
  c.precision = need(j, "precision").get<mpfr_prec_t>();
  c.variant = need_string(j, "variant");
  c.inputs = map_from_json(need(j, "inputs"));
  return c;
}

Json to_json(const GameParams& p) {
  return Json{{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"c", to_json(p.c)}, {"rho", to_json(p.rho)}};
}

GameParams game_params_from_json(const Json& j) {
  GameParams p;
  p.alpha = real_from_json(need(j, "alpha"));
  p.beta = rational_from_json(need(j, "beta"));
  p.c = real_from_json(need(j, "c"));
  p.rho = rational_from_json(need(j, "rho"));
  return p;
}

Json to_json(const Ball& b) { return Json{{"center", to_json(b.center)}, {"radius", to_json(b.radius)}}; }

Ball ball_from_json(const Json& j) {
  return Ball{rational_from_json(need(j, "center")), rational_from_json(need(j, "radius"))};
}

Json to_json(const GameTranscript& t) {
  Json j;
  j["params"] = to_json(t.params);
  Json moves = Json::array();
  for (const auto& turn : t.turns) {
    Json m;
    m["bob"] = to_json(turn.bob);
    Json er = Json::array();
    for (const auto& b : turn.alice.erased) er.push_back(to_json(b));
    m["alice"] = er;
    m["legal"] = turn.alice_check.ok;
    m["rule"] = turn.alice_check.rule;
    m["note"] = turn.alice_check.note;
    moves.push_back(m);
  }
  j["moves"] = moves;
  j["erased"] = to_json(t.erased);
  j["outcome"] = outcome_label(t.outcome);
  j["final_interval"] = to_json(t.final_interval);
  j["stop_radius"] = to_json(t.stop_radius);
  j["violation"] = t.violation;
  j["notes"] = t.notes;
  return j;
}

GameTranscript transcript_from_json(const Json& j) {
  GameTranscript t;
  t.params = game_params_from_json(need(j, "params"));
  for (const auto& m : need(j, "moves")) {
    Turn turn;
    turn.bob = ball_from_json(need(m, "bob"));
    for (const auto& b : need(m, "alice")) turn.alice.erased.push_back(ball_from_json(b));
    turn.alice_check.ok = need(m, "legal").get<bool>();
    turn.alice_check.rule = m.value("rule", std::string());
    turn.alice_check.note = m.value("note", std::string());
    t.turns.push_back(std::move(turn));
  }
  t.erased = union_from_json(need(j, "erased"));
  try {
    t.outcome = parse_outcome(need_string(j, "outcome"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  const Json& fi = need(j, "final_interval");
  if (!fi.is_null()) t.final_interval = interval_from_json(fi);
  t.stop_radius = rational_from_json(need(j, "stop_radius"));
  t.violation = j.value("violation", std::string());
  t.notes = need(j, "notes").get<std::vector<std::string>>();
  return t;
}

Json to_json(const FractalTree& t) {
  Json j;
  const auto& p = t.params;
  j["params"] = Json{{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"c", to_json(p.c)},
                     {"rho", to_json(p.rho)}, {"x0", to_json(p.x0)}, {"N", p.N},
                     {"gamma", to_json(p.gamma)}, {"J", p.J}};
  j["M"] = t.M;
  j["answers"] = "finite collections per turn";
  Json nodes = Json::array();
  for (const auto& level : t.levels) {
    for (const auto& n : level) {
      nodes.push_back(Json{{"level", n.level},
                           {"parent", n.parent},
                           {"grid", n.ball.grid == Grid::D ? "D" : "E"},
                           {"z", n.ball.z},
                           {"center", to_json(n.ball.center)},
                           {"radius", to_json(n.ball.radius)},
                           {"phi", n.phi},
                           {"children", n.children_total},
                           {"good", n.children_good}});
    }
  }
  j["nodes"] = nodes;
  return j;
}

}  // namespace thickpat
