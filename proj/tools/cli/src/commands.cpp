#include "phiset_cli/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace phiset::cli {

namespace {

Json header(const std::string& command) { return Json{{"command", command}, {"version", kVersion}}; }

Outcome verdict(Json report, bool holds) {
  report["verdict"] = holds;
  return {holds ? 0 : 1, std::move(report)};
}

EvalMode mode_of(const Json& in, const Base& base) {
  return in.contains("mode") ? parse_mode(in["mode"], "mode") : base.mode_hint();
}

bool flag(const Json& in, const char* key) {
  if (!in.contains(key)) return false;
  if (!in[key].is_boolean()) throw InputError(std::string(key) + ": expected true or false");
  return in[key].get<bool>();
}

Json pair_json(const std::pair<SubsetMask, SubsetMask>& p) { return Json::array({to_json(p.first), to_json(p.second)}); }

Outcome cmd_eval(const Json& in, const Limits& lim) {
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = mode_of(in, base);
  const IndexedFamily fam = parse_family(require(in, "family", ""), mode, "family");
  const bool dual = flag(in, "dual");
  Json r = header("eval");
  r["mode"] = to_string(mode);
  r["dual"] = dual;
  r["value"] = to_json(dual ? dual_eval(base, fam, mode) : eval(base, fam, mode));
  return {0, std::move(r)};
}

Outcome cmd_generate(const Json& in, const Limits& lim) {
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = mode_of(in, base);
  const SetClass gens = parse_class(require(in, "generators", ""), "generators", lim);
  const bool dual = flag(in, "dual");
  const SetClass cls = dual ? generate_dual_class(base, gens, mode, lim) : generate_class(base, gens, mode, lim);
  Json r = header("generate");
  r["mode"] = to_string(mode);
  r["dual"] = dual;
  r["size"] = cls.size();
  r["class"] = to_json(cls);
  return {0, std::move(r)};
}

Outcome cmd_check_reduction(const Json& in, const Limits& lim) {
  const SetClass cls = parse_class(require(in, "class", ""), "class", lim);
  const ReductionCheck c = check_reduction(cls);
  Json r = header("check-reduction");
  r["class"] = to_json(cls);
  if (c.failing_pair) {
    r["failing_pair"] = pair_json(*c.failing_pair);
  } else {
    Json ws = Json::array();
    for (const auto& w : c.witnesses) {
      ws.push_back(Json{{"a", to_json(w.a)}, {"b", to_json(w.b)}, {"c", to_json(w.c)}, {"d", to_json(w.d)}});
    }
    r["witnesses"] = std::move(ws);
  }
  return verdict(std::move(r), c.holds);
}

Outcome cmd_check_separation(const Json& in, const Limits& lim) {
  const SetClass cls = parse_class(require(in, "class", ""), "class", lim);
  const SeparationCheck c = check_separation(cls);
  Json r = header("check-separation");
  r["class"] = to_json(cls);
  r["delta"] = to_json(delta_class(cls));
  if (c.failing_pair) {
    r["failing_pair"] = pair_json(*c.failing_pair);
  } else {
    Json ws = Json::array();
    for (const auto& w : c.witnesses) ws.push_back(Json{{"a", to_json(w.a)}, {"b", to_json(w.b)}, {"c", to_json(w.c)}});
    r["witnesses"] = std::move(ws);
  }
  return verdict(std::move(r), c.holds);
}

Outcome cmd_transfer(const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = mode_of(in, base);
  const Json& pj = require(in, "property", "");
  if (!pj.is_string()) throw InputError("property: expected \"reduction\" or \"separation\"");
  const Property which = property_from_string(pj.get<std::string>());
  const SetClass gx = parse_class(require(in, "generators_x", ""), "generators_x", lim);
  const SetClass gy = parse_class(require(in, "generators_y", ""), "generators_y", lim);
  const TransferReport t = transfer_property(f, base, gx, gy, mode, which, lim);

  Json r = header("transfer");
  r["property"] = to_string(which);
  r["mode"] = to_string(mode);
  r["hypotheses"] = Json{{"preserves_generators", t.preserves_generators},
                         {"generators_in_algebra", t.generators_in_algebra},
                         {"target_has_property", t.target_has_property}};
  Json fails = Json::array();
  for (const auto& h : t.failures) {
    Json fj{{"hypothesis", std::string(1, h.hypothesis)}, {"detail", h.detail}};
    if (h.set) fj["set"] = to_json(*h.set);
    if (h.pair) fj["pair"] = pair_json(*h.pair);
    fails.push_back(std::move(fj));
  }
  r["failures"] = std::move(fails);
  r["target_class"] = to_json(t.target_class);
  if (!t.steps.empty() || t.failures.empty()) {
    r["source_class"] = to_json(t.source_class);
    Json steps = Json::array();
    for (const auto& s : t.steps) {
      Json sj{{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"image_a", to_json(s.image_a)}, {"image_b", to_json(s.image_b)},
              {"target_c", to_json(s.target_c)}};
      if (which == Property::reduction) sj["target_d"] = to_json(s.target_d);
      sj["pulled_c"] = to_json(s.pulled_c);
      if (which == Property::reduction) sj["pulled_d"] = to_json(s.pulled_d);
      sj["valid"] = s.valid;
      steps.push_back(std::move(sj));
    }
    r["steps"] = std::move(steps);
  }
  return verdict(std::move(r), t.holds);
}

Outcome cmd_zero_gap(const Json& in, const Limits& lim) {
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const SubsetMask carrier = parse_set(require(in, "carrier", ""), space.size(), "carrier");
  const ZeroTraceGap g = zero_trace_gap(space, carrier);
  Json r = header("zero-gap");
  r["carrier"] = to_json(carrier);
  r["subspace"] = to_json(g.sub.space);
  r["traces"] = to_json(g.traces);
  r["intrinsic"] = to_json(g.intrinsic);
  r["traces_included"] = g.traces_included;
  r["gap"] = to_json(g.gap);
  r["lifted_gap"] = to_json(g.lifted_gap());
  return verdict(std::move(r), g.gap.empty());
}

Outcome cmd_zero_sets(const Json& in, const Limits& lim) {
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  Json r = header("zero-sets");
  r["components"] = to_json(components(space));
  r["value"] = to_json(zero_sets(space));
  return {0, std::move(r)};
}

Outcome cmd_product(const Json& in, const Limits& lim) {
  const Json& sj = require(in, "spaces", "");
  if (!sj.is_array() || sj.empty()) throw InputError("spaces: expected a nonempty array of spaces");
  std::vector<FinSpace> spaces;
  for (std::size_t i = 0; i < sj.size(); ++i) spaces.push_back(parse_space(sj[i], "spaces[" + std::to_string(i) + "]", lim));
  const ProductSpace p = product(spaces, lim);
  Json r = header("product");
  r["radices"] = p.codec.radices();
  r["open_count"] = p.space.opens().size();
  r["value"] = to_json(p.space);
  return {0, std::move(r)};
}

Outcome cmd_directed_image(const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const IndexOrder order = parse_order(require(in, "order", ""), "order");
  const Json& fj = require(in, "family", "");
  if (!fj.is_array()) throw InputError("family: expected an array of sets");
  std::vector<SubsetMask> fam;
  for (std::size_t i = 0; i < fj.size(); ++i) fam.push_back(parse_set(fj[i], f.dom().size(), "family[" + std::to_string(i) + "]"));
  const DirectedImageCheck c = directed_image_check(f, order, fam);
  Json r = header("directed-image");
  r["directed"] = c.directed;
  r["decreasing"] = c.decreasing;
  r["image_of_intersection"] = to_json(c.image_of_intersection);
  r["intersection_of_images"] = to_json(c.intersection_of_images);
  return verdict(std::move(r), c.equal);
}

Outcome cmd_image_eval(const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const IndexedFamily fam = parse_family(require(in, "family", ""), EvalMode::prefix, "family");
  const ImageEvalCheck c = image_eval_check(f, base, fam);
  Json r = header("image-eval");
  r["decreasing"] = c.decreasing;
  r["image_of_eval"] = to_json(c.image_of_eval);
  r["eval_of_images"] = to_json(c.eval_of_images);
  return verdict(std::move(r), c.equal);
}

Outcome cmd_zero_witness(const Json& in, const Limits& lim) {
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const Json& zj = require(in, "zeros", "");
  if (!zj.is_array()) throw InputError("zeros: expected an array of sets");
  std::vector<SubsetMask> zeros;
  for (std::size_t i = 0; i < zj.size(); ++i) zeros.push_back(parse_set(zj[i], space.size(), "zeros[" + std::to_string(i) + "]"));
  const ZeroWitness w = zero_witness_map(space, zeros, lim);
  Json r = header("zero-witness");
  r["product_map"] = to_json(w.product.map);
  r["indicators_continuous"] = w.indicators_continuous;
  r["in_algebra"] = w.in_algebra;
  return verdict(std::move(r), w.certified());
}

Outcome cmd_algebra(const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const MapProps p = map_properties(f);
  Json r = header("algebra");
  r["fibers"] = to_json(kernel(f));
  r["value"] = to_json(alg_enumerate(f, lim));
  r["properties"] = Json{{"continuous", p.continuous},     {"closed_map", p.closed_map},
                         {"open_map", p.open_map},         {"fibers_closed", p.fibers_closed},
                         {"surjective", p.surjective},     {"injective", p.injective},
                         {"empty_fibers_dropped", p.empty_fibers_dropped}};
  return {0, std::move(r)};
}

using Handler = std::function<Outcome(const Json&, const Limits&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"eval", cmd_eval},
      {"generate", cmd_generate},
      {"check-reduction", cmd_check_reduction},
      {"check-separation", cmd_check_separation},
      {"transfer", cmd_transfer},
      {"zero-gap", cmd_zero_gap},
      {"zero-sets", cmd_zero_sets},
      {"product", cmd_product},
      {"directed-image", cmd_directed_image},
      {"image-eval", cmd_image_eval},
      {"zero-witness", cmd_zero_witness},
      {"algebra", cmd_algebra},
  };
  return table;
}

bool scalar_array(const Json& j) {
  return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

// Two-space indentation, but arrays of scalars (sets, tables) stay on one line.
void pretty(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      out += pad + Json(it.key()).dump() + ": ";
      pretty(*it, indent + 2, out);
      out += std::next(it) == j.end() ? "\n" : ",\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array() && !scalar_array(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], indent + 2, out);
      out += i + 1 == j.size() ? "\n" : ",\n";
    }
    out += std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

void render_text(const Json& j, const std::string& prefix, std::string& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      render_text(*it, key, out);
    } else {
      out += key + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

Outcome run_command(const std::string& command, const Json& instance, const Limits& limits) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw InputError("unknown command \"" + command + "\"");
  if (!instance.is_object()) throw InputError("instance: expected an object");
  return it->second(instance, limits);
}

Json error_report(const std::string& command, const std::string& kind, const std::string& message) {
  Json r = header(command);
  r["error"] = Json{{"kind", kind}, {"message", message}};
  return r;
}

std::string to_pretty(const Json& doc) {
  std::string out;
  pretty(doc, 0, out);
  return out + "\n";
}

std::string render(const Json& report, Format format) {
  if (format == Format::json) return to_pretty(report);
  std::string out;
  render_text(report, "", out);
  return out;
}

}  // namespace phiset::cli
