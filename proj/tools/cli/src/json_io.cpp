#include "phiset_cli/json_io.hpp"

#include <algorithm>

namespace phiset::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("instance") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string join(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

// Re-raise core validation errors under the document path that caused them.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path + ":", 0) == 0 || path.empty()) throw;
    fail(path, msg);
  }
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<SubsetMask> parse_sets(const Json& j, std::size_t universe, const std::string& path) {
  require_array(j, path);
  std::vector<SubsetMask> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_set(j[i], universe, join(path, i)));
  return out;
}

}  // namespace

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required field");
  return *it;
}

std::size_t parse_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

SubsetMask parse_set(const Json& j, std::size_t universe, const std::string& path) {
  require_array(j, path);
  Bits bits = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t p = parse_count(j[i], join(path, i));
    if (p >= universe) fail(join(path, i), "point " + std::to_string(p) + " outside a universe of " + std::to_string(universe));
    if ((bits >> p) & 1U) fail(join(path, i), "duplicate point " + std::to_string(p));
    bits |= Bits{1} << p;
  }
  return {universe, bits};
}

FinSpace parse_space(const Json& j, const std::string& path, const Limits& limits) {
  const std::size_t n = parse_count(require(j, "n", path), join(path, "n"));
  if (n > limits.max_points) fail(join(path, "n"), std::to_string(n) + " points exceed the cap of " + std::to_string(limits.max_points));
  const int forms = static_cast<int>(j.contains("subbasis")) + static_cast<int>(j.contains("opens")) +
                    static_cast<int>(j.contains("kind"));
  if (forms != 1) fail(path, "give exactly one of \"subbasis\", \"opens\" or \"kind\"");
  if (j.contains("kind")) {
    const Json& k = j["kind"];
    if (k == "discrete") return FinSpace::discrete(n);
    if (k == "indiscrete") return FinSpace::indiscrete(n);
    fail(join(path, "kind"), "expected \"discrete\" or \"indiscrete\"");
  }
  if (j.contains("opens")) {
    const auto opens = parse_sets(j["opens"], n, join(path, "opens"));
    return at_path(join(path, "opens"), [&] { return FinSpace::from_opens(n, opens, limits); });
  }
  const auto sub = parse_sets(j["subbasis"], n, join(path, "subbasis"));
  return at_path(join(path, "subbasis"), [&] { return FinSpace::generate(n, sub, limits); });
}

EvalMode parse_mode(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected \"prefix\" or \"range\"");
  return at_path(path, [&] { return eval_mode_from_string(j.get<std::string>()); });
}

Base parse_base(const Json& j, const std::string& path, const Limits& limits) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("kind")) {
    const Json& k = j["kind"];
    if (k == "union" || k == "intersection") {
      const std::size_t arity = parse_count(require(j, "arity", path), join(path, "arity"));
      return at_path(path, [&] { return k == "union" ? union_base(arity, limits) : intersection_base(arity, limits); });
    }
    if (k == "a_operation") {
      const std::size_t b = parse_count(require(j, "alphabet", path), join(path, "alphabet"));
      const std::size_t d = parse_count(require(j, "depth", path), join(path, "depth"));
      return at_path(path, [&] { return a_operation_base(b, d, limits); });
    }
    fail(join(path, "kind"), "expected \"union\", \"intersection\" or \"a_operation\"");
  }
  const std::size_t alphabet = parse_count(require(j, "alphabet", path), join(path, "alphabet"));
  const Json& bs = require_array(require(j, "branches", path), join(path, "branches"));
  std::vector<Word> branches;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string bp = join(join(path, "branches"), i);
    require_array(bs[i], bp);
    Word w;
    for (std::size_t k = 0; k < bs[i].size(); ++k) {
      const std::size_t s = parse_count(bs[i][k], join(bp, k));
      if (s > 255) fail(join(bp, k), "symbol out of range");
      w.push_back(static_cast<std::uint8_t>(s));
    }
    branches.push_back(std::move(w));
  }
  const EvalMode hint = j.contains("mode") ? parse_mode(j["mode"], join(path, "mode")) : EvalMode::prefix;
  return at_path(path, [&] { return Base(alphabet, std::move(branches), hint, limits); });
}

IndexedFamily parse_family(const Json& j, EvalMode kind, const std::string& path) {
  const std::size_t n = parse_count(require(j, "universe", path), join(path, "universe"));
  if (n > kMaxUniverse) fail(join(path, "universe"), "universe too large");
  std::optional<SubsetMask> fallback;
  if (j.contains("default")) fallback = parse_set(j["default"], n, join(path, "default"));
  IndexedFamily fam(kind, n, fallback);
  const Json& assign = require(j, "assign", path);
  if (!assign.is_object()) fail(join(path, "assign"), "expected an object keyed by index");
  for (const auto& [key, value] : assign.items()) {
    const std::string kp = join(path, "assign") + "[\"" + key + "\"]";
    const SubsetMask m = parse_set(value, n, kp);
    if (kind == EvalMode::prefix) {
      fam.set(at_path(kp, [&] { return word_from_string(key); }), m);
    } else {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          key.size() > 9) {
        fail(kp, "range-mode indices are decimal symbols");
      }
      fam.set(static_cast<std::uint32_t>(std::stoul(key)), m);
    }
  }
  return fam;
}

SetClass parse_class(const Json& j, const std::string& path, const Limits& limits) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("derive")) {
    const FinSpace s = parse_space(require(j, "space", path), join(path, "space"), limits);
    const Json& d = j["derive"];
    if (d == "opens") return open_sets(s);
    if (d == "closeds") return closed_sets(s);
    if (d == "zero_sets") return zero_sets(s);
    fail(join(path, "derive"), "expected \"opens\", \"closeds\" or \"zero_sets\"");
  }
  const std::size_t n = parse_count(require(j, "universe", path), join(path, "universe"));
  if (n > kMaxUniverse) fail(join(path, "universe"), "universe too large");
  return {n, parse_sets(require(j, "members", path), n, join(path, "members"))};
}

PointMap parse_map(const Json& j, const std::string& path, const Limits& limits) {
  const FinSpace dom = parse_space(require(j, "dom", path), join(path, "dom"), limits);
  const FinSpace cod = parse_space(require(j, "cod", path), join(path, "cod"), limits);
  const Json& t = require_array(require(j, "table", path), join(path, "table"));
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < t.size(); ++i) table.push_back(parse_count(t[i], join(join(path, "table"), i)));
  return at_path(join(path, "table"), [&] { return PointMap(dom, cod, std::move(table)); });
}

IndexOrder parse_order(const Json& j, const std::string& path) {
  const std::size_t size = parse_count(require(j, "size", path), join(path, "size"));
  std::vector<std::pair<std::size_t, std::size_t>> le;
  if (j.contains("le")) {
    const Json& rel = require_array(j["le"], join(path, "le"));
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const std::string ip = join(join(path, "le"), i);
      if (!rel[i].is_array() || rel[i].size() != 2) fail(ip, "expected a pair [i, j]");
      le.emplace_back(parse_count(rel[i][0], join(ip, 0)), parse_count(rel[i][1], join(ip, 1)));
    }
  }
  return at_path(path, [&] { return IndexOrder::from_relation(size, le); });
}

Json to_json(const SubsetMask& m) {
  Json out = Json::array();
  for (std::size_t p : m.points()) out.push_back(p);
  return out;
}

Json to_json(const SetClass& c) {
  Json members = Json::array();
  for (const auto& m : c) members.push_back(to_json(m));
  return Json{{"universe", c.universe_size()}, {"members", std::move(members)}};
}

Json to_json(const FinSpace& s) {
  Json opens = Json::array();
  for (const auto& o : s.opens()) opens.push_back(to_json(o));
  return Json{{"n", s.size()}, {"opens", std::move(opens)}};
}

Json to_json(const Base& b) {
  Json branches = Json::array();
  for (const Word& w : b.branches()) {
    Json word = Json::array();
    for (auto s : w) word.push_back(s);
    branches.push_back(std::move(word));
  }
  return Json{{"alphabet", b.alphabet()}, {"branches", std::move(branches)}, {"mode", to_string(b.mode_hint())}};
}

Json to_json(const IndexedFamily& f) {
  Json assign = Json::object();
  for (const auto& [w, m] : f.word_entries()) assign[word_to_string(w)] = to_json(m);
  for (const auto& [k, m] : f.symbol_entries()) assign[std::to_string(k)] = to_json(m);
  Json out{{"universe", f.universe_size()}, {"assign", std::move(assign)}};
  if (f.fallback()) out["default"] = to_json(*f.fallback());
  return out;
}

Json to_json(const PointMap& f) {
  return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"table", f.table()}};
}

Json to_json(const IndexOrder& o) {
  Json le = Json::array();
  for (const auto& [i, j] : o.strict_pairs()) le.push_back(Json::array({i, j}));
  return Json{{"size", o.size()}, {"le", std::move(le)}};
}

Json to_json(const Partition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks()) blocks.push_back(to_json(b));
  return blocks;
}

}  // namespace phiset::cli
