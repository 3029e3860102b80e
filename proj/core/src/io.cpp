#include "basp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "basp/error.hpp"

namespace basp {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

[[noreturn]] void Schema(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, field + ": " + what);
}

json Number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double ReadNumber(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  Schema(field, "expected a number or \"inf\"/\"-inf\"");
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) Schema(where + "." + key, "missing");
  return *it;
}

std::uint32_t ReadIndex(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > 0xffffffffLL) {
    Schema(field, "expected a nonnegative integer");
  }
  return j.get<std::uint32_t>();
}

json WriteBounds(const ArcBounds& b) {
  json out;
  std::vector<json> mm, mp, am, ap;
  for (const auto& v : b.values()) {
    mm.push_back(Number(v.mu_minus));
    mp.push_back(Number(v.mu_plus));
    am.push_back(Number(v.alpha_minus));
    ap.push_back(Number(v.alpha_plus));
  }
  if (b.is_piecewise_constant()) {
    out["kind"] = "piecewise_constant";
    out["breakpoints"] = std::vector<double>(b.breakpoints().begin(), b.breakpoints().end());
  } else {
    out["kind"] = "sampled";
    out["step"] = b.step();
  }
  out["mu_minus"] = mm;
  out["mu_plus"] = mp;
  out["alpha_minus"] = am;
  out["alpha_plus"] = ap;
  return out;
}

ArcBounds ReadBounds(const json& j, const std::string& where) {
  if (!j.is_object()) Schema(where, "expected an object");
  const json& kind = Field(j, "kind", where);
  if (!kind.is_string()) Schema(where + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  std::size_t count = 0;
  std::vector<double> breakpoints;
  double step = 0.0;
  if (k == "piecewise_constant") {
    const json& bp = Field(j, "breakpoints", where);
    if (!bp.is_array() || bp.empty()) Schema(where + ".breakpoints", "expected a non-empty array");
    for (std::size_t i = 0; i < bp.size(); ++i) {
      breakpoints.push_back(ReadNumber(bp[i], where + ".breakpoints[" + std::to_string(i) + "]"));
    }
    count = bp.size();
  } else if (k == "sampled") {
    step = ReadNumber(Field(j, "step", where), where + ".step");
  } else {
    Schema(where + ".kind", "expected \"piecewise_constant\" or \"sampled\"");
  }
  std::vector<BoundValues> values;
  const char* names[] = {"mu_minus", "mu_plus", "alpha_minus", "alpha_plus"};
  for (int f = 0; f < 4; ++f) {
    const std::string field = where + "." + names[f];
    const json& arr = Field(j, names[f], where);
    if (!arr.is_array()) Schema(field, "expected an array");
    if (count == 0) count = arr.size();
    if (arr.size() != count || count == 0) Schema(field, "length does not match");
    values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double x = ReadNumber(arr[i], field + "[" + std::to_string(i) + "]");
      double* slot[] = {&values[i].mu_minus, &values[i].mu_plus, &values[i].alpha_minus, &values[i].alpha_plus};
      *slot[f] = x;
    }
  }
  if (k == "sampled") return ArcBounds::Sampled(step, std::move(values));
  return ArcBounds::PiecewiseConstant(std::move(breakpoints), std::move(values));
}

std::string Location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

RoadGraph ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::kParseError, Location(text, at) + ": " + e.what());
  }
  if (!doc.is_object()) Schema("$", "expected an object");
  if (auto v = doc.find("version"); v != doc.end() && (!v->is_number_integer() || v->get<int>() != kFormatVersion)) {
    Schema("version", "unsupported version");
  }

  RoadGraph g;
  const json& nodes = Field(doc, "nodes", "$");
  if (!nodes.is_array()) Schema("nodes", "expected an array");
  std::vector<const json*> by_id(nodes.size(), nullptr);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!nodes[i].is_object()) Schema(where, "expected an object");
    const auto id = ReadIndex(Field(nodes[i], "id", where), where + ".id");
    if (id >= nodes.size() || by_id[id] != nullptr) Schema(where + ".id", "ids must be dense and unique");
    by_id[id] = &nodes[i];
  }
  for (std::size_t id = 0; id < by_id.size(); ++id) {
    const json& n = *by_id[id];
    const std::string where = "nodes[" + std::to_string(id) + "]";
    std::string name;
    if (auto it = n.find("name"); it != n.end()) {
      if (!it->is_string()) Schema(where + ".name", "expected a string");
      name = it->get<std::string>();
    }
    std::optional<Pose> pose;
    if (n.contains("x") || n.contains("y") || n.contains("heading")) {
      Pose p;
      p.x = ReadNumber(Field(n, "x", where), where + ".x");
      p.y = ReadNumber(Field(n, "y", where), where + ".y");
      if (n.contains("heading")) p.heading = ReadNumber(n["heading"], where + ".heading");
      pose = p;
    }
    g.AddNode(std::move(name), pose);
  }

  const json& arcs = Field(doc, "arcs", "$");
  if (!arcs.is_array()) Schema("arcs", "expected an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    const json& a = arcs[i];
    if (!a.is_object()) Schema(where, "expected an object");
    const auto from = ReadIndex(Field(a, "from", where), where + ".from");
    const auto to = ReadIndex(Field(a, "to", where), where + ".to");
    if (from >= g.node_count()) Schema(where + ".from", "unknown node");
    if (to >= g.node_count()) Schema(where + ".to", "unknown node");
    const double length = ReadNumber(Field(a, "length", where), where + ".length");
    if (!(length >= 0.0) || std::isinf(length)) Schema(where + ".length", "must be finite and >= 0");
    ArcBounds bounds = ReadBounds(Field(a, "bounds", where), where + ".bounds");
    try {
      g.AddArc(from, to, length, std::move(bounds));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDuplicateArc || e.code() == ErrorCode::kInvalidBounds) {
        throw Error(e.code(), where + ": " + e.what());
      }
      Schema(where, e.what());
    }
  }

  if (auto it = doc.find("query"); it != doc.end()) {
    const json& q = *it;
    if (!q.is_object()) Schema("query", "expected an object");
    Query query;
    query.source = ReadIndex(Field(q, "source", "query"), "query.source");
    const json& targets = Field(q, "targets", "query");
    if (!targets.is_array()) Schema("query.targets", "expected an array");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      query.targets.push_back(ReadIndex(targets[i], "query.targets[" + std::to_string(i) + "]"));
    }
    query.w_source = q.contains("w_source") ? ReadNumber(q["w_source"], "query.w_source") : 0.0;
    if (q.contains("w_target")) {
      const json& wt = q["w_target"];
      if (wt.is_string() && wt.get<std::string>() == "free") {
        query.w_target = std::nullopt;
      } else {
        query.w_target = ReadNumber(wt, "query.w_target");
      }
    }
    try {
      g.set_query(std::move(query));
    } catch (const Error& e) {
      Schema("query", e.what());
    }
  }
  return g;
}

std::string SerializeInstance(const RoadGraph& g) {
  json doc;
  doc["format"] = "basp-instance";
  doc["version"] = kFormatVersion;
  json nodes = json::array();
  for (const auto& n : g.nodes()) {
    json j;
    j["id"] = n.id;
    if (!n.name.empty()) j["name"] = n.name;
    if (n.pose) {
      j["x"] = Number(n.pose->x);
      j["y"] = Number(n.pose->y);
      j["heading"] = Number(n.pose->heading);
    }
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  json arcs = json::array();
  for (const auto& a : g.arcs()) {
    arcs.push_back({{"from", a.from}, {"to", a.to}, {"length", a.length}, {"bounds", WriteBounds(a.bounds)}});
  }
  doc["arcs"] = std::move(arcs);
  const Query& q = g.query();
  json query;
  query["source"] = q.source;
  query["targets"] = q.targets;
  query["w_source"] = Number(q.w_source);
  query["w_target"] = q.w_target ? Number(*q.w_target) : json("free");
  doc["query"] = std::move(query);
  return doc.dump(2) + "\n";
}

RoadGraph LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

void SaveInstance(const RoadGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << SerializeInstance(g);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace basp
