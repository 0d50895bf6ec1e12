#include "kernelsmith/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

using Json = nlohmann::ordered_json;

// A JSON value together with its path for error messages.
struct Node {
  const Json& j;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(path + ": " + what);
  }
  Node at(const std::string& key) const {
    if (!j.is_object()) fail("expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail("missing field '" + key + "'");
    return {*it, path + "." + key};
  }
  std::optional<Node> find(const std::string& key) const {
    if (!j.is_object()) fail("expected an object");
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return Node{*it, path + "." + key};
  }
  std::size_t size() const {
    if (!j.is_array()) fail("expected an array");
    return j.size();
  }
  Node operator[](std::size_t i) const {
    if (!j.is_array()) fail("expected an array");
    return {j[i], path + "[" + std::to_string(i) + "]"};
  }
  std::size_t index() const {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail("expected a nonnegative integer");
    return j.get<std::size_t>();
  }
  bool boolean() const {
    if (!j.is_boolean()) fail("expected true or false");
    return j.get<bool>();
  }
  std::string string() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  Rational rational() const {
    try {
      if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Rational(BigInt(std::to_string(j.get<unsigned long long>())))
                                      : Rational(BigInt(std::to_string(j.get<long long>())));
      }
      if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(e.what());
    }
    fail("expected a rational as a \"p/q\" string");
  }
  BigInt integer() const {
    const Rational r = rational();
    if (r.get_den() != 1) fail("expected an integer");
    return r.get_num();
  }
  RatVec rationals() const {
    RatVec out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].rational());
    return out;
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].index());
    return out;
  }
  std::vector<RatVec> matrix(std::size_t rows) const {
    if (size() != rows) fail("expected " + std::to_string(rows) + " rows");
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < rows; ++i) out.push_back((*this)[i].rationals());
    return out;
  }
};

// Graph plus one weight per edge when `weighted`.
std::pair<Graph, RatVec> read_graph(const Node& node, bool weighted) {
  Graph g;
  g.n = node.at("n").index();
  RatVec w;
  const Node edges = node.at("edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Node edge = edges[e];
    if (edge.size() != (weighted ? 3U : 2U)) {
      edge.fail(weighted ? "expected [u, v, \"weight\"]" : "expected [u, v]");
    }
    g.edges.push_back({edge[0].index(), edge[1].index()});
    if (weighted) w.push_back(edge[2].rational());
  }
  return {g, w};
}

Json str(const Rational& x) { return to_string(x); }
Json str(const BigInt& x) { return to_string(x); }

Json strs(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(str(x));
  return out;
}

Json write_graph(const Graph& g, const RatVec* w) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Json edge = Json::array({g.edges[e].u, g.edges[e].v});
    if (w) edge.push_back(str((*w)[e]));
    edges.push_back(std::move(edge));
  }
  return Json{{"n", g.n}, {"edges", std::move(edges)}};
}

ProblemInstance read_data(const std::string& tag, const Node& data) {
  if (tag == "wis") {
    auto [g, unused] = read_graph(data.at("graph"), false);
    return WisInstance{g, data.at("weights").rationals()};
  }
  if (tag == "knapsack") {
    return KnapsackInstance{data.at("weights").rationals(), data.at("values").rationals(),
                            data.at("k").rational(), data.at("l").rational()};
  }
  if (tag == "mpsc" || tag == "sse" || tag == "pvc" || tag == "pvc2") {
    auto [g, w] = read_graph(data.at("graph"), true);
    if (tag == "mpsc") return MpscInstance{g, w};
    if (tag == "sse") return SseInstance{g, w};
    if (tag == "pvc") return PvcInstance{g, w};
    return Pvc2Instance{g, w};
  }
  if (tag == "uflp") {
    UflpInstance x;
    x.clients = data.at("clients").index();
    x.facilities = data.at("facilities").index();
    x.opening = data.at("opening").rationals();
    x.cost = data.at("cost").matrix(x.facilities);
    if (auto m = data.find("metric")) x.metric = m->boolean();
    return x;
  }
  if (tag == "wtardy") {
    return WTardyInstance{data.at("p").rationals(), data.at("d").rationals(),
                          data.at("w").rationals()};
  }
  if (tag == "total-tardiness") {
    return TotalTardinessInstance{data.at("p").rationals(), data.at("d").rationals()};
  }
  if (tag == "rpp") {
    auto [g, c] = read_graph(data.at("graph"), true);
    return RppInstance{g, c, data.at("required").indices(), data.at("k").index()};
  }
  if (tag == "c4u") {
    C4uInstance x;
    x.voters = data.at("voters").index();
    x.alternatives = data.at("alternatives").index();
    x.u = data.at("utilities").matrix(x.voters);
    x.k = data.at("k").index();
    return x;
  }
  if (tag == "raw-vector") {
    RawVectorInstance x;
    x.w = data.at("w").rationals();
    x.n = data.at("param").integer();
    if (auto d = data.find("domain")) {
      const std::string s = d->string();
      if (s == "Z") {
        x.domain = Domain::Integer;
      } else if (s == "Q") {
        x.domain = Domain::Rational;
      } else {
        d->fail("domain must be \"Z\" or \"Q\"");
      }
    }
    return x;
  }
  throw InputError("$.problem: unknown problem tag '" + tag + "'");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json write_data(const ProblemInstance& instance) {
  return std::visit(
      Overloaded{
          [](const WisInstance& x) {
            return Json{{"graph", write_graph(x.graph, nullptr)}, {"weights", strs(x.w)}};
          },
          [](const KnapsackInstance& x) {
            return Json{{"weights", strs(x.weights)}, {"values", strs(x.values)},
                        {"k", str(x.k)}, {"l", str(x.l)}};
          },
          [](const MpscInstance& x) { return Json{{"graph", write_graph(x.graph, &x.w)}}; },
          [](const SseInstance& x) { return Json{{"graph", write_graph(x.graph, &x.w)}}; },
          [](const UflpInstance& x) {
            Json cost = Json::array();
            for (const auto& row : x.cost) cost.push_back(strs(row));
            return Json{{"clients", x.clients}, {"facilities", x.facilities},
                        {"opening", strs(x.opening)}, {"cost", std::move(cost)},
                        {"metric", x.metric}};
          },
          [](const WTardyInstance& x) {
            return Json{{"p", strs(x.p)}, {"d", strs(x.d)}, {"w", strs(x.w)}};
          },
          [](const TotalTardinessInstance& x) { return Json{{"p", strs(x.p)}, {"d", strs(x.d)}}; },
          [](const RppInstance& x) {
            return Json{{"graph", write_graph(x.graph, &x.c)}, {"required", x.required}, {"k", x.k}};
          },
          [](const PvcInstance& x) { return Json{{"graph", write_graph(x.graph, &x.w)}}; },
          [](const Pvc2Instance& x) { return Json{{"graph", write_graph(x.graph, &x.w)}}; },
          [](const C4uInstance& x) {
            Json u = Json::array();
            for (const auto& row : x.u) u.push_back(strs(row));
            return Json{{"voters", x.voters}, {"alternatives", x.alternatives},
                        {"utilities", std::move(u)}, {"k", x.k}};
          },
          [](const RawVectorInstance& x) {
            return Json{{"w", strs(x.w)}, {"param", str(x.n)}, {"domain", to_string(x.domain)}};
          },
      },
      instance);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool is_flat(const Json& j) {
  for (const auto& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

// Indented like dump(2), but arrays of scalars stay on one line.
void pretty(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      pretty(value, out, indent + 2);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop the library's own prefix and location.
    if (auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw InputError("parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + what);
  }
  const Node root{j, "$"};
  const std::string tag = root.at("problem").string();
  InstanceDocument doc{read_data(tag, root.at("data")), std::nullopt};
  if (auto t = root.find("threshold")) doc.threshold = t->rational();
  validate(doc.instance);
  return doc;
}

std::string serialize_instance(const InstanceDocument& doc) {
  Json j{{"problem", problem_tag(doc.instance)}, {"data", write_data(doc.instance)}};
  if (doc.threshold) j["threshold"] = str(*doc.threshold);
  std::string out;
  pretty(j, out, 0);
  return out + "\n";
}

InstanceDocument read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

nlohmann::ordered_json report_to_json(const ReductionReport& report, std::size_t max_bound_bits) {
  Json j;
  j["schema"] = "1";
  j["problem"] = report.problem;
  j["d"] = std::to_string(report.d);
  if (report.alpha) j["alpha"] = str(*report.alpha);
  if (report.n) j["N"] = str(*report.n);
  if (report.r) j["r"] = str(*report.r);
  if (auto full = report.bound.materialize(max_bound_bits)) {
    j["bound"] = str(*full);
  } else {
    j["bound"] = report.bound.symbolic();
  }
  j["bound_expr"] = report.bound.symbolic();
  j["bound_bits"] = str(report.bound.approx_bits());
  j["bits_in"] = std::to_string(report.bits_in);
  j["bits_out"] = std::to_string(report.bits_out);
  j["verified"] = to_string(report.verified);
  std::ostringstream secs;
  secs.precision(6);
  secs << std::fixed << report.elapsed_seconds;
  j["elapsed_seconds"] = secs.str();
  return j;
}

std::string report_to_text(const ReductionReport& report) {
  std::ostringstream out;
  out << "problem   " << report.problem << "\n"
      << "d         " << report.d << "\n";
  if (report.alpha) out << "alpha     " << to_string(*report.alpha) << "\n";
  if (report.n) out << "N         " << to_string(*report.n) << "\n";
  if (report.r) out << "r         " << to_string(*report.r) << "\n";
  out << "bound     " << report.bound.symbolic() << " (~" << to_string(report.bound.approx_bits())
      << " bits)\n"
      << "bits      " << report.bits_in << " -> " << report.bits_out << "\n"
      << "verified  " << to_string(report.verified) << "\n";
  return out.str();
}

}  // namespace kernelsmith
