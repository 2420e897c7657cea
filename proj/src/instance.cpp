#include "bcrate/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bcrate {

using nlohmann::json;

Instance::Instance(int n, std::vector<Receiver> receivers, std::vector<Rational> rates)
    : n_(n), receivers_(std::move(receivers)), rates_(std::move(rates)) {
  if (n < 1 || n > kMaxMessages) {
    throw std::invalid_argument("instance needs between 1 and 64 messages, got " + std::to_string(n));
  }
  if (!rates_.empty() && static_cast<int>(rates_.size()) != n) {
    throw std::invalid_argument("rate list length " + std::to_string(rates_.size()) + " does not match n = " +
                                std::to_string(n));
  }
  if (std::all_of(rates_.begin(), rates_.end(), [](const Rational& r) { return r == 1; })) rates_.clear();
}

Rational Instance::rate(int message) const {
  return rates_.empty() ? Rational(1) : rates_.at(static_cast<std::size_t>(message));
}

std::vector<Rational> Instance::rates() const {
  return rates_.empty() ? std::vector<Rational>(static_cast<std::size_t>(n_), Rational(1)) : rates_;
}

Rational Instance::total_rate() const {
  Rational sum = 0;
  for (int i = 0; i < n_; ++i) sum += rate(i);
  return sum;
}

MessageSet Instance::side(int j) const {
  const Receiver& r = receiver(j);
  return r.knows | MessageSet::singleton(r.wants);
}

Instance Instance::normalized() const {
  if (rates_.empty()) return *this;
  const Rational top = *std::max_element(rates_.begin(), rates_.end());
  if (top <= 0) return *this;
  std::vector<Rational> scaled;
  scaled.reserve(rates_.size());
  for (const auto& r : rates_) scaled.push_back(r / top);
  Instance out(n_, receivers_, std::move(scaled));
  out.rate_scale_ = rate_scale_ * top;
  return out;
}

Instance Instance::deduplicated() const {
  std::vector<Receiver> kept;
  for (const auto& r : receivers_) {
    if (std::find(kept.begin(), kept.end(), r) == kept.end()) kept.push_back(r);
  }
  Instance out(n_, std::move(kept), rates_);
  out.rate_scale_ = rate_scale_;
  return out;
}

Instance Instance::unweighted() const { return Instance(n_, receivers_); }

bool Instance::operator==(const Instance& other) const {
  return n_ == other.n_ && receivers_ == other.receivers_ && rates() == other.rates();
}

// ---------------------------------------------------------------------------

Graph::Graph(int n) : n_(n), adjacency_(static_cast<std::size_t>(n)) {
  if (n < 0 || n > kMaxMessages) throw std::invalid_argument("graph needs at most 64 vertices");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  adjacency_[static_cast<std::size_t>(u)].insert(v);
  adjacency_[static_cast<std::size_t>(v)].insert(u);
}

int Graph::edge_count() const {
  int twice = 0;
  for (const auto& nb : adjacency_) twice += nb.size();
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors(u).elements()) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  const int n = inst.message_count();
  const MessageSet all = inst.all();
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const Receiver& r = inst.receiver(j);
    const std::string who = "receiver " + std::to_string(j);
    if (r.wants < 0 || r.wants >= n) {
      report.violations.push_back(who + ": wanted message " + std::to_string(r.wants) + " out of range");
    }
    if (!r.knows.subset_of(all)) report.violations.push_back(who + ": side information out of range");
    if (r.wants >= 0 && r.wants < kMaxMessages && r.knows.contains(r.wants)) {
      report.violations.push_back(who + ": receiver knows own message");
    }
  }
  for (int i = 0; i < n; ++i) {
    const Rational r = inst.rate(i);
    if (r <= 0) {
      report.violations.push_back("message " + std::to_string(i) + ": nonpositive rate");
    } else if (r > 1) {
      report.violations.push_back("message " + std::to_string(i) + ": rate exceeds 1 (normalize first)");
    }
  }
  return report;
}

Instance from_graph(const Graph& g) {
  std::vector<Receiver> receivers;
  receivers.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) receivers.push_back({v, g.neighbors(v)});
  return Instance(g.vertex_count(), std::move(receivers));
}

MessageSet closure_step(const Instance& inst, MessageSet a) {
  MessageSet out = a;
  for (const auto& r : inst.receivers()) {
    if (r.knows.subset_of(a)) out.insert(r.wants);
  }
  return out;
}

MessageSet closure(const Instance& inst, MessageSet a) {
  MessageSet current = a;
  for (;;) {
    const MessageSet next = closure_step(inst, current);
    if (next == current) return current;
    current = next;
  }
}

bool decodes(const Instance& inst, MessageSet a, MessageSet b) {
  return a.subset_of(b) && b.subset_of(closure_step(inst, a));
}

Instance disjoint_union(const Instance& a, const Instance& b) {
  const int shift = a.message_count();
  std::vector<Receiver> receivers = a.receivers();
  for (const auto& r : b.receivers()) {
    receivers.push_back({r.wants + shift, MessageSet(r.knows.bits() << shift)});
  }
  std::vector<Rational> rates;
  if (a.has_rates() || b.has_rates()) {
    rates = a.rates();
    for (const auto& r : b.rates()) rates.push_back(r);
  }
  return Instance(shift + b.message_count(), std::move(receivers), std::move(rates));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out(a.vertex_count() + b.vertex_count());
  for (auto [u, v] : a.edges()) out.add_edge(u, v);
  for (auto [u, v] : b.edges()) out.add_edge(u + a.vertex_count(), v + a.vertex_count());
  return out;
}

Graph blow_up(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("blow-up factor must be at least 1");
  Graph out(g.vertex_count() * t);
  for (auto [u, v] : g.edges()) {
    for (int i = 0; i < t; ++i) {
      for (int k = 0; k < t; ++k) out.add_edge(u * t + i, v * t + k);
    }
  }
  return out;
}

Graph complement(const Graph& g) {
  Graph out(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      if (!g.has_edge(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

InducedInstance induced(const Instance& inst, MessageSet keep) {
  InducedInstance out;
  out.messages = keep.elements();
  std::vector<int> renumber(static_cast<std::size_t>(inst.message_count()), -1);
  for (std::size_t i = 0; i < out.messages.size(); ++i) renumber[static_cast<std::size_t>(out.messages[i])] = static_cast<int>(i);
  auto translate = [&](MessageSet s) {
    MessageSet t;
    for (int e : (s & keep).elements()) t.insert(renumber[static_cast<std::size_t>(e)]);
    return t;
  };
  std::vector<Receiver> receivers;
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const Receiver& r = inst.receiver(j);
    if (!keep.contains(r.wants)) continue;
    receivers.push_back({renumber[static_cast<std::size_t>(r.wants)], translate(r.knows)});
    out.receivers.push_back(j);
  }
  std::vector<Rational> rates;
  if (inst.has_rates()) {
    for (int m : out.messages) rates.push_back(inst.rate(m));
  }
  out.instance = Instance(std::max(1, static_cast<int>(out.messages.size())), std::move(receivers),
                          out.messages.empty() ? std::vector<Rational>{} : std::move(rates));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int message_index(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer message index");
  const auto v = value.get<long long>();
  if (v < 0 || v >= kMaxMessages) throw ParseError(where + ": message index " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

int read_count(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("top level: expected a JSON object");
  if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\": expected an integer");
  const auto n = v.get<long long>();
  if (n < 1 || n > kMaxMessages) {
    throw ParseError(std::string("field \"") + key + "\": " + std::to_string(n) + " outside [1, 64]");
  }
  return static_cast<int>(n);
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

json to_json(const Instance& inst) {
  json doc;
  doc["n"] = inst.message_count();
  if (inst.has_rates()) {
    json rates = json::array();
    for (const auto& r : inst.rates()) rates.push_back(to_string(r));
    doc["rates"] = rates;
  }
  json receivers = json::array();
  for (const auto& r : inst.receivers()) receivers.push_back({{"wants", r.wants}, {"knows", r.knows.elements()}});
  doc["receivers"] = receivers;
  return doc;
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

Instance instance_from_json(const json& doc) {
  const int n = read_count(doc, "n");
  if (!doc.contains("receivers") || !doc.at("receivers").is_array()) {
    throw ParseError("field \"receivers\": expected an array");
  }
  std::vector<Receiver> receivers;
  const json& list = doc.at("receivers");
  for (std::size_t j = 0; j < list.size(); ++j) {
    const std::string where = "receivers[" + std::to_string(j) + "]";
    const json& item = list[j];
    if (!item.is_object() || !item.contains("wants")) throw ParseError(where + ": expected {\"wants\", \"knows\"}");
    Receiver r;
    r.wants = message_index(item.at("wants"), where + ".wants");
    if (item.contains("knows")) {
      const json& knows = item.at("knows");
      if (!knows.is_array()) throw ParseError(where + ".knows: expected an array");
      for (std::size_t k = 0; k < knows.size(); ++k) {
        r.knows.insert(message_index(knows[k], where + ".knows[" + std::to_string(k) + "]"));
      }
    }
    receivers.push_back(r);
  }
  std::vector<Rational> rates;
  if (doc.contains("rates")) {
    const json& list_rates = doc.at("rates");
    if (!list_rates.is_array() || static_cast<int>(list_rates.size()) != n) {
      throw ParseError("field \"rates\": expected an array of " + std::to_string(n) + " \"p/q\" strings");
    }
    for (std::size_t i = 0; i < list_rates.size(); ++i) {
      const std::string where = "rates[" + std::to_string(i) + "]";
      if (!list_rates[i].is_string()) throw ParseError(where + ": expected a \"p/q\" string");
      try {
        rates.push_back(parse_rational(list_rates[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
  }
  return Instance(n, std::move(receivers), std::move(rates)).normalized();
}

Graph graph_from_json(const json& doc) {
  const int n = read_count(doc, "n");
  if (!doc.contains("edges") || !doc.at("edges").is_array()) throw ParseError("field \"edges\": expected an array");
  Graph g(n);
  const json& edges = doc.at("edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "edges[" + std::to_string(e) + "]";
    if (!edges[e].is_array() || edges[e].size() != 2) throw ParseError(where + ": expected [u, v]");
    const int u = message_index(edges[e][0], where + "[0]");
    const int v = message_index(edges[e][1], where + "[1]");
    try {
      g.add_edge(u, v);
    } catch (const std::invalid_argument& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  return g;
}

Instance read_instance(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  try {
    return instance_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_instance(const Instance& inst, const std::filesystem::path& path) { write_file(to_json(inst), path); }

Graph read_graph(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  try {
    return graph_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_graph(const Graph& g, const std::filesystem::path& path) { write_file(to_json(g), path); }

LoadedInstance load_any_json(const json& doc) {
  if (doc.is_object() && doc.contains("edges")) {
    Graph g = graph_from_json(doc);
    return {from_graph(g), g};
  }
  return {instance_from_json(doc), std::nullopt};
}

LoadedInstance load_any(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  try {
    return load_any_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace bcrate
