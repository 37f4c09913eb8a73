#include "rework/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rework {

namespace {

using nlohmann::json;

constexpr double kProbSumTolerance = 1e-9;

std::string node_path(std::size_t index) {
  return "nodes[" + std::to_string(index) + "]";
}

void check_rate(double rate, const std::string& path) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ConfigError(path, "rate must lie in [0, 1], got " +
                                std::to_string(rate));
  }
}

}  // namespace

StateDistribution::StateDistribution(std::vector<StateLevel> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw ConfigError("states", "no state levels");
  double total = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& s = levels_[i];
    const std::string path = "states[" + std::to_string(i) + "]";
    if (s.level < 0) throw ConfigError(path + ".level", "negative level");
    if (i > 0 && s.level <= levels_[i - 1].level) {
      throw ConfigError(path + ".level", "levels must be strictly increasing");
    }
    if (!(s.prob >= 0.0 && s.prob <= 1.0)) {
      throw ConfigError(path + ".prob", "probability must lie in [0, 1]");
    }
    total += s.prob;
  }
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probabilities sum to " << total << ", expected 1";
    throw ConfigError("states", msg.str());
  }
  index_by_input_.resize(static_cast<std::size_t>(max_level()) + 1);
  std::size_t pos = 0;
  for (int input = 0; input <= max_level(); ++input) {
    while (levels_[pos].level < input) ++pos;
    index_by_input_[static_cast<std::size_t>(input)] = static_cast<int>(pos);
  }
}

std::optional<StateLevel> StateDistribution::lookup(int input) const {
  if (input < 0) input = 0;
  if (input > max_level()) return std::nullopt;
  return levels_[static_cast<std::size_t>(
      index_by_input_[static_cast<std::size_t>(input)])];
}

std::string_view to_string(SendbackConvention c) noexcept {
  return c == SendbackConvention::kEq16Literal ? "eq16" : "eq17";
}

ReworkNetwork::ReworkNetwork(std::vector<NodeParams> nodes, int alpha, int beta,
                             double delta_send, SendbackConvention convention,
                             std::string name, std::string label)
    : nodes_(std::move(nodes)),
      alpha_(alpha),
      beta_(beta),
      delta_send_(delta_send),
      convention_(convention),
      name_(std::move(name)),
      label_(std::move(label)) {
  if (nodes_.empty()) throw ConfigError("nodes", "empty node list");
  if (nodes_.size() < 2) {
    throw ConfigError("nodes", "a rework network needs at least 2 nodes");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    check_rate(nodes_[i].delta, node_path(i) + ".delta");
    check_rate(nodes_[i].gamma, node_path(i) + ".gamma");
  }
  const int n = size();
  if (alpha_ < 1 || alpha_ > n) {
    throw ConfigError("alpha", "must be a node index in 1.." + std::to_string(n));
  }
  if (beta_ < 1 || beta_ > n) {
    throw ConfigError("beta", "must be a node index in 1.." + std::to_string(n));
  }
  if (beta_ > alpha_) {
    throw ConfigError("beta", "rework-begin node " + std::to_string(beta_) +
                                  " lies after rework-input node " +
                                  std::to_string(alpha_));
  }
  check_rate(delta_send_, "delta_send");
}

const NodeParams& ReworkNetwork::node(int k) const {
  if (k < 1 || k > size()) {
    throw std::out_of_range("node index " + std::to_string(k) +
                            " outside 1.." + std::to_string(size()));
  }
  return nodes_[static_cast<std::size_t>(k - 1)];
}

std::vector<std::string> ReworkNetwork::warnings() const {
  std::vector<std::string> out;
  for (int k = 1; k <= size(); ++k) {
    const auto& p = node(k);
    if (p.delta > p.gamma) {
      out.push_back("node " + std::to_string(k) + ": delta " +
                    std::to_string(p.delta) + " exceeds gamma " +
                    std::to_string(p.gamma) +
                    " (rework defects are usually at least as likely)");
    }
  }
  return out;
}

void Query::validate() const {
  if (d < 1 || d > b) {
    throw std::invalid_argument("query requires 1 <= d <= b, got b=" +
                                std::to_string(b) + " d=" + std::to_string(d));
  }
}

namespace {

template <typename T>
T require(const json& obj, const char* key, const std::string& path) {
  const std::string field = path.empty() ? key : path + "." + key;
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(field, "missing field");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

NodeParams parse_node(const json& j, std::size_t index) {
  const std::string path = node_path(index);
  const std::string where = " (node " + std::to_string(index + 1) + ")";
  if (!j.is_object()) throw ConfigError(path, "expected an object" + where);
  reject_unknown(j, {"delta", "gamma", "states", "p_k"}, path);

  const auto& states = j.find("states");
  if (states == j.end() || !states->is_array()) {
    throw ConfigError(path + ".states", "missing state list" + where);
  }
  std::vector<StateLevel> levels;
  for (std::size_t s = 0; s < states->size(); ++s) {
    const std::string spath = path + ".states[" + std::to_string(s) + "]";
    const auto& st = (*states)[s];
    if (!st.is_object()) throw ConfigError(spath, "expected an object" + where);
    reject_unknown(st, {"level", "prob"}, spath);
    levels.push_back({require<int>(st, "level", spath),
                      require<double>(st, "prob", spath)});
  }
  std::optional<StateDistribution> dist;
  try {
    dist.emplace(std::move(levels));
  } catch (const ConfigError& e) {
    throw ConfigError(path + "." + e.path(), e.message() + where);
  }

  NodeParams node{std::move(*dist), require<double>(j, "delta", path),
                  require<double>(j, "gamma", path), std::nullopt};
  if (j.contains("p_k")) node.nominal_rate = require<double>(j, "p_k", path);
  return node;
}

}  // namespace

ReworkNetwork parse_network(std::string_view text,
                            std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "document must be an object");
  reject_unknown(doc,
                 {"name", "label", "alpha", "beta", "delta_send",
                  "sendback_convention", "nodes"},
                 "");

  const auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end() || !nodes_it->is_array()) {
    throw ConfigError("nodes", "missing node list");
  }
  if (nodes_it->empty()) throw ConfigError("nodes", "empty node list");
  std::vector<NodeParams> nodes;
  for (std::size_t i = 0; i < nodes_it->size(); ++i) {
    nodes.push_back(parse_node((*nodes_it)[i], i));
  }

  auto convention = SendbackConvention::kEq17Literal;
  if (doc.contains("sendback_convention")) {
    const auto c = require<std::string>(doc, "sendback_convention", "");
    if (c == "eq16") {
      convention = SendbackConvention::kEq16Literal;
    } else if (c != "eq17") {
      throw ConfigError("sendback_convention",
                        "expected \"eq16\" or \"eq17\", got \"" + c + "\"");
    }
  }
  std::string name, label;
  if (doc.contains("name")) name = require<std::string>(doc, "name", "");
  if (doc.contains("label")) label = require<std::string>(doc, "label", "");

  ReworkNetwork net(std::move(nodes), require<int>(doc, "alpha", ""),
                    require<int>(doc, "beta", ""),
                    require<double>(doc, "delta_send", ""), convention,
                    std::move(name), std::move(label));
  if (warnings) {
    auto w = net.warnings();
    warnings->insert(warnings->end(), w.begin(), w.end());
  }
  return net;
}

ReworkNetwork load_network(const std::string& path,
                           std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), warnings);
}

std::string serialize_network(const ReworkNetwork& net) {
  json doc;
  if (!net.name().empty()) doc["name"] = net.name();
  if (!net.label().empty()) doc["label"] = net.label();
  doc["alpha"] = net.alpha();
  doc["beta"] = net.beta();
  doc["delta_send"] = net.delta_send();
  doc["sendback_convention"] = std::string(to_string(net.convention()));
  json nodes = json::array();
  for (const auto& n : net.nodes()) {
    json node;
    node["delta"] = n.delta;
    node["gamma"] = n.gamma;
    if (n.nominal_rate) node["p_k"] = *n.nominal_rate;
    json states = json::array();
    for (const auto& s : n.dist.levels()) {
      states.push_back({{"level", s.level}, {"prob", s.prob}});
    }
    node["states"] = std::move(states);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2);
}

std::optional<StateLevel> capacity_lookup(const ReworkNetwork& net, int node,
                                          int input) {
  return net.node(node).dist.lookup(input);
}

CapacityTable lookup_table(const ReworkNetwork& net, int max_input) {
  CapacityTable table;
  table.max_input = max_input;
  for (int input = 0; input <= max_input; ++input) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(net.size()));
    for (int k = 1; k <= net.size(); ++k) {
      const auto c = capacity_lookup(net, k, input);
      row.push_back(c ? c->prob : 0.0);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rework
