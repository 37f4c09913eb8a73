/// @file model.hpp
/// Serial rework network, per-node capacity distributions and the
/// smallest-level-not-below-input capacity lookup.
#ifndef REWORK_MODEL_HPP
#define REWORK_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rework {

/// Raised for any invalid network description. The message starts with the
/// offending field path, e.g. "nodes[1].states[0].prob".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, std::string message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        message_(std::move(message)) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

struct StateLevel {
  int level = 0;
  double prob = 0.0;

  friend bool operator==(const StateLevel&, const StateLevel&) = default;
};

/// Discrete capacity levels of one node with their occurrence probabilities.
class StateDistribution {
 public:
  /// Levels must be strictly increasing, nonnegative, and the probabilities
  /// must sum to one within 1e-9.
  explicit StateDistribution(std::vector<StateLevel> levels);

  const std::vector<StateLevel>& levels() const noexcept { return levels_; }
  int max_level() const noexcept { return levels_.back().level; }

  /// Smallest level not below @p input; empty when input > max_level().
  std::optional<StateLevel> lookup(int input) const;

  friend bool operator==(const StateDistribution& a,
                         const StateDistribution& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<StateLevel> levels_;
  std::vector<int> index_by_input_;  ///< input -> position in levels_
};

struct NodeParams {
  StateDistribution dist;
  double delta = 0.0;  ///< first-pass defect rate
  double gamma = 0.0;  ///< rework-pass defect rate
  /// Informational per-node rate carried by some published configurations.
  /// Parsed and round-tripped, never used in any computation.
  std::optional<double> nominal_rate;

  friend bool operator==(const NodeParams&, const NodeParams&) = default;
};

/// Which exponent placement defines the per-defect send-back probability.
enum class SendbackConvention {
  kEq16Literal,  ///< each defect is sent back with probability delta_send
  kEq17Literal,  ///< each defect is sent back with probability 1 - delta_send
};

std::string_view to_string(SendbackConvention c) noexcept;

/// Serial line 1..n plus one rework arc alpha -> beta. Immutable.
class ReworkNetwork {
 public:
  ReworkNetwork(std::vector<NodeParams> nodes, int alpha, int beta,
                double delta_send,
                SendbackConvention convention = SendbackConvention::kEq17Literal,
                std::string name = {}, std::string label = {});

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  /// 1-based node access.
  const NodeParams& node(int k) const;
  const std::vector<NodeParams>& nodes() const noexcept { return nodes_; }

  int alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return beta_; }
  double delta_send() const noexcept { return delta_send_; }
  SendbackConvention convention() const noexcept { return convention_; }
  const std::string& name() const noexcept { return name_; }
  const std::string& label() const noexcept { return label_; }

  /// Advisory findings that do not invalidate the network, currently only
  /// nodes whose first-pass defect rate exceeds the rework-pass rate.
  std::vector<std::string> warnings() const;

  friend bool operator==(const ReworkNetwork&, const ReworkNetwork&) = default;

 private:
  std::vector<NodeParams> nodes_;
  int alpha_;
  int beta_;
  double delta_send_;
  SendbackConvention convention_;
  std::string name_;
  std::string label_;
};

struct Query {
  int b = 1;  ///< input units
  int d = 1;  ///< output demand

  /// Throws std::invalid_argument unless 1 <= d <= b.
  void validate() const;
};

/// Parses a JSON network document. Warnings (if any) are appended to
/// @p warnings when it is non-null.
ReworkNetwork parse_network(std::string_view text,
                            std::vector<std::string>* warnings = nullptr);
ReworkNetwork load_network(const std::string& path,
                           std::vector<std::string>* warnings = nullptr);
std::string serialize_network(const ReworkNetwork& net);

/// c_node(input) and its probability C_node(input). Throws std::out_of_range
/// for a node outside 1..n.
std::optional<StateLevel> capacity_lookup(const ReworkNetwork& net, int node,
                                          int input);

/// rows[input][node - 1] = C_node(input), 0 where the lookup is absent.
struct CapacityTable {
  int max_input = 0;
  std::vector<std::vector<double>> rows;
};

CapacityTable lookup_table(const ReworkNetwork& net, int max_input);

}  // namespace rework

#endif  // REWORK_MODEL_HPP
