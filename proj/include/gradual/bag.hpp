#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradual {

using Index = std::ptrdiff_t;

/// Per-argument strength (or weight) vector. All entries live in [0,1].
template <typename Scalar>
using StrengthVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using StrengthVector = StrengthVectorT<double>;

/// Dense parent vector g_i over {-1, 0, +1}: -1 marks an attacker, +1 a supporter.
using ParentVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

/// Ordered (source, target) pair of dense argument indices.
using Edge = std::pair<Index, Index>;

enum class Polarity : int { Attack = -1, Support = 1 };

/// Sparse view of one parent entry; the engines iterate these instead of the
/// dense parent vector.
struct Parent {
  Index index;
  Polarity polarity;

  int sign() const { return static_cast<int>(polarity); }
};

class BagError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weighted bipolar argumentation graph. Immutable once constructed.
///
/// Arguments are addressed by dense 0-based index in declaration order; names
/// are kept for I/O only. Duplicate edges collapse. Construction throws
/// BagError when a weight leaves [0,1], a name repeats, an endpoint is out of
/// range, or the same ordered pair is both an attack and a support.
class Bag {
 public:
  Bag() = default;
  Bag(std::vector<std::string> names, StrengthVector weights, std::vector<Edge> attacks,
      std::vector<Edge> supports);

  Index size() const { return static_cast<Index>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Index i) const { return names_.at(static_cast<std::size_t>(i)); }
  const StrengthVector& weights() const { return weights_; }
  double weight(Index i) const { return weights_(i); }

  /// Sorted, duplicate-free edge lists.
  const std::vector<Edge>& attacks() const { return attacks_; }
  const std::vector<Edge>& supports() const { return supports_; }

  /// Parents of argument i, sorted by parent index.
  const std::vector<Parent>& parents(Index i) const {
    return parents_.at(static_cast<std::size_t>(i));
  }
  Index indegree(Index i) const { return static_cast<Index>(parents(i).size()); }

  std::optional<Index> find(const std::string& name) const;

  friend bool operator==(const Bag& a, const Bag& b);

 private:
  std::vector<std::string> names_;
  StrengthVector weights_;
  std::vector<Edge> attacks_;
  std::vector<Edge> supports_;
  std::vector<std::vector<Parent>> parents_;
};

/// Dense parent vector of argument i. Throws std::out_of_range for a bad index.
ParentVector parent_vector(const Bag& bag, Index i);

/// Kahn order over attacks ∪ supports, ties broken by smallest index.
/// Returns std::nullopt when the graph has a cycle (self-loops included).
std::optional<std::vector<Index>> topological_order(const Bag& bag);

inline bool is_acyclic(const Bag& bag) { return topological_order(bag).has_value(); }

/// Largest number of parents over all arguments; 0 for an edgeless or empty bag.
Index max_indegree(const Bag& bag);

}  // namespace gradual
