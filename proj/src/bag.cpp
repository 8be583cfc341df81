#include "gradual/bag.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_set>

namespace gradual {

namespace {

void normalize(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void check_endpoints(const std::vector<Edge>& edges, Index n, const char* kind) {
  for (const auto& [from, to] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw BagError(std::string(kind) + " edge (" + std::to_string(from) + ", " +
                     std::to_string(to) + ") has an endpoint outside [0, " +
                     std::to_string(n) + ")");
    }
  }
}

}  // namespace

Bag::Bag(std::vector<std::string> names, StrengthVector weights, std::vector<Edge> attacks,
         std::vector<Edge> supports)
    : names_(std::move(names)),
      weights_(std::move(weights)),
      attacks_(std::move(attacks)),
      supports_(std::move(supports)) {
  const Index n = size();
  if (weights_.size() != n) {
    throw BagError("expected " + std::to_string(n) + " weights, got " +
                   std::to_string(weights_.size()));
  }
  std::unordered_set<std::string> seen;
  for (Index i = 0; i < n; ++i) {
    if (!seen.insert(names_[static_cast<std::size_t>(i)]).second) {
      throw BagError("duplicate argument name '" + names_[static_cast<std::size_t>(i)] + "'");
    }
    const double w = weights_(i);
    if (!(w >= 0.0 && w <= 1.0)) {
      throw BagError("weight of '" + names_[static_cast<std::size_t>(i)] + "' is " +
                     std::to_string(w) + ", outside [0,1]");
    }
  }
  check_endpoints(attacks_, n, "attack");
  check_endpoints(supports_, n, "support");
  normalize(attacks_);
  normalize(supports_);

  std::vector<Edge> both;
  std::set_intersection(attacks_.begin(), attacks_.end(), supports_.begin(), supports_.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    const auto& [from, to] = both.front();
    throw BagError("'" + name(from) + "' both attacks and supports '" + name(to) + "'");
  }

  parents_.assign(static_cast<std::size_t>(n), {});
  for (const auto& [from, to] : attacks_) {
    parents_[static_cast<std::size_t>(to)].push_back({from, Polarity::Attack});
  }
  for (const auto& [from, to] : supports_) {
    parents_[static_cast<std::size_t>(to)].push_back({from, Polarity::Support});
  }
  for (auto& list : parents_) {
    std::sort(list.begin(), list.end(),
              [](const Parent& a, const Parent& b) { return a.index < b.index; });
  }
}

std::optional<Index> Bag::find(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Index>(it - names_.begin());
}

bool operator==(const Bag& a, const Bag& b) {
  return a.names_ == b.names_ && a.weights_ == b.weights_ && a.attacks_ == b.attacks_ &&
         a.supports_ == b.supports_;
}

ParentVector parent_vector(const Bag& bag, Index i) {
  if (i < 0 || i >= bag.size()) {
    throw std::out_of_range("argument index " + std::to_string(i) + " outside [0, " +
                            std::to_string(bag.size()) + ")");
  }
  ParentVector g = ParentVector::Zero(bag.size());
  for (const Parent& p : bag.parents(i)) g(p.index) = p.sign();
  return g;
}

std::optional<std::vector<Index>> topological_order(const Bag& bag) {
  const Index n = bag.size();
  std::vector<std::vector<Index>> children(static_cast<std::size_t>(n));
  std::vector<Index> pending(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    for (const Parent& p : bag.parents(i)) {
      children[static_cast<std::size_t>(p.index)].push_back(i);
      ++pending[static_cast<std::size_t>(i)];
    }
  }

  std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
  for (Index i = 0; i < n; ++i) {
    if (pending[static_cast<std::size_t>(i)] == 0) ready.push(i);
  }

  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const Index u = ready.top();
    ready.pop();
    order.push_back(u);
    for (Index v : children[static_cast<std::size_t>(u)]) {
      if (--pending[static_cast<std::size_t>(v)] == 0) ready.push(v);
    }
  }
  if (static_cast<Index>(order.size()) != n) return std::nullopt;
  return order;
}

Index max_indegree(const Bag& bag) {
  Index d = 0;
  for (Index i = 0; i < bag.size(); ++i) d = std::max(d, bag.indegree(i));
  return d;
}

}  // namespace gradual
