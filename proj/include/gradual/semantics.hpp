#pragma once

#include "gradual/bag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace gradual {

enum class Aggregation { Sum, Product, Top };
enum class Influence { Linear, EulerBased, PMax, Constant };

/// A basic modular semantics: one aggregation function composed with one
/// influence function. kappa applies to Linear and PMax, p to PMax only.
struct SemanticsSpec {
  Aggregation aggregation = Aggregation::Product;
  Influence influence = Influence::Linear;
  double kappa = 1.0;
  int p = 2;

  /// Product + Linear(kappa).
  static SemanticsSpec dfq(double kappa = 1.0) {
    return {Aggregation::Product, Influence::Linear, kappa, 2};
  }
  /// Sum + Euler-based.
  static SemanticsSpec euler() { return {Aggregation::Sum, Influence::EulerBased, 1.0, 2}; }
  /// Sum + 2-Max(kappa).
  static SemanticsSpec qe(double kappa = 1.0) {
    return {Aggregation::Sum, Influence::PMax, kappa, 2};
  }

  friend bool operator==(const SemanticsSpec&, const SemanticsSpec&) = default;
};

std::string to_string(Aggregation a);
std::string to_string(Influence i);
/// Human-readable label, e.g. "Sum + 2-Max(1)".
std::string to_string(const SemanticsSpec& spec);

/// Aggregation codomain is contained in [-value, value].
struct CodomainBound {
  double value = 0.0;
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Aggregation

/// alpha_v(s) over a sparse parent list. Only parent coordinates of s are read.
template <typename Derived>
typename Derived::Scalar aggregate(const SemanticsSpec& spec, std::span<const Parent> parents,
                                   const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  switch (spec.aggregation) {
    case Aggregation::Sum: {
      Scalar sum(0);
      for (const Parent& p : parents) sum += Scalar(p.sign()) * s(p.index);
      return sum;
    }
    case Aggregation::Product: {
      // Empty products are 1, so no parents gives 1 - 1 = 0.
      Scalar attack(1), support(1);
      for (const Parent& p : parents) {
        if (p.polarity == Polarity::Attack) {
          attack *= Scalar(1) - s(p.index);
        } else {
          support *= Scalar(1) - s(p.index);
        }
      }
      return attack - support;
    }
    case Aggregation::Top: {
      Scalar top_support(0), top_attack(0);
      for (const Parent& p : parents) {
        Scalar& slot = p.polarity == Polarity::Attack ? top_attack : top_support;
        slot = std::max(slot, Scalar(s(p.index)));
      }
      return top_support - top_attack;
    }
  }
  return Scalar(0);
}

/// alpha_v(s) for a dense parent vector.
template <typename Derived>
typename Derived::Scalar aggregate(const SemanticsSpec& spec, const ParentVector& v,
                                   const Eigen::MatrixBase<Derived>& s) {
  std::vector<Parent> parents;
  for (Index j = 0; j < v.size(); ++j) {
    if (v(j) != 0) parents.push_back({j, v(j) < 0 ? Polarity::Attack : Polarity::Support});
  }
  return aggregate(spec, std::span<const Parent>(parents), s);
}

// ---------------------------------------------------------------------------
// Influence

namespace detail {

// h(x) = max{0,x}^p / (1 + max{0,x}^p); saturates to 1 once x^p overflows.
template <typename Scalar>
Scalar pmax_h(Scalar x, int p) {
  using std::pow;
  if (!(x > Scalar(0))) return Scalar(0);
  const Scalar xp = pow(x, p);
  if (std::isinf(static_cast<double>(xp))) return Scalar(1);
  return xp / (Scalar(1) + xp);
}

}  // namespace detail

/// iota_w(a). Result lies in [0,1]; iota_w(0) == w exactly.
///
/// Linear(kappa) is only defined on [-kappa, kappa]. An aggregate outside that
/// interval (beyond rounding slack) throws SpecError; validate_spec rules this
/// out for any admissible (bag, spec) pair.
template <typename Scalar>
Scalar influence(const SemanticsSpec& spec, Scalar w, Scalar a) {
  using std::exp;
  if (a == Scalar(0)) return w;
  const Scalar kappa(spec.kappa);
  switch (spec.influence) {
    case Influence::Linear: {
      const Scalar slack = kappa * Scalar(1e-9);
      if (a < -kappa - slack || a > kappa + slack) {
        throw SpecError("Linear(" + std::to_string(spec.kappa) + ") influence applied to aggregate " +
                        std::to_string(static_cast<double>(a)) + " outside [-kappa, kappa]");
      }
      a = std::clamp(a, -kappa, kappa);
      const Scalar down = std::max(Scalar(0), -a);
      const Scalar up = std::max(Scalar(0), a);
      return w - (w / kappa) * down + ((Scalar(1) - w) / kappa) * up;
    }
    case Influence::EulerBased: {
      if (w == Scalar(0)) return Scalar(0);
      return Scalar(1) - (Scalar(1) - w * w) / (Scalar(1) + w * exp(a));
    }
    case Influence::PMax: {
      // (1 - w) on the support branch; see README note on the p-Max definition.
      return w - w * detail::pmax_h(-a / kappa, spec.p) +
             (Scalar(1) - w) * detail::pmax_h(a / kappa, spec.p);
    }
    case Influence::Constant:
      return w;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Update function f_S

/// f_S(s): component i is iota_{w_i}(alpha_{g_i}(s)). Arguments without
/// parents map straight to their weight.
template <typename Derived>
StrengthVectorT<typename Derived::Scalar> update(const Bag& bag, const SemanticsSpec& spec,
                                                 const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  StrengthVectorT<Scalar> out(bag.size());
  for (Index i = 0; i < bag.size(); ++i) {
    const auto& parents = bag.parents(i);
    const Scalar w(bag.weight(i));
    if (parents.empty()) {
      out(i) = w;
      continue;
    }
    out(i) = influence<Scalar>(spec, w, aggregate(spec, std::span<const Parent>(parents), s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lipschitz constants and codomain bounds

/// lambda^alpha for a parent set with the given number of nonzero entries.
double lipschitz_aggregation(const SemanticsSpec& spec, Index indegree);
double lipschitz_aggregation(const SemanticsSpec& spec, const ParentVector& v);

/// lambda^iota_w.
double lipschitz_influence(const SemanticsSpec& spec, double w);

CodomainBound codomain_bound(const SemanticsSpec& spec, Index indegree);
CodomainBound codomain_bound(const SemanticsSpec& spec, const ParentVector& v);

/// Returns std::nullopt when spec is admissible for bag, otherwise a message
/// naming the violated rule (and for Linear, the offending argument and bound).
std::optional<std::string> validate_spec(const Bag& bag, const SemanticsSpec& spec);

/// Throws SpecError with the validate_spec message.
void require_valid(const Bag& bag, const SemanticsSpec& spec);

}  // namespace gradual
