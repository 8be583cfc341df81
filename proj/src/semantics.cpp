#include "gradual/semantics.hpp"

#include <sstream>

namespace gradual {

namespace {

std::string format_real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::string to_string(Aggregation a) {
  switch (a) {
    case Aggregation::Sum: return "Sum";
    case Aggregation::Product: return "Product";
    case Aggregation::Top: return "Top";
  }
  return "?";
}

std::string to_string(Influence i) {
  switch (i) {
    case Influence::Linear: return "Linear";
    case Influence::EulerBased: return "Euler";
    case Influence::PMax: return "p-Max";
    case Influence::Constant: return "Constant";
  }
  return "?";
}

std::string to_string(const SemanticsSpec& spec) {
  std::string out = to_string(spec.aggregation) + " + ";
  switch (spec.influence) {
    case Influence::Linear:
      return out + "Linear(" + format_real(spec.kappa) + ")";
    case Influence::PMax:
      return out + std::to_string(spec.p) + "-Max(" + format_real(spec.kappa) + ")";
    case Influence::EulerBased:
    case Influence::Constant:
      return out + to_string(spec.influence);
  }
  return out;
}

double lipschitz_aggregation(const SemanticsSpec& spec, Index indegree) {
  const auto d = static_cast<double>(indegree);
  switch (spec.aggregation) {
    case Aggregation::Sum:
    case Aggregation::Product:
      return d;
    case Aggregation::Top:
      return std::min(2.0, d);
  }
  return d;
}

double lipschitz_aggregation(const SemanticsSpec& spec, const ParentVector& v) {
  return lipschitz_aggregation(spec, static_cast<Index>(v.cwiseAbs().sum()));
}

double lipschitz_influence(const SemanticsSpec& spec, double w) {
  switch (spec.influence) {
    case Influence::Linear:
      return std::max(w, 1.0 - w) / spec.kappa;
    case Influence::EulerBased:
      return 0.25;
    case Influence::PMax:
      return static_cast<double>(spec.p) / spec.kappa * std::max(w, 1.0 - w);
    case Influence::Constant:
      return 0.0;
  }
  return 0.0;
}

CodomainBound codomain_bound(const SemanticsSpec& spec, Index indegree) {
  if (indegree == 0) return {0.0};
  switch (spec.aggregation) {
    case Aggregation::Sum:
      return {static_cast<double>(indegree)};
    case Aggregation::Product:
    case Aggregation::Top:
      return {1.0};
  }
  return {0.0};
}

CodomainBound codomain_bound(const SemanticsSpec& spec, const ParentVector& v) {
  return codomain_bound(spec, static_cast<Index>(v.cwiseAbs().sum()));
}

std::optional<std::string> validate_spec(const Bag& bag, const SemanticsSpec& spec) {
  const bool uses_kappa =
      spec.influence == Influence::Linear || spec.influence == Influence::PMax;
  if (uses_kappa && !(spec.kappa > 0.0 && std::isfinite(spec.kappa))) {
    return "conservativeness kappa must be a positive real, got " + format_real(spec.kappa);
  }
  if (spec.influence == Influence::PMax && spec.p < 1) {
    return "p-Max exponent p must be at least 1, got " + std::to_string(spec.p);
  }
  if (spec.influence != Influence::Linear) return std::nullopt;

  for (Index i = 0; i < bag.size(); ++i) {
    const double bound = codomain_bound(spec, bag.indegree(i)).value;
    if (bound > spec.kappa) {
      return "Linear(" + format_real(spec.kappa) + ") needs aggregates within [-kappa, kappa], but " +
             to_string(spec.aggregation) + " aggregation at argument '" + bag.name(i) +
             "' ranges over [-" + format_real(bound) + ", " + format_real(bound) + "]";
    }
  }
  return std::nullopt;
}

void require_valid(const Bag& bag, const SemanticsSpec& spec) {
  if (auto err = validate_spec(bag, spec)) throw SpecError(*err);
}

}  // namespace gradual
