#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bgwcoal {

enum class CriticalityClass { Subcritical, Critical, Supercritical };

struct Criticality {
  CriticalityClass cls = CriticalityClass::Critical;
  double growth_rate = 0.0;  // Phi'(1) = sum_n (n-1) mu(n), units 1/time
};

const char* to_string(CriticalityClass cls);

/// Finite reproduction measure mu on the nonnegative integers with mu(1) = 0
/// and mu(0) > 0. Each individual lives Exponential(mu(N)) and is replaced by
/// n children with probability mu(n)/mu(N). Owns the branching mechanism
///   Phi(s) = sum_n (s^n - s) mu(n)
/// and its first two derivatives. Immutable after construction; every member
/// is pure, so concurrent use needs no synchronization.
class OffspringMeasure {
 public:
  /// Validates and normalizes a weight map: keys are offspring counts,
  /// values are rates (1/time). Zero-valued entries are dropped. Throws
  /// std::domain_error on mu(1) != 0, mu(0) <= 0, negative weights, or an
  /// empty/zero measure.
  static OffspringMeasure from_weights(const std::map<int, double>& weights);

  /// Accepts {"0": 2.0, "2": 1.0}: keys are decimal integer strings, values
  /// nonnegative reals; key "1" is rejected unless its value is 0.
  static OffspringMeasure from_json(const nlohmann::json& j);

  /// Weights sorted by offspring count; entries all have positive rate.
  const std::vector<std::pair<int, double>>& weights() const { return weights_; }
  double weight(int n) const;
  double total_rate() const { return total_rate_; }
  int max_count() const { return weights_.back().first; }

  /// Whether the measure is {0:d} or {0:c, 2:b} with c != b; such measures
  /// have elementary psi_t (see closed_form_psi).
  bool is_pure_death() const;

  double phi(double s) const;     // requires s in [0,1]
  double phi_d1(double s) const;  // requires s in [0,1]
  double phi_d2(double s) const;  // requires s in [0,1]

  /// Smallest positive root of Phi. Always in (0,1]: equals 1 when Phi > 0 on
  /// (0,1) (sub/critical), and lies in (0,1) in the supercritical case.
  double eta() const;

  /// Sign of the growth rate Phi'(1) with zero tolerance 1e-12.
  Criticality classify() const;

  nlohmann::json to_json() const;

 private:
  OffspringMeasure() = default;
  double phi_unchecked(double s) const;  // no [0,1] clamp; used by eta()

  std::vector<std::pair<int, double>> weights_;
  double total_rate_ = 0.0;
};

}  // namespace bgwcoal
