#include "bgwcoal/offspring_model.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bgwcoal {

namespace {

constexpr double k_criticality_tol = 1e-12;
constexpr double k_eta_grid_step = 1e-3;
constexpr double k_eta_bisect_tol = 1e-12;

double pow_int(double s, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= s;
  return r;
}

void require_unit_interval(double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("s must lie in [0,1], got " + std::to_string(s));
}

}  // namespace

const char* to_string(CriticalityClass cls) {
  switch (cls) {
    case CriticalityClass::Subcritical: return "subcritical";
    case CriticalityClass::Critical: return "critical";
    case CriticalityClass::Supercritical: return "supercritical";
  }
  return "?";
}

OffspringMeasure OffspringMeasure::from_weights(const std::map<int, double>& weights) {
  OffspringMeasure m;
  for (const auto& [n, w] : weights) {
    if (n < 0) throw std::domain_error("offspring count must be nonnegative");
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::domain_error("weight for n=" + std::to_string(n) + " must be a finite nonnegative rate");
    if (n == 1 && w != 0.0)
      throw std::domain_error("mu(1) must be 0: an individual is never replaced by exactly one child");
    if (w > 0.0) {
      m.weights_.emplace_back(n, w);
      m.total_rate_ += w;
    }
  }
  if (m.weights_.empty() || m.total_rate_ <= 0.0)
    throw std::domain_error("measure must have positive total rate");
  if (m.weights_.front().first != 0)
    throw std::domain_error("mu(0) must be positive");
  return m;
}

OffspringMeasure OffspringMeasure::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::domain_error("measure must be a JSON object");
  std::map<int, double> weights;
  for (const auto& [key, value] : j.items()) {
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || n < 0)
      throw std::domain_error("measure key '" + key + "' is not a nonnegative integer");
    if (!value.is_number())
      throw std::domain_error("measure value for key '" + key + "' must be a number");
    weights[n] = value.get<double>();
  }
  return from_weights(weights);
}

nlohmann::json OffspringMeasure::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [n, w] : weights_) j[std::to_string(n)] = w;
  return j;
}

double OffspringMeasure::weight(int n) const {
  for (const auto& [k, w] : weights_)
    if (k == n) return w;
  return 0.0;
}

bool OffspringMeasure::is_pure_death() const {
  return weights_.size() == 1;  // front is n=0 by construction
}

double OffspringMeasure::phi_unchecked(double s) const {
  double sum = 0.0;
  for (const auto& [n, w] : weights_) sum += (pow_int(s, n) - s) * w;
  return sum;
}

double OffspringMeasure::phi(double s) const {
  require_unit_interval(s);
  return phi_unchecked(s);
}

double OffspringMeasure::phi_d1(double s) const {
  require_unit_interval(s);
  double sum = 0.0;
  for (const auto& [n, w] : weights_)
    sum += (n >= 1 ? n * pow_int(s, n - 1) - 1.0 : -1.0) * w;
  return sum;
}

double OffspringMeasure::phi_d2(double s) const {
  require_unit_interval(s);
  double sum = 0.0;
  for (const auto& [n, w] : weights_)
    if (n >= 2) sum += static_cast<double>(n) * (n - 1) * pow_int(s, n - 2) * w;
  return sum;
}

double OffspringMeasure::eta() const {
  // Phi(0) = mu(0) > 0 and Phi(1) = 0. Phi need not be monotone, so scan a
  // grid for the first sign change, then bisect. No change means Phi > 0 on
  // (0,1) and the smallest positive root is 1 itself.
  double lo = 0.0;
  double phi_lo = total_rate_ > 0 ? weights_.front().second : 0.0;  // Phi(0) = mu(0)
  for (double u = k_eta_grid_step; u < 1.0; u += k_eta_grid_step) {
    const double v = phi_unchecked(u);
    if (v == 0.0) return u;
    if (v < 0.0) {
      double a = lo, b = u;
      while (b - a > k_eta_bisect_tol) {
        const double mid = 0.5 * (a + b);
        if (phi_unchecked(mid) > 0.0)
          a = mid;
        else
          b = mid;
      }
      return 0.5 * (a + b);
    }
    lo = u;
    phi_lo = v;
  }
  (void)phi_lo;
  return 1.0;
}

Criticality OffspringMeasure::classify() const {
  double rate = 0.0;
  for (const auto& [n, w] : weights_) rate += (n - 1.0) * w;
  Criticality c;
  c.growth_rate = rate;
  if (rate < -k_criticality_tol)
    c.cls = CriticalityClass::Subcritical;
  else if (rate > k_criticality_tol)
    c.cls = CriticalityClass::Supercritical;
  else
    c.cls = CriticalityClass::Critical;
  return c;
}

}  // namespace bgwcoal
