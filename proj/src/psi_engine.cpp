#include "bgwcoal/psi_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bgwcoal/errors.hpp"
#include "bgwcoal/ode.hpp"

namespace bgwcoal {

namespace {

constexpr double k_coeff_clamp_tol = 1e-12;
constexpr double k_mass_overflow_tol = 1e-9;
constexpr double k_psi_d2_read_tol = 1e-10;

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("t must be finite and >= 0");
}
void require_unit(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("s must lie in [0,1]");
}

OdeOptions ode_options(const SolverConfig& cfg) {
  OdeOptions o;
  o.abs_tol = cfg.abs_tol;
  o.rel_tol = cfg.rel_tol;
  o.max_step = cfg.max_step;
  return o;
}

// Binomial moments m_k = sum_n C(n,k) mu(n), k = 2..max_count. These are the
// expansion coefficients of Phi(1-v) = rho v + sum_k (-1)^k m_k v^k.
std::vector<double> binomial_moments(const OffspringMeasure& m) {
  const int nmax = m.max_count();
  std::vector<double> mk(static_cast<std::size_t>(std::max(nmax, 1)) + 1, 0.0);
  for (const auto& [n, w] : m.weights()) {
    double c = 1.0;  // C(n,k) built incrementally over k
    for (int k = 1; k <= n; ++k) {
      c = c * (n - k + 1) / k;
      if (k >= 2) mk[static_cast<std::size_t>(k)] += c * w;
    }
  }
  return mk;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::domain_error("tolerances must be positive");
  if (!(max_step > 0.0)) throw std::domain_error("max_step must be positive");
  if (series_order < 2) throw std::domain_error("series_order must be >= 2");
}

TruncatedPgf::TruncatedPgf(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::domain_error("TruncatedPgf needs at least order 0");
  double sum = 0.0;
  for (double& c : coeffs_) {
    if (c < 0.0) {
      if (c < -k_coeff_clamp_tol)
        throw SolverError("series coefficient " + std::to_string(c) + " below clamp tolerance", 0.0);
      c = 0.0;
    }
    sum += c;
  }
  if (sum > 1.0 + k_mass_overflow_tol)
    throw SolverError("series mass " + std::to_string(sum) + " exceeds 1", 0.0);
  truncation_mass_ = std::max(0.0, 1.0 - sum);
}

double TruncatedPgf::evaluate(double s) const {
  double acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * s + coeffs_[j];
  return acc;
}

double TruncatedPgf::evaluate_derivative(double s) const {
  double acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 1;) acc = acc * s + static_cast<double>(j) * coeffs_[j];
  return acc;
}

TruncatedPgf TruncatedPgf::size_biased() const {
  TruncatedPgf out;
  out.coeffs_.assign(coeffs_.size(), 0.0);
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    out.coeffs_[j] = static_cast<double>(j) * coeffs_[j];
  out.truncation_mass_ = 0.0;  // not a probability vector; mass bookkeeping void
  return out;
}

std::vector<double> poly_mul_trunc(const std::vector<double>& a,
                                   const std::vector<double>& b, int order) {
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  const std::size_t K = out.size();
  for (std::size_t i = 0; i < a.size() && i < K; ++i) {
    if (a[i] == 0.0) continue;
    const std::size_t hi = std::min(b.size(), K - i);
    for (std::size_t j = 0; j < hi; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedPgf pgf_power(const TruncatedPgf& p, int x) {
  if (x < 0) throw std::domain_error("pgf_power: x must be >= 0");
  const int K = p.order();
  std::vector<double> result(static_cast<std::size_t>(K) + 1, 0.0);
  result[0] = 1.0;
  std::vector<double> base = p.coeffs();
  int e = x;
  while (e > 0) {  // square-and-multiply with truncation at K
    if (e & 1) result = poly_mul_trunc(result, base, K);
    e >>= 1;
    if (e > 0) base = poly_mul_trunc(base, base, K);
  }
  return TruncatedPgf(std::move(result));
}

PsiState psi_at(const OffspringMeasure& m, double t, double s, const SolverConfig& cfg) {
  require_time(t);
  require_unit(s);
  cfg.validate();

  std::vector<double> y = {s, 1.0, 0.0};
  integrate_ode(
      [&m](double, const std::vector<double>& v, double* dv) {
        const double psi = v[0];
        const double d1 = m.phi_d1(psi);
        dv[0] = m.phi(psi);
        dv[1] = d1 * v[1];
        dv[2] = m.phi_d2(psi) * v[1] * v[1] + d1 * v[2];
      },
      y, 0.0, t, ode_options(cfg),
      [](std::vector<double>& v) { v[0] = std::clamp(v[0], 0.0, 1.0); });

  if (y[2] < -k_psi_d2_read_tol)
    throw SolverError("psi'' went negative (" + std::to_string(y[2]) + "); solve corrupted", t);
  PsiState st;
  st.t = t;
  st.s = s;
  st.psi = y[0];
  st.psi_d1 = y[1];
  st.psi_d2 = std::max(0.0, y[2]);
  return st;
}

double survival_complement(const OffspringMeasure& m, double t, double s,
                           const SolverConfig& cfg) {
  require_time(t);
  require_unit(s);
  cfg.validate();
  if (s == 1.0) return 0.0;

  const double rho = -m.classify().growth_rate;
  const auto mk = binomial_moments(m);
  const int nmax = m.max_count();

  OdeOptions opts = ode_options(cfg);
  opts.abs_tol = 1e-280;  // v stays strictly positive; control it relatively

  std::vector<double> y = {1.0 - s};
  integrate_ode(
      [&](double, const std::vector<double>& v, double* dv) {
        const double u = v[0];
        double acc = rho * u;
        double uk = u;
        for (int k = 2; k <= nmax; ++k) {
          uk *= u;
          acc += (k % 2 == 0 ? 1.0 : -1.0) * mk[static_cast<std::size_t>(k)] * uk;
        }
        dv[0] = -acc;
      },
      y, 0.0, t, opts);
  return y[0];
}

// Pure death mu = {0:d}: d psi/dt = d (1 - psi) is linear, so
//   psi_t(s) = 1 - (1-s) e^{-dt},  psi' = e^{-dt},  psi'' = 0.
//
// Binary mu = {0:c, 2:b}, c != b: Phi(psi) = (1-psi)(c - b psi). Separating,
//   int d psi / Phi = (c-b)^{-1} ln[(c - b psi)/(1 - psi)],
// so r(psi) := (c - b psi)/(1 - psi) evolves as r(psi_t) = r(s) e^{(c-b)t}
// (this is F/phi inversion with F elementary: F(u) = (c-b)^{-1} ln(r(u)/r(0)),
// valid below the second root c/b of Phi). Solving the linear-fractional
// relation for psi_t and writing E = e^{(c-b)t}, W = E(c - bs) - b(1-s):
//   1 - psi_t(s) = (c-b)(1-s)/W
//   psi'_t(s)    = (c-b)^2 E / W^2
//   psi''_t(s)   = 2 b (E-1) (c-b)^2 E / W^3.
PsiState closed_form_psi(const ClosedFormKind& kind, double t, double s) {
  require_time(t);
  require_unit(s);
  PsiState st;
  st.t = t;
  st.s = s;
  if (const auto* pd = std::get_if<PureDeath>(&kind)) {
    if (!(pd->rate > 0.0)) throw std::domain_error("pure-death rate must be positive");
    const double decay = std::exp(-pd->rate * t);
    st.psi = 1.0 - (1.0 - s) * decay;
    st.psi_d1 = decay;
    st.psi_d2 = 0.0;
    return st;
  }
  const auto& bn = std::get<Binary>(kind);
  const double c = bn.death_rate, b = bn.branch_rate;
  if (!(c > 0.0) || !(b > 0.0)) throw std::domain_error("binary rates must be positive");
  if (c == b) throw std::domain_error("binary closed form requires c != b (critical case excluded)");
  const double diff = c - b;
  const double E = std::exp(diff * t);
  const double W = E * (c - b * s) - b * (1.0 - s);
  st.psi = 1.0 - diff * (1.0 - s) / W;
  st.psi_d1 = diff * diff * E / (W * W);
  st.psi_d2 = 2.0 * b * (E - 1.0) * diff * diff * E / (W * W * W);
  return st;
}

TruncatedPgf psi_series(const OffspringMeasure& m, double t, const SolverConfig& cfg) {
  require_time(t);
  cfg.validate();
  const int K = cfg.series_order;
  const std::size_t dim = static_cast<std::size_t>(K) + 1;

  std::vector<double> y(dim, 0.0);
  y[1] = 1.0;  // psi_0(s) = s

  const double total = m.total_rate();
  std::vector<double> phi_of_p(dim), power(dim);
  integrate_ode(
      [&](double, const std::vector<double>& c, double* dc) {
        // Phi(P) = sum_n mu(n) P^n - mu(N) P, with P^0 = 1.
        std::fill(phi_of_p.begin(), phi_of_p.end(), 0.0);
        int cur = 0;
        power.assign(dim, 0.0);
        power[0] = 1.0;
        for (const auto& [n, w] : m.weights()) {
          while (cur < n) {
            power = poly_mul_trunc(power, c, K);
            ++cur;
          }
          for (std::size_t j = 0; j < dim; ++j) phi_of_p[j] += w * power[j];
        }
        for (std::size_t j = 0; j < dim; ++j) dc[j] = phi_of_p[j] - total * c[j];
      },
      y, 0.0, t, ode_options(cfg));

  return TruncatedPgf(std::move(y));
}

}  // namespace bgwcoal
