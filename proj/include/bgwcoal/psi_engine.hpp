#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "bgwcoal/offspring_model.hpp"

namespace bgwcoal {

/// The triple (psi_t(s), psi'_t(s), psi''_t(s)) at one (t,s) point, where
/// psi_t is the generating function of the population started from one
/// individual: E_1(s^{Z_t}) = psi_t(s), d psi/dt = Phi(psi), psi_0(s) = s.
struct PsiState {
  double t = 0.0;
  double s = 0.0;
  double psi = 0.0;
  double psi_d1 = 1.0;
  double psi_d2 = 0.0;
};

struct SolverConfig {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double max_step = 0.1;
  int series_order = 64;

  void validate() const;  // throws std::domain_error
};

/// Coefficients c_0..c_K of psi_t as a power series in s; c_j approximates
/// P_1(Z_t = j). Tiny negative values produced by integration are clamped at
/// construction (tolerance 1e-12); anything worse throws.
class TruncatedPgf {
 public:
  TruncatedPgf() : coeffs_(1, 1.0) {}
  explicit TruncatedPgf(std::vector<double> coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int j) const {
    return j >= 0 && j <= order() ? coeffs_[static_cast<std::size_t>(j)] : 0.0;
  }
  /// 1 - sum of coefficients: the probability mass pushed past the truncation
  /// order. Callers must check this before trusting tail coefficients.
  double truncation_mass() const { return truncation_mass_; }

  double evaluate(double s) const;             // Horner
  double evaluate_derivative(double s) const;  // termwise d/ds

  /// Coefficients j*c_j (index kept at j): the series of s * d/ds psi(s),
  /// i.e. the size-biased weights used by the inversion convolutions.
  TruncatedPgf size_biased() const;

 private:
  std::vector<double> coeffs_;
  double truncation_mass_ = 0.0;
};

/// Truncated polynomial product: coefficients 0..order of a*b.
std::vector<double> poly_mul_trunc(const std::vector<double>& a,
                                   const std::vector<double>& b, int order);

/// Distribution of Z_t from x ancestors: E_x(s^{Z_t}) = psi_t(s)^x, so the
/// truncated power of the one-ancestor series. x = 0 gives the empty
/// population (coefficient 1 at j = 0).
TruncatedPgf pgf_power(const TruncatedPgf& p, int x);

/// Integrates the augmented system
///   d psi  /dt = Phi(psi)
///   d psi' /dt = Phi'(psi) psi'
///   d psi''/dt = Phi''(psi) psi'^2 + Phi'(psi) psi''
/// from (s, 1, 0). psi is clamped into [0,1] after each accepted step; a
/// psi'' below -1e-10 at read time signals a corrupted solve and throws.
PsiState psi_at(const OffspringMeasure& m, double t, double s,
                const SolverConfig& cfg = {});

/// 1 - psi_t(s), integrated in survival form: v := 1 - psi obeys
///   dv/dt = -rho v - sum_{k>=2} (-1)^k m_k v^k,
/// with rho = -Phi'(1) and m_k = sum_n C(n,k) mu(n), which follows from
/// expanding Phi(1 - v) around v = 0. Relative error control on v keeps the
/// result accurate even when 1 - psi_t(s) has decayed far below the absolute
/// tolerance (deep subcritical horizons), where forming 1 - psi_at(...).psi
/// would lose every significant digit.
double survival_complement(const OffspringMeasure& m, double t, double s,
                           const SolverConfig& cfg = {});

struct PureDeath {
  double rate = 1.0;  // mu = {0: rate}
};
struct Binary {
  double death_rate = 2.0;   // c = mu(0)
  double branch_rate = 1.0;  // b = mu(2), c != b
};
using ClosedFormKind = std::variant<PureDeath, Binary>;

/// Elementary psi_t for the two special measures where F(u) = int du/Phi(u)
/// inverts in closed form. Throws std::domain_error for Binary with c == b.
PsiState closed_form_psi(const ClosedFormKind& kind, double t, double s);

/// Evolves psi_t as a truncated power series: the coefficient vector obeys
/// dc/dt = coeffs(Phi(sum c_j s^j)) with Phi of a polynomial computed by
/// truncated polynomial arithmetic (exact for coefficients 0..K thanks to the
/// triangular dependence). Coefficient j of the result is P_1(Z_t = j).
TruncatedPgf psi_series(const OffspringMeasure& m, double t,
                        const SolverConfig& cfg = {});

}  // namespace bgwcoal
