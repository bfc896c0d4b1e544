#pragma once

#include <Eigen/Core>

#include <functional>
#include <variant>

#include "qgd/error.hpp"

namespace qgd {

using Array = Eigen::ArrayXd;

/// p(rho) = p1 * rho^gamma, gamma > 1.
struct Isentropic {
  double p1 = 1.0;
  double gamma = 2.0;
};

/// Arbitrary monotone pressure law given by p and p'.
struct Tabulated {
  std::function<double(double)> p;
  std::function<double(double)> dp;
};

struct PressureValue {
  double p;
  double dp;
};

struct EnthalpyValue {
  double h;
  double dh;
};

/// Barotropic pressure law with its enthalpy h(rho) = int_{r0}^{rho} p'(r)/r dr.
///
/// The isentropic law uses the closed form with r0 = 0. A tabulated law
/// integrates numerically from r0 > 0.
class GasModel {
 public:
  using Law = std::variant<Isentropic, Tabulated>;

  static GasModel isentropic(double p1, double gamma);
  static GasModel tabulated(std::function<double(double)> p, std::function<double(double)> dp,
                            double r0);

  const Law& law() const noexcept { return law_; }
  double r0() const noexcept { return r0_; }
  bool is_isentropic() const noexcept { return std::holds_alternative<Isentropic>(law_); }

  PressureValue pressure(double rho) const;
  EnthalpyValue enthalpy(double rho) const;
  double sound_speed(double rho) const;

  /// Node-wise p, p', h, h' over a density array.
  Array pressure(const Array& rho) const;
  Array pressure_derivative(const Array& rho) const;
  Array enthalpy(const Array& rho) const;
  Array enthalpy_derivative(const Array& rho) const;

 private:
  GasModel(Law law, double r0) : law_(std::move(law)), r0_(r0) {}

  Law law_;
  double r0_ = 0.0;
};

enum class Regularization { FullQGD, SimplifiedQHD };
enum class SchemeKind { Standard, Enthalpy };
enum class Boundary { Periodic, CopyOutflow };

/// How dt follows from beta: FixedReference uses dt = beta h / c_ref for the
/// whole run; SignalSpeed recomputes c_ref = max_k(|u_k| + c_k) every step.
enum class TimeStepRule { FixedReference, SignalSpeed };

const char* to_string(Regularization r) noexcept;
const char* to_string(SchemeKind k) noexcept;
const char* to_string(Boundary b) noexcept;
const char* to_string(TimeStepRule r) noexcept;

struct SchemeConfig {
  double alpha = 0.4;
  double alpha_s = 4.0 / 3.0;
  Regularization regularization = Regularization::FullQGD;
  SchemeKind scheme = SchemeKind::Enthalpy;
  double beta = 0.5;
  double c_ref = 1.0;
  TimeStepRule time_step_rule = TimeStepRule::FixedReference;

  /// Effective viscosity coefficient of the linearized scheme.
  double kappa() const noexcept {
    return regularization == Regularization::FullQGD ? alpha_s + 1.0 : alpha_s;
  }
  double time_step(double h) const noexcept { return beta * h / c_ref; }
  void validate() const;

  bool operator==(const SchemeConfig&) const = default;
};

struct Mesh {
  int n = 3;
  double h = 1.0;
  double x_min = 0.0;
  Boundary boundary = Boundary::Periodic;

  double node(int k) const noexcept { return x_min + k * h; }
  Array nodes() const;
  void validate() const;

  bool operator==(const Mesh&) const = default;
};

struct MeshState {
  Array rho;
  Array u;
  double t = 0.0;

  Eigen::Index size() const noexcept { return rho.size(); }
  Array momentum() const { return rho * u; }
  void validate() const;
};

struct RegularizationValue {
  double tau;
  double mu;
};

/// tau = alpha h / sqrt(p'(rho)), mu = alpha_s tau rho p'(rho).
RegularizationValue regularization_params(const GasModel& model, const SchemeConfig& cfg,
                                          double rho, double h);

}  // namespace qgd
