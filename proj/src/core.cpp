#include "qgd/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

namespace qgd {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::NonMonotonePressure: return "NonMonotonePressure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidKappa: return "InvalidKappa";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

const char* to_string(Regularization r) noexcept {
  return r == Regularization::FullQGD ? "qgd" : "qhd";
}

const char* to_string(SchemeKind k) noexcept {
  return k == SchemeKind::Standard ? "standard" : "enthalpy";
}

const char* to_string(Boundary b) noexcept {
  return b == Boundary::Periodic ? "periodic" : "copy_outflow";
}

const char* to_string(TimeStepRule r) noexcept {
  return r == TimeStepRule::FixedReference ? "fixed" : "signal_speed";
}

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity, "density " + std::to_string(rho));
  }
}

}  // namespace

GasModel GasModel::isentropic(double p1, double gamma) {
  if (!(p1 > 0.0) || !(gamma > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "isentropic law needs p1 > 0 and gamma > 1");
  }
  return GasModel(Isentropic{p1, gamma}, 0.0);
}

GasModel GasModel::tabulated(std::function<double(double)> p, std::function<double(double)> dp,
                             double r0) {
  if (!p || !dp) {
    throw Error(ErrorCode::InvalidArgument, "tabulated law needs both p and p'");
  }
  if (!(r0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tabulated law needs r0 > 0");
  }
  return GasModel(Tabulated{std::move(p), std::move(dp)}, r0);
}

PressureValue GasModel::pressure(double rho) const {
  require_positive_density(rho);
  if (const auto* law = std::get_if<Isentropic>(&law_)) {
    const double p = law->p1 * std::pow(rho, law->gamma);
    return {p, law->gamma * p / rho};
  }
  const auto& law = std::get<Tabulated>(law_);
  const PressureValue value{law.p(rho), law.dp(rho)};
  if (!(value.dp > 0.0)) {
    throw Error(ErrorCode::NonMonotonePressure,
                "p'(" + std::to_string(rho) + ") = " + std::to_string(value.dp));
  }
  return value;
}

EnthalpyValue GasModel::enthalpy(double rho) const {
  require_positive_density(rho);
  if (const auto* law = std::get_if<Isentropic>(&law_)) {
    const double p = law->p1 * std::pow(rho, law->gamma);
    return {law->gamma / (law->gamma - 1.0) * p / rho, law->gamma * p / (rho * rho)};
  }
  auto integrand = [this](double r) { return pressure(r).dp / r; };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double h = rho >= r0_ ? Quadrature::integrate(integrand, r0_, rho, 15, 1e-13)
                              : -Quadrature::integrate(integrand, rho, r0_, 15, 1e-13);
  return {h, pressure(rho).dp / rho};
}

double GasModel::sound_speed(double rho) const { return std::sqrt(pressure(rho).dp); }

Array GasModel::pressure(const Array& rho) const {
  return rho.unaryExpr([this](double r) { return pressure(r).p; });
}

Array GasModel::pressure_derivative(const Array& rho) const {
  return rho.unaryExpr([this](double r) { return pressure(r).dp; });
}

Array GasModel::enthalpy(const Array& rho) const {
  return rho.unaryExpr([this](double r) { return enthalpy(r).h; });
}

Array GasModel::enthalpy_derivative(const Array& rho) const {
  return rho.unaryExpr([this](double r) { return enthalpy(r).dh; });
}

void SchemeConfig::validate() const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  if (!(alpha_s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha_s must be >= 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be > 0");
  if (!(c_ref > 0.0)) throw Error(ErrorCode::InvalidArgument, "c_ref must be > 0");
}

Array Mesh::nodes() const {
  return x_min + h * Array::LinSpaced(n, 0.0, static_cast<double>(n - 1));
}

void Mesh::validate() const {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 3 nodes");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh spacing must be > 0");
}

void MeshState::validate() const {
  if (rho.size() != u.size()) {
    throw Error(ErrorCode::LengthMismatch, "rho and u differ in length");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be >= 0");
  for (Eigen::Index k = 0; k < rho.size(); ++k) {
    if (!(rho(k) > 0.0)) {
      throw Error(ErrorCode::NonPositiveDensity,
                  "rho[" + std::to_string(k) + "] = " + std::to_string(rho(k)));
    }
  }
}

RegularizationValue regularization_params(const GasModel& model, const SchemeConfig& cfg,
                                          double rho, double h) {
  const auto [p, dp] = model.pressure(rho);
  (void)p;
  const double tau = cfg.alpha * h / std::sqrt(dp);
  return {tau, cfg.alpha_s * tau * rho * dp};
}

}  // namespace qgd
