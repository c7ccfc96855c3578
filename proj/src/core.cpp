#include "frictpair/core.hpp"

#include <cmath>
#include <stdexcept>

#include "frictpair/errors.hpp"

namespace frictpair {

std::optional<std::string> validate(const Params& p) {
  if (!(std::isfinite(p.m1) && p.m1 > 0.0)) return "m1 must be > 0";
  if (!(std::isfinite(p.m2) && p.m2 > 0.0)) return "m2 must be > 0";
  if (!(std::isfinite(p.a1) && p.a1 >= 0.0)) return "a1 must be >= 0";
  if (!(std::isfinite(p.a2) && p.a2 > 0.0)) return "a2 must be > 0";
  if (!(std::isfinite(p.b) && p.b > 0.0)) return "b must be > 0";
  return std::nullopt;
}

void require_valid(const Params& p) {
  if (auto err = validate(p)) throw ValidationError(*err);
}

Forcing Forcing::constant(double value) {
  Forcing f;
  f.kind_ = Kind::Constant;
  f.value_ = value;
  return f;
}

Forcing Forcing::sinusoid(double amplitude, double omega, double phase) {
  Forcing f;
  f.kind_ = Kind::Sinusoid;
  f.amplitude_ = amplitude;
  f.omega_ = omega;
  f.phase_ = phase;
  return f;
}

double Forcing::operator()(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return value_;
    case Kind::Sinusoid:
      return amplitude_ * std::sin(omega_ * t + phase_);
  }
  return 0.0;
}

bool State::finite() const {
  return std::isfinite(x1) && std::isfinite(v1) && std::isfinite(x2) &&
         std::isfinite(v2);
}

Mode Mode::slip(int direction) {
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("slip direction must be +1 or -1");
  return Mode{direction};
}

std::string Mode::str() const {
  if (code_ == 0) return "stick";
  return code_ > 0 ? "slip+" : "slip-";
}

std::optional<Mode> Mode::parse(const std::string& s) {
  if (s == "stick") return stick();
  if (s == "slip+") return slip(+1);
  if (s == "slip-") return slip(-1);
  return std::nullopt;
}

int sgn3(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("sgn3: non-finite input");
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

double energy(const Params& p, const State& s) {
  return 0.5 * (p.a2 * s.x1 * s.x1 + p.m1 * s.v1 * s.v1 + p.m2 * s.v2 * s.v2);
}

}  // namespace frictpair
