#pragma once

#include <optional>
#include <string>

namespace frictpair {

/// Coefficients of the friction-coupled pair. Body 1 (driving) is attached
/// to ground through a spring `a2` and damper `a1`; body 2 (driven) rides on
/// body 1 through a dry-friction interface of constant magnitude `b`.
/// All quantities are SI.
struct Params {
  double m1 = 1.0;  // mass of driving body [kg], > 0
  double m2 = 1.0;  // mass of driven body [kg], > 0
  double a1 = 0.0;  // viscous coefficient [N s/m], >= 0
  double a2 = 1.0;  // stiffness [N/m], > 0
  double b = 1.0;   // Coulomb friction magnitude [N], > 0

  friend bool operator==(const Params&, const Params&) = default;
};

/// Returns the first violated parameter constraint by name, or nullopt when
/// the parameters are admissible.
std::optional<std::string> validate(const Params& p);

/// Throws ValidationError when validate(p) reports a violation.
void require_valid(const Params& p);

/// Exogenous input u(t) on the driving body. A closed enumeration (rather
/// than an arbitrary callback) so scenarios stay serializable and runs are
/// reproducible.
class Forcing {
 public:
  enum class Kind { Zero, Constant, Sinusoid };

  Forcing() = default;
  static Forcing zero() { return Forcing{}; }
  static Forcing constant(double value);
  static Forcing sinusoid(double amplitude, double omega, double phase);

  /// u(t). The Zero variant returns exactly 0 for all t.
  double operator()(double t) const;

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  double phase() const { return phase_; }
  bool is_zero() const { return kind_ == Kind::Zero; }

  friend bool operator==(const Forcing&, const Forcing&) = default;

 private:
  Kind kind_ = Kind::Zero;
  double value_ = 0.0;      // Constant
  double amplitude_ = 0.0;  // Sinusoid
  double omega_ = 0.0;
  double phase_ = 0.0;
};

/// Instantaneous coordinates of the pair.
struct State {
  double x1 = 0.0;  // position of body 1 [m]
  double v1 = 0.0;  // velocity of body 1 [m/s]
  double x2 = 0.0;  // position of body 2 [m]
  double v2 = 0.0;  // velocity of body 2 [m/s]

  double z() const { return x1 - x2; }      // relative displacement
  double zdot() const { return v1 - v2; }   // relative velocity
  bool finite() const;

  friend bool operator==(const State&, const State&) = default;
};

/// Discrete contact regime: stick (common velocity) or slip with the sign of
/// the relative velocity.
class Mode {
 public:
  Mode() = default;
  static Mode stick() { return Mode{0}; }
  static Mode slip(int direction);

  bool is_stick() const { return code_ == 0; }
  bool is_slip() const { return code_ != 0; }
  /// +1 or -1 in slip; 0 in stick.
  int direction() const { return code_; }

  std::string str() const;  // "stick", "slip+", "slip-"
  static std::optional<Mode> parse(const std::string& s);

  friend bool operator==(const Mode&, const Mode&) = default;

 private:
  explicit Mode(int code) : code_(code) {}
  int code_ = 0;
};

/// Three-point valued signum: 1 for v>0, 0 for v=0, -1 for v<0. Exact zero
/// maps to 0; fuzzy zero-crossing logic lives in the mode machine, not here.
/// Throws std::invalid_argument for non-finite input.
int sgn3(double v);

/// Total mechanical energy E = a2 x1^2/2 + m1 v1^2/2 + m2 v2^2/2 [J].
/// x2 does not enter; E >= 0 and vanishes only at (x1,v1,v2) = 0.
double energy(const Params& p, const State& s);

}  // namespace frictpair
