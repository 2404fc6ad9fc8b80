#pragma once

#include <cmath>
#include <cstdint>

namespace windplan {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm_xy() const { return std::sqrt(x * x + y * y); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Normalize an angle to [-pi, pi).
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a + M_PI, two_pi);
  if (a < 0.0) a += two_pi;
  return a - M_PI;
}

/// Normalize an angle to [0, 2*pi).
inline double mod_two_pi(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  return a;
}

/// Planner configuration q = (x, y, z, psi). Heading measured from +x, CCW, ENU frame.
struct AirplaneState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double psi = 0.0;

  Vec3 position() const { return {x, y, z}; }
};

struct AircraftParams {
  double v_air = 9.0;       // airspeed [m/s]
  double gamma_max = 0.15;  // max climb/sink path angle [rad]
  double r_turn = 25.0;     // minimum turn radius [m]

  /// Turn radius from a bank angle limit: r = v^2 / (tan(phi_max) * g).
  static double turn_radius_from_bank(double v_air, double phi_max, double g = 9.81) {
    return v_air * v_air / (std::tan(phi_max) * g);
  }

  bool valid() const {
    return v_air > 0.0 && gamma_max > 0.0 && gamma_max < M_PI / 2.0 && r_turn > 0.0;
  }
};

/// Deterministic, platform-independent uniform double in [0, 1) from a 64-bit generator.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace windplan
