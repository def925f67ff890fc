#include "conegeo/jet.hpp"

#include <cmath>

namespace conegeo {

Jet operator+(const Jet& a, const Jet& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Jet operator-(const Jet& a, const Jet& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Jet operator-(const Jet& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

Jet operator*(const Jet& a, const Jet& b) {
  return {a[0] * b[0],
          a[1] * b[0] + a[0] * b[1],
          a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
          a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3]};
}

Jet operator/(const Jet& a, const Jet& b) {
  const double x = b[0];
  const double inv = 1.0 / x;
  const Jet reciprocal =
      compose({inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv}, b);
  return a * reciprocal;
}

Jet operator+(const Jet& a, double b) { return {a[0] + b, a[1], a[2], a[3]}; }
Jet operator+(double a, const Jet& b) { return b + a; }
Jet operator-(const Jet& a, double b) { return {a[0] - b, a[1], a[2], a[3]}; }
Jet operator-(double a, const Jet& b) { return {a - b[0], -b[1], -b[2], -b[3]}; }
Jet operator*(const Jet& a, double b) { return {a[0] * b, a[1] * b, a[2] * b, a[3] * b}; }
Jet operator*(double a, const Jet& b) { return b * a; }
Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
Jet operator/(double a, const Jet& b) { return Jet(a) / b; }

Jet compose(const std::array<double, 4>& f, const Jet& g) {
  const double g1 = g[1];
  const double g2 = g[2];
  const double g3 = g[3];
  return {f[0],
          f[1] * g1,
          f[2] * g1 * g1 + f[1] * g2,
          f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3};
}

Jet sqrt(const Jet& x) {
  const double r = std::sqrt(x[0]);
  const double inv = 1.0 / x[0];
  return compose({r, 0.5 / r, -0.25 / r * inv, 0.375 / r * inv * inv}, x);
}

Jet sin(const Jet& x) {
  const double s = std::sin(x[0]);
  const double c = std::cos(x[0]);
  return compose({s, c, -s, -c}, x);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x[0]);
  const double c = std::cos(x[0]);
  return compose({c, -s, -c, s}, x);
}

Jet atan(const Jet& x) {
  const double v = x[0];
  const double q = 1.0 / (1.0 + v * v);
  return compose({std::atan(v), q, -2.0 * v * q * q, (6.0 * v * v - 2.0) * q * q * q}, x);
}

Jet exp(const Jet& x) {
  const double e = std::exp(x[0]);
  return compose({e, e, e, e}, x);
}

PointJet make_point_jet(const Jet& x, const Jet& y, const Jet& z) {
  PointJet p;
  for (int k = 0; k < 4; ++k) p.d[k] = Vec3(x[k], y[k], z[k]);
  return p;
}

namespace {

Jet component(const PointJet& p, int i) {
  return {p.d[0][i], p.d[1][i], p.d[2][i], p.d[3][i]};
}

}  // namespace

PointJet operator*(const Jet& scale, const PointJet& p) {
  return make_point_jet(scale * component(p, 0), scale * component(p, 1),
                        scale * component(p, 2));
}

PointJet operator+(const PointJet& a, const PointJet& b) {
  PointJet r;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}

PointJet compose(const PointJet& p, const Jet& g) {
  PointJet r;
  for (int i = 0; i < 3; ++i) {
    const Jet c = compose({p.d[0][i], p.d[1][i], p.d[2][i], p.d[3][i]}, g);
    for (int k = 0; k < 4; ++k) r.d[k][i] = c[k];
  }
  return r;
}

PointJet normalized(const PointJet& p) {
  const Jet x = component(p, 0);
  const Jet y = component(p, 1);
  const Jet z = component(p, 2);
  const Jet inv_norm = 1.0 / sqrt(x * x + y * y + z * z);
  return inv_norm * p;
}

}  // namespace conegeo
