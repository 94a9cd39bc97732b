#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "acx/discs.hpp"
#include "acx/errors.hpp"

namespace acx {

namespace {

const Complex kI(0.0, 1.0);

int max_mode(int q) { return (q - 1) / 2; }  // the Nyquist mode is dropped
int mode_index(int k, int q) { return k >= 0 ? k : k + q; }

// per ring: Fourier coefficients c_k for |k| <= max_mode, stored at k + max_mode
std::vector<std::vector<Complex>> ring_spectra(const DiscGrid& g, int col) {
  const int m = g.rings, q = g.angles, km = max_mode(q);
  Eigen::FFT<double> fft;
  std::vector<std::vector<Complex>> out(m + 1, std::vector<Complex>(2 * km + 1, Complex(0.0)));
  out[0][km] = g.values(0, col);
  std::vector<Complex> in(q), spec;
  for (int i = 1; i <= m; ++i) {
    for (int a = 0; a < q; ++a) in[a] = g.values(g.node(i, a), col);
    fft.fwd(spec, in);
    for (int k = -km; k <= km; ++k) out[i][k + km] = spec[mode_index(k, q)] / static_cast<double>(q);
  }
  return out;
}

void ring_synthesis(const std::vector<std::vector<Complex>>& modes, int km_out, DiscGrid& dst, int col) {
  const int m = dst.rings, q = dst.angles, km = max_mode(q);
  Eigen::FFT<double> fft;
  std::vector<Complex> spec(q), vals;
  for (int i = 1; i <= m; ++i) {
    std::fill(spec.begin(), spec.end(), Complex(0.0));
    for (int k = -km; k <= km; ++k) spec[mode_index(k, q)] = modes[i][k + km_out] * static_cast<double>(q);
    fft.inv(vals, spec);
    for (int a = 0; a < q; ++a) dst.values(dst.node(i, a), col) = vals[a];
  }
}

// b^{-p} int_a^b rho^p drho
double inner_moment(double a, double b, int p) { return b / (p + 1) * (1.0 - std::pow(a / b, p + 1)); }
// a^s int_a^b rho^{-s} drho
double outer_moment(double a, double b, int s) {
  if (s == 1) return a * std::log(b / a);
  return a * (1.0 - std::pow(a / b, s - 1)) / (s - 1);
}

}  // namespace

DiscGrid DiscGrid::make(int rings, int angles, int n, bool half) {
  require(rings >= 2 && angles >= 4 && n >= 1, ErrorCode::InvalidSpec, "disc grid needs rings >= 2, angles >= 4");
  require(!half || angles % 2 == 0, ErrorCode::InvalidSpec, "half grids need an even angle count");
  DiscGrid g;
  g.rings = rings;
  g.angles = angles;
  g.half = half;
  g.n = n;
  g.values = Eigen::MatrixXcd::Zero(g.node_count(), n);
  return g;
}

double DiscGrid::theta(int angle) const { return 2.0 * std::numbers::pi * angle / angles; }

Complex DiscGrid::zeta(int nd) const {
  if (nd == 0) return Complex(0.0);
  const int ring = 1 + (nd - 1) / stored_angles();
  const int angle = (nd - 1) % stored_angles();
  return std::polar(radius(ring), theta(angle));
}

nlohmann::json DiscGrid::to_json() const {
  auto pack = [](const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j{{"resolution", {rings, angles}}, {"half", half}, {"n", n}, {"samples", pack(values)}};
  if (has_derivatives()) {
    j["dz"] = pack(dz);
    j["dzbar"] = pack(dzbar);
  }
  return j;
}

DiscGrid DiscGrid::from_json(const nlohmann::json& j) {
  try {
    DiscGrid g = make(j.at("resolution").at(0).get<int>(), j.at("resolution").at(1).get<int>(), j.at("n").get<int>(),
                      j.value("half", false));
    auto unpack = [&](const nlohmann::json& rows, const char* field) {
      require(rows.is_array() && static_cast<int>(rows.size()) == g.node_count(), ErrorCode::InvalidSpec,
              std::string(field) + ": expected " + std::to_string(g.node_count()) + " rows");
      Eigen::MatrixXcd m(g.node_count(), g.n);
      for (int r = 0; r < g.node_count(); ++r) {
        require(static_cast<int>(rows[r].size()) == g.n, ErrorCode::InvalidSpec,
                std::string(field) + "[" + std::to_string(r) + "]: wrong width");
        for (int c = 0; c < g.n; ++c) m(r, c) = Complex(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
      }
      return m;
    };
    g.values = unpack(j.at("samples"), "samples");
    if (j.contains("dz") && j.contains("dzbar")) {
      g.dz = unpack(j.at("dz"), "dz");
      g.dzbar = unpack(j.at("dzbar"), "dzbar");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("disc grid: ") + e.what());
  }
}

DiscGrid sample_disc(int rings, int angles, int n, const std::function<Eigen::VectorXcd(Complex)>& f) {
  DiscGrid g = DiscGrid::make(rings, angles, n);
  for (int k = 0; k < g.node_count(); ++k) g.values.row(k) = f(g.zeta(k)).transpose();
  return g;
}

void cauchy_green_beurling(const DiscGrid& g, DiscGrid* t, DiscGrid* s) {
  require(!g.half, ErrorCode::InvalidSpec, "Cauchy-Green transform needs a full disc grid");
  const int m = g.rings, q = g.angles, km = max_mode(q);
  if (t) *t = DiscGrid::make(m, q, g.n);
  if (s) *s = DiscGrid::make(m, q, g.n);
  // output modes k - 1 (T) and k - 2 (S) live in a widened table
  const int kw = km + 2;
  std::vector<double> r(m + 1);
  for (int i = 0; i <= m; ++i) r[i] = g.radius(i);

  for (int col = 0; col < g.n; ++col) {
    const auto gk = ring_spectra(g, col);
    std::vector<std::vector<Complex>> tm(m + 1, std::vector<Complex>(2 * kw + 1, Complex(0.0)));
    std::vector<std::vector<Complex>> sm = tm;
    std::vector<Complex> acc(m + 1);

    for (int k = -km; k <= km; ++k) {
      auto gv = [&](int i) { return gk[i][k + km]; };
      if (k <= 0) {
        const int p = 1 - k;
        acc[0] = 0.0;
        for (int i = 1; i <= m; ++i) {
          const double a = r[i - 1], b = r[i];
          const double ip = inner_moment(a, b, p), ip1 = inner_moment(a, b, p + 1);
          const double wb = (b * ip1 - a * ip) / (b - a), wa = ip - wb;
          acc[i] = std::pow(a / b, p) * acc[i - 1] + wa * gv(i - 1) + wb * gv(i);
          tm[i][k - 1 + kw] = 2.0 * acc[i];
          sm[i][k - 2 + kw] = gv(i) - 2.0 * p / r[i] * acc[i];
        }
      } else {
        const int qq = k - 1;
        acc[m] = 0.0;
        for (int i = m - 1; i >= 1; --i) {
          const double a = r[i], b = r[i + 1];
          const double jq = outer_moment(a, b, qq), jq1 = outer_moment(a, b, qq - 1);
          const double wb = a * (jq1 - jq) / (b - a), wa = jq - wb;
          acc[i] = std::pow(a / b, qq) * acc[i + 1] + wa * gv(i) + wb * gv(i + 1);
        }
        for (int i = 1; i <= m; ++i) {
          tm[i][k - 1 + kw] = -2.0 * acc[i];
          sm[i][k - 2 + kw] = gv(i) - 2.0 * qq / r[i] * acc[i];
        }
      }
    }

    if (t) {
      std::vector<std::vector<Complex>> trimmed(m + 1, std::vector<Complex>(2 * km + 1));
      for (int i = 1; i <= m; ++i)
        for (int k = -km; k <= km; ++k) trimmed[i][k + km] = tm[i][k + kw];
      ring_synthesis(trimmed, km, *t, col);
      // center: only mode 0 survives, fed by G_1 on the outer side
      Complex c(0.0);
      for (int i = 0; i < m; ++i) c += 0.5 * (gk[i][1 + km] + gk[i + 1][1 + km]) * (r[i + 1] - r[i]);
      t->values(0, col) = -2.0 * c;
    }
    if (s) {
      std::vector<std::vector<Complex>> trimmed(m + 1, std::vector<Complex>(2 * km + 1));
      for (int i = 1; i <= m; ++i)
        for (int k = -km; k <= km; ++k) trimmed[i][k + km] = sm[i][k + kw];
      ring_synthesis(trimmed, km, *s, col);
      Complex c(0.0);
      if (km >= 2) {
        c = gk[1][2 + km];  // first cell: G_2 linear through the origin
        for (int i = 1; i < m; ++i) {
          const double a = r[i], b = r[i + 1];
          const Complex slope = (gk[i + 1][2 + km] - gk[i][2 + km]) / (b - a);
          const Complex c0 = gk[i][2 + km] - slope * a;
          c += c0 * std::log(b / a) + slope * (b - a);
        }
      }
      s->values(0, col) = -2.0 * c;
    }
  }
}

DiscGrid cauchy_green(const DiscGrid& g) {
  DiscGrid t;
  cauchy_green_beurling(g, &t, nullptr);
  return t;
}

DiscGrid beurling(const DiscGrid& g) {
  DiscGrid s;
  cauchy_green_beurling(g, nullptr, &s);
  return s;
}

StencilDerivatives stencil_derivatives(const DiscGrid& f) {
  require(!f.half, ErrorCode::InvalidSpec, "stencil derivatives need a full disc grid");
  const int m = f.rings, q = f.angles, km = max_mode(q);
  const double h = 1.0 / m;
  StencilDerivatives d{Eigen::MatrixXcd::Zero(f.node_count(), f.n), Eigen::MatrixXcd::Zero(f.node_count(), f.n)};
  Eigen::FFT<double> fft;
  std::vector<Complex> in(q), spec, back;
  for (int col = 0; col < f.n; ++col) {
    auto val = [&](int i, int a) { return f.values(f.node(i, a), col); };
    for (int i = 1; i <= m; ++i) {
      for (int a = 0; a < q; ++a) in[a] = val(i, a);
      fft.fwd(spec, in);
      for (int idx = 0; idx < q; ++idx) {
        const int k = idx <= q / 2 ? idx : idx - q;
        spec[idx] *= (std::abs(k) <= km) ? kI * static_cast<double>(k) : Complex(0.0);
      }
      fft.inv(back, spec);
      const double r = f.radius(i);
      for (int a = 0; a < q; ++a) {
        const Complex fr = i < m ? (val(i + 1, a) - val(i - 1, a)) / (2.0 * h)
                                 : (3.0 * val(m, a) - 4.0 * val(m - 1, a) + val(m - 2, a)) / (2.0 * h);
        const Complex e = std::polar(1.0, f.theta(a));
        const int nd = f.node(i, a);
        d.dz(nd, col) = 0.5 * std::conj(e) * (fr - kI / r * back[a]);
        d.dzbar(nd, col) = 0.5 * e * (fr + kI / r * back[a]);
      }
    }
    // center: Richardson on the first two rings' +-1 modes
    auto mode = [&](int i, int k) {
      Complex c(0.0);
      for (int a = 0; a < q; ++a) c += val(i, a) * std::polar(1.0, -k * f.theta(a));
      return c / static_cast<double>(q);
    };
    const double r1 = f.radius(1), r2 = f.radius(2);
    d.dz(0, col) = (4.0 * mode(1, 1) / r1 - mode(2, 1) / r2) / 3.0;
    d.dzbar(0, col) = (4.0 * mode(1, -1) / r1 - mode(2, -1) / r2) / 3.0;
  }
  return d;
}

}  // namespace acx
