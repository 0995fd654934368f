#include "qb/spin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qb/error.hpp"
#include "qb/linalg/decomp.hpp"

namespace qb {

namespace {

constexpr int kMaxFactorial = 160;

double ln_factorial(int n) {
  static const std::array<double, kMaxFactorial + 1> table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 0.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table[n];
}

long twice(double x) { return std::lround(2.0 * x); }

} // namespace

bool is_half_integer(double x) { return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9; }

SpinSector ladder_matrices(double j) {
  if (!is_half_integer(j) || j < 0.0)
    throw ConfigError("ladder_matrices: J must be a non-negative half-integer");
  SpinSector s;
  s.j = j;
  s.dim = static_cast<int>(twice(j)) + 1;
  s.jp = Matrix(s.dim, s.dim);
  s.jm = Matrix(s.dim, s.dim);
  s.jz = Matrix(s.dim, s.dim);
  for (int i = 0; i < s.dim; ++i) {
    const double m = j - i;
    s.jz(i, i) = m;
    if (i > 0) s.jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0)); // |J,M> -> |J,M+1>
    if (i < s.dim - 1) s.jm(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
  }
  return s;
}

double clebsch_gordan(double j1, double j2, double m1, double m2, double big_j, double big_m) {
  for (double x : {j1, j2, m1, m2, big_j, big_m})
    if (!is_half_integer(x)) throw ConfigError("clebsch_gordan: arguments must be half-integers");
  if (j1 < 0 || j2 < 0 || big_j < 0 || std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 ||
      std::abs(big_m) > big_j + 1e-9)
    throw ConfigError("clebsch_gordan: |m| exceeds j");

  const long tj1 = twice(j1), tj2 = twice(j2), tm1 = twice(m1), tm2 = twice(m2);
  const long tJ = twice(big_j), tM = twice(big_m);
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tJ + tM) % 2 != 0)
    throw ConfigError("clebsch_gordan: m must differ from j by an integer");

  if (tm1 + tm2 != tM) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0; // j1+j2+J must be an integer

  // All factorial arguments are integers once the checks above pass.
  const int jpm1 = static_cast<int>((tj1 + tm1) / 2), jmm1 = static_cast<int>((tj1 - tm1) / 2);
  const int jpm2 = static_cast<int>((tj2 + tm2) / 2), jmm2 = static_cast<int>((tj2 - tm2) / 2);
  const int JpM = static_cast<int>((tJ + tM) / 2), JmM = static_cast<int>((tJ - tM) / 2);
  const int t1 = static_cast<int>((tj1 + tj2 - tJ) / 2);
  const int t2 = static_cast<int>((tj1 - tj2 + tJ) / 2);
  const int t3 = static_cast<int>((-tj1 + tj2 + tJ) / 2);
  const int t4 = static_cast<int>((tj1 + tj2 + tJ) / 2) + 1;

  const double ln_pre =
      0.5 * (ln_factorial(JpM) + ln_factorial(JmM) + ln_factorial(t1) + ln_factorial(t2) +
             ln_factorial(t3) - ln_factorial(t4) + ln_factorial(jpm1) + ln_factorial(jmm1) +
             ln_factorial(jpm2) + ln_factorial(jmm2));

  // Racah sum; accumulate with log factorials to dodge overflow.
  const int b4 = static_cast<int>((tJ - tj2 + tm1) / 2); // J-j2+m1
  const int b5 = static_cast<int>((tJ - tj1 - tm2) / 2); // J-j1-m2
  const int kmin = std::max({0, -b4, -b5});
  const int kmax = std::min({t1, jmm1, jpm2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double ln_term =
        -(ln_factorial(k) + ln_factorial(t1 - k) + ln_factorial(jmm1 - k) +
          ln_factorial(jpm2 - k) + ln_factorial(b4 + k) + ln_factorial(b5 + k));
    sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(ln_term);
  }

  return std::sqrt(static_cast<double>(tJ) + 1.0) * std::exp(ln_pre) * sum;
}

SystemGeometry make_geometry(int n_charger, int n_battery) {
  if (n_charger < 1 || n_battery < 1)
    throw ConfigError("make_geometry: spin counts must be positive");
  SystemGeometry g;
  g.n_charger = n_charger;
  g.n_battery = n_battery;
  g.j_charger = 0.5 * n_charger;
  g.j_battery = 0.5 * n_battery;
  g.dim = (n_charger + 1) * (n_battery + 1);
  g.even_parity = (n_charger + n_battery) % 2 == 0;

  const double j_max = g.j_charger + g.j_battery;
  const double j_min = std::abs(g.j_charger - g.j_battery);
  int offset = 0;
  for (double j = j_max; j >= j_min - 1e-9; j -= 1.0) {
    g.sector_offsets.push_back(offset);
    g.sectors.push_back(ladder_matrices(j));
    offset += g.sectors.back().dim;
  }
  if (offset != g.dim) throw NumericalError("make_geometry: sector dimensions do not add up");

  g.u_cg = Matrix(g.dim, g.dim);
  const int dim_b = n_battery + 1;
  for (std::size_t si = 0; si < g.sectors.size(); ++si) {
    const double j = g.sectors[si].j;
    for (int k = 0; k < g.sectors[si].dim; ++k) {
      const double m = j - k;
      const int row = g.sector_offsets[si] + k;
      for (int ic = 0; ic <= n_charger; ++ic) {
        const double mc = g.j_charger - ic;
        const double mb = m - mc;
        if (std::abs(mb) > g.j_battery + 1e-9) continue;
        const int ib = static_cast<int>(std::lround(g.j_battery - mb));
        g.u_cg(row, ic * dim_b + ib) = clebsch_gordan(g.j_charger, g.j_battery, mc, mb, j, m);
      }
    }
  }
  return g;
}

void check_density(const DensityMatrix& rho) {
  if (!rho.data.is_hermitian(1e-12)) throw NumericalError("density matrix not Hermitian");
  if (std::abs(rho.data.trace() - cplx{1.0, 0.0}) > 1e-10)
    throw NumericalError("density matrix trace departs from 1");
  const auto eig = linalg::hermitian_eig(rho.data);
  if (eig.values.front() < -1e-9) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << eig.values.front();
    throw NumericalError(msg.str());
  }
}

namespace {

void require_dim(const DensityMatrix& rho, const SystemGeometry& geom, const char* where) {
  if (rho.data.rows() != geom.dim || rho.data.cols() != geom.dim)
    throw ConfigError(std::string(where) + ": dimension mismatch with geometry");
}

} // namespace

DensityMatrix to_coupled(const DensityMatrix& rho, const SystemGeometry& geom) {
  require_dim(rho, geom, "to_coupled");
  if (rho.basis != Basis::product) throw ConfigError("to_coupled: input already in coupled basis");
  DensityMatrix out = rho;
  out.data = geom.u_cg * rho.data * geom.u_cg.adjoint();
  out.basis = Basis::coupled;
  return out;
}

DensityMatrix to_product(const DensityMatrix& rho, const SystemGeometry& geom) {
  require_dim(rho, geom, "to_product");
  if (rho.basis != Basis::coupled) throw ConfigError("to_product: input already in product basis");
  DensityMatrix out = rho;
  out.data = geom.u_cg.adjoint() * rho.data * geom.u_cg;
  out.basis = Basis::product;
  return out;
}

std::vector<cplx> to_coupled(const std::vector<cplx>& v, const SystemGeometry& geom) {
  if (static_cast<int>(v.size()) != geom.dim)
    throw ConfigError("to_coupled: dimension mismatch with geometry");
  return geom.u_cg * v;
}

std::vector<cplx> to_product(const std::vector<cplx>& v, const SystemGeometry& geom) {
  if (static_cast<int>(v.size()) != geom.dim)
    throw ConfigError("to_product: dimension mismatch with geometry");
  return geom.u_cg.adjoint() * v;
}

DensityMatrix partial_trace_charger(const DensityMatrix& rho, const SystemGeometry& geom) {
  require_dim(rho, geom, "partial_trace_charger");
  if (rho.basis != Basis::product)
    throw ConfigError("partial_trace_charger: convert to the product basis first");
  const int dc = geom.n_charger + 1;
  const int db = geom.n_battery + 1;
  DensityMatrix out;
  out.data = Matrix(db, db);
  out.basis = Basis::product;
  out.dim_charger = 1;
  out.dim_battery = db;
  for (int b1 = 0; b1 < db; ++b1)
    for (int b2 = 0; b2 < db; ++b2) {
      cplx acc = 0.0;
      for (int c = 0; c < dc; ++c) acc += rho.data(c * db + b1, c * db + b2);
      out.data(b1, b2) = acc;
    }
  return out;
}

Matrix collective_plus(const SystemGeometry& geom) {
  const SpinSector sc = ladder_matrices(geom.j_charger);
  const SpinSector sb = ladder_matrices(geom.j_battery);
  return kron(sc.jp, Matrix::identity(sb.dim)) + kron(Matrix::identity(sc.dim), sb.jp);
}

Matrix collective_minus(const SystemGeometry& geom) {
  const SpinSector sc = ladder_matrices(geom.j_charger);
  const SpinSector sb = ladder_matrices(geom.j_battery);
  return kron(sc.jm, Matrix::identity(sb.dim)) + kron(Matrix::identity(sc.dim), sb.jm);
}

} // namespace qb
