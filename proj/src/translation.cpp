#include "elastica/translation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>
#include <fftw3.h>

namespace elastica {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTwoPi = 6.283185307179586476925286766559;

Mat6 to_mat6(const Eigen::Matrix<double, 6, 6>& m) {
  Mat6 out{};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out[i][j] = m(i, j);
  }
  return out;
}

// Mandel basis of symmetric matrices in Voigt component order
// (11, 22, 33, 23, 31, 12), off-diagonal pairs normalized by sqrt(2).
std::array<double, 9> mandel_basis_vec(int a) {
  std::array<double, 9> e{};
  const double s = 1.0 / kSqrt2;
  switch (a) {
    case 0: e[0] = 1.0; break;            // e1 (x) e1
    case 1: e[4] = 1.0; break;            // e2 (x) e2
    case 2: e[8] = 1.0; break;            // e3 (x) e3
    case 3: e[5] = e[7] = s; break;       // (e2 (x) e3 + e3 (x) e2)/sqrt(2)
    case 4: e[2] = e[6] = s; break;       // (e1 (x) e3 + e3 (x) e1)/sqrt(2)
    default: e[1] = e[3] = s; break;      // (e1 (x) e2 + e2 (x) e1)/sqrt(2)
  }
  return e;
}

double bilinear(const RatMatrix& gram, const std::array<double, 9>& a,
                const std::array<double, 9>& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < 9; ++j) {
      if (b[j] == 0.0) continue;
      s += a[i] * rat_to_double(gram[i][j]) * b[j];
    }
  }
  return s;
}

PhaseGap phase_gap(const Mat6& gap, const EigSym6& eig, double tol) {
  PhaseGap out;
  double scale = 1.0;
  for (const auto& row : gap) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  out.scale = scale;
  out.min_eigenvalue = eig.w[0];
  out.psd = eig.w[0] >= -tol * scale;
  return out;
}

void collect_degenerate(const EigSym6& eig, double threshold,
                        std::vector<std::array<double, 6>>& out) {
  for (int i = 0; i < 6; ++i) {
    if (std::abs(eig.w[i]) > threshold) continue;
    std::array<double, 6> v = eig.v[i];
    // Sign canonicalization keeps reports byte-stable.
    for (double x : v) {
      if (x > 1e-14) break;
      if (x < -1e-14) {
        for (double& y : v) y = -y;
        break;
      }
    }
    out.push_back(v);
  }
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

using ComplexGrid = std::vector<std::complex<double>>;

// Forward normalized DFT per component: uhat(k) = (1/N^3) sum_j u(j) e^{-2 pi i k.j/N}.
std::array<ComplexGrid, 3> forward_modes(const PeriodicField& u) {
  const int n = u.n;
  const size_t total = static_cast<size_t>(n) * n * n;
  std::array<ComplexGrid, 3> out;
  ComplexGrid in(total);
  for (int comp = 0; comp < 3; ++comp) {
    out[comp].assign(total, {0.0, 0.0});
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      plan = fftw_plan_dft_3d(
          n, n, n, reinterpret_cast<fftw_complex*>(in.data()),
          reinterpret_cast<fftw_complex*>(out[comp].data()), FFTW_FORWARD,
          FFTW_ESTIMATE);
    }
    for (size_t idx = 0; idx < total; ++idx) {
      in[idx] = {u.data[3 * idx + comp], 0.0};
    }
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      fftw_destroy_plan(plan);
    }
    const double inv = 1.0 / static_cast<double>(total);
    for (std::complex<double>& z : out[comp]) z *= inv;
  }
  return out;
}

ComplexGrid backward(const ComplexGrid& in_modes, int n) {
  const size_t total = static_cast<size_t>(n) * n * n;
  ComplexGrid in = in_modes;
  ComplexGrid out(total);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_3d(n, n, n,
                            reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int signed_freq(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void check_field(const PeriodicField& u) {
  if (u.n < 1) throw std::invalid_argument("periodic field: grid size must be positive");
  const size_t expect = 3 * static_cast<size_t>(u.n) * u.n * u.n;
  if (u.data.size() != expect) {
    throw std::invalid_argument("periodic field: data size does not match grid");
  }
}

void write_le_doubles(std::ofstream& out, const std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double d : v) {
      unsigned char b[8];
      std::memcpy(b, &d, 8);
      std::reverse(b, b + 8);
      out.write(reinterpret_cast<const char*>(b), 8);
    }
  }
}

void read_le_doubles(std::ifstream& in, std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double& d : v) {
      unsigned char b[8];
      in.read(reinterpret_cast<char*>(b), 8);
      std::reverse(b, b + 8);
      std::memcpy(&d, b, 8);
    }
  }
}

}  // namespace

Mat6 mandel(const StiffnessTensor& c) {
  Eigen::Matrix<double, 6, 6> m;
  for (int i = 0; i < 6; ++i) {
    const double di = i < 3 ? 1.0 : kSqrt2;
    for (int j = 0; j < 6; ++j) {
      const double dj = j < 3 ? 1.0 : kSqrt2;
      m(i, j) = di * rat_to_double(c.c(i, j)) * dj;
    }
  }
  return to_mat6(m);
}

Mat6 mandel_restrict(const QuadraticForm& f) {
  Mat6 m{};
  std::array<std::array<double, 9>, 6> basis;
  for (int a = 0; a < 6; ++a) basis[a] = mandel_basis_vec(a);
  for (int a = 0; a < 6; ++a) {
    for (int b = a; b < 6; ++b) {
      const double v = bilinear(f.gram(), basis[a], basis[b]);
      m[a][b] = v;
      m[b][a] = v;
    }
  }
  return m;
}

EigSym6 eig6_sym(const Mat6& m) {
  Eigen::Matrix<double, 6, 6> em;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) em(i, j) = m[i][j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> solver(em);
  EigSym6 out{};
  for (int i = 0; i < 6; ++i) {
    out.w[i] = solver.eigenvalues()(i);
    for (int j = 0; j < 6; ++j) out.v[i][j] = solver.eigenvectors()(j, i);
  }
  return out;
}

GapReport translation_gap(const TwoPhaseSetup& setup, double tol,
                          double degenerate_tol) {
  GapReport report;
  report.tol = tol;
  report.degenerate_tol = degenerate_tol;

  const Mat6 trans = mandel_restrict(setup.translation);
  const Mat6 phases[2] = {mandel(setup.phase1), mandel(setup.phase2)};

  for (int p = 0; p < 2; ++p) {
    Mat6 gap = phases[p];
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) gap[i][j] -= setup.t * trans[i][j];
    }
    const EigSym6 eig = eig6_sym(gap);
    const PhaseGap pg = phase_gap(gap, eig, tol);
    if (p == 0) {
      report.phase1 = pg;
    } else {
      report.phase2 = pg;
    }
    collect_degenerate(eig, degenerate_tol * pg.scale,
                       report.degenerate_directions);
  }
  report.admissible = report.phase1.psd && report.phase2.psd;
  return report;
}

Mat3 mandel_to_sym(const std::array<double, 6>& m) {
  const double s = 1.0 / kSqrt2;
  return {{{m[0], s * m[5], s * m[4]},
           {s * m[5], m[1], s * m[3]},
           {s * m[4], s * m[3], m[2]}}};
}

nlohmann::json to_json(const GapReport& r) {
  auto phase = [](const PhaseGap& p) {
    return nlohmann::json{{"psd", p.psd},
                          {"min_eigenvalue", p.min_eigenvalue},
                          {"scale", p.scale}};
  };
  nlohmann::json j;
  j["phase1"] = phase(r.phase1);
  j["phase2"] = phase(r.phase2);
  j["admissible"] = r.admissible;
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : r.degenerate_directions) {
    dirs.push_back(std::vector<double>(d.begin(), d.end()));
  }
  j["degenerate_directions"] = dirs;
  j["tol"] = r.tol;
  j["degenerate_tol"] = r.degenerate_tol;
  return j;
}

void write_field(const PeriodicField& f, const std::string& data_path,
                 const std::string& header_path) {
  check_field(f);
  std::ofstream data(data_path, std::ios::binary);
  if (!data) throw std::runtime_error("cannot open for writing: " + data_path);
  write_le_doubles(data, f.data);
  if (!data) throw std::runtime_error("write failed: " + data_path);

  nlohmann::json header{{"N", f.n}, {"layout", "row-major"}, {"components", 3}};
  std::ofstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open for writing: " + header_path);
  hdr << header.dump(2) << "\n";
}

PeriodicField read_field(const std::string& data_path,
                         const std::string& header_path) {
  std::ifstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open: " + header_path);
  nlohmann::json header;
  hdr >> header;
  if (!header.contains("N") || !header["N"].is_number_integer()) {
    throw std::invalid_argument("field header: missing integer \"N\"");
  }
  if (header.value("layout", "") != std::string("row-major") ||
      header.value("components", 0) != 3) {
    throw std::invalid_argument("field header: unsupported layout");
  }
  PeriodicField f;
  f.n = header["N"].get<int>();
  if (f.n < 1) throw std::invalid_argument("field header: N must be positive");
  f.data.resize(3 * static_cast<size_t>(f.n) * f.n * f.n);

  std::ifstream data(data_path, std::ios::binary);
  if (!data) throw std::runtime_error("cannot open: " + data_path);
  read_le_doubles(data, f.data);
  if (!data) throw std::runtime_error("field payload truncated: " + data_path);
  if (data.peek() != std::ifstream::traits_type::eof()) {
    throw std::runtime_error("field payload has trailing bytes: " + data_path);
  }
  return f;
}

PeriodicField random_field(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_field: grid size must be positive");
  PeriodicField f;
  f.n = n;
  const size_t total = static_cast<size_t>(n) * n * n;
  f.data.resize(3 * total);
  Rng rng(seed);
  for (double& x : f.data) x = rng.gauss();
  // Remove the mean so the k = 0 mode carries nothing.
  for (int comp = 0; comp < 3; ++comp) {
    Kahan mean;
    for (size_t idx = 0; idx < total; ++idx) mean.add(f.data[3 * idx + comp]);
    const double m = mean.sum / static_cast<double>(total);
    for (size_t idx = 0; idx < total; ++idx) f.data[3 * idx + comp] -= m;
  }
  return f;
}

PeriodicField single_mode_field(int n, const std::array<int, 3>& k,
                                const Vec3& a) {
  if (n < 1) throw std::invalid_argument("single_mode_field: grid size must be positive");
  PeriodicField f;
  f.n = n;
  f.data.resize(3 * static_cast<size_t>(n) * n * n);
  const double w = kTwoPi / static_cast<double>(n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        const double phase = w * (k[0] * ix + k[1] * iy + k[2] * iz);
        const double c = std::cos(phase);
        for (int comp = 0; comp < 3; ++comp) {
          f.at(ix, iy, iz, comp) = a[comp] * c;
        }
      }
    }
  }
  return f;
}

PeriodicField zero_outside(PeriodicField u, const std::vector<uint8_t>& mask) {
  check_field(u);
  const size_t total = static_cast<size_t>(u.n) * u.n * u.n;
  if (mask.size() != total) {
    throw std::invalid_argument("zero_outside: mask size does not match grid");
  }
  for (size_t idx = 0; idx < total; ++idx) {
    if (mask[idx]) continue;
    for (int comp = 0; comp < 3; ++comp) u.data[3 * idx + comp] = 0.0;
  }
  return u;
}

FourierReport fourier_quasiconvexity_check(const QuadraticForm& f,
                                           const PeriodicField& u,
                                           double tol) {
  check_field(u);
  {
    RankOneConvexityConfig pre_cfg;
    pre_cfg.samples = 4000;
    pre_cfg.refine = 12;
    const RankOneConvexityReport pre = rank_one_convexity(f, pre_cfg);
    if (!pre.convex) {
      throw std::invalid_argument(
          "fourier_quasiconvexity_check: form is not rank-one convex (min " +
          std::to_string(pre.min_value) + ")");
    }
  }

  FourierReport report;
  report.tol = tol;

  const int n = u.n;
  const size_t total = static_cast<size_t>(n) * n * n;
  const std::array<ComplexGrid, 3> uhat = forward_modes(u);

  {
    Kahan norm2;
    for (double x : u.data) norm2.add(x * x);
    report.field_norm2 = norm2.sum / static_cast<double>(total);
  }

  // Modewise quadratic energies on the rank-one matrices uhat (x) kappa.
  std::vector<ModeTerm> terms;
  terms.reserve(total - 1);
  Kahan sum;
  Kahan grad_energy;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        if (ix == 0 && iy == 0 && iz == 0) continue;
        const size_t idx = (static_cast<size_t>(ix) * n + iy) * n + iz;
        const std::array<int, 3> k = {signed_freq(ix, n), signed_freq(iy, n),
                                      signed_freq(iz, n)};
        const Vec3 kappa = {kTwoPi * k[0], kTwoPi * k[1],
                            kTwoPi * k[2]};
        std::array<double, 9> re{};
        std::array<double, 9> im{};
        double re2 = 0.0, im2 = 0.0;
        for (int i = 0; i < 3; ++i) {
          const std::complex<double> z = uhat[i][idx];
          re2 += z.real() * z.real();
          im2 += z.imag() * z.imag();
          for (int m = 0; m < 3; ++m) {
            re[3 * i + m] = z.real() * kappa[m];
            im[3 * i + m] = z.imag() * kappa[m];
          }
        }
        const double term = f.eval(re) + f.eval(im);
        sum.add(term);
        const double k2 =
            kappa[0] * kappa[0] + kappa[1] * kappa[1] + kappa[2] * kappa[2];
        grad_energy.add((re2 + im2) * k2);
        terms.push_back({k, term});
      }
    }
  }
  report.total = sum.sum;

  const double grad_scale = std::max(1.0, grad_energy.sum);
  report.nonnegative = report.total >= -tol * report.field_norm2;
  report.special = true;
  for (const ModeTerm& t : terms) {
    if (t.value > tol * grad_scale) {
      report.special = false;
      report.violating_modes.push_back(t);
    }
  }

  // Plancherel cross-check: real-space mean of f over the spectral gradient
  // (complex split into real and imaginary sheets) must reproduce the sum.
  {
    ComplexGrid mode_buf(total);
    std::array<ComplexGrid, 9> grad;
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < 3; ++m) {
        for (int ix = 0; ix < n; ++ix) {
          for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz) {
              const size_t idx = (static_cast<size_t>(ix) * n + iy) * n + iz;
              const double km = kTwoPi *
                                signed_freq(m == 0 ? ix : (m == 1 ? iy : iz), n);
              mode_buf[idx] = uhat[i][idx] * std::complex<double>(0.0, km);
            }
          }
        }
        grad[3 * i + m] = backward(mode_buf, n);
      }
    }
    Kahan quad;
    for (size_t idx = 0; idx < total; ++idx) {
      std::array<double, 9> re{};
      std::array<double, 9> im{};
      for (int c = 0; c < 9; ++c) {
        re[c] = grad[c][idx].real();
        im[c] = grad[c][idx].imag();
      }
      quad.add(f.eval(re) + f.eval(im));
    }
    const double mean = quad.sum / static_cast<double>(total);
    report.plancherel_rel_err =
        std::abs(report.total - mean) /
        std::max({1.0, std::abs(report.total), grad_energy.sum});
  }
  return report;
}

FourierReport fourier_quasiconvexity_check(const StiffnessTensor& c,
                                           const PeriodicField& u,
                                           double tol) {
  return fourier_quasiconvexity_check(QuadraticForm::from_stiffness(c), u, tol);
}

nlohmann::json to_json(const FourierReport& r) {
  nlohmann::json j;
  j["total"] = r.total;
  j["field_norm2"] = r.field_norm2;
  j["nonnegative"] = r.nonnegative;
  j["special"] = r.special;
  nlohmann::json modes = nlohmann::json::array();
  for (const ModeTerm& t : r.violating_modes) {
    modes.push_back({{"k", {t.k[0], t.k[1], t.k[2]}}, {"value", t.value}});
  }
  j["violating_modes"] = modes;
  j["plancherel_rel_err"] = r.plancherel_rel_err;
  j["tol"] = r.tol;
  return j;
}

}  // namespace elastica
