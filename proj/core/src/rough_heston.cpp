#include "sinc/rough_heston.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "sinc/parallel.hpp"

namespace sinc {
namespace {

constexpr cplx I{0.0, 1.0};

// Product-integration weights of the fractional trapezoidal corrector on a
// uniform grid. For the step producing h_{m+1}:
//   h_{m+1} = c * (F_{m+1} + w0[m] F_0 + sum_{j=1..m} w[m-j] F_j).
struct AdamsWeights {
  double c = 0.0;
  std::vector<double> w0;
  std::vector<double> w;

  AdamsWeights(double alpha, double dt, std::size_t n) : w0(n), w(n) {
    c = std::pow(dt, alpha) / std::tgamma(alpha + 2.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double md = static_cast<double>(m);
      w0[m] = std::pow(md, alpha + 1.0) - (md - alpha) * std::pow(md + 1.0, alpha);
      w[m] = std::pow(md + 2.0, alpha + 1.0) + std::pow(md, alpha + 1.0) -
             2.0 * std::pow(md + 1.0, alpha + 1.0);
    }
  }
};

// Solves the Riccati equation for a block of angular frequencies at once.
// rhs is laid out time-major: rhs[j * B + b]. h is optional (same layout).
void solve_block(const RoughHestonParams& p, const AdamsWeights& wts, std::span<const cplx> a,
                 std::size_t n, double dt, double h_cap, std::vector<cplx>& rhs,
                 std::vector<cplx>* h_out) {
  const std::size_t B = a.size();
  const double C2 = 0.5 * p.nu * p.nu;
  std::vector<cplx> A(B), Bc(B);
  for (std::size_t b = 0; b < B; ++b) {
    A[b] = -0.5 * a[b] * (a[b] + I);
    Bc[b] = I * a[b] * p.rho * p.nu;
  }
  // Real and imaginary parts kept apart so the O(n^2) history sum vectorizes.
  std::vector<double> fr((n + 1) * B), fi((n + 1) * B);
  std::vector<double> sr(B), si(B);
  if (h_out) h_out->assign((n + 1) * B, cplx{});
  for (std::size_t b = 0; b < B; ++b) {
    fr[b] = A[b].real();
    fi[b] = A[b].imag();
  }
  const double c = wts.c;
  for (std::size_t m = 0; m < n; ++m) {
    const double w0 = wts.w0[m];
    for (std::size_t b = 0; b < B; ++b) {
      sr[b] = w0 * fr[b];
      si[b] = w0 * fi[b];
    }
    for (std::size_t j = 1; j <= m; ++j) {
      const double wj = wts.w[m - j];
      const double* frj = &fr[j * B];
      const double* fij = &fi[j * B];
      for (std::size_t b = 0; b < B; ++b) {
        sr[b] += wj * frj[b];
        si[b] += wj * fij[b];
      }
    }
    // c C h^2 + (c B - 1) h + c (A + S) = 0; take the root that vanishes with c.
    for (std::size_t b = 0; b < B; ++b) {
      const cplx pp = 1.0 - c * Bc[b];
      const cplx qq = c * (A[b] + cplx{sr[b], si[b]});
      const cplx disc = pp * pp - 4.0 * c * C2 * qq;
      cplx sq = std::sqrt(disc);
      if ((std::conj(pp) * sq).real() < 0.0) sq = -sq;
      const cplx hn = 2.0 * qq / (pp + sq);
      // For imaginary a (real moments) the equation is real; losing the real
      // root means the true solution has already exploded.
      const bool lost_real_root = a[b].real() == 0.0 && disc.real() < 0.0;
      if (!(std::abs(hn) <= h_cap) || lost_real_root) {
        std::ostringstream msg;
        msg << "rough_heston: Riccati solution blew up at t = " << static_cast<double>(m + 1) * dt
            << " for a = (" << a[b].real() << ", " << a[b].imag() << ")";
        throw NumericError(msg.str());
      }
      const cplx fn = A[b] + Bc[b] * hn + C2 * hn * hn;
      fr[(m + 1) * B + b] = fn.real();
      fi[(m + 1) * B + b] = fn.imag();
      if (h_out) (*h_out)[(m + 1) * B + b] = hn;
    }
  }
  rhs.resize((n + 1) * B);
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = {fr[k], fi[k]};
}

// int_0^T F(h(T - s)) xi0(s) ds from the rhs samples of column b.
cplx integrate_rhs(const ForwardVarianceCurve& curve, const std::vector<cplx>& rhs, std::size_t B,
                   std::size_t b, std::size_t n, double T) {
  const double dt = T / static_cast<double>(n);
  if (curve.values().size() == 1) {
    cplx acc = 0.5 * (rhs[b] + rhs[n * B + b]);
    for (std::size_t j = 1; j < n; ++j) acc += rhs[j * B + b];
    return acc * dt * curve.values().front();
  }
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // t in [t_j, t_{j+1}] maps to s in [T - t_{j+1}, T - t_j].
    const double s_hi = T - static_cast<double>(j) * dt;
    const double s_lo = j + 1 == n ? 0.0 : T - static_cast<double>(j + 1) * dt;
    acc += curve.integrate_linear(s_lo, s_hi, rhs[(j + 1) * B + b], rhs[j * B + b]);
  }
  return acc;
}

void check_steps(std::size_t n_steps) {
  if (n_steps < 2) throw DomainError("rough_heston: n_steps must be >= 2");
}

}  // namespace

void RoughHestonParams::validate() const {
  if (!(H > 0.0 && H <= 0.5)) throw DomainError("rough_heston: H must lie in (0, 1/2]");
  if (!(nu >= 0.0)) throw DomainError("rough_heston: nu must be >= 0");
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("rough_heston: rho must lie in [-1, 1]");
}

ForwardVarianceCurve::ForwardVarianceCurve(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty() || times_.size() != values_.size())
    throw DomainError("forward variance: need matching, non-empty times and values");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0)) throw DomainError("forward variance: values must be > 0");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw DomainError("forward variance: times must be strictly increasing");
  }
}

ForwardVarianceCurve ForwardVarianceCurve::flat(double value) { return {{0.0}, {value}}; }

ForwardVarianceCurve ForwardVarianceCurve::from_csv(std::istream& in) {
  std::vector<double> times, values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(line);
    std::string t_str, v_str;
    std::getline(row, t_str, ',');
    std::getline(row, v_str);
    try {
      std::size_t pos_t = 0, pos_v = 0;
      const double t = std::stod(t_str, &pos_t);
      const double v = std::stod(v_str, &pos_v);
      times.push_back(t);
      values.push_back(v);
    } catch (const std::exception&) {
      if (!first) throw DomainError("forward variance: malformed row '" + line + "'");
    }
    first = false;
  }
  return {std::move(times), std::move(values)};
}

ForwardVarianceCurve ForwardVarianceCurve::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("forward variance: cannot open " + path);
  return from_csv(in);
}

double ForwardVarianceCurve::value(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return values_.front();
  return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

cplx ForwardVarianceCurve::integrate_linear(double s0, double s1, cplx f0, cplx f1) const {
  const double len = s1 - s0;
  if (!(len > 0.0)) return 0.0;
  auto f_at = [&](double s) { return f0 + (f1 - f0) * ((s - s0) / len); };
  cplx acc = 0.0;
  double lo = s0;
  auto it = std::upper_bound(times_.begin(), times_.end(), s0);
  while (lo < s1) {
    const double hi = (it != times_.end() && *it < s1) ? *it : s1;
    acc += 0.5 * (f_at(lo) + f_at(hi)) * (hi - lo) * value(lo);
    lo = hi;
    if (it != times_.end()) ++it;
  }
  return acc;
}

cplx riccati_rhs(const RoughHestonParams& p, cplx a, cplx h) {
  return -0.5 * a * (a + I) + I * a * p.rho * p.nu * h + 0.5 * p.nu * p.nu * h * h;
}

RiccatiSolution solve_fractional_riccati(const RoughHestonParams& p, cplx a, double T,
                                         std::size_t n_steps, double h_cap) {
  p.validate();
  check_steps(n_steps);
  if (!(T > 0.0)) throw DomainError("rough_heston: T must be > 0");
  const double dt = T / static_cast<double>(n_steps);
  const AdamsWeights wts(p.alpha(), dt, n_steps);
  RiccatiSolution sol;
  sol.a = a;
  sol.dt = dt;
  solve_block(p, wts, std::span<const cplx>(&a, 1), n_steps, dt, h_cap, sol.rhs, &sol.h);
  return sol;
}

cplx cf_rough_heston(const RoughHestonParams& p, const ForwardVarianceCurve& curve,
                     const MarketSpec& m, cplx kappa, std::size_t n_steps) {
  if (kappa == cplx{}) return 1.0;
  const RiccatiSolution sol = solve_fractional_riccati(p, kTwoPi * kappa, m.maturity, n_steps);
  return std::exp(integrate_rhs(curve, sol.rhs, 1, 0, n_steps, m.maturity));
}

CharacteristicFunction make_rough_heston_cf(const RoughHestonParams& p,
                                            const ForwardVarianceCurve& curve,
                                            const MarketSpec& m, std::size_t n_steps) {
  p.validate();
  m.validate();
  check_steps(n_steps);
  const double T = m.maturity;
  const auto wts = std::make_shared<const AdamsWeights>(p.alpha(), T / static_cast<double>(n_steps),
                                                        n_steps);
  auto block = [p, curve, T, n_steps, wts](std::span<const cplx> kappas, std::span<cplx> out) {
    std::vector<cplx> a(kappas.size());
    for (std::size_t b = 0; b < a.size(); ++b) a[b] = kTwoPi * kappas[b];
    std::vector<cplx> rhs;
    solve_block(p, *wts, a, n_steps, T / static_cast<double>(n_steps), kDefaultRiccatiCap, rhs,
                nullptr);
    for (std::size_t b = 0; b < a.size(); ++b)
      out[b] = kappas[b] == cplx{} ? cplx{1.0}
                                   : std::exp(integrate_rhs(curve, rhs, a.size(), b, n_steps, T));
  };
  auto point = [block](cplx kappa) {
    cplx out;
    block(std::span<const cplx>(&kappa, 1), std::span<cplx>(&out, 1));
    return out;
  };
  auto batch = [block](std::span<const cplx> kappas, std::span<cplx> out) {
    if (kappas.size() != out.size()) throw DomainError("cf: input and output sizes differ");
    constexpr std::size_t kBlock = 32;
    const std::size_t n_blocks = (kappas.size() + kBlock - 1) / kBlock;
    parallel_for(n_blocks, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const std::size_t begin = i * kBlock;
        const std::size_t len = std::min(kBlock, kappas.size() - begin);
        block(kappas.subspan(begin, len), out.subspan(begin, len));
      }
    });
  };
  return CharacteristicFunction(point, batch, "rough_heston");
}

}  // namespace sinc
