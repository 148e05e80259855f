#include "sinc/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace sinc {
namespace {

// FFTW plans are created once per (size, sign) and executed on caller memory
// through the new-array interface, which is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw NumericError("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// e^{i ph}, with the reduction to [-pi, pi] done before dropping to double.
cplx unit_phase(long double ph) {
  const double r = static_cast<double>(std::remainder(ph, kTwoPiL));
  return {std::cos(r), std::sin(r)};
}

// e^{i s pi eps j^2 / N}; the phase is formed and reduced in extended
// precision because j^2 grows to ~N^2 and double rounding would leak into
// the output.
std::vector<cplx> chirp(std::size_t len, double epsilon, std::size_t n, double sign) {
  std::vector<cplx> out(len);
  const long double scale = std::numbers::pi_v<long double> * static_cast<long double>(epsilon) /
                            static_cast<long double>(n);
  for (std::size_t j = 0; j < len; ++j) {
    const long double jj = static_cast<long double>(j);
    const cplx z = unit_phase(scale * jj * jj);
    out[j] = {z.real(), sign * z.imag()};
  }
  return out;
}

std::vector<double> to_digitals(const std::vector<cplx>& sums) {
  std::vector<double> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out[i] = (cplx{0.0, 1.0 / kTwoPi} * sums[i]).real();
  return out;
}

}  // namespace

void dft(std::span<cplx> data, int sign) {
  if (data.empty()) return;
  if (sign != -1 && sign != 1) throw DomainError("dft: sign must be -1 or +1");
  fftw_plan plan = plan_cache().get(data.size(), sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

std::vector<cplx> fractional_dft_centered(std::span<const cplx> x, double epsilon) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t m2 = 2 * n;
  const std::vector<cplx> down = chirp(n, epsilon, n, -1.0);
  // Centering m -> m' - N/2 turns into the factor e^{i pi eps n} on the input.
  std::vector<cplx> y(m2, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    const long double ph = std::numbers::pi_v<long double> * static_cast<long double>(epsilon) *
                           static_cast<long double>(j);
    y[j] = x[j] * unit_phase(ph) * down[j];
  }
  std::vector<cplx> up(n);
  for (std::size_t j = 0; j < n; ++j) up[j] = std::conj(down[j]);
  std::vector<cplx> v(m2, cplx{});
  v[0] = up[0];
  for (std::size_t j = 1; j < n; ++j) {
    v[j] = up[j];
    v[m2 - j] = up[j];
  }
  dft(y, -1);
  dft(v, -1);
  for (std::size_t j = 0; j < m2; ++j) y[j] *= v[j];
  dft(y, 1);
  std::vector<cplx> out(n);
  const double inv = 1.0 / static_cast<double>(m2);
  for (std::size_t m = 0; m < n; ++m) out[m] = y[m] * inv * down[m];
  return out;
}

void FftPlanSpec::validate() const {
  if (n < 8 || !std::has_single_bit(n)) throw DomainError("fft plan: N must be a power of two >= 8");
  if (!(x_c > 0.0) || !std::isfinite(x_c)) throw DomainError("fft plan: X_c must be > 0");
  if (a_shift != 0 && a_shift != 1) throw DomainError("fft plan: a_shift must be 0 or 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("fft plan: epsilon must lie in (0, 1]");
}

QVector build_q(const CharacteristicFunction& cf, const FftPlanSpec& plan) {
  plan.validate();
  const std::size_t n = plan.n;
  const std::size_t evals = n / 4;
  std::vector<cplx> kappas(evals);
  const double shift = plan.a_shift ? 1.0 / kTwoPi : 0.0;
  for (std::size_t j = 0; j < evals; ++j)
    kappas[j] = cplx{static_cast<double>(2 * j + 1) / (2.0 * plan.x_c), -shift};
  const std::vector<cplx> f = cf.evaluate(kappas);
  QVector q(n, cplx{});
  q[0] = cplx{0.0, -kPi};
  for (std::size_t j = 0; j < evals; ++j) {
    const std::size_t idx = 2 * j + 1;
    const double nd = static_cast<double>(idx);
    q[idx] = 2.0 * f[j] / nd;
    // n - N = -idx: f(-kappa - a i/2pi) = conj f(kappa - a i/2pi).
    q[n - idx] = -2.0 * std::conj(f[j]) / nd;
  }
  return q;
}

std::vector<double> fft_digitals(std::span<const cplx> q, const FftPlanSpec& plan) {
  plan.validate();
  if (q.size() != plan.n) throw DomainError("fft_digitals: q size differs from plan N");
  if (plan.epsilon != 1.0) throw DomainError("fft_digitals: plain FFT requires epsilon = 1");
  const std::size_t n = plan.n;
  std::vector<cplx> work(q.begin(), q.end());
  dft(work, -1);
  // Row i holds m = i - N/2, i.e. DFT index (m mod N).
  std::vector<cplx> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = work[(i + n / 2) % n];
  return to_digitals(centered);
}

std::vector<double> frfft_digitals(std::span<const cplx> q, const FftPlanSpec& plan) {
  plan.validate();
  if (q.size() != plan.n) throw DomainError("frfft_digitals: q size differs from plan N");
  // With eps != 1 the kernel is no longer N-periodic in n, so the slots above
  // N/2 must sit at their true negative frequencies: sum over j = n + N/2,
  // then undo the shift with e^{i pi m eps}.
  const std::size_t half = plan.n / 2;
  std::vector<cplx> shifted(plan.n);
  for (std::size_t j = 0; j < plan.n; ++j) shifted[j] = q[(j + half) % plan.n];
  std::vector<cplx> sums = fractional_dft_centered(shifted, plan.epsilon);
  for (std::size_t i = 0; i < plan.n; ++i) {
    const long double m = static_cast<long double>(i) - static_cast<long double>(half);
    const long double ph = std::numbers::pi_v<long double> * static_cast<long double>(plan.epsilon) * m;
    sums[i] *= unit_phase(ph);
  }
  return to_digitals(sums);
}

SmileResult sinc_fft_smile(const CharacteristicFunction& cf, const MarketSpec& market, double x_c,
                           std::size_t n_f, PayoffKind kind, double epsilon) {
  market.validate();
  const bool pv = kind == PayoffKind::PvPut || kind == PayoffKind::PvCall;
  FftPlanSpec plan;
  plan.n = pv ? 2 * n_f : 4 * n_f;
  plan.x_c = x_c;
  plan.epsilon = epsilon;
  plan.validate();
  auto run = [&](int a) {
    FftPlanSpec p = plan;
    p.a_shift = a;
    const QVector q = build_q(cf, p);
    return epsilon == 1.0 ? fft_digitals(q, p) : frfft_digitals(q, p);
  };
  SmileResult s;
  s.market = market;
  s.kind = kind;
  s.method = epsilon == 1.0 ? "sinc-fft" : "sinc-frfft";
  s.n_f = n_f;
  const std::size_t before = cf.warnings();
  if (kind != PayoffKind::AonPut) s.con = run(0);
  if (kind != PayoffKind::ConPut) s.aon = run(1);
  const std::uint32_t cf_flag = cf.warnings() > before ? kFlagCfWarning : kFlagNone;
  const std::size_t rows = plan.n;
  s.strikes.resize(rows);
  s.prices.resize(rows);
  s.flags.assign(rows, cf_flag);
  for (std::size_t i = 0; i < rows; ++i) {
    s.strikes[i] = market.strike_from_log_moneyness(plan.log_moneyness(i));
    const double con = s.con.empty() ? 0.0 : s.con[i];
    const double aon = s.aon.empty() ? 0.0 : s.aon[i];
    s.prices[i] = assemble_price(market, s.strikes[i], kind, con, aon);
  }
  return s;
}

SmileResult interpolate_strikes(const SmileResult& smile, std::span<const double> targets) {
  const std::size_t rows = smile.strikes.size();
  if (rows < 2) throw DomainError("interpolate_strikes: grid needs at least two strikes");
  std::vector<double> k(rows);
  for (std::size_t i = 0; i < rows; ++i) k[i] = std::log(smile.strikes[i]);
  SmileResult out;
  out.market = smile.market;
  out.kind = smile.kind;
  out.method = smile.method;
  out.n_f = smile.n_f;
  const bool digitals = !smile.con.empty() || !smile.aon.empty();
  for (const double K : targets) {
    if (!(K > 0.0)) throw DomainError("interpolate_strikes: strike must be > 0");
    const double x = std::log(K);
    if (x < k.front() || x > k.back())
      throw DomainError("interpolate_strikes: strike " + std::to_string(K) + " outside the grid");
    auto it = std::upper_bound(k.begin(), k.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - k.begin());
    if (hi >= rows) hi = rows - 1;
    const std::size_t lo = hi - 1;
    const double w = (x - k[lo]) / (k[hi] - k[lo]);
    // Cubic Lagrange through the four nearest nodes; linear on tiny grids.
    const std::size_t width = rows >= 4 ? 4 : 2;
    const std::size_t first = rows >= 4 ? std::min(lo > 0 ? lo - 1 : 0, rows - 4) : lo;
    std::array<double, 4> lw{};
    for (std::size_t a = 0; a < width; ++a) {
      double c = 1.0;
      for (std::size_t b = 0; b < width; ++b)
        if (b != a) c *= (x - k[first + b]) / (k[first + a] - k[first + b]);
      lw[a] = c;
    }
    auto lerp = [&](const std::vector<double>& v) {
      if (v.empty()) return 0.0;
      double acc = 0.0;
      for (std::size_t a = 0; a < width; ++a) acc += lw[a] * v[first + a];
      return acc;
    };
    const bool on_node = w == 0.0 || w == 1.0;
    std::uint32_t flags = smile.flags.empty() ? kFlagNone : (smile.flags[lo] | smile.flags[hi]);
    if (!on_node) flags |= kFlagInterpolated;
    out.strikes.push_back(K);
    if (digitals) {
      const double con = lerp(smile.con);
      const double aon = lerp(smile.aon);
      if (!smile.con.empty()) out.con.push_back(con);
      if (!smile.aon.empty()) out.aon.push_back(aon);
      out.prices.push_back(assemble_price(smile.market, K, smile.kind, con, aon));
    } else {
      out.prices.push_back(lerp(smile.prices));
    }
    out.flags.push_back(flags);
  }
  return out;
}

double frfft_epsilon_for(std::span<const double> log_moneyness, double x_c, std::size_t n) {
  if (log_moneyness.empty()) return 1.0;
  double reach = 0.0;
  for (const double k : log_moneyness) reach = std::max(reach, std::abs(k));
  // Grid covers [-eps X_c, eps X_c (1 - 2/N)]; keep one step of margin.
  const double nd = static_cast<double>(n);
  const double eps = reach / (x_c * (1.0 - 4.0 / nd));
  return std::clamp(eps, 1e-6, 1.0);
}

}  // namespace sinc
