#include "gfr/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace gfr {

namespace {

// Prime factors above this go through Bluestein.
constexpr std::size_t kMaxDirectRadix = 61;

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  while (n % 4 == 0) {
    factors.push_back(4);
    n /= 4;
  }
  while (n % 2 == 0) {
    factors.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::vector<cplx> make_roots(std::size_t n) {
  std::vector<cplx> roots(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < n; ++i) {
    const long double a = two_pi * static_cast<long double>(i) / static_cast<long double>(n);
    roots[i] = cplx(static_cast<double>(std::cos(a)), -static_cast<double>(std::sin(a)));
  }
  return roots;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

struct FftPlan::Bluestein {
  std::size_t m;
  FftPlan plan;
  std::vector<cplx> chirp;       // exp(-j pi i^2 / N)
  std::vector<cplx> kernel_fft;  // FFT of the conjugate chirp, wrapped to length m

  explicit Bluestein(std::size_t n) : m(next_pow2(2 * n - 1)), plan(m), chirp(n) {
    const long double pi = std::numbers::pi_v<long double>;
    const std::size_t two_n = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
      // i^2 mod 2N keeps the angle small and exact.
      const std::uint64_t q = (static_cast<std::uint64_t>(i) * i) % two_n;
      const long double a = pi * static_cast<long double>(q) / static_cast<long double>(n);
      chirp[i] = cplx(static_cast<double>(std::cos(a)), -static_cast<double>(std::sin(a)));
    }
    std::vector<cplx> b(m, cplx{});
    b[0] = std::conj(chirp[0]);
    for (std::size_t i = 1; i < n; ++i) {
      b[i] = std::conj(chirp[i]);
      b[m - i] = std::conj(chirp[i]);
    }
    kernel_fft = plan.forward(b);
  }

  void forward(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t n = chirp.size();
    std::vector<cplx> a(m, cplx{});
    for (std::size_t i = 0; i < n; ++i) a[i] = in[i] * chirp[i];
    std::vector<cplx> fa = plan.forward(a);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= kernel_fft[i];
    plan.backward(fa, a);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k] * scale;
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("FftPlan: length must be at least 1");
  if (n > (std::size_t{1} << 31)) throw InvalidArgument("FftPlan: length too large");
  factors_ = factorize(n);
  if (!factors_.empty() && *std::max_element(factors_.begin(), factors_.end()) > kMaxDirectRadix) {
    factors_.clear();
    bluestein_ = std::make_shared<const Bluestein>(n);
  } else {
    roots_ = make_roots(n);
  }
}

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  execute(in, out, false);
}

void FftPlan::backward(std::span<const cplx> in, std::span<cplx> out) const {
  execute(in, out, true);
}

std::vector<cplx> FftPlan::forward(std::span<const cplx> in) const {
  std::vector<cplx> out(n_);
  execute(in, out, false);
  return out;
}

std::vector<cplx> FftPlan::backward(std::span<const cplx> in) const {
  std::vector<cplx> out(n_);
  execute(in, out, true);
  return out;
}

void FftPlan::execute(std::span<const cplx> in, std::span<cplx> out, bool inverse) const {
  if (in.size() != n_ || out.size() != n_) {
    throw InvalidArgument("FftPlan: buffer length does not match plan length");
  }
  if (bluestein_) {
    if (!inverse) {
      bluestein_->forward(in, out);
      return;
    }
    // backward(x) = conj(forward(conj(x)))
    std::vector<cplx> tmp(in.begin(), in.end());
    for (auto& v : tmp) v = std::conj(v);
    bluestein_->forward(tmp, out);
    for (auto& v : out) v = std::conj(v);
    return;
  }

  std::vector<cplx> scratch(factors_.empty() ? 1 : *std::max_element(factors_.begin(), factors_.end()));
  if (in.data() == out.data()) {
    const std::vector<cplx> copy(in.begin(), in.end());
    recurse(copy.data(), 1, out.data(), n_, 0, inverse, scratch);
  } else {
    recurse(in.data(), 1, out.data(), n_, 0, inverse, scratch);
  }
}

// Decimation in time: split the strided input into p interleaved subsequences,
// transform each into a contiguous block of `out`, then combine in place.
void FftPlan::recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t n,
                      std::size_t level, bool inverse, std::vector<cplx>& scratch) const {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = factors_[level];
  const std::size_t m = n / p;
  for (std::size_t r = 0; r < p; ++r) {
    recurse(in + r * stride, stride * p, out + r * m, m, level + 1, inverse, scratch);
  }

  const std::size_t step = n_ / n;
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const cplx a = out[k];
      const cplx b = out[k + m] * root(step * k, inverse);
      out[k] = a + b;
      out[k + m] = a - b;
    }
    return;
  }
  if (p == 4) {
    const cplx minus_j = inverse ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    for (std::size_t k = 0; k < m; ++k) {
      const cplx t0 = out[k];
      const cplx t1 = out[k + m] * root(step * k, inverse);
      const cplx t2 = out[k + 2 * m] * root(2 * step * k, inverse);
      const cplx t3 = out[k + 3 * m] * root(3 * step * k, inverse);
      const cplx s02 = t0 + t2;
      const cplx d02 = t0 - t2;
      const cplx s13 = t1 + t3;
      const cplx d13 = (t1 - t3) * minus_j;
      out[k] = s02 + s13;
      out[k + m] = d02 + d13;
      out[k + 2 * m] = s02 - s13;
      out[k + 3 * m] = d02 - d13;
    }
    return;
  }

  const std::size_t small_step = n_ / p;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) {
      scratch[r] = out[k + r * m] * root((step * r * k) % n_, inverse);
    }
    for (std::size_t q = 0; q < p; ++q) {
      cplx acc = scratch[0];
      for (std::size_t r = 1; r < p; ++r) {
        acc += scratch[r] * root(small_step * ((r * q) % p), inverse);
      }
      out[k + q * m] = acc;
    }
  }
}

}  // namespace gfr
