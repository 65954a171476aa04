#include "avm/approx.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>

namespace avm {

namespace {

// Exact rational used by the coefficient generator only.
class Rational {
 public:
  Rational(long long num = 0, long long den = 1) : num_(num), den_(den) { normalize(); }

  static Rational half(long long twice) { return Rational(twice, 2); }

  Rational operator+(const Rational& o) const {
    return make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                static_cast<__int128>(den_) * o.den_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    return make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw NumericalDegeneracy("division by zero in Pade coefficient generator");
    return make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  static Rational make(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      const __int128 r = a % b;
      a = b;
      b = r;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
    if (num >= kLimit || num <= -kLimit || den >= kLimit)
      throw NumericalDegeneracy("Pade coefficient generator overflow");
    return Rational(static_cast<long long>(num), static_cast<long long>(den));
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_;
  long long den_;
};

// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1).
Rational pochhammer(const Rational& a, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r = r * (a + Rational(i));
  return r;
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r = r * Rational(i);
  return r;
}

Rational binomial(int n, int j) { return factorial(n) / (factorial(j) * factorial(n - j)); }

// Coefficients of c(1 - t) in powers of t, given c(xi) in powers of xi (ascending).
std::vector<Rational> shift_reflect(const std::vector<Rational>& c) {
  std::vector<Rational> out(c.size(), Rational(0));
  for (std::size_t n = 0; n < c.size(); ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      Rational term = c[n] * binomial(static_cast<int>(n), static_cast<int>(j));
      out[j] = out[j] + ((j % 2 == 0) ? term : -term);
    }
  }
  return out;
}

std::vector<double> descending(const std::vector<Rational>& ascending) {
  std::vector<double> out;
  out.reserve(ascending.size());
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) out.push_back(it->to_double());
  return out;
}

constexpr std::array<double, 2> kInternal1{0.5, 0.5};
constexpr std::array<double, 3> kInternal2{-1.0 / 8, 3.0 / 4, 3.0 / 8};
constexpr std::array<double, 5> kInternal3{-1.0 / 128, 3.0 / 32, -23.0 / 64, 31.0 / 32, 39.0 / 128};
constexpr std::array<double, 9> kInternal4{-1.0 / 32768, 3.0 / 4096,    -59.0 / 8192,
                                           169.0 / 4096, -2635.0 / 16384, 1693.0 / 4096,
                                           -5891.0 / 8192, 4807.0 / 4096, 8463.0 / 32768};

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidParameter("malformed solver name '" + std::string(whole) + "'");
  return value;
}

std::vector<std::string_view> split_dash(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find('-', start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

SignalSpeeds widen_fan(double s_left, double s_right) {
  const double scale = std::max({std::abs(s_left), std::abs(s_right), 1.0});
  const double floor = kFanEpsilon * scale;
  if (s_right - s_left < floor) s_right = s_left + floor;
  return {s_left, s_right};
}

HllCoefficients hll_linear_coeffs(double s_left, double s_right) {
  if (!(s_right > s_left))
    throw InvalidParameter("degenerate HLL fan: S_R must exceed S_L");
  const double width = s_right - s_left;
  return {(s_right * std::abs(s_left) - s_left * std::abs(s_right)) / width,
          (std::abs(s_right) - std::abs(s_left)) / width};
}

std::span<const double> internal_coefficients(int n) {
  switch (n) {
    case 1: return kInternal1;
    case 2: return kInternal2;
    case 3: return kInternal3;
    case 4: return kInternal4;
    default:
      throw InvalidParameter("tabulated internal coefficients exist for n = 1..4 only");
  }
}

PadeCoefficients generate_pade_coefficients(int m, int k) {
  if (m < 0 || k < 0 || m > kMaxPadeOrder || k > kMaxPadeOrder)
    throw InvalidParameter("unsupported Pade order [" + std::to_string(m) + "/" +
                           std::to_string(k) + "]");
  const Rational half = Rational::half(1);

  // Denominator P_km(xi), degree k.
  std::vector<Rational> p(k + 1);
  const Rational p_common = pochhammer(half - Rational(m), m) / pochhammer(Rational(-k - m), m);
  for (int n = 0; n <= k; ++n) {
    p[n] = pochhammer(half, n) * p_common * pochhammer(Rational(n - k - m), m) /
           (factorial(n) * pochhammer(Rational(n) + half - Rational(m), m));
  }
  // Numerator Q_km(xi), degree m.
  std::vector<Rational> q(m + 1);
  for (int n = 0; n <= m; ++n) {
    q[n] = pochhammer(Rational(-m), n) * pochhammer(-half - Rational(k), n) /
           (factorial(n) * pochhammer(Rational(-k - m), n));
  }

  PadeCoefficients out;
  out.m = m;
  out.k = k;
  out.num = descending(shift_reflect(q));
  out.den = descending(shift_reflect(p));
  return out;
}

const PadeCoefficients& pade_coefficients(int m, int k) {
  static std::once_flag once;
  static std::vector<PadeCoefficients> cache;
  std::call_once(once, [] {
    cache.reserve((kMaxPadeOrder + 1) * (kMaxPadeOrder + 1));
    for (int mm = 0; mm <= kMaxPadeOrder; ++mm)
      for (int kk = 0; kk <= kMaxPadeOrder; ++kk) cache.push_back(generate_pade_coefficients(mm, kk));
  });
  if (m < 0 || k < 0 || m > kMaxPadeOrder || k > kMaxPadeOrder)
    throw InvalidParameter("unsupported Pade order [" + std::to_string(m) + "/" +
                           std::to_string(k) + "]");
  return cache[m * (kMaxPadeOrder + 1) + k];
}

BasisFunction BasisFunction::hll() { return BasisFunction{}; }

BasisFunction BasisFunction::hll_linear(double s_left, double s_right) {
  BasisFunction f;
  f.bound_ = true;
  f.hll_ = hll_linear_coeffs(s_left, s_right);
  return f;
}

BasisFunction BasisFunction::internal(int n) {
  if (n < 1) throw InvalidParameter("internal polynomial order must be >= 1");
  BasisFunction f;
  f.kind_ = BasisKind::Internal;
  f.n_ = n;
  return f;
}

BasisFunction BasisFunction::pade(int m, int k, int depth) {
  if (depth < 1) throw InvalidParameter("Pade recursion depth must be >= 1");
  BasisFunction f;
  f.kind_ = BasisKind::Pade;
  f.n_ = depth;
  f.m_ = m;
  f.k_ = k;
  f.pade_ = &avm::pade_coefficients(m, k);
  return f;
}

BasisFunction BasisFunction::parse(std::string_view name) {
  const auto parts = split_dash(name);
  if (parts.size() == 1 && parts[0] == "hll") return hll();
  if (parts.size() == 2 && parts[0] == "int") return internal(parse_int(parts[1], name));
  if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "pade") {
    int depth = 1;
    if (parts.size() == 4) {
      if (parts[3].size() < 2 || parts[3][0] != 'd')
        throw InvalidParameter("malformed solver name '" + std::string(name) + "'");
      depth = parse_int(parts[3].substr(1), name);
    }
    return pade(parse_int(parts[1], name), parse_int(parts[2], name), depth);
  }
  throw InvalidParameter("unknown solver '" + std::string(name) +
                         "' (expected hll, int-N or pade-M-K[-dN])");
}

std::string BasisFunction::name() const {
  switch (kind_) {
    case BasisKind::HllLinear: return "hll";
    case BasisKind::Internal: return "int-" + std::to_string(n_);
    case BasisKind::Pade: {
      std::string s = "pade-" + std::to_string(m_) + "-" + std::to_string(k_);
      if (n_ != 1) s += "-d" + std::to_string(n_);
      return s;
    }
  }
  return {};
}

HllCoefficients BasisFunction::hll_coefficients() const {
  if (kind_ != BasisKind::HllLinear) throw InvalidParameter("not an HLL basis");
  if (!bound_) throw InvalidParameter("HLL basis evaluated before binding signal speeds");
  return hll_;
}

BasisFunction BasisFunction::bind(double s_left, double s_right) const {
  if (kind_ != BasisKind::HllLinear) return *this;
  const auto fan = widen_fan(s_left, s_right);
  return hll_linear(fan.left, fan.right);
}

}  // namespace avm
