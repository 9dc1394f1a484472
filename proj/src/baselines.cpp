#include "dexfactor/baselines.hpp"

#include <array>
#include <random>
#include <stdexcept>

namespace dexfactor {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Jaeschke's bases; deterministic for all n < 2^64.
bool miller_rabin_u64(u64 n) {
  constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BaselineResult trial_u64(u64 n) {
  BaselineResult res;
  res.method = BaselineMethod::TrialDivision;
  ++res.iterations;
  if (n % 2 == 0) {
    res.factor = Natural(n == 2 ? 1 : 2);
    return res;
  }
  for (u64 d = 3; d <= n / d; d += 2) {
    ++res.iterations;
    if (n % d == 0) {
      res.factor = Natural(d);
      return res;
    }
  }
  return res;
}

BaselineResult trial_mpz(const Natural& n) {
  BaselineResult res;
  res.method = BaselineMethod::TrialDivision;
  const mpz_class& v = n.mpz();
  ++res.iterations;
  if (mpz_even_p(v.get_mpz_t())) {
    res.factor = Natural(2);
    return res;
  }
  const mpz_class limit = isqrt(n).mpz();
  for (mpz_class d = 3; d <= limit; d += 2) {
    ++res.iterations;
    if (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
      res.factor = Natural::from_mpz(d);
      return res;
    }
  }
  return res;
}

mpz_class rho_step(const mpz_class& y, const mpz_class& c, const mpz_class& n) {
  mpz_class r = y * y + c;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return r;
}

mpz_class abs_diff(const mpz_class& a, const mpz_class& b) { return a > b ? a - b : b - a; }

// One Brent attempt. Returns a divisor in (1, n) or 0 on failure.
mpz_class brent_attempt(const mpz_class& n, mpz_class y, const mpz_class& c, u64 batch,
                        u64 max_iter, u64& iterations) {
  mpz_class x, ys, g = 1, q = 1;
  u64 r = 1;
  u64 spent = 0;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = rho_step(y, c, n);
    spent += r;
    for (u64 k = 0; k < r && g == 1; k += batch) {
      ys = y;
      u64 lim = std::min(batch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = rho_step(y, c, n);
        q *= abs_diff(x, y);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      spent += lim;
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
    r *= 2;
    if (spent > max_iter) {
      iterations += spent;
      return 0;
    }
  }
  if (g == n) {
    // The batch overshot; replay it one gcd at a time.
    do {
      ys = rho_step(ys, c, n);
      ++spent;
      mpz_class diff = abs_diff(x, ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  iterations += spent;
  if (g == n) return 0;
  return g;
}

}  // namespace

std::string_view to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::TrialDivision: return "trial";
    case BaselineMethod::PollardRho: return "rho";
  }
  return "?";
}

BaselineResult trial_division(const Natural& n) {
  if (n < Natural(2)) throw std::invalid_argument("trial_division requires n >= 2");
  if (auto small = n.to_u64()) return trial_u64(*small);
  return trial_mpz(n);
}

std::vector<Natural> trial_factorize(const Natural& n) {
  if (n < Natural(2)) return {};
  std::vector<Natural> factors;
  Natural rest = n;
  while (rest > Natural(1)) {
    auto spf = trial_division(rest).factor;
    if (spf == Natural(1)) spf = rest;
    factors.push_back(spf);
    rest = rest / spf;
  }
  return factors;
}

BaselineResult pollard_rho(const Natural& n, std::uint64_t seed, const RhoOptions& opts) {
  if (n.is_even() || n < Natural(9))
    throw std::invalid_argument("pollard_rho requires odd n >= 9, got " + n.to_string());

  BaselineResult res;
  res.method = BaselineMethod::PollardRho;
  std::mt19937_64 rng(seed);
  const mpz_class& modulus = n.mpz();
  gmp_randclass draw(gmp_randinit_default);

  for (unsigned attempt = 0; attempt < opts.max_attempts; ++attempt) {
    draw.seed(static_cast<unsigned long>(rng()));
    mpz_class start = draw.get_z_range(modulus);
    mpz_class c = draw.get_z_range(modulus - 3) + 1;  // avoid c = 0 and c = -2
    mpz_class d = brent_attempt(modulus, start, c, opts.batch, opts.max_iterations_per_attempt,
                                res.iterations);
    if (d != 0 && mpz_divisible_p(modulus.get_mpz_t(), d.get_mpz_t()) && d > 1 && d < modulus) {
      res.factor = Natural::from_mpz(d);
      return res;
    }
  }
  res.failed = true;
  res.factor = Natural(1);
  return res;
}

bool is_prime_ref(const Natural& n) {
  if (auto small = n.to_u64()) return miller_rabin_u64(*small);
  return trial_division(n).factor == Natural(1);
}

}  // namespace dexfactor
