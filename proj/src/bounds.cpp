#include "hatguess/bounds.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

// RAII over an mpfr_t.
struct Real {
  mpfr_t v;
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

mpq_class real_to_q(const Real& r) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), r.v);
  return q;
}

mpq_class log2_directed(const mpq_class& x, mpfr_rnd_t rnd) {
  if (x <= 0) throw ContractError("log2 of a non-positive rational");
  Real a(256), b(256);
  mpfr_set_q(a.v, x.get_mpq_t(), rnd);
  mpfr_log2(b.v, a.v, rnd);
  return real_to_q(b);
}

bool is_power_of_two(const mpq_class& q, unsigned long& k) {
  if (q.get_den() != 1 || q.get_num() < 2) return false;
  const mpz_class& n = q.get_num();
  k = mpz_scan1(n.get_mpz_t(), 0);
  return mpz_sizeinbase(n.get_mpz_t(), 2) == k + 1;
}

// Compares T(m, t) (m >= 1, t >= 1) against a positive canonical rational q that is not 2^k, k >= 1.
// The two are never equal: T is a power of two when rational. Descends q through m certified logs.
std::strong_ordering tower_vs_rational(int m, const mpq_class& t, const mpq_class& q) {
  if (q <= 1) return std::strong_ordering::greater;
  for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
    Real lo(prec), hi(prec), one(prec);
    mpfr_set_ui(one.v, 1, MPFR_RNDN);
    mpfr_set_q(lo.v, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.v, q.get_mpq_t(), MPFR_RNDU);
    for (int j = 0; j < m; ++j) {
      // here [lo, hi] encloses log^(j)(q), compared against T(m - j, t) >= 2
      if (mpfr_cmp_ui(hi.v, 2) < 0) return std::strong_ordering::greater;
      // a lower end below 1 is clamped; it can then only feed "less" conclusions, which use hi
      if (mpfr_cmp(lo.v, one.v) < 0) mpfr_set(lo.v, one.v, MPFR_RNDN);
      mpfr_log2(lo.v, lo.v, MPFR_RNDD);
      mpfr_log2(hi.v, hi.v, MPFR_RNDU);
    }
    if (mpfr_cmp_q(hi.v, t.get_mpq_t()) < 0) return std::strong_ordering::greater;
    if (mpfr_cmp_q(lo.v, t.get_mpq_t()) > 0) return std::strong_ordering::less;
  }
  throw ContractError("tower comparison not resolved within precision cap");
}

TowerValue raise(const TowerValue& t) { return TowerValue(t.height() + 1, t.top()); }

mpz_class pow_checked(const mpz_class& base, const mpz_class& exp) {
  if (!exp.fits_ulong_p()) throw ContractError("exponent too large for exact evaluation");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return out;
}

mpz_class pow_ui(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

Power petunia_power(const mpz_class& s) {
  mpz_class q = s * s + s + 1;
  return {3 * q, 3 * q * q};
}

Power outerplanar_power(const mpz_class& s) {
  mpz_class t = s + 1;
  mpz_class t3 = t * t * t;
  mpz_class q = t3 * t3 + t3 + 1;
  return {3 * q, 3 * q * q};
}

// Write base = m^j with m not a perfect power; then base^exp = m^(j*exp).
static Power primitive(const Power& p) {
  if (p.base < 2) return {p.base, 1};
  mpz_class m = p.base;
  mpz_class j = 1;
  for (unsigned long e = mpz_sizeinbase(m.get_mpz_t(), 2); e >= 2; --e) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e) != 0) {
      m = root;
      j *= e;
      e = mpz_sizeinbase(m.get_mpz_t(), 2) + 1;
    }
  }
  return {m, j * p.exp};
}

bool same_value(const Power& a, const Power& b) {
  if (a.exp == 0 || b.exp == 0) return (a.exp == 0 || a.base == 1) && (b.exp == 0 || b.base == 1);
  const Power pa = primitive(a), pb = primitive(b);
  return pa.base == pb.base && pa.exp == pb.exp;
}

namespace {

// log2(base^exp + 1) <= exp * log2(base) + 1
mpq_class log2_power_plus_one_upper(const Power& p) {
  return mpq_class(p.exp) * log2_upper(mpq_class(p.base)) + 1;
}

// Upper bound on log2 log2 (outerplanar_bound(x) + 1) from log2 x <= u, x >= 1.
// exp <= 27 (x+1)^12 <= 27 * 2^12 x^12 and 2 * base <= 1152 x^6.
mpq_class outerplanar_loglog_upper(const mpq_class& u) {
  return log2_upper(27) + 12 + 12 * u + log2_upper(log2_upper(1152) + 6 * u);
}

// Same bound when log2 x is itself tower-sized: for X >= 128 the whole expression is <= 13 X.
TowerValue outerplanar_loglog_upper(const TowerValue& x) {
  if (x.height() == 0) return TowerValue(0, outerplanar_loglog_upper(x.top()));
  if (x < TowerValue(0, 128)) throw ContractError("tower magnitude too small for the coarse chain step");
  return mul_upper(x, 13);
}

mpq_class pow_q(long base, unsigned long e) { return mpq_class(pow_ui(mpz_class(base), e)); }

}  // namespace

TowerValue::TowerValue(int height, mpq_class top) : height_(height), top_(std::move(top)) {
  top_.canonicalize();
  if (height_ < 0) throw ContractError("tower height must be nonnegative");
  if (top_ <= 0) throw ContractError("tower top must be positive");
  if (height_ >= 1 && top_ < 1) throw ContractError("tower top below 1 at positive height has no exact form");
  unsigned long k = 0;
  while (is_power_of_two(top_, k)) {
    ++height_;
    top_ = k;
  }
}

std::optional<TowerValue> TowerValue::log2() const {
  if (height_ == 0) return std::nullopt;
  return TowerValue(height_ - 1, top_);
}

std::optional<mpz_class> TowerValue::to_integer(unsigned long bit_cap) const {
  if (top_.get_den() != 1) return std::nullopt;
  mpz_class v = top_.get_num();
  for (int i = 0; i < height_; ++i) {
    if (v >= bit_cap) return std::nullopt;
    mpz_class next;
    mpz_ui_pow_ui(next.get_mpz_t(), 2, v.get_ui());
    v = next;
  }
  return v;
}

std::string TowerValue::to_string() const {
  std::string s = top_.get_str();
  for (int i = 0; i < height_; ++i) s = "2^(" + s + ")";
  return s;
}

std::strong_ordering operator<=>(const TowerValue& a, const TowerValue& b) {
  const int common = std::min(a.height_, b.height_);
  const int ha = a.height_ - common, hb = b.height_ - common;
  if (ha == 0 && hb == 0) {
    int c = cmp(a.top_, b.top_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (hb == 0) return tower_vs_rational(ha, a.top_, b.top_);
  auto r = tower_vs_rational(hb, b.top_, a.top_);
  return r == std::strong_ordering::less ? std::strong_ordering::greater : std::strong_ordering::less;
}

mpq_class log2_upper(const mpq_class& x) { return log2_directed(x, MPFR_RNDU); }
mpq_class log2_lower(const mpq_class& x) { return log2_directed(x, MPFR_RNDD); }

TowerValue add_upper(const TowerValue& t, const mpq_class& c) {
  if (c < 0) throw ContractError("add_upper needs a nonnegative constant");
  if (c == 0) return t;
  if (t.height() == 0) return TowerValue(0, t.top() + c);
  // 2^Y + c <= 2^(Y+1) once 2^Y >= c
  if (t < TowerValue(0, c)) return TowerValue(0, 2 * c);
  return raise(add_upper(*t.log2(), 1));
}

TowerValue mul_upper(const TowerValue& t, const mpq_class& c) {
  if (c < 1) throw ContractError("mul_upper needs a factor >= 1");
  if (t.height() == 0) return TowerValue(0, t.top() * c);
  return raise(add_upper(*t.log2(), log2_upper(c)));
}

mpz_class petunia_bound(const mpz_class& s) {
  if (s < 1) throw ContractError("petunia_bound needs s >= 1");
  auto p = petunia_power(s);
  return pow_checked(p.base, p.exp);
}

mpz_class outerplanar_bound(const mpz_class& s) {
  if (s < 1) throw ContractError("outerplanar_bound needs s >= 1");
  auto p = outerplanar_power(s);
  return pow_checked(p.base, p.exp);
}

mpz_class petunia_bound(long s) { return petunia_bound(mpz_class(s)); }
mpz_class outerplanar_bound(long s) { return outerplanar_bound(mpz_class(s)); }

mpz_class genus_bound_param(int g, const mpz_class& s) {
  if (g < 0 || s < 1) throw ContractError("genus_bound_param needs g >= 0, s >= 1");
  if (g > 20) throw ContractError("genus too large for exact evaluation");
  unsigned long six_g = 1;
  for (int i = 0; i < g; ++i) six_g *= 6;
  return pow_ui(3, 2 * (six_g - 1)) * pow_ui(s, six_g);
}

LayeredChain layered_chain(long s) {
  if (s < 1) throw ContractError("layered_chain needs s >= 1");
  LayeredChain out{s, {}, TowerValue(4, pow_q(2, 149) * pow_q(s, 35)), false};
  auto claim = [&](int h, unsigned long two_exp, unsigned long s_exp) {
    return TowerValue(h, pow_q(2, two_exp) * pow_q(s, s_exp));
  };
  auto push = [&](std::string name, std::optional<mpz_class> exact, TowerValue upper, std::optional<TowerValue> claimed) {
    ChainEntry e{std::move(name), std::move(exact), std::move(upper), std::move(claimed), true};
    if (e.claimed) e.claim_holds = e.upper < *e.claimed;
    out.entries.push_back(std::move(e));
  };
  const mpq_class log2_s = log2_upper(s);

  const mpz_class l5 = 20 * mpz_class(s);
  push("l5", l5, TowerValue::integer(l5), std::nullopt);
  const mpz_class s4 = s * pow_ui(l5, 6);
  push("s4", s4, TowerValue::integer(s4), std::nullopt);

  // from here on the values exceed any sensible bit cap; only certified upper bounds are kept
  const mpq_class p4 = log2_power_plus_one_upper(petunia_power(s4));
  push("l4", std::nullopt, TowerValue(1, p4), claim(1, 138, 30));

  const mpq_class a3 = log2_s + 6 * p4;  // log2 s3 = log2 s + 6 log2 l4
  push("s3", std::nullopt, TowerValue(1, a3), claim(1, 141, 35));

  const TowerValue l3(2, outerplanar_loglog_upper(a3));
  push("l3", std::nullopt, l3, claim(2, 145, 35));

  const TowerValue x2 = add_upper(mul_upper(*l3.log2(), 6), log2_s);  // bound on log2 s2
  push("s2", std::nullopt, raise(x2), claim(2, 146, 35));

  const TowerValue l2 = raise(raise(outerplanar_loglog_upper(x2)));
  push("l2", std::nullopt, l2, claim(3, 147, 35));

  const TowerValue x1 = add_upper(mul_upper(*l2.log2(), 5), log2_s);  // bound on log2 s1
  push("s1", std::nullopt, raise(x1), claim(3, 148, 35));

  const TowerValue l1 = raise(raise(outerplanar_loglog_upper(x1)));
  push("l1", std::nullopt, l1, out.final_bound);

  out.certified = std::all_of(out.entries.begin(), out.entries.end(), [](const ChainEntry& e) { return e.claim_holds; });
  return out;
}

bool AppendixReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.holds; });
}

AppendixReport verify_appendix_inequalities(long s_max) {
  AppendixReport report;
  constexpr unsigned long exact_bit_cap = 1ul << 25;
  const mpz_class constant = pow_ui(3, 5) * pow_ui(2, 60) * pow_ui(5, 30);
  report.checks.push_back({"constant_3^5*2^60*5^30<2^138", 0, constant < pow_ui(2, 138), true});

  for (long s = 1; s <= s_max; ++s) {
    const mpz_class S(s);
    // (3s^2+3s+3)^(3(s^2+s+1)^2) + 1 < 2^((3s)^5): exact via bit length
    {
      const mpz_class lhs = petunia_bound(S) + 1;
      const mpz_class n = pow_ui(3 * S, 5);
      report.checks.push_back({"petunia_estimate", s, mpz_class(mpz_sizeinbase(lhs.get_mpz_t(), 2)) <= n, true});
    }
    // outerplanar analogue against 2^((3s)^13)
    {
      const auto shape = outerplanar_power(S);
      const mpz_class n = pow_ui(3 * S, 13);
      const mpz_class est_bits = shape.exp * mpz_class(mpz_sizeinbase(shape.base.get_mpz_t(), 2));
      if (est_bits <= exact_bit_cap) {
        const mpz_class lhs = pow_checked(shape.base, shape.exp) + 1;
        report.checks.push_back({"outerplanar_estimate", s, mpz_class(mpz_sizeinbase(lhs.get_mpz_t(), 2)) <= n, true});
      } else {
        report.checks.push_back({"outerplanar_estimate", s, log2_power_plus_one_upper(shape) < mpq_class(n), false});
      }
    }
    // chain steps built on the two estimates
    const mpz_class s4 = S * pow_ui(20 * S, 6);
    const auto shape4 = petunia_power(s4);
    const mpq_class p4 = log2_power_plus_one_upper(shape4);
    report.checks.push_back({"log2_l4<(3*s4)^5", s, p4 < mpq_class(pow_ui(3 * s4, 5)), false});
    report.checks.push_back(
        {"(3*s4)^5=3^5*2^60*5^30*s^35", s, pow_ui(3 * s4, 5) == constant * pow_ui(S, 35), true});
    const mpq_class a3 = log2_upper(s) + 6 * p4;
    const mpq_class a3_low = log2_lower(s) + 6 * mpq_class(shape4.exp) * log2_lower(mpq_class(shape4.base));
    report.checks.push_back({"log2_s3<2^141*s^35", s, a3 < pow_q(2, 141) * pow_q(s, 35), false});
    report.checks.push_back(
        {"loglog_l3<13log2(3)+13log2(s3)", s, outerplanar_loglog_upper(a3) < 13 * log2_lower(3) + 13 * a3_low, false});
    report.checks.push_back(
        {"13log2(3)+13log2(s3)<2^145*s^35", s, 13 * log2_upper(3) + 13 * a3 < pow_q(2, 145) * pow_q(s, 35), false});
  }
  return report;
}

}  // namespace hatguess
