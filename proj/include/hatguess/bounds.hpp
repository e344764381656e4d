#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace hatguess {

// h-fold iterated power of two applied to a positive rational top: T(0,q) = q, T(h,q) = 2^T(h-1,q).
// Canonical: top >= 1 at positive height, and a top equal to 2^k (k >= 1) is folded into the height.
class TowerValue {
 public:
  TowerValue(int height, mpq_class top);
  static TowerValue integer(const mpz_class& v) { return TowerValue(0, mpq_class(v)); }

  int height() const { return height_; }
  const mpq_class& top() const { return top_; }

  // Exact log2 when the value is a power of two in tower form (height >= 1).
  std::optional<TowerValue> log2() const;
  // Exact big integer when height 0 with integer top, or a power of two below the bit cap.
  std::optional<mpz_class> to_integer(unsigned long bit_cap = 1u << 20) const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const TowerValue& a, const TowerValue& b);
  friend bool operator==(const TowerValue& a, const TowerValue& b) { return (a <=> b) == 0; }

 private:
  int height_;
  mpq_class top_;
};

// Certified rational enclosures of log2 of a positive rational.
mpq_class log2_upper(const mpq_class& x);
mpq_class log2_lower(const mpq_class& x);

// Certified upper bounds on arithmetic of tower magnitudes; each result is >= the exact value.
TowerValue add_upper(const TowerValue& t, const mpq_class& c);
TowerValue mul_upper(const TowerValue& t, const mpq_class& c);

// base^exp kept unevaluated; the large bounds do not fit in memory for s >= 3.
struct Power {
  mpz_class base, exp;
};
Power petunia_power(const mpz_class& s);
Power outerplanar_power(const mpz_class& s);
// Exact equality of base^exp values without evaluating them (bases reduced to non-perfect powers).
bool same_value(const Power& a, const Power& b);

mpz_class petunia_bound(long s);
mpz_class outerplanar_bound(long s);
// Same formulas for an arbitrary big-integer guess count.
mpz_class petunia_bound(const mpz_class& s);
mpz_class outerplanar_bound(const mpz_class& s);
mpz_class genus_bound_param(int g, const mpz_class& s);

struct ChainEntry {
  std::string name;                // "l5", "s4", "l4", ...
  std::optional<mpz_class> exact;  // when it fits the bit cap
  TowerValue upper;                // certified: value <= upper
  std::optional<TowerValue> claimed;  // displayed bound the value must stay strictly below
  bool claim_holds = true;
};

struct LayeredChain {
  long s;
  std::vector<ChainEntry> entries;
  TowerValue final_bound;  // claimed bound on l1 (height 4)
  bool certified = false;  // every claim held
};

LayeredChain layered_chain(long s);

struct InequalityCheck {
  std::string name;
  long s;
  bool holds;
  bool exact;  // false: certified via directed-rounding logarithms
};

struct AppendixReport {
  std::vector<InequalityCheck> checks;
  bool all_hold() const;
};

AppendixReport verify_appendix_inequalities(long s_max);

}  // namespace hatguess
