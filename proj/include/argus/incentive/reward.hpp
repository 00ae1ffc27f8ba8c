#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace argus::incentive {

/// Exact money. Rational so telescoping identities hold with equality.
using Money = boost::multiprecision::cpp_rational;

double to_double(const Money& m);
/// Decimal rendering rounded half-up to `digits` fractional digits.
std::string to_decimal(const Money& m, int digits = 6);
/// Parses "123", "123.45" or "-1e6"-free decimal strings. Throws ConfigError.
Money parse_money(const std::string& s);

/// Power of two as an exact rational, negative exponents allowed.
Money pow2(long e);

/// B(i,n) = -xi_i + sum_{j=i+1..n} xi_j + c * 2^{-n+1}, with
/// xi_1 = 0 and xi_{i+1} = sum_{j<=i} 2^{j-i} * delta_j.
/// Deltas vanish beyond guarantee_len.
class RewardSchedule {
public:
    /// Throws std::invalid_argument unless c > 0, every delta >= 0 and
    /// sum 2^j * delta_j <= c.
    RewardSchedule(Money c, std::vector<Money> deltas);

    /// delta_i = 2^{-i} * c / guarantee_len for i <= guarantee_len.
    static RewardSchedule geometric(const Money& c, int guarantee_len);
    /// All deltas zero: every informer gets c * 2^{-n+1}.
    static RewardSchedule legacy(const Money& c);

    const Money& c() const { return c_; }
    int guarantee_len() const { return static_cast<int>(deltas_.size()); }

    Money delta(long i) const;
    Money xi(long i) const;
    /// a_i = c * 2^{-i+1} - xi_i.
    Money a(long i) const { return c_ * pow2(1 - i) - xi(i); }
    /// sum_{j>=m} xi_j, closed form past the guarantee length.
    Money xi_tail(long m) const;
    Money weighted_delta_sum() const;

    /// Throws std::invalid_argument unless 1 <= i <= n.
    Money reward(long i, long n) const;
    /// B1(i) = 2 * sum_{j>=i} delta_j.
    Money immediate(long i) const;
    /// B2(n) = c * 2^{-n+1} - sum_{j>n} xi_j.
    Money deferred(long n) const;

private:
    Money c_;
    std::vector<Money> deltas_;  // deltas_[i-1] = delta_i
    std::vector<Money> xis_;     // xis_[i-1] = xi_i for i <= guarantee_len + 1
};

/// c * 2^{-n+1}.
Money legacy_reward(const Money& c, long n);

/// Exhaustive: for every m <= k <= max_n, nonempty S_m within [1..m] and
/// A within [m+1..k], sum_{S_m} B(i,m) >= sum_{S_m + A} B(i,k).
/// The S_m = empty and "S_k drops members of S_m" cases are excluded
/// because they are not Sybil behaviour.
bool check_sybil_proof(const RewardSchedule& s, int max_n);

/// Sum_{i<=n} B(i,n) <= c for every n <= max_n.
bool check_conservation(const RewardSchedule& s, int max_n);

struct OrderTimelyReport {
    bool order_aware = true;          // B(i,n) >= B(i+1,n)
    bool order_strict = false;        // some B(i,n) > B(i+1,n)
    bool decomposition_exact = true;  // B(i,n) == immediate(i) + deferred(n)
    bool guaranteed_minimum = true;   // immediate(i) > 0 for 1 <= i <= max(1, guarantee_len)
    bool exponential_bound = true;    // B(i,n) <= a_1 * 2^{-i+2}
    std::vector<std::string> failures;

    bool all() const { return order_aware && decomposition_exact && guaranteed_minimum && exponential_bound; }
};

OrderTimelyReport check_order_timely_guarantee(const RewardSchedule& s, int max_n);

}  // namespace argus::incentive
