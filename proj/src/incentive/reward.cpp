#include "argus/incentive/reward.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "argus/bytes.hpp"

namespace argus::incentive {

using boost::multiprecision::cpp_int;

double to_double(const Money& m) { return m.convert_to<double>(); }

std::string to_decimal(const Money& m, int digits) {
    cpp_int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const bool neg = m < 0;
    const Money a = neg ? Money(-m) : m;
    const Money scaled = a * scale;
    cpp_int q = numerator(scaled) / denominator(scaled);
    const cpp_int rem = numerator(scaled) % denominator(scaled);
    if (rem * 2 >= denominator(scaled)) q += 1;
    std::string s = q.str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (neg && q != 0) s.insert(0, "-");
    return s;
}

Money parse_money(const std::string& s) {
    if (s.empty()) throw ConfigError("empty money value");
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        pos = 1;
    }
    cpp_int whole = 0, frac = 0, frac_scale = 1;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        const char ch = s[pos];
        if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            seen_digit = true;
            if (seen_dot) {
                frac = frac * 10 + (ch - '0');
                frac_scale *= 10;
            } else {
                whole = whole * 10 + (ch - '0');
            }
        } else {
            throw ConfigError("invalid money value: " + s);
        }
    }
    if (!seen_digit) throw ConfigError("invalid money value: " + s);
    Money m = Money(whole) + Money(frac, frac_scale);
    return neg ? Money(-m) : m;
}

Money pow2(long e) {
    cpp_int p = 1;
    p <<= static_cast<unsigned>(e < 0 ? -e : e);
    return e < 0 ? Money(cpp_int(1), p) : Money(p);
}

RewardSchedule::RewardSchedule(Money c, std::vector<Money> deltas) : c_(std::move(c)), deltas_(std::move(deltas)) {
    if (c_ <= 0) throw std::invalid_argument("reward schedule: c must be positive");
    Money weighted = 0;
    for (std::size_t j = 0; j < deltas_.size(); ++j) {
        if (deltas_[j] < 0) throw std::invalid_argument("reward schedule: negative delta");
        weighted += pow2(static_cast<long>(j) + 1) * deltas_[j];
    }
    if (weighted > c_) throw std::invalid_argument("reward schedule: sum 2^j * delta_j exceeds c");
    xis_.reserve(deltas_.size() + 1);
    xis_.push_back(0);
    // xi_{i+1} = delta_i + xi_i / 2
    for (std::size_t i = 0; i < deltas_.size(); ++i) xis_.push_back(deltas_[i] + xis_.back() / 2);
}

RewardSchedule RewardSchedule::geometric(const Money& c, int guarantee_len) {
    if (c <= 0) throw std::invalid_argument("geometric schedule: c must be positive");
    if (guarantee_len < 1) throw std::invalid_argument("geometric schedule: guarantee_len must be >= 1");
    std::vector<Money> deltas;
    deltas.reserve(static_cast<std::size_t>(guarantee_len));
    for (int i = 1; i <= guarantee_len; ++i) deltas.push_back(pow2(-i) * c / guarantee_len);
    return RewardSchedule(c, std::move(deltas));
}

RewardSchedule RewardSchedule::legacy(const Money& c) { return RewardSchedule(c, {}); }

Money RewardSchedule::delta(long i) const {
    if (i < 1 || i > guarantee_len()) return 0;
    return deltas_[static_cast<std::size_t>(i - 1)];
}

Money RewardSchedule::xi(long i) const {
    if (i < 1) throw std::invalid_argument("xi: index must be >= 1");
    const long last = guarantee_len() + 1;
    if (i <= last) return xis_[static_cast<std::size_t>(i - 1)];
    return xis_.back() * pow2(last - i);
}

Money RewardSchedule::xi_tail(long m) const {
    if (m < 1) m = 1;
    const long last = guarantee_len() + 1;
    if (m >= last) return 2 * xi(m);
    Money sum = 2 * xis_.back();
    for (long j = m; j < last; ++j) sum += xis_[static_cast<std::size_t>(j - 1)];
    return sum;
}

Money RewardSchedule::weighted_delta_sum() const {
    Money sum = 0;
    for (long j = 1; j <= guarantee_len(); ++j) sum += pow2(j) * delta(j);
    return sum;
}

Money RewardSchedule::reward(long i, long n) const {
    if (i < 1 || i > n) throw std::invalid_argument("reward: need 1 <= i <= n");
    return -xi(i) + (xi_tail(i + 1) - xi_tail(n + 1)) + c_ * pow2(1 - n);
}

Money RewardSchedule::immediate(long i) const {
    Money sum = 0;
    for (long j = std::max(i, 1L); j <= guarantee_len(); ++j) sum += delta(j);
    return 2 * sum;
}

Money RewardSchedule::deferred(long n) const {
    if (n < 0) throw std::invalid_argument("deferred: n must be >= 0");
    return c_ * pow2(1 - n) - xi_tail(n + 1);
}

Money legacy_reward(const Money& c, long n) {
    if (n < 1) throw std::invalid_argument("legacy_reward: n must be >= 1");
    return c * pow2(1 - n);
}

bool check_sybil_proof(const RewardSchedule& s, int max_n) {
    if (max_n < 1 || max_n > 12) throw std::invalid_argument("check_sybil_proof: max_n must be in [1, 12]");
    const auto n = static_cast<std::size_t>(max_n);
    // table[n][i] = B(i, n)
    std::vector<std::vector<Money>> table(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        table[k].resize(k + 1);
        for (std::size_t i = 1; i <= k; ++i) table[k][i] = s.reward(static_cast<long>(i), static_cast<long>(k));
    }
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::uint32_t sm = 1; sm < (1u << m); ++sm) {
            Money before = 0;
            for (std::size_t i = 1; i <= m; ++i) {
                if (sm >> (i - 1) & 1) before += table[m][i];
            }
            for (std::size_t k = m; k <= n; ++k) {
                Money base = 0;
                for (std::size_t i = 1; i <= m; ++i) {
                    if (sm >> (i - 1) & 1) base += table[k][i];
                }
                const std::size_t extra = k - m;
                for (std::uint32_t a = 0; a < (1u << extra); ++a) {
                    Money after = base;
                    for (std::size_t t = 0; t < extra; ++t) {
                        if (a >> t & 1) after += table[k][m + 1 + t];
                    }
                    if (after > before) return false;
                }
            }
        }
    }
    return true;
}

bool check_conservation(const RewardSchedule& s, int max_n) {
    for (long n = 1; n <= max_n; ++n) {
        Money total = 0;
        for (long i = 1; i <= n; ++i) total += s.reward(i, n);
        if (total > s.c()) return false;
    }
    return true;
}

OrderTimelyReport check_order_timely_guarantee(const RewardSchedule& s, int max_n) {
    if (max_n < 2) throw std::invalid_argument("check_order_timely_guarantee: max_n must be >= 2");
    OrderTimelyReport rep;
    const Money a1 = s.a(1);
    for (long n = 1; n <= max_n; ++n) {
        const Money def = s.deferred(n);
        Money prev = 0;
        for (long i = 1; i <= n; ++i) {
            const Money b = s.reward(i, n);
            if (i > 1) {
                if (b > prev) {
                    rep.order_aware = false;
                    rep.failures.push_back(fmt::format("order: B({},{}) > B({},{})", i, n, i - 1, n));
                } else if (b < prev) {
                    rep.order_strict = true;
                }
            }
            if (b != s.immediate(i) + def) {
                rep.decomposition_exact = false;
                rep.failures.push_back(fmt::format("decomposition: B({},{})", i, n));
            }
            if (b > a1 * pow2(2 - i)) {
                rep.exponential_bound = false;
                rep.failures.push_back(fmt::format("bound: B({},{})", i, n));
            }
            prev = b;
        }
    }
    const long guaranteed = std::max(1, s.guarantee_len());
    for (long i = 1; i <= guaranteed; ++i) {
        if (s.immediate(i) <= 0) {
            rep.guaranteed_minimum = false;
            rep.failures.push_back(fmt::format("guarantee: immediate({}) = 0", i));
            break;
        }
    }
    return rep;
}

}  // namespace argus::incentive
