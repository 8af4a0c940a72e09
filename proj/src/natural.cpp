#include "gelfond/natural.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gelfond {

void Natural::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

Natural Natural::from_u128(u128 v) {
    Natural n;
    if (v) n.limbs_.push_back(static_cast<u64>(v));
    if (v >> 64) n.limbs_.push_back(static_cast<u64>(v >> 64));
    return n;
}

Natural Natural::from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal string");
    Natural n;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
        n = n.mul_small(10);
        n += Natural(static_cast<u64>(c - '0'));
    }
    return n;
}

u64 Natural::to_u64() const {
    if (limbs_.size() > 1) throw std::overflow_error("Natural too large for u64");
    return limbs_.empty() ? 0 : limbs_[0];
}

u128 Natural::to_u128() const {
    if (limbs_.size() > 2) throw std::overflow_error("Natural too large for u128");
    u128 v = 0;
    if (limbs_.size() > 1) v = u128(limbs_[1]) << 64;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

double Natural::to_double() const {
    double acc = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;)
        acc = acc * 0x1.0p64 + static_cast<double>(limbs_[i]);
    return acc;
}

u64 Natural::bit_length() const {
    if (limbs_.empty()) return 0;
    u64 top = limbs_.back();
    return 64 * (limbs_.size() - 1) + (64 - __builtin_clzll(top));
}

bool Natural::bit(u64 i) const {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1;
}

int Natural::popcount() const {
    int c = 0;
    for (u64 l : limbs_) c += __builtin_popcountll(l);
    return c;
}

u64 Natural::window_popcount(u64 lo, u64 hi) const {
    u64 len = bit_length();
    hi = std::min(hi, len);
    if (lo >= hi) return 0;
    u64 count = 0;
    std::size_t l0 = lo / 64, l1 = (hi - 1) / 64;
    for (std::size_t l = l0; l <= l1 && l < limbs_.size(); ++l) {
        u64 word = limbs_[l];
        u64 base = 64 * l;
        if (base < lo) word &= ~0ULL << (lo - base);
        if (base + 64 > hi) word &= (hi - base == 64) ? ~0ULL : ((1ULL << (hi - base)) - 1);
        count += static_cast<u64>(__builtin_popcountll(word));
    }
    return count;
}

Natural& Natural::operator+=(const Natural& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    unsigned char carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = u128(limbs_[i]) + (i < o.limbs_.size() ? o.limbs_[i] : 0) + carry;
        limbs_[i] = static_cast<u64>(s);
        carry = static_cast<unsigned char>(s >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

Natural& Natural::operator-=(const Natural& o) {
    if (*this < o) throw std::underflow_error("Natural subtraction underflow");
    unsigned char borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 rhs = u128(i < o.limbs_.size() ? o.limbs_[i] : 0) + borrow;
        u128 lhs = limbs_[i];
        if (lhs >= rhs) {
            limbs_[i] = static_cast<u64>(lhs - rhs);
            borrow = 0;
        } else {
            limbs_[i] = static_cast<u64>((u128(1) << 64) + lhs - rhs);
            borrow = 1;
        }
    }
    trim();
    return *this;
}

Natural Natural::operator*(const Natural& o) const {
    if (is_zero() || o.is_zero()) return {};
    Natural r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            u128 cur = u128(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        r.limbs_[i + o.limbs_.size()] += carry;
    }
    r.trim();
    return r;
}

Natural& Natural::operator<<=(u64 k) {
    if (is_zero() || k == 0) return *this;
    std::size_t words = k / 64;
    unsigned bits = k % 64;
    limbs_.insert(limbs_.begin(), words, 0);
    if (bits) {
        u64 carry = 0;
        for (std::size_t i = words; i < limbs_.size(); ++i) {
            u64 nxt = limbs_[i] >> (64 - bits);
            limbs_[i] = (limbs_[i] << bits) | carry;
            carry = nxt;
        }
        if (carry) limbs_.push_back(carry);
    }
    return *this;
}

Natural& Natural::operator>>=(u64 k) {
    std::size_t words = k / 64;
    unsigned bits = k % 64;
    if (words >= limbs_.size()) {
        limbs_.clear();
        return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<long>(words));
    if (bits) {
        for (std::size_t i = 0; i + 1 < limbs_.size(); ++i)
            limbs_[i] = (limbs_[i] >> bits) | (limbs_[i + 1] << (64 - bits));
        limbs_.back() >>= bits;
    }
    trim();
    return *this;
}

Natural Natural::mul_small(u64 m) const {
    if (m == 0 || is_zero()) return {};
    Natural r;
    r.limbs_.reserve(limbs_.size() + 1);
    u64 carry = 0;
    for (u64 l : limbs_) {
        u128 cur = u128(l) * m + carry;
        r.limbs_.push_back(static_cast<u64>(cur));
        carry = static_cast<u64>(cur >> 64);
    }
    if (carry) r.limbs_.push_back(carry);
    return r;
}

std::pair<Natural, u64> Natural::divmod_small(u64 d) const {
    if (d == 0) throw std::invalid_argument("division by zero");
    Natural q;
    q.limbs_.assign(limbs_.size(), 0);
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (rem << 64) | limbs_[i];
        q.limbs_[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    q.trim();
    return {q, static_cast<u64>(rem)};
}

std::strong_ordering Natural::operator<=>(const Natural& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() <=> o.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] <=> o.limbs_[i];
    }
    return std::strong_ordering::equal;
}

std::string Natural::to_decimal() const {
    if (is_zero()) return "0";
    std::string out;
    Natural cur = *this;
    while (!cur.is_zero()) {
        auto [q, r] = cur.divmod_small(1000000000000000000ULL);
        std::string chunk = std::to_string(r);
        if (!q.is_zero()) chunk.insert(0, 18 - chunk.size(), '0');
        out.insert(0, chunk);
        cur = std::move(q);
    }
    return out;
}

}  // namespace gelfond
