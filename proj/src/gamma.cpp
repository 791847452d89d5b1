// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/gamma.hpp>

#include <algorithm>
#include <cstdlib>

#include <tatekit/error.hpp>

namespace tatekit
{

namespace
{

constexpr int prime_table_size = 4096;

const std::vector<std::uint32_t> &prime_table()
{
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> out;
        out.reserve(prime_table_size);
        for (std::uint32_t n = 2; static_cast<int>(out.size()) < prime_table_size; ++n) {
            if (is_prime(n)) {
                out.push_back(n);
            }
        }
        return out;
    }();
    return table;
}

std::int64_t mod_nonneg(std::int64_t a, std::uint32_t p)
{
    auto r = a % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
}

constexpr unsigned base_bits = 64;
constexpr int max_rounds = 256;

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

std::uint32_t nth_prime(int index)
{
    if (index < 1 || index > prime_table_size) {
        fail(ErrorKind::math_domain, "generator-index", "generator index " + std::to_string(index) + " out of range");
    }
    return prime_table()[static_cast<std::size_t>(index - 1)];
}

ExponentVector::ExponentVector(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end());
    for (const auto &[idx, c] : entries) {
        if (idx < 1) {
            fail(ErrorKind::math_domain, "generator-index", "generator indices are 1-based");
        }
        if (!entries_.empty() && entries_.back().first == idx) {
            entries_.back().second += c;
        } else {
            entries_.emplace_back(idx, c);
        }
    }
    std::erase_if(entries_, [](const Entry &e) { return e.second == 0; });
}

ExponentVector ExponentVector::generator(int index, std::int64_t c)
{
    return ExponentVector({{index, c}});
}

std::int64_t ExponentVector::coord(int index) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry &e, int i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : 0;
}

std::int64_t ExponentVector::l1_norm() const
{
    std::int64_t s = 0;
    for (const auto &e : entries_) {
        s += std::llabs(e.second);
    }
    return s;
}

ExponentVector ExponentVector::operator-() const
{
    return scaled(-1);
}

ExponentVector ExponentVector::scaled(std::int64_t factor) const
{
    if (factor == 0) {
        return {};
    }
    ExponentVector out;
    out.entries_ = entries_;
    for (auto &e : out.entries_) {
        e.second *= factor;
    }
    return out;
}

ExponentVector operator+(const ExponentVector &a, const ExponentVector &b)
{
    ExponentVector out;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
        if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
            out.entries_.push_back(*ia++);
        } else if (ia == a.entries_.end() || ib->first < ia->first) {
            out.entries_.push_back(*ib++);
        } else {
            auto s = ia->second + ib->second;
            if (s != 0) {
                out.entries_.emplace_back(ia->first, s);
            }
            ++ia;
            ++ib;
        }
    }
    return out;
}

ExponentVector operator-(const ExponentVector &a, const ExponentVector &b)
{
    return a + (-b);
}

std::string to_string(const ExponentVector &v)
{
    std::string out = "[";
    bool first = true;
    for (const auto &[i, c] : v.entries()) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += std::to_string(i) + ":" + std::to_string(c);
    }
    return out + "]";
}

RealInterval gamma_interval_bits(const ExponentVector &a, unsigned bits)
{
    BigInt lo = 0;
    BigInt hi = 0;
    const BigInt scale_sq = BigInt(1) << (2 * bits);
    for (const auto &[i, c] : a.entries()) {
        // floor(2^bits / sqrt(q)) == isqrt(floor(4^bits / q)); the real value is irrational.
        BigInt low = boost::multiprecision::sqrt(BigInt(scale_sq / nth_prime(i)));
        BigInt up = low + 1;
        if (c > 0) {
            lo += low * c;
            hi += up * c;
        } else {
            lo += up * c;
            hi += low * c;
        }
    }
    const BigInt den = BigInt(1) << bits;
    return RealInterval{BigRational(lo, den), BigRational(hi, den)};
}

RealInterval gamma_interval(const ExponentVector &a, const BigRational &width)
{
    if (width <= 0) {
        fail(ErrorKind::math_domain, "width", "interval width must be positive");
    }
    if (a.is_zero()) {
        return RealInterval{BigRational(0), BigRational(0)};
    }
    const BigInt l1 = a.l1_norm();
    unsigned bits = 1;
    // smallest bits with l1 / 2^bits <= width
    while (BigRational(l1, BigInt(1) << bits) > width) {
        ++bits;
    }
    return gamma_interval_bits(a, bits);
}

std::strong_ordering gamma_sign(const ExponentVector &a)
{
    if (a.is_zero()) {
        return std::strong_ordering::equal;
    }
    for (int round = 0; round < max_rounds; ++round) {
        auto iv = gamma_interval_bits(a, base_bits + static_cast<unsigned>(round));
        if (iv.lo > 0) {
            return std::strong_ordering::greater;
        }
        if (iv.hi < 0) {
            return std::strong_ordering::less;
        }
    }
    fail(ErrorKind::internal, "refinement-cap", "interval refinement did not separate " + to_string(a) + " from 0");
}

std::strong_ordering gamma_compare(const ExponentVector &a, const ExponentVector &b)
{
    if (a == b) {
        return std::strong_ordering::equal;
    }
    return gamma_sign(a - b);
}

CosetSignature::CosetSignature(const ExponentVector &v, std::uint32_t p)
{
    for (const auto &[i, c] : v.entries()) {
        auto r = mod_nonneg(c, p);
        if (r != 0) {
            residues_.emplace_back(i, static_cast<std::uint32_t>(r));
        }
    }
}

CosetSignature gamma_mod_p(const ExponentVector &a, std::uint32_t p)
{
    if (!is_prime(p)) {
        fail(ErrorKind::math_domain, "not-prime", std::to_string(p) + " is not prime");
    }
    return CosetSignature(a, p);
}

std::string to_string(const CosetSignature &s)
{
    std::string out = "{";
    bool first = true;
    for (const auto &[i, r] : s.residues()) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += std::to_string(i) + ":" + std::to_string(r);
    }
    return out + "}";
}

bool certified_inside(const ExponentVector &a, const BigRational &lo, const BigRational &hi)
{
    if (a.is_zero()) {
        return lo < 0 && 0 < hi;
    }
    for (int round = 0; round < max_rounds; ++round) {
        auto iv = gamma_interval_bits(a, base_bits + static_cast<unsigned>(round));
        if (lo < iv.lo && iv.hi < hi) {
            return true;
        }
        if (iv.hi <= lo || iv.lo >= hi) {
            return false;
        }
        // Endpoints are rational and the value is irrational (or zero, handled
        // above), so refinement eventually decides unless the value sits on an
        // endpoint, which cannot happen for a nonzero element of Gamma.
    }
    return false;
}

std::optional<ExponentVector> approximate_in_pgamma(const Rational &target, const Rational &eps, std::uint32_t p,
                                                    int gen_count, std::int64_t coeff_bound)
{
    if (eps <= 0) {
        fail(ErrorKind::math_domain, "eps", "eps must be positive");
    }
    if (!is_prime(p)) {
        fail(ErrorKind::math_domain, "not-prime", std::to_string(p) + " is not prime");
    }
    const BigRational t = to_big(target);
    const BigRational e = to_big(eps);
    const BigRational width = e / 4;
    const BigRational lo = t - e;
    const BigRational hi = t + e;

    auto accepts = [&](const ExponentVector &v) {
        auto iv = gamma_interval(v, width);
        return lo < iv.lo && iv.hi < hi;
    };

    if (accepts(ExponentVector{})) {
        return ExponentVector{};
    }
    if (gen_count < 1) {
        return std::nullopt;
    }
    const std::int64_t step = p;
    for (std::int64_t shell = step; shell <= coeff_bound; shell += step) {
        // Odometer over coords in {-shell, ..., shell} (multiples of p), in
        // lexicographic order; only vectors touching the shell boundary count.
        std::vector<std::int64_t> coords(static_cast<std::size_t>(gen_count), -shell);
        while (true) {
            bool on_shell = std::any_of(coords.begin(), coords.end(),
                                        [&](std::int64_t c) { return std::llabs(c) == shell; });
            if (on_shell) {
                std::vector<ExponentVector::Entry> entries;
                for (int i = 0; i < gen_count; ++i) {
                    entries.emplace_back(i + 1, coords[static_cast<std::size_t>(i)]);
                }
                ExponentVector v(std::move(entries));
                if (accepts(v)) {
                    return v;
                }
            }
            int pos = gen_count - 1;
            while (pos >= 0 && coords[static_cast<std::size_t>(pos)] == shell) {
                coords[static_cast<std::size_t>(pos)] = -shell;
                --pos;
            }
            if (pos < 0) {
                break;
            }
            coords[static_cast<std::size_t>(pos)] += step;
        }
    }
    return std::nullopt;
}

std::vector<ExponentVector> bounded_coset_reps(std::uint32_t p, int count)
{
    if (count < 1) {
        fail(ErrorKind::math_domain, "count", "count must be at least 1");
    }
    if (!is_prime(p)) {
        fail(ErrorKind::math_domain, "not-prime", std::to_string(p) + " is not prime");
    }
    const BigRational minus_one(-1);
    const BigRational one(1);
    std::vector<ExponentVector> reps;
    reps.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        auto e = ExponentVector::generator(i);
        if (certified_inside(e, minus_one, one)) {
            reps.push_back(e);
            continue;
        }
        // Shift by an element of p*Gamma close to e_i; the coset is unchanged.
        auto iv = gamma_interval(e, BigRational(1, 1 << 20));
        BigRational scaled = (iv.lo + iv.hi) / 2 * (1 << 20);
        BigInt floor_scaled = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
        Rational target(static_cast<std::int64_t>(floor_scaled), 1 << 20);
        auto shift = approximate_in_pgamma(target, Rational(1, 2), p, i, 8 * static_cast<std::int64_t>(p));
        if (!shift) {
            fail(ErrorKind::search_exhausted, "search-exhausted",
                 "no element of p*Gamma within 1/2 of generator " + std::to_string(i));
        }
        auto s = e - *shift;
        if (!certified_inside(s, minus_one, one)) {
            fail(ErrorKind::search_exhausted, "search-exhausted",
                 "shifted representative for generator " + std::to_string(i) + " not certified in (-1,1)");
        }
        reps.push_back(s);
    }
    for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            if (CosetSignature(reps[a], p) == CosetSignature(reps[b], p)) {
                fail(ErrorKind::internal, "coset-collision", "coset representatives collide");
            }
        }
    }
    return reps;
}

} // namespace tatekit
