#pragma once

// Arithmetic in GF(p^e) for q = p^e <= 256.
//
// Elements are stored as their canonical integer in [0, q): the base-p digits
// are the coefficients of the polynomial representative, least significant
// digit = constant term. All operations go through precomputed q x q tables.

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace grassmann {

/// A field element. Only meaningful together with the Field that produced it.
struct Fe {
    std::uint8_t value = 0;

    constexpr Fe() = default;
    constexpr explicit Fe(unsigned v) : value(static_cast<std::uint8_t>(v)) {}

    constexpr bool is_zero() const { return value == 0; }
    friend constexpr bool operator==(Fe, Fe) = default;
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// Polynomials over GF(p) as coefficient vectors, index = degree.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b, unsigned p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    // b is monic in every use here.
    while (a.size() >= b.size()) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t k = 0; k <= db; ++k) a[shift + k] = (a[shift + k] + p * p - lead * b[k] % p) % p;
        trim(a);
    }
    return a;
}

inline Poly decode(unsigned v, unsigned p, unsigned len) {
    Poly r(len);
    for (unsigned k = 0; k < len; ++k) {
        r[k] = v % p;
        v /= p;
    }
    return r;
}

inline unsigned encode(const Poly& a, unsigned p) {
    unsigned v = 0;
    for (std::size_t k = a.size(); k-- > 0;) v = v * p + a[k];
    return v;
}

inline bool irreducible(const Poly& f, unsigned p) {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned count = 1;
        for (unsigned k = 0; k < d; ++k) count *= p;
        for (unsigned low = 0; low < count; ++low) {
            Poly g = decode(low, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// GF(q) with q = p^e. Immutable after construction.
class Field {
public:
    /// Builds GF(p^e) using the lexicographically smallest monic irreducible
    /// modulus of degree e (coefficients compared from x^{e-1} down to x^0).
    Field(unsigned p, unsigned e) : p_(p), e_(e) {
        if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
        if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
        unsigned q = 1;
        for (unsigned k = 0; k < e; ++k) {
            q *= p;
            if (q > 256) throw std::invalid_argument("field size exceeds 256");
        }
        q_ = q;
        choose_modulus();
        build_tables();
    }

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return e_; }
    unsigned size() const { return q_; }
    /// Coefficients of the modulus, index = degree, monic of degree e.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    Fe element(unsigned v) const {
        if (v >= q_) throw std::out_of_range("field element " + std::to_string(v) + " not in [0," + std::to_string(q_) + ")");
        return Fe{v};
    }

    Fe add(Fe a, Fe b) const { return Fe{add_[a.value * q_ + b.value]}; }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const { return Fe{mul_[a.value * q_ + b.value]}; }
    Fe neg(Fe a) const { return Fe{neg_[a.value]}; }
    Fe inv(Fe a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
        return Fe{inv_[a.value]};
    }
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, std::uint64_t k) const {
        Fe r = one();
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_ && a.e_ == b.e_; }

private:
    void choose_modulus() {
        if (e_ == 1) {
            modulus_ = {0, 1};  // x; unused for prime fields
            return;
        }
        unsigned count = q_;  // p^e low-coefficient assignments
        for (unsigned low = 0; low < count; ++low) {
            // Integer order on the low coefficients with the x^{e-1} digit most significant.
            auto f = detail::decode(low, p_, e_);
            f.push_back(1);
            if (detail::irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    void build_tables() {
        const unsigned q = q_;
        add_.assign(q * q, 0);
        mul_.assign(q * q, 0);
        neg_.assign(q, 0);
        inv_.assign(q, 0);
        for (unsigned a = 0; a < q; ++a) {
            const auto pa = detail::decode(a, p_, e_);
            detail::Poly na(e_);
            for (unsigned k = 0; k < e_; ++k) na[k] = (p_ - pa[k]) % p_;
            neg_[a] = static_cast<std::uint8_t>(detail::encode(na, p_));
            for (unsigned b = 0; b < q; ++b) {
                const auto pb = detail::decode(b, p_, e_);
                detail::Poly s(e_);
                for (unsigned k = 0; k < e_; ++k) s[k] = (pa[k] + pb[k]) % p_;
                add_[a * q + b] = static_cast<std::uint8_t>(detail::encode(s, p_));

                detail::Poly prod(2 * e_ - 1, 0);
                for (unsigned i = 0; i < e_; ++i)
                    for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
                auto r = e_ == 1 ? prod : detail::poly_mod(prod, modulus_, p_);
                r.resize(e_, 0);
                mul_[a * q + b] = static_cast<std::uint8_t>(detail::encode(r, p_));
            }
        }
        for (unsigned a = 1; a < q; ++a)
            for (unsigned b = 1; b < q; ++b)
                if (mul_[a * q + b] == 1) {
                    inv_[a] = static_cast<std::uint8_t>(b);
                    break;
                }
    }

    unsigned p_, e_, q_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr field_new(unsigned p, unsigned e) { return std::make_shared<const Field>(p, e); }

/// Field of order q; q must be a prime power <= 256.
inline FieldPtr field_of_order(unsigned q) {
    if (q < 2 || q > 256) throw std::invalid_argument("field order " + std::to_string(q) + " outside [2,256]");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return field_new(p, e);
}

}  // namespace grassmann
