#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kakeya {

/// Canonical index of a field element in [0, q). For GF(p^t) with
/// power-basis coordinates (c_0, ..., c_{t-1}) the index is sum c_i p^i,
/// so prime-field indices coincide with the residues themselves. All code
/// outside this header handles elements only through these indices.
using Elt = int;

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Polynomials over GF(p) as coefficient vectors indexed by degree.

inline void poly_trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int mod_pow(int base, int exp, int p) {
    long long r = 1, b = base % p;
    while (exp > 0) {
        if (exp & 1) r = r * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

/// Remainder of a by b, b nonzero. Coefficients reduced mod p.
inline std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    poly_trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const int lead_inv = mod_pow(b[static_cast<std::size_t>(db)], p - 2, p);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int coef = static_cast<int>(
            static_cast<long long>(a.back()) * lead_inv % p);
        for (int i = 0; i <= db; ++i) {
            auto& c = a[static_cast<std::size_t>(shift + i)];
            c = static_cast<int>(
                ((c - static_cast<long long>(coef) * b[static_cast<std::size_t>(i)]) % p + p) % p);
        }
        poly_trim(a);
    }
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible_monic(const std::vector<int>& f, int p) {
    const int t = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= t; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long e = 0; e < count; ++e) {
            std::vector<int> div(static_cast<std::size_t>(d) + 1, 0);
            long long x = e;
            for (int i = 0; i < d; ++i) {
                div[static_cast<std::size_t>(i)] = static_cast<int>(x % p);
                x /= p;
            }
            div[static_cast<std::size_t>(d)] = 1;
            if (poly_rem(f, div, p).empty()) return false;
        }
    }
    return true;
}

/// Smallest monic irreducible of degree t over GF(p), candidates ordered
/// by the integer encoding sum c_i p^i of their non-leading coefficients
/// (equivalently, lexicographic from the constant term up).
inline std::vector<int> find_modulus(int p, int t) {
    long long count = 1;
    for (int i = 0; i < t; ++i) count *= p;
    for (long long e = 0; e < count; ++e) {
        std::vector<int> f(static_cast<std::size_t>(t) + 1, 0);
        long long x = e;
        for (int i = 0; i < t; ++i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(x % p);
            x /= p;
        }
        f[static_cast<std::size_t>(t)] = 1;
        if (is_irreducible_monic(f, p)) return f;
    }
    throw std::logic_error("find_modulus: no irreducible polynomial found");
}

}  // namespace detail

/// GF(p^t) with full addition/multiplication lookup tables. The table
/// representation caps q at a few hundred, which covers every geometry
/// this project builds.
class Field {
public:
    static constexpr int kMaxOrder = 512;

    Field(int p, int t) : p_(p), t_(t) {
        if (!detail::is_prime(p)) throw std::invalid_argument("Field: p must be prime");
        if (t < 1) throw std::invalid_argument("Field: t must be >= 1");
        long long q = 1;
        for (int i = 0; i < t; ++i) {
            q *= p;
            if (q > kMaxOrder) throw std::invalid_argument("Field: order too large");
        }
        q_ = static_cast<int>(q);
        mod_ = detail::find_modulus(p, t);
        build_tables();
    }

    int p() const { return p_; }
    int t() const { return t_; }
    int q() const { return q_; }

    /// Coefficients c_0..c_t of the defining modulus (c_t = 1). For t = 1
    /// the modulus is x itself and indices are plain residues mod p.
    const std::vector<int>& modulus() const { return mod_; }

    Elt add(Elt a, Elt b) const { return add_[idx(a, b)]; }
    Elt mul(Elt a, Elt b) const { return mul_[idx(a, b)]; }
    Elt neg(Elt a) const { return neg_[static_cast<std::size_t>(check(a))]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }

    Elt inv(Elt a) const {
        check(a);
        if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
        return inv_[static_cast<std::size_t>(a)];
    }

    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    Elt pow(Elt a, long long e) const {
        check(a);
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        if (a == 0) {
            if (e == 0) throw std::domain_error("Field::pow: 0^0 undefined");
            return 0;
        }
        e %= q_ - 1;  // Lagrange: a^(q-1) = 1 for a != 0
        Elt r = 1, b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Power-basis coordinates (c_0, ..., c_{t-1}) of an element index.
    std::vector<int> coords(Elt a) const {
        check(a);
        std::vector<int> c(static_cast<std::size_t>(t_));
        for (int i = 0; i < t_; ++i) {
            c[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return c;
    }

    Elt encode(const std::vector<int>& c) const {
        if (static_cast<int>(c.size()) != t_)
            throw std::invalid_argument("Field::encode: wrong coordinate count");
        long long v = 0;
        for (int i = t_ - 1; i >= 0; --i) {
            const int x = c[static_cast<std::size_t>(i)];
            if (x < 0 || x >= p_) throw std::out_of_range("Field::encode: coordinate out of range");
            v = v * p_ + x;
        }
        return static_cast<Elt>(v);
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.t_ == b.t_;
    }

private:
    Elt check(Elt a) const {
        if (a < 0 || a >= q_)
            throw std::out_of_range("Field: element index " + std::to_string(a) +
                                    " outside [0, " + std::to_string(q_) + ")");
        return a;
    }

    std::size_t idx(Elt a, Elt b) const {
        return static_cast<std::size_t>(check(a)) * static_cast<std::size_t>(q_) +
               static_cast<std::size_t>(check(b));
    }

    void build_tables() {
        const std::size_t n = static_cast<std::size_t>(q_);
        add_.assign(n * n, 0);
        mul_.assign(n * n, 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                add_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = raw_add(a, b);
                mul_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = raw_mul(a, b);
            }
        }
        neg_.assign(n, 0);
        inv_.assign(n, 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                if (add_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] == 0)
                    neg_[static_cast<std::size_t>(a)] = b;
                if (a != 0 &&
                    mul_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] == 1)
                    inv_[static_cast<std::size_t>(a)] = b;
            }
        }
    }

    Elt raw_add(Elt a, Elt b) const {
        Elt r = 0;
        int shift = 1;
        for (int i = 0; i < t_; ++i) {
            const int s = (a % p_ + b % p_) % p_;
            r += s * shift;
            shift *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    Elt raw_mul(Elt a, Elt b) const {
        std::vector<int> prod(static_cast<std::size_t>(2 * t_ - 1), 0);
        std::vector<int> ca(static_cast<std::size_t>(t_)), cb(static_cast<std::size_t>(t_));
        for (int i = 0; i < t_; ++i) {
            ca[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
            cb[static_cast<std::size_t>(i)] = b % p_;
            b /= p_;
        }
        for (int i = 0; i < t_; ++i) {
            for (int j = 0; j < t_; ++j) {
                auto& c = prod[static_cast<std::size_t>(i + j)];
                c = (c + ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)]) % p_;
            }
        }
        std::vector<int> r = detail::poly_rem(prod, mod_, p_);
        r.resize(static_cast<std::size_t>(t_), 0);
        long long v = 0;
        for (int i = t_ - 1; i >= 0; --i) v = v * p_ + r[static_cast<std::size_t>(i)];
        return static_cast<Elt>(v);
    }

    int p_, t_, q_ = 0;
    std::vector<int> mod_;
    std::vector<Elt> add_, mul_, neg_, inv_;
};

}  // namespace kakeya
