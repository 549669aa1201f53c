#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sdclab {

// Runtime description of a ground field: the rationals or F_p.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::PrimeField;
    std::uint32_t p = 32003;

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(std::uint32_t p);

    bool is_rational() const { return kind == Kind::Rationals; }
    std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(p); }
    bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1u << 31)) throw std::invalid_argument("prime " + std::to_string(p) + " too large (must be < 2^31)");
    return {Kind::PrimeField, p};
}

// F_p with elements stored as residues in [0, p).
struct PrimeField {
    using Elem = std::uint32_t;
    std::uint32_t p = 32003;

    PrimeField() = default;
    explicit PrimeField(std::uint32_t prime) : p(FieldSpec::prime(prime).p) {}

    FieldSpec spec() const { return {FieldSpec::Kind::PrimeField, p}; }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == 1; }
    Elem add(Elem a, Elem b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p); }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero in F_p");
        std::int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p;
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<Elem>(r);
    }
    Elem from_rational(const mpq_class& q) const {
        mpz_class num = q.get_num() % p, den = q.get_den() % p;
        if (num < 0) num += p;
        if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
        return div(static_cast<Elem>(num.get_ui()), static_cast<Elem>(den.get_ui()));
    }
    // Uniform draw from a raw 64-bit random word; used for Monte Carlo sampling.
    Elem from_random(std::uint64_t w) const { return static_cast<Elem>(w % p); }
    std::string to_string(Elem a) const { return std::to_string(a); }
    bool operator==(const PrimeField& o) const { return p == o.p; }
};

// Q via GMP rationals; mpq_class keeps values canonical after every operation.
struct Rationals {
    using Elem = mpq_class;

    FieldSpec spec() const { return FieldSpec::rationals(); }
    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw std::domain_error("division by zero in Q");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
    Elem from_rational(const mpq_class& q) const { return q; }
    // Small signed integers in [-32, 32] keep rational Monte Carlo entries cheap.
    Elem from_random(std::uint64_t w) const { return Elem(static_cast<long>(w % 65) - 32); }
    std::string to_string(const Elem& a) const { return a.get_str(); }
    bool operator==(const Rationals&) const { return true; }
};

inline mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace sdclab
