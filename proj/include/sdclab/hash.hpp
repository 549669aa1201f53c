#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "field.hpp"

namespace sdclab {

// 128-bit content digest: two independent FNV-1a lanes over a canonical byte stream.
struct Digest {
    std::uint64_t hi = 0, lo = 0;
    bool operator==(const Digest&) const = default;
    bool operator<(const Digest& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
    std::string hex() const {
        char buf[33];
        std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                      static_cast<unsigned long long>(lo));
        return buf;
    }
};

struct DigestHash {
    size_t operator()(const Digest& d) const { return static_cast<size_t>(d.lo ^ (d.hi * 0x9e3779b97f4a7c15ull)); }
};

class Hasher {
public:
    Hasher& bytes(const void* p, size_t n) {
        auto c = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            a_ = (a_ ^ c[i]) * 0x100000001b3ull;
            b_ = (b_ ^ c[i]) * 0x100000001b3ull;
            b_ ^= b_ >> 29;
        }
        return *this;
    }
    Hasher& i64(std::int64_t v) { return bytes(&v, sizeof v); }
    Hasher& str(std::string_view s) {
        i64(static_cast<std::int64_t>(s.size()));
        return bytes(s.data(), s.size());
    }
    Hasher& digest(const Digest& d) { return i64(static_cast<std::int64_t>(d.hi)).i64(static_cast<std::int64_t>(d.lo)); }
    Hasher& elem(const PrimeField&, std::uint32_t v) { return i64(v); }
    Hasher& elem(const Rationals&, const mpq_class& v) { return str(v.get_str()); }
    Digest done() const { return {a_, b_ ^ (a_ >> 7)}; }

private:
    std::uint64_t a_ = 0xcbf29ce484222325ull;
    std::uint64_t b_ = 0x84222325cbf29ce4ull;
};

}  // namespace sdclab
