#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "fgx/error.hpp"

namespace fgx {

/// Overflow-checked nonnegative 128-bit counter. Wide enough for the
/// sequential method's term count up to n ~ 170; anything past that throws
/// RangeError instead of wrapping.
class Count {
public:
    constexpr Count() : v_(0) {}
    constexpr Count(std::uint64_t v) : v_(v) {}

    Count operator+(Count o) const {
        unsigned __int128 r;
        if (__builtin_add_overflow(v_, o.v_, &r)) throw RangeError("count overflow in addition");
        return Count(r, raw_tag{});
    }
    Count operator*(Count o) const {
        unsigned __int128 r;
        if (__builtin_mul_overflow(v_, o.v_, &r)) throw RangeError("count overflow in multiplication");
        return Count(r, raw_tag{});
    }
    Count& operator+=(Count o) { return *this = *this + o; }
    Count& operator*=(Count o) { return *this = *this * o; }

    friend bool operator==(Count, Count) = default;
    friend std::strong_ordering operator<=>(Count a, Count b) {
        return a.v_ < b.v_   ? std::strong_ordering::less
               : a.v_ > b.v_ ? std::strong_ordering::greater
                             : std::strong_ordering::equal;
    }

    bool fits_u64() const { return v_ <= ~std::uint64_t{0}; }
    std::uint64_t as_u64() const {
        if (!fits_u64()) throw RangeError("count does not fit in 64 bits");
        return static_cast<std::uint64_t>(v_);
    }
    double as_double() const { return static_cast<double>(v_); }

    std::string str() const;

private:
    struct raw_tag {};
    constexpr Count(unsigned __int128 v, raw_tag) : v_(v) {}
    unsigned __int128 v_;
};

std::ostream& operator<<(std::ostream&, Count);

}  // namespace fgx
