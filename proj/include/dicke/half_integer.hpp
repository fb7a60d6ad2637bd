#pragma once

#include <compare>
#include <string>

namespace dicke {

// Half-integer quantum number stored exactly as twice its value (2J, 2m).
// Keeps parity checks and magnetic-number arithmetic out of floating point.
class HalfInteger {
public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(int twice) {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }
    static constexpr HalfInteger whole(int value) { return from_twice(2 * value); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr bool same_parity(HalfInteger other) const {
        return ((twice_ ^ other.twice_) & 1) == 0;
    }

    constexpr HalfInteger operator-() const { return from_twice(-twice_); }
    friend constexpr HalfInteger operator+(HalfInteger h, int step) {
        return from_twice(h.twice_ + 2 * step);
    }
    friend constexpr HalfInteger operator-(HalfInteger h, int step) {
        return from_twice(h.twice_ - 2 * step);
    }
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    // "2", "-1/2", ...
    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

}  // namespace dicke
