#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logposit/exact.hpp"
#include "logposit/formats.hpp"
#include "logposit/logmul.hpp"

namespace logposit {

enum class SimdMode { p8x4, p16x2, p32x1 };

int lane_width(SimdMode mode);
int lane_count(SimdMode mode);
SimdMode parse_simd_mode(const std::string& name);  // "p8x4" | "p16x2" | "p32x1"
std::string simd_mode_name(SimdMode mode);

// Sign, power-of-two scale and double-width mantissa product of one multiply.
// Represents (-1)^sign * 2^scale * mantissa_product * 2^(-mantissa_norm);
// mantissa_norm is twice the format's widest fraction width.
struct ScaledProduct {
    enum class Special { none, zero, nar };

    int sign = 0;
    int scale = 0;
    std::uint64_t mantissa_product = 0;
    int mantissa_norm = 0;
    Special special = Special::none;

    ExactValue to_exact() const;
};

// 128-bit signed fixed-point accumulator with the binary point at bit 64.
// Overflow pins the value to the nearest extreme and sets a sticky flag;
// a NaR flag (set by the dot-product policy) is likewise sticky.
class Quire {
public:
    static constexpr int bits = 128;
    static constexpr int binary_point = 64;

    const BigInt& raw() const { return acc_; }
    bool saturated() const { return saturated_; }
    bool nar() const { return nar_; }
    bool is_zero() const { return acc_.is_zero() && !saturated_ && !nar_; }

    void set_nar() { nar_ = true; }
    // Adds `addend * 2^-64` with clamping; used by accumulate().
    void add_scaled(const BigInt& addend);

    ExactValue to_exact() const { return ExactValue(acc_, -binary_point); }

    friend bool operator==(const Quire& a, const Quire& b) {
        return a.acc_ == b.acc_ && a.saturated_ == b.saturated_ && a.nar_ == b.nar_;
    }

private:
    BigInt acc_;
    bool saturated_ = false;
    bool nar_ = false;
};

// Canonical per-width multiplier configs: (3,4) / (6,8) / (12,16).
MultiplierConfig default_config(const PositFormat& format);
MultiplierConfig default_config_for_width(int n_bits);

// Pipeline stages 1-3: decode, logarithmic mantissa multiply, scale combine.
ScaledProduct multiply_stage(const PositFormat& format, const MultiplierConfig& cfg,
                             PositBits a, PositBits b);

// Stage 4: exact aligned add into the quire. Aligned bits falling below
// bit 0 are floored toward zero; NaR products are a precondition violation
// (callers route NaR through the sticky flag instead).
Quire accumulate(Quire q, const ScaledProduct& p);

// Stages 5-6: normalize, round to nearest even, encode. A saturated quire
// yields +/-maxpos, a NaR-flagged quire yields NaR.
PositBits finalize(const Quire& q, const PositFormat& format);
PositBits finalize_with_trace(const Quire& q, const PositFormat& format, RoundingTrace& trace);

std::uint32_t extract_lane(std::uint32_t packed, SimdMode mode, int lane);
std::uint32_t insert_lane(std::uint32_t packed, SimdMode mode, int lane, std::uint32_t value);

// One packed MAC step: per lane, multiply_stage + accumulate into the lane's
// quire. Lanes are isolated; quires.size() must equal the lane count and the
// lane format's width must match the mode.
void simd_mac(SimdMode mode, const PositFormat& lane_format, const MultiplierConfig& cfg,
              std::uint32_t vec_a, std::uint32_t vec_b, std::span<Quire> quires);
void simd_mac(SimdMode mode, std::uint32_t vec_a, std::uint32_t vec_b, std::span<Quire> quires);

// Fresh quire, accumulate all products, round once at the end. NaR operands
// make the result NaR (sticky). Throws std::invalid_argument on length
// mismatch; empty vectors yield the zero pattern.
PositBits dot_product(const PositFormat& format, const MultiplierConfig& cfg,
                      std::span<const PositBits> a, std::span<const PositBits> b);

}  // namespace logposit
