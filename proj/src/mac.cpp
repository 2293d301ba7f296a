#include "logposit/mac.hpp"

#include <stdexcept>

namespace logposit {

namespace {

const BigInt& quire_max() {
    static const BigInt v = (BigInt(1) << (Quire::bits - 1)) - 1;
    return v;
}

const BigInt& quire_min() {
    static const BigInt v = -(BigInt(1) << (Quire::bits - 1));
    return v;
}

}  // namespace

int lane_width(SimdMode mode) {
    switch (mode) {
        case SimdMode::p8x4: return 8;
        case SimdMode::p16x2: return 16;
        case SimdMode::p32x1: return 32;
    }
    throw std::logic_error("bad SimdMode");
}

int lane_count(SimdMode mode) { return 32 / lane_width(mode); }

SimdMode parse_simd_mode(const std::string& name) {
    if (name == "p8x4") return SimdMode::p8x4;
    if (name == "p16x2") return SimdMode::p16x2;
    if (name == "p32x1") return SimdMode::p32x1;
    throw std::invalid_argument("bad SIMD mode: " + name);
}

std::string simd_mode_name(SimdMode mode) {
    switch (mode) {
        case SimdMode::p8x4: return "p8x4";
        case SimdMode::p16x2: return "p16x2";
        case SimdMode::p32x1: return "p32x1";
    }
    throw std::logic_error("bad SimdMode");
}

ExactValue ScaledProduct::to_exact() const {
    if (special == Special::nar) {
        return ExactValue::nar();
    }
    if (special == Special::zero) {
        return ExactValue();
    }
    BigInt num(mantissa_product);
    if (sign) {
        num = -num;
    }
    return ExactValue(std::move(num), scale - mantissa_norm);
}

void Quire::add_scaled(const BigInt& addend) {
    acc_ += addend;
    if (acc_ > quire_max()) {
        acc_ = quire_max();
        saturated_ = true;
    } else if (acc_ < quire_min()) {
        acc_ = quire_min();
        saturated_ = true;
    }
}

MultiplierConfig default_config_for_width(int n_bits) {
    switch (n_bits) {
        case 8: return MultiplierConfig::ilm(3, 4);
        case 16: return MultiplierConfig::ilm(6, 8);
        case 32: return MultiplierConfig::ilm(12, 16);
        default: throw std::invalid_argument("posit word length must be 8, 16 or 32");
    }
}

MultiplierConfig default_config(const PositFormat& format) {
    return default_config_for_width(format.n_bits);
}

ScaledProduct multiply_stage(const PositFormat& format, const MultiplierConfig& cfg,
                             PositBits a, PositBits b) {
    const DecodedPosit da = decode(format, a);
    const DecodedPosit db = decode(format, b);

    ScaledProduct p;
    const int w = format.max_frac_width();
    p.mantissa_norm = 2 * w;
    if (da.is_nar || db.is_nar) {
        p.special = ScaledProduct::Special::nar;
        return p;
    }
    if (da.is_zero || db.is_zero) {
        p.special = ScaledProduct::Special::zero;
        return p;
    }

    p.sign = da.sign ^ db.sign;
    p.scale = (da.k + db.k) * format.scale_step() + static_cast<int>(da.e) + static_cast<int>(db.e);

    // Hidden-one mantissas, left-aligned onto the format's mantissa bus.
    const std::uint64_t ma =
        ((std::uint64_t{1} << da.frac_width) | da.f) << (w - da.frac_width);
    const std::uint64_t mb =
        ((std::uint64_t{1} << db.frac_width) | db.f) << (w - db.frac_width);
    p.mantissa_product = ilm_mul(Mantissa{ma, w + 1}, Mantissa{mb, w + 1}, cfg);
    return p;
}

Quire accumulate(Quire q, const ScaledProduct& p) {
    if (p.special == ScaledProduct::Special::nar) {
        throw std::invalid_argument("accumulate: NaR products are handled by caller policy");
    }
    if (p.special == ScaledProduct::Special::zero || p.mantissa_product == 0) {
        return q;
    }
    const int shift = p.scale - p.mantissa_norm + Quire::binary_point;
    BigInt addend(p.mantissa_product);
    if (shift >= 0) {
        addend <<= shift;
    } else {
        addend >>= -shift;  // magnitude floor: truncation toward zero
    }
    if (p.sign) {
        addend = -addend;
    }
    q.add_scaled(addend);
    return q;
}

PositBits finalize_with_trace(const Quire& q, const PositFormat& format, RoundingTrace& trace) {
    trace = RoundingTrace{};
    if (q.nar()) {
        return PositBits{format.nar_pattern()};
    }
    if (q.saturated()) {
        trace.saturated_high = true;
        const std::uint32_t maxpos = format.maxpos_pattern();
        return PositBits{q.raw() < 0 ? (0u - maxpos) & format.word_mask() : maxpos};
    }
    return encode_with_trace(format, q.to_exact(), trace);
}

PositBits finalize(const Quire& q, const PositFormat& format) {
    RoundingTrace trace;
    return finalize_with_trace(q, format, trace);
}

std::uint32_t extract_lane(std::uint32_t packed, SimdMode mode, int lane) {
    const int w = lane_width(mode);
    const std::uint32_t mask = w == 32 ? 0xffffffffu : ((1u << w) - 1);
    return (packed >> (lane * w)) & mask;
}

std::uint32_t insert_lane(std::uint32_t packed, SimdMode mode, int lane, std::uint32_t value) {
    const int w = lane_width(mode);
    const std::uint32_t mask = (w == 32 ? 0xffffffffu : ((1u << w) - 1)) << (lane * w);
    return (packed & ~mask) | ((value << (lane * w)) & mask);
}

void simd_mac(SimdMode mode, const PositFormat& lane_format, const MultiplierConfig& cfg,
              std::uint32_t vec_a, std::uint32_t vec_b, std::span<Quire> quires) {
    if (lane_format.n_bits != lane_width(mode)) {
        throw std::invalid_argument("lane format width does not match SIMD mode");
    }
    if (static_cast<int>(quires.size()) != lane_count(mode)) {
        throw std::invalid_argument("expected one quire per lane");
    }
    for (int lane = 0; lane < lane_count(mode); ++lane) {
        const PositBits a{extract_lane(vec_a, mode, lane)};
        const PositBits b{extract_lane(vec_b, mode, lane)};
        const ScaledProduct p = multiply_stage(lane_format, cfg, a, b);
        if (p.special == ScaledProduct::Special::nar) {
            quires[lane].set_nar();
        } else {
            quires[lane] = accumulate(quires[lane], p);
        }
    }
}

void simd_mac(SimdMode mode, std::uint32_t vec_a, std::uint32_t vec_b, std::span<Quire> quires) {
    const PositFormat format = PositFormat::standard(lane_width(mode));
    simd_mac(mode, format, default_config(format), vec_a, vec_b, quires);
}

PositBits dot_product(const PositFormat& format, const MultiplierConfig& cfg,
                      std::span<const PositBits> a, std::span<const PositBits> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot_product: operand vectors differ in length");
    }
    Quire q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const ScaledProduct p = multiply_stage(format, cfg, a[i], b[i]);
        if (p.special == ScaledProduct::Special::nar) {
            q.set_nar();
        } else {
            q = accumulate(q, p);
        }
    }
    return finalize(q, format);
}

}  // namespace logposit
