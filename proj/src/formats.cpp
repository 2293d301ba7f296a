#include "logposit/formats.hpp"

#include <algorithm>
#include <stdexcept>

namespace logposit {

namespace {

int es_for_width(int n_bits) {
    switch (n_bits) {
        case 8: return 0;
        case 16: return 1;
        case 32: return 2;
        default: throw std::invalid_argument("posit word length must be 8, 16 or 32");
    }
}

}  // namespace

PositFormat PositFormat::standard(int n_bits) { return PositFormat{n_bits, es_for_width(n_bits), 0}; }

PositFormat PositFormat::bounded(int n_bits, int regime_bound) {
    if (regime_bound < 1 || regime_bound > n_bits - 2) {
        throw std::invalid_argument("regime bound must satisfy 1 <= R <= n_bits-2");
    }
    return PositFormat{n_bits, es_for_width(n_bits), regime_bound};
}

PositFormat PositFormat::bounded(int n_bits) { return bounded(n_bits, canonical_regime_bound(n_bits)); }

int PositFormat::canonical_regime_bound(int n_bits) {
    switch (n_bits) {
        case 8: return 2;
        case 16: return 3;
        case 32: return 5;
        default: throw std::invalid_argument("posit word length must be 8, 16 or 32");
    }
}

int PositFormat::max_frac_width() const {
    // Shortest possible regime field: a 1-bit run with no terminator when
    // R == 1, otherwise a 1-bit run plus terminator.
    const int min_regime_bits = max_regime_run() == 1 ? 1 : 2;
    return n_bits - 1 - min_regime_bits - es;
}

std::uint32_t PositFormat::word_mask() const {
    return n_bits == 32 ? 0xffffffffu : ((1u << n_bits) - 1);
}

std::string PositFormat::name() const {
    if (is_bounded()) {
        return "bp" + std::to_string(n_bits) + "r" + std::to_string(regime_bound);
    }
    return "p" + std::to_string(n_bits);
}

PositFormat parse_format_name(const std::string& name) {
    auto parse_int = [&](std::size_t pos, std::size_t end) {
        if (pos >= end) {
            throw std::invalid_argument("bad format selector: " + name);
        }
        int v = 0;
        for (std::size_t i = pos; i < end; ++i) {
            if (name[i] < '0' || name[i] > '9') {
                throw std::invalid_argument("bad format selector: " + name);
            }
            v = v * 10 + (name[i] - '0');
        }
        return v;
    };
    if (name.size() >= 2 && name[0] == 'p') {
        return PositFormat::standard(parse_int(1, name.size()));
    }
    if (name.size() >= 4 && name[0] == 'b' && name[1] == 'p') {
        const auto r = name.find('r', 2);
        if (r == std::string::npos) {
            throw std::invalid_argument("bad format selector: " + name);
        }
        return PositFormat::bounded(parse_int(2, r), parse_int(r + 1, name.size()));
    }
    throw std::invalid_argument("bad format selector: " + name);
}

void validate_bits(const PositFormat& format, PositBits bits) {
    if ((bits.raw & ~format.word_mask()) != 0) {
        throw std::invalid_argument("pattern has bits above the format word length");
    }
}

RegimeLayout regime_field_layout(const PositFormat& format, int k) {
    if (k < format.regime_min() || k > format.regime_max()) {
        throw std::out_of_range("regime value " + std::to_string(k) + " outside [" +
                                std::to_string(format.regime_min()) + ", " +
                                std::to_string(format.regime_max()) + "] of " + format.name());
    }
    const int run = k >= 0 ? k + 1 : -k;
    return RegimeLayout{run, run < format.max_regime_run()};
}

std::uint32_t magnitude_word(const PositFormat& format, PositBits bits) {
    validate_bits(format, bits);
    if (bits.raw == format.zero_pattern() || bits.raw == format.nar_pattern()) {
        return 0;
    }
    if (bits.raw >> (format.n_bits - 1)) {
        return (0u - bits.raw) & format.word_mask();
    }
    return bits.raw;
}

PositBits negate(const PositFormat& format, PositBits bits) {
    validate_bits(format, bits);
    return PositBits{(0u - bits.raw) & format.word_mask()};
}

DecodedPosit decode(const PositFormat& format, PositBits bits) {
    validate_bits(format, bits);
    DecodedPosit d;
    if (bits.raw == format.zero_pattern()) {
        d.is_zero = true;
        return d;
    }
    if (bits.raw == format.nar_pattern()) {
        d.is_nar = true;
        return d;
    }

    const int n = format.n_bits;
    d.sign = static_cast<int>(bits.raw >> (n - 1)) & 1;
    const std::uint32_t mag = magnitude_word(format, bits);

    const int first = static_cast<int>(mag >> (n - 2)) & 1;
    const int max_run = format.max_regime_run();
    int run = 1;
    while (run < max_run && run < n - 1 &&
           ((mag >> (n - 2 - run)) & 1) == static_cast<std::uint32_t>(first)) {
        ++run;
    }
    d.k = first ? run - 1 : -run;
    const bool terminated = run < max_run;
    const int used = run + (terminated ? 1 : 0);

    const int remaining = n - 1 - used;
    const int es_avail = std::min(format.es, remaining);
    d.frac_width = remaining - es_avail;
    if (es_avail > 0) {
        const std::uint32_t field = (mag >> d.frac_width) & ((1u << es_avail) - 1);
        d.e = field << (format.es - es_avail);
    }
    d.f = d.frac_width > 0 ? (mag & ((1u << d.frac_width) - 1)) : 0;
    return d;
}

ExactValue to_exact(const PositFormat& format, const DecodedPosit& d) {
    if (d.is_nar) {
        return ExactValue::nar();
    }
    if (d.is_zero) {
        return ExactValue();
    }
    BigInt num = (BigInt(1) << d.frac_width) | d.f;
    if (d.sign) {
        num = -num;
    }
    const int scale = d.k * format.scale_step() + static_cast<int>(d.e);
    return ExactValue(std::move(num), scale - d.frac_width);
}

ExactValue to_exact(const PositFormat& format, PositBits bits) {
    return to_exact(format, decode(format, bits));
}

ExactValue maxpos_value(const PositFormat& format) {
    return to_exact(format, PositBits{format.maxpos_pattern()});
}

ExactValue minpos_value(const PositFormat& format) {
    return to_exact(format, PositBits{format.minpos_pattern()});
}

namespace {

// Largest lattice pattern whose value is <= |v|, for minpos < |v| < maxpos.
// Built by packing the regime for k = floor(E / 2^es) and truncating the
// exponent+fraction tail; monotonicity of the encoding makes pattern+1 the
// next lattice point, so round-to-nearest only ever compares these two.
std::uint32_t floor_pattern(const PositFormat& format, const ExactValue& mag) {
    const int n = format.n_bits;
    const int step = format.scale_step();
    const int total = mag.floor_log2_abs();
    int k = total >= 0 ? total / step : -((-total + step - 1) / step);
    k = std::clamp(k, format.regime_min(), format.regime_max());
    const unsigned e = static_cast<unsigned>(total - k * step);

    const RegimeLayout layout = regime_field_layout(format, k);
    const int avail = n - 1 - layout.bits();
    const int es_avail = std::min(format.es, avail);
    const int frac_avail = avail - es_avail;

    std::uint32_t regime_bits = layout.run_length > 0 && k >= 0
                                    ? ((1u << layout.run_length) - 1) << (layout.has_terminator ? 1 : 0)
                                    : 0;
    if (k < 0 && layout.has_terminator) {
        regime_bits = 1;
    }

    // Significand fraction F over D bits: |v| = 2^total * (1 + F/2^D).
    const BigInt num = boost::multiprecision::abs(mag.numerator());
    const int d_bits = static_cast<int>(boost::multiprecision::msb(num));
    const BigInt frac = num - (BigInt(1) << d_bits);

    // Conceptual tail = exponent bits then fraction bits; keep `avail` bits.
    BigInt tail = (BigInt(e) << d_bits) | frac;
    const int tail_width = format.es + d_bits;
    const int drop = tail_width - avail;
    const BigInt kept = drop >= 0 ? BigInt(tail >> drop) : BigInt(tail << -drop);

    return (regime_bits << avail) | static_cast<std::uint32_t>(kept);
}

}  // namespace

PositBits encode_with_trace(const PositFormat& format, const ExactValue& value,
                            RoundingTrace& trace) {
    trace = RoundingTrace{};
    if (value.is_nar()) {
        return PositBits{format.nar_pattern()};
    }
    if (value.is_zero()) {
        return PositBits{format.zero_pattern()};
    }

    const bool negative = value.sign() < 0;
    const ExactValue mag = value.abs();
    std::uint32_t pattern;

    if (mag >= maxpos_value(format)) {
        trace.saturated_high = mag > maxpos_value(format);
        pattern = format.maxpos_pattern();
    } else if (mag <= minpos_value(format)) {
        trace.saturated_low = mag < minpos_value(format);
        pattern = format.minpos_pattern();
    } else {
        const std::uint32_t lo = floor_pattern(format, mag);
        const ExactValue vlo = to_exact(format, PositBits{lo});
        if (vlo == mag) {
            pattern = lo;
        } else {
            const std::uint32_t hi = lo + 1;
            const ExactValue vhi = to_exact(format, PositBits{hi});
            // Guard/round/sticky of the residue below the kept lattice step.
            const ExactValue rem = mag - vlo;
            const ExactValue ulp = vhi - vlo;
            const ExactValue r2 = rem + rem;
            const ExactValue r4 = r2 + r2;
            trace.guard = r2 >= ulp;
            const ExactValue below_guard = trace.guard ? ExactValue(r4 - (ulp + ulp)) : r4;
            trace.round = below_guard >= ulp;
            trace.sticky = (trace.round ? ExactValue(below_guard - ulp) : below_guard).sign() != 0;
            if (r2 > ulp) {
                trace.rounded_up = true;
            } else if (r2 == ulp) {
                trace.tie = true;
                trace.rounded_up = (lo & 1) != 0;  // pick the even pattern
            }
            pattern = trace.rounded_up ? hi : lo;
        }
    }

    if (negative) {
        pattern = (0u - pattern) & format.word_mask();
    }
    return PositBits{pattern};
}

PositBits encode(const PositFormat& format, const ExactValue& value) {
    RoundingTrace trace;
    return encode_with_trace(format, value, trace);
}

}  // namespace logposit
