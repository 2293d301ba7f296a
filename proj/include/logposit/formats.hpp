#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "logposit/exact.hpp"

namespace logposit {

// Word-level carrier. Patterns travel in a 32-bit unsigned with the upper
// bits zero regardless of word length, so one code path serves all formats.
struct PositBits {
    std::uint32_t raw = 0;

    friend bool operator==(PositBits a, PositBits b) { return a.raw == b.raw; }
    friend bool operator!=(PositBits a, PositBits b) { return a.raw != b.raw; }
};

// Posit or bounded-posit format (N, es, optional regime bound R).
// Supported pairings: (8,0), (16,1), (32,2).
struct PositFormat {
    int n_bits = 8;
    int es = 0;
    int regime_bound = 0;  // 0 = standard posit; otherwise 1 <= R <= n_bits-2

    static PositFormat standard(int n_bits);
    static PositFormat bounded(int n_bits, int regime_bound);
    static PositFormat bounded(int n_bits);  // canonical R: 2 / 3 / 5
    static int canonical_regime_bound(int n_bits);

    bool is_bounded() const { return regime_bound != 0; }
    // Longest permitted regime run (R for bounded, n_bits-1 for standard).
    int max_regime_run() const { return is_bounded() ? regime_bound : n_bits - 1; }
    int regime_min() const { return is_bounded() ? -regime_bound : -(n_bits - 2); }
    int regime_max() const { return is_bounded() ? regime_bound - 1 : n_bits - 2; }
    // 2^es: scale contribution of one regime step.
    int scale_step() const { return 1 << es; }
    // Widest fraction field any pattern of this format can carry.
    int max_frac_width() const;

    std::uint32_t word_mask() const;
    std::uint32_t zero_pattern() const { return 0; }
    std::uint32_t nar_pattern() const { return 1u << (n_bits - 1); }
    std::uint32_t maxpos_pattern() const { return (1u << (n_bits - 1)) - 1; }
    std::uint32_t minpos_pattern() const { return 1; }

    std::string name() const;  // "p8", "bp8r2", ...

    friend bool operator==(const PositFormat& a, const PositFormat& b) {
        return a.n_bits == b.n_bits && a.es == b.es && a.regime_bound == b.regime_bound;
    }
};

// Parses the selector grammar: p8|p16|p32 and bp{N}r{R} (e.g. bp16r3).
PositFormat parse_format_name(const std::string& name);

// Unpacked fields. For zero/NaR every numeric field is zero. For negative
// words the fields describe the two's-complement magnitude.
struct DecodedPosit {
    int sign = 0;        // 0 or 1
    int k = 0;           // regime value
    unsigned e = 0;      // exponent, 0 <= e < 2^es
    std::uint32_t f = 0; // fraction field, f < 2^frac_width
    int frac_width = 0;
    bool is_zero = false;
    bool is_nar = false;
};

struct RegimeLayout {
    int run_length = 0;
    bool has_terminator = false;
    int bits() const { return run_length + (has_terminator ? 1 : 0); }
};

// Guard/round/sticky of the discarded tail plus the decision encode() took.
// Populated by encode_with_trace for the CLI's stage trace.
struct RoundingTrace {
    bool guard = false;
    bool round = false;
    bool sticky = false;
    bool rounded_up = false;
    bool tie = false;
    bool saturated_high = false;  // clamped to +/-maxpos
    bool saturated_low = false;   // clamped to +/-minpos
};

void validate_bits(const PositFormat& format, PositBits bits);

// Regime field emitted for regime value k; throws std::out_of_range outside
// the format's regime range. has_terminator is false only when the run
// exactly fills the bound of a bounded format (or the word, for standard).
RegimeLayout regime_field_layout(const PositFormat& format, int k);

DecodedPosit decode(const PositFormat& format, PositBits bits);

ExactValue to_exact(const PositFormat& format, PositBits bits);
ExactValue to_exact(const PositFormat& format, const DecodedPosit& d);

// Round-to-nearest-even onto the format's lattice; ties pick the pattern
// with even last bit. Out-of-range magnitudes saturate to +/-maxpos and
// nonzero magnitudes below minpos clamp to +/-minpos.
PositBits encode(const PositFormat& format, const ExactValue& value);
PositBits encode_with_trace(const PositFormat& format, const ExactValue& value,
                            RoundingTrace& trace);

// Two's-complement magnitude word of a pattern (identity for positives;
// zero and NaR map to 0).
std::uint32_t magnitude_word(const PositFormat& format, PositBits bits);
// Exact negation (two's complement within n_bits).
PositBits negate(const PositFormat& format, PositBits bits);

ExactValue maxpos_value(const PositFormat& format);
ExactValue minpos_value(const PositFormat& format);

}  // namespace logposit
