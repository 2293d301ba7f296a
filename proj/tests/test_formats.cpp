#include "doctest.h"

#include "logposit/formats.hpp"
#include "logposit/sampling.hpp"

#include <algorithm>
#include <vector>

using namespace logposit;

namespace {

const PositFormat kP8 = PositFormat::standard(8);
const PositFormat kP16 = PositFormat::standard(16);
const PositFormat kP32 = PositFormat::standard(32);

std::vector<PositFormat> eight_bit_formats() {
    return {kP8, PositFormat::bounded(8, 1), PositFormat::bounded(8, 2), PositFormat::bounded(8, 3)};
}

// Test-side reference encoder: enumerates the positive lattice and picks the
// nearest pattern by exact comparison, ties to the even pattern. Independent
// of the field-construction path used by encode().
std::uint32_t search_encode(const PositFormat& f, const ExactValue& value) {
    if (value.is_nar()) {
        return f.nar_pattern();
    }
    if (value.is_zero()) {
        return f.zero_pattern();
    }
    const ExactValue mag = value.abs();
    std::uint32_t best = f.minpos_pattern();
    if (mag >= to_exact(f, PositBits{f.maxpos_pattern()})) {
        best = f.maxpos_pattern();
    } else if (mag <= to_exact(f, PositBits{f.minpos_pattern()})) {
        best = f.minpos_pattern();
    } else {
        for (std::uint32_t p = 1; p + 1 < (1u << (f.n_bits - 1)); ++p) {
            const ExactValue lo = to_exact(f, PositBits{p});
            const ExactValue hi = to_exact(f, PositBits{p + 1});
            if (mag < lo || mag > hi) {
                continue;
            }
            const ExactValue dlo = mag - lo;
            const ExactValue dhi = hi - mag;
            if (dlo < dhi) {
                best = p;
            } else if (dhi < dlo) {
                best = p + 1;
            } else {
                best = (p & 1) == 0 ? p : p + 1;
            }
            break;
        }
    }
    if (value.sign() < 0) {
        best = (0u - best) & f.word_mask();
    }
    return best;
}

}  // namespace

TEST_CASE("format descriptors") {
    CHECK(kP8.es == 0);
    CHECK(kP16.es == 1);
    CHECK(kP32.es == 2);
    CHECK(PositFormat::bounded(8).regime_bound == 2);
    CHECK(PositFormat::bounded(16).regime_bound == 3);
    CHECK(PositFormat::bounded(32).regime_bound == 5);
    CHECK(kP8.max_frac_width() == 5);
    CHECK(kP16.max_frac_width() == 12);
    CHECK(kP32.max_frac_width() == 27);
    CHECK(PositFormat::bounded(8, 1).max_frac_width() == 6);
    CHECK(parse_format_name("p16") == kP16);
    CHECK(parse_format_name("bp8r2") == PositFormat::bounded(8, 2));
    CHECK(PositFormat::bounded(32, 5).name() == "bp32r5");
    CHECK_THROWS(parse_format_name("q8"));
    CHECK_THROWS(PositFormat::standard(12));
    CHECK_THROWS(PositFormat::bounded(8, 7));
}

TEST_CASE("decode: frozen field examples") {
    auto d = decode(kP8, PositBits{0b0100'0000});
    CHECK(d.sign == 0);
    CHECK(d.k == 0);
    CHECK(d.e == 0);
    CHECK(d.f == 0);
    CHECK(to_exact(kP8, PositBits{0b0100'0000}) == ExactValue::from_integer(1));

    CHECK(decode(kP8, PositBits{0}).is_zero);
    CHECK(decode(kP8, PositBits{0x80}).is_nar);

    d = decode(kP8, PositBits{0b0110'0000});
    CHECK(d.k == 1);
    CHECK(d.f == 0);
    CHECK(to_exact(kP8, PositBits{0b0110'0000}) == ExactValue::from_integer(2));

    d = decode(kP16, PositBits{0x4000});
    CHECK(d.sign == 0);
    CHECK(d.k == 0);
    CHECK(d.e == 0);
    CHECK(d.f == 0);
    CHECK(to_exact(kP16, PositBits{0x4000}) == ExactValue::from_integer(1));
}

TEST_CASE("to_exact: frozen values") {
    // 0x48 = sign 0, regime "10" (k=0), five fraction bits 01000 -> 1 + 8/32.
    CHECK(to_exact(kP8, PositBits{0b0100'1000}) == ExactValue(BigInt(5), -2));
    CHECK(to_exact(kP8, PositBits{0}).is_zero());
    CHECK(to_exact(kP8, PositBits{0x01}) == ExactValue(BigInt(1), -6));    // minpos
    CHECK(to_exact(kP8, PositBits{0x7f}) == ExactValue(BigInt(1), 6));     // maxpos
    CHECK(to_exact(kP8, PositBits{0xc0}) == ExactValue::from_integer(-1)); // two's complement
    CHECK(to_exact(kP8, PositBits{0xa0}) == ExactValue::from_integer(-2));
    CHECK(to_exact(kP16, PositBits{0x7fff}) == ExactValue(BigInt(1), 28));
    CHECK(to_exact(kP32, PositBits{0x7fffffff}) == ExactValue(BigInt(1), 120));
    // Bounded layout: a run filling the bound has no terminator, so bp8r2
    // keeps five fraction bits at the extreme regimes.
    const PositFormat bp8r2 = PositFormat::bounded(8, 2);
    CHECK(to_exact(bp8r2, PositBits{0x7f}) == ExactValue(BigInt(63), -4));
    CHECK(to_exact(bp8r2, PositBits{0x01}) == ExactValue(BigInt(33), -7));
    CHECK(to_exact(bp8r2, PositBits{0x60}) == ExactValue::from_integer(2));
}

TEST_CASE("regime field layout") {
    CHECK(regime_field_layout(kP8, 0).run_length == 1);
    CHECK(regime_field_layout(kP8, 0).has_terminator);
    CHECK(regime_field_layout(kP8, -1).run_length == 1);
    CHECK(regime_field_layout(kP8, -1).has_terminator);
    CHECK(regime_field_layout(kP8, 6).run_length == 7);
    CHECK_FALSE(regime_field_layout(kP8, 6).has_terminator);

    const PositFormat bp8r2 = PositFormat::bounded(8, 2);
    CHECK(regime_field_layout(bp8r2, 1).run_length == 2);
    CHECK_FALSE(regime_field_layout(bp8r2, 1).has_terminator);
    CHECK(regime_field_layout(bp8r2, -2).run_length == 2);
    CHECK_FALSE(regime_field_layout(bp8r2, -2).has_terminator);
    CHECK_THROWS_AS(regime_field_layout(bp8r2, 2), std::out_of_range);
    CHECK_THROWS_AS(regime_field_layout(kP8, 7), std::out_of_range);
}

TEST_CASE("encode: frozen examples") {
    CHECK(encode(kP8, ExactValue::from_integer(1)).raw == 0x40);
    CHECK(encode(kP8, ExactValue()).raw == 0);
    CHECK(encode(kP8, ExactValue::nar()).raw == 0x80);
    // Beyond the bounded dynamic range: clamps to bounded maxpos.
    const PositFormat bp8r2 = PositFormat::bounded(8, 2);
    CHECK(encode(bp8r2, ExactValue(BigInt(1), 20)).raw == bp8r2.maxpos_pattern());
    CHECK(encode(bp8r2, ExactValue(BigInt(-1), 20)).raw == 0x81);
    // Below minpos clamps to minpos, never to zero.
    CHECK(encode(kP8, ExactValue(BigInt(1), -40)).raw == 0x01);
    CHECK(encode(kP8, ExactValue(BigInt(-1), -40)).raw == 0xff);
}

TEST_CASE("roundtrip is the identity on every 8-bit pattern") {
    for (const PositFormat& f : eight_bit_formats()) {
        CAPTURE(f.name());
        for (std::uint32_t p = 0; p < 256; ++p) {
            const PositBits bits{p};
            CHECK(encode(f, to_exact(f, bits)) == bits);
        }
    }
}

TEST_CASE("roundtrip holds on sampled 16/32-bit patterns") {
    for (const PositFormat& f : {kP16, PositFormat::bounded(16, 3), kP32, PositFormat::bounded(32, 5)}) {
        CAPTURE(f.name());
        SeededRng rng(42);
        for (int i = 0; i < 20000; ++i) {
            const PositBits bits{rng.next_bits(f.n_bits)};
            CHECK(encode(f, to_exact(f, bits)) == bits);
        }
    }
}

TEST_CASE("to_exact is strictly increasing in signed pattern order") {
    for (const PositFormat& f : eight_bit_formats()) {
        CAPTURE(f.name());
        // Signed pattern order: 0x81 (most negative) .. 0x7f (maxpos), NaR excluded.
        std::vector<std::uint32_t> order;
        for (std::uint32_t p = 0x81; p < 0x100; ++p) order.push_back(p);
        for (std::uint32_t p = 0x00; p < 0x80; ++p) order.push_back(p);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            CHECK(to_exact(f, PositBits{order[i]}) < to_exact(f, PositBits{order[i + 1]}));
        }
    }
}

TEST_CASE("encode matches the lattice-search reference on 8-bit formats") {
    for (const PositFormat& f : eight_bit_formats()) {
        CAPTURE(f.name());
        const ExactValue quarter(BigInt(1), -2);
        for (std::uint32_t p = 1; p < 0x80; ++p) {
            const ExactValue lo = to_exact(f, PositBits{p});
            // On-lattice points, midpoints, and off-midpoint probes on both sides.
            std::vector<ExactValue> probes{lo};
            if (p + 1 < 0x80) {
                const ExactValue hi = to_exact(f, PositBits{p + 1});
                const ExactValue step = hi - lo;
                const ExactValue mid = lo + step * ExactValue(BigInt(1), -1);
                probes.push_back(mid);
                probes.push_back(lo + step * quarter);
                probes.push_back(hi - step * quarter);
            }
            for (const ExactValue& v : probes) {
                CAPTURE(p);
                CHECK(encode(f, v).raw == search_encode(f, v));
                CHECK(encode(f, -v).raw == search_encode(f, -v));
            }
        }
        // Saturation probes beyond the lattice.
        const ExactValue big(BigInt(3), 40);
        const ExactValue tiny(BigInt(3), -40);
        CHECK(encode(f, big).raw == search_encode(f, big));
        CHECK(encode(f, tiny).raw == search_encode(f, tiny));
    }
}

TEST_CASE("bounded lattice agrees with standard below the bound") {
    for (int bound : {1, 2, 3}) {
        const PositFormat bounded = PositFormat::bounded(8, bound);
        CAPTURE(bound);
        for (std::uint32_t p = 1; p < 0x80; ++p) {
            const DecodedPosit d = decode(bounded, PositBits{p});
            const RegimeLayout layout = regime_field_layout(bounded, d.k);
            if (layout.has_terminator) {
                CHECK(to_exact(bounded, PositBits{p}) == to_exact(kP8, PositBits{p}));
            }
        }
    }
}

TEST_CASE("bounded dynamic range sits strictly inside standard") {
    const std::vector<std::pair<PositFormat, PositFormat>> pairs = {
        {PositFormat::bounded(8, 2), kP8},
        {PositFormat::bounded(16, 3), kP16},
        {PositFormat::bounded(32, 5), kP32},
    };
    for (const auto& [bounded, standard] : pairs) {
        CAPTURE(bounded.name());
        CHECK(maxpos_value(bounded) < maxpos_value(standard));
        CHECK(minpos_value(standard) < minpos_value(bounded));
    }
}

TEST_CASE("negation is the exact two's complement") {
    for (const PositFormat& f : eight_bit_formats()) {
        for (std::uint32_t p = 0; p < 256; ++p) {
            if (p == f.nar_pattern()) {
                continue;
            }
            CHECK(to_exact(f, negate(f, PositBits{p})) == -to_exact(f, PositBits{p}));
        }
    }
}

TEST_CASE("NaR is preserved in bounded formats") {
    for (const PositFormat& f : eight_bit_formats()) {
        CHECK(decode(f, PositBits{0x80}).is_nar);
        CHECK(encode(f, ExactValue::nar()).raw == 0x80);
    }
}

TEST_CASE("dirty upper bits are rejected") {
    CHECK_THROWS_AS(decode(kP8, PositBits{0x100}), std::invalid_argument);
    CHECK_THROWS_AS(decode(kP16, PositBits{0x10000}), std::invalid_argument);
}
